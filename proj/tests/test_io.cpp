#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "tdasum/io.hpp"

using namespace tdasum;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("tdasum_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("diagram CSV round-trips bit-exactly") {
  TempDir tmp;
  Rng rng(61);
  auto d = oracles::random_diagram(rng, 10, -3.0, 4.0, 1);
  d.points.push_back({0, -1.0 / 3.0, 7.0 / 11.0, true});
  const auto path = tmp.file("d.csv");
  write_diagram_csv(d, path);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "dim,birth,death,essential");

  const auto back = read_diagram_csv(path);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back.points[i].dim == d.points[i].dim);
    CHECK(back.points[i].birth == d.points[i].birth);
    CHECK(back.points[i].death == d.points[i].death);
    CHECK(back.points[i].essential == d.points[i].essential);
  }
}

TEST_CASE("scalar field text round-trips bit-exactly") {
  TempDir tmp;
  Rng rng(62);
  ScalarField f(5, 7, 0.0, Extent{-1.0, 0.25, 2.0, 3.5});
  for (Eigen::Index r = 0; r < 5; ++r)
    for (Eigen::Index c = 0; c < 7; ++c) f.values(r, c) = rng.normal();
  const auto path = tmp.file("f.txt");
  write_field_text(f, path);
  const auto back = read_field_text(path);
  CHECK(back.values == f.values);
  CHECK(back.extent.x0 == f.extent.x0);
  CHECK(back.extent.y1 == f.extent.y1);
}

TEST_CASE("curve CSV round-trips grid and orders bit-exactly") {
  TempDir tmp;
  Rng rng(63);
  SummaryCurve curve;
  curve.grid = Grid1D(-0.7, 3.3, 41);
  curve.orders.resize(3, 41);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 41; ++i) curve.orders(k, i) = rng.normal();
  const auto path = tmp.file("c.csv");
  write_curve_csv(curve, path);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,k1,k2,k3");

  const auto back = read_curve_csv(path);
  CHECK(back.grid == curve.grid);
  CHECK(back.orders == curve.orders);
}

TEST_CASE("cloud and labels round-trip") {
  TempDir tmp;
  PointCloud cloud;
  cloud.points.resize(3, 2);
  cloud.points << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
  write_cloud_csv(cloud, tmp.file("p.csv"));
  CHECK(read_cloud_csv(tmp.file("p.csv")).points == cloud.points);

  const std::vector<int> labels = {2, 0, 1, 1};
  write_labels_csv(labels, tmp.file("l.csv"));
  CHECK(read_labels_csv(tmp.file("l.csv")) == labels);
}

TEST_CASE("distance matrix CSV is square and headerless") {
  TempDir tmp;
  Matrix m(2, 2);
  m << 0.0, 1.5, 1.5, 0.0;
  write_distance_matrix_csv(m, tmp.file("m.csv"));
  std::ifstream in(tmp.file("m.csv"));
  std::string first;
  std::getline(in, first);
  CHECK(first == "0,1.5");
  CHECK(read_distance_matrix_csv(tmp.file("m.csv")) == m);
}

TEST_CASE("surface CSV lists birth,death,value triples") {
  TempDir tmp;
  SummarySurface s;
  s.birth_grid = Grid1D(0.0, 1.0, 2);
  s.death_grid = Grid1D(2.0, 3.0, 2);
  s.values.resize(2, 2);
  s.values << 1, 2, 3, 4;
  write_surface_csv(s, tmp.file("s.csv"));
  std::ifstream in(tmp.file("s.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "birth,death,value");
  std::getline(in, line);
  CHECK(line == "0,2,1");
}

TEST_CASE("readers reject malformed files") {
  TempDir tmp;
  CHECK_THROWS_WITH_AS(read_diagram_csv(tmp.file("missing.csv")), doctest::Contains("BadFile"),
                       Error);
  {
    std::ofstream out(tmp.file("bad.csv"));
    out << "wrong,header\n1,2\n";
  }
  CHECK_THROWS_AS(read_diagram_csv(tmp.file("bad.csv")), Error);
  {
    std::ofstream out(tmp.file("badfield.txt"));
    out << "2 2 0 0 1 1\n1 2\n3\n";  // truncated
  }
  CHECK_THROWS_AS(read_field_text(tmp.file("badfield.txt")), Error);
  {
    std::ofstream out(tmp.file("nonuniform.csv"));
    out << "t,k1\n0,1\n0.5,1\n0.8,1\n";
  }
  CHECK_THROWS_AS(read_curve_csv(tmp.file("nonuniform.csv")), Error);
  {
    std::ofstream out(tmp.file("inverted.csv"));
    out << "dim,birth,death,essential\n0,2,1,0\n";
  }
  CHECK_THROWS_AS(read_diagram_csv(tmp.file("inverted.csv")), Error);
  {
    std::ofstream out(tmp.file("nan.csv"));
    out << "x,y\nnan,0.5\n";
  }
  CHECK_THROWS_AS(read_cloud_csv(tmp.file("nan.csv")), Error);
}

TEST_CASE("file digests are stable and content sensitive") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("a.txt"));
    out << "hello";
  }
  {
    std::ofstream out(tmp.file("b.txt"));
    out << "hello";
  }
  {
    std::ofstream out(tmp.file("c.txt"));
    out << "hellp";
  }
  CHECK(file_digest(tmp.file("a.txt")) == file_digest(tmp.file("b.txt")));
  CHECK(file_digest(tmp.file("a.txt")) != file_digest(tmp.file("c.txt")));
  CHECK(file_digest(tmp.file("a.txt")).size() == 16);
}
