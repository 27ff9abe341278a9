#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "tdasum/simulate.hpp"
#include "tdasum/summaries.hpp"

using namespace tdasum;

namespace {

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double vx = bx - ax, vy = by - ay;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = px - (ax + t * vx), dy = py - (ay + t * vy);
  return std::hypot(dx, dy);
}

}  // namespace

TEST_CASE("stix with no sticks is a uniform background") {
  StixConfig cfg;
  cfg.n_sticks = 0;
  cfg.rows = 16;
  cfg.cols = 16;
  cfg.background = -1.5;
  cfg.seed = 3;
  const auto field = stix(cfg);
  CHECK(field.values.minCoeff() == -1.5);
  CHECK(field.values.maxCoeff() == -1.5);
}

TEST_CASE("stix is bit-reproducible given the seed") {
  StixConfig cfg;
  cfg.n_sticks = 12;
  cfg.rows = 48;
  cfg.cols = 48;
  cfg.seed = 17;
  const auto a = stix(cfg);
  const auto b = stix(cfg);
  CHECK(a.values == b.values);
  cfg.seed = 18;
  CHECK(stix(cfg).values != a.values);
}

TEST_CASE("hard rasterization takes exactly two values") {
  StixConfig cfg;
  cfg.n_sticks = 10;
  cfg.rows = 40;
  cfg.cols = 40;
  cfg.foreground = 2.0;
  cfg.background = 0.5;
  cfg.seed = 5;
  const auto field = stix(cfg);
  std::set<double> values(field.values.data(), field.values.data() + field.values.size());
  CHECK(values == std::set<double>{0.5, 2.0});
}

TEST_CASE("a single stick matches the point-to-segment distance oracle") {
  StixConfig cfg;
  cfg.n_sticks = 1;
  cfg.rows = 64;
  cfg.cols = 64;
  cfg.thickness_df = 40.0;  // wide stick so both sides of the boundary appear
  cfg.seed = 23;
  const auto field = stix(cfg);

  // Recover the stick the same way the generator draws it.
  Rng endpoints(cfg.seed, 0);
  const double ax = endpoints.uniform(), ay = endpoints.uniform();
  const double bx = endpoints.uniform(), by = endpoints.uniform();
  Rng width(cfg.seed, 1);
  const double half = width.chi_squared(cfg.thickness_df) / 1024.0;

  const double pixel_diag = std::sqrt(2.0) / 64.0;
  for (Eigen::Index r = 0; r < 64; ++r)
    for (Eigen::Index c = 0; c < 64; ++c) {
      const double d = segment_distance(field.cell_center_x(c), field.cell_center_y(r), ax, ay,
                                        bx, by);
      if (d <= half) CHECK(field.values(r, c) == cfg.foreground);
      if (d > half + pixel_diag) CHECK(field.values(r, c) == cfg.background);
    }
}

TEST_CASE("antialiased rasterization stays within the intensity range") {
  StixConfig cfg;
  cfg.n_sticks = 6;
  cfg.rows = 32;
  cfg.cols = 32;
  cfg.seed = 29;
  cfg.antialias = true;
  const auto field = stix(cfg);
  CHECK(field.values.minCoeff() >= cfg.background);
  CHECK(field.values.maxCoeff() <= cfg.foreground);
}

TEST_CASE("expected foreground fraction grows with the stick count") {
  const auto mean_fraction = [](int n_sticks) {
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      StixConfig cfg;
      cfg.n_sticks = n_sticks;
      cfg.rows = 32;
      cfg.cols = 32;
      cfg.seed = seed;
      const auto f = stix(cfg);
      acc += f.values.sum() / (32.0 * 32.0);
    }
    return acc / 50.0;
  };
  const double f5 = mean_fraction(5), f15 = mean_fraction(15), f40 = mean_fraction(40);
  CHECK(f5 < f15);
  CHECK(f15 < f40);
}

TEST_CASE("mean stick width grows with the degrees of freedom") {
  const auto mean_width = [](double df) {
    double acc = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Rng rng(1000 + static_cast<std::uint64_t>(i), 1);
      acc += rng.chi_squared(df);
    }
    return acc / 1000.0;
  };
  CHECK(mean_width(7.0) > mean_width(5.0));
  CHECK(mean_width(5.0) == doctest::Approx(5.0).epsilon(0.1));
  CHECK(mean_width(7.0) == doctest::Approx(7.0).epsilon(0.1));
}

TEST_CASE("gland ring points stay within four jitter sigmas") {
  GlandConfig cfg;
  cfg.n_points = 500;
  cfg.radius = 0.3;
  cfg.irregularity = 0.0;
  cfg.seed = 31;
  const auto cloud = gland(cfg);
  REQUIRE(cloud.size() == 500);
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const double r = std::hypot(cloud.points(i, 0) - 0.5, cloud.points(i, 1) - 0.5);
    CHECK(std::abs(r - cfg.radius) <= 4.0 * cfg.jitter_sigma() + 1e-12);
  }
  CHECK(gland(cfg).points == cloud.points);  // deterministic
}

TEST_CASE("fully irregular glands pass a uniformity goodness-of-fit check") {
  GlandConfig cfg;
  cfg.n_points = 1000;
  cfg.radius = 0.3;
  cfg.irregularity = 1.0;
  cfg.seed = 37;
  const auto cloud = gland(cfg);
  // chi-squared statistic over a 4x4 binning of the unit box
  double counts[4][4] = {};
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const auto bx = std::min(3, static_cast<int>(cloud.points(i, 0) * 4.0));
    const auto by = std::min(3, static_cast<int>(cloud.points(i, 1) * 4.0));
    counts[bx][by] += 1.0;
  }
  const double expected = 1000.0 / 16.0;
  double stat = 0.0;
  for (auto& row : counts)
    for (const double c : row) stat += (c - expected) * (c - expected) / expected;
  // 1% critical value of chi-squared with 15 degrees of freedom
  CHECK(stat <= 30.5779);
}

TEST_CASE("a clean ring gland produces one dominant loop") {
  GlandConfig cfg;
  cfg.n_points = 400;
  cfg.radius = 0.3;
  cfg.irregularity = 0.0;
  cfg.seed = 41;
  KdeSpec spec;
  spec.kernel = KernelFamily::TruncatedGaussian;
  spec.h = 0.12;
  spec.rows = 48;
  spec.cols = 48;
  spec.extent = Extent{0.0, 0.0, 1.0, 1.0};
  const auto diagram = point_cloud_diagram(gland(cfg), spec, 1);
  const auto curve = landscape(diagram, 1, 2, default_grid(diagram, 256));
  CHECK(curve.orders.row(0).maxCoeff() >= 5.0 * curve.orders.row(1).maxCoeff());
}

TEST_CASE("stix_experiment produces a complete, reproducible p-value table") {
  StixExperimentConfig cfg;
  cfg.null_df = 5.0;
  cfg.alt_df = 5.0;
  cfg.images_per_group = 3;
  cfg.reps = 2;
  cfg.B = 20;
  cfg.image.n_sticks = 12;
  cfg.image.rows = 24;
  cfg.image.cols = 24;
  cfg.summary.dim = 1;
  cfg.summary.landscape_k = 2;
  cfg.summary.glandscape_h = {0.05};
  cfg.summary.glandscape_k = 1;
  cfg.summary.grid_m = 64;
  cfg.seed = 43;
  const auto table = stix_experiment(cfg);
  REQUIRE(table.columns.size() == 3);  // landscape k1, k2 + glandscape h0.05 k1
  CHECK(table.columns[0] == "landscape_k1");
  CHECK(table.columns[2] == "glandscape_h0.05_k1");
  REQUIRE(table.p_values.rows() == 2);
  for (Eigen::Index r = 0; r < table.p_values.rows(); ++r)
    for (Eigen::Index c = 0; c < table.p_values.cols(); ++c) {
      CHECK(table.p_values(r, c) >= 0.0);
      CHECK(table.p_values(r, c) <= 1.0);
    }

  cfg.threads = 2;
  const auto again = stix_experiment(cfg);
  CHECK(again.p_values == table.p_values);  // thread-count invariant
}

TEST_CASE("reps = 1 with B = 1 yields indicator p-values") {
  StixExperimentConfig cfg;
  cfg.images_per_group = 2;
  cfg.reps = 1;
  cfg.B = 1;
  cfg.image.n_sticks = 8;
  cfg.image.rows = 16;
  cfg.image.cols = 16;
  cfg.summary.dim = 0;
  cfg.summary.landscape_k = 2;
  cfg.summary.grid_m = 32;
  cfg.seed = 47;
  const auto table = stix_experiment(cfg);
  REQUIRE(table.p_values.rows() == 1);
  for (Eigen::Index c = 0; c < table.p_values.cols(); ++c) {
    const double p = table.p_values(0, c);
    CHECK((p == 0.0 || p == 1.0));
  }
}

TEST_CASE("configs are validated") {
  StixConfig bad;
  bad.n_sticks = -1;
  CHECK_THROWS_WITH_AS(stix(bad), doctest::Contains("BadConfig"), Error);
  GlandConfig huge;
  huge.radius = 0.6;
  CHECK_THROWS_WITH_AS(gland(huge), doctest::Contains("BadConfig"), Error);
}
