#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "tdasum/core.hpp"

using namespace tdasum;

TEST_CASE("canonicalize_superlevel negates raw levels") {
  const auto d = canonicalize_superlevel({{0, 2.0, 0.5}});
  REQUIRE(d.size() == 1);
  CHECK(d.points[0].birth == -2.0);
  CHECK(d.points[0].death == -0.5);
  CHECK(d.points[0].lifetime() == doctest::Approx(1.5));
  CHECK(d.orientation == Orientation::SuperlevelNegated);
}

TEST_CASE("canonicalize_superlevel handles empty and zero-lifetime input") {
  CHECK(canonicalize_superlevel({}).empty());
  const auto d = canonicalize_superlevel({{1, 1.0, 1.0}});
  REQUIRE(d.size() == 1);
  CHECK(d.points[0].lifetime() == 0.0);
  CHECK(d.points[0].dim == 1);
}

TEST_CASE("canonicalize_superlevel rejects inverted pairs") {
  CHECK_THROWS_WITH_AS(canonicalize_superlevel({{0, 0.5, 2.0}}), doctest::Contains("RawPairInverted"),
                       Error);
}

TEST_CASE("canonicalize_superlevel preserves lifetimes and is injective") {
  Rng rng(11);
  std::vector<std::tuple<int, double, double>> raw;
  for (int i = 0; i < 50; ++i) {
    const double death = rng.uniform(-5.0, 5.0);
    raw.emplace_back(static_cast<int>(rng.uniform_index(2)), death + rng.uniform(0.0, 3.0),
                     death);
  }
  const auto d = canonicalize_superlevel(raw);
  REQUIRE(d.size() == raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& [dim, bl, dl] = raw[i];
    CHECK(d.points[i].lifetime() == doctest::Approx(bl - dl).epsilon(1e-15));
    // Raw levels are recoverable, so the map is injective.
    CHECK(-d.points[i].birth == bl);
    CHECK(-d.points[i].death == dl);
  }
}

TEST_CASE("filter_by_dim keeps matching points in order") {
  PersistenceDiagram d;
  d.points = {{0, 0.0, 1.0, false}, {1, 0.5, 2.0, false}, {0, 0.2, 0.9, false}};
  const auto h1 = filter_by_dim(d, 1);
  REQUIRE(h1.size() == 1);
  CHECK(h1.points[0].birth == 0.5);
  const auto h0 = filter_by_dim(d, 0);
  REQUIRE(h0.size() == 2);
  CHECK(h0.points[0].birth == 0.0);
  CHECK(h0.points[1].birth == 0.2);
  CHECK(filter_by_dim(d, 99).empty());
  CHECK(filter_by_dim(PersistenceDiagram{}, 0).empty());
}

TEST_CASE("Grid1D samples are uniform and hit both endpoints") {
  const Grid1D g(-1.0, 3.0, 9);
  CHECK(g.at(0) == -1.0);
  CHECK(g.at(8) == 3.0);
  CHECK(g.step() == doctest::Approx(0.5));
  for (int i = 0; i + 1 < g.m; ++i) {
    CHECK(g.at(i + 1) - g.at(i) == doctest::Approx(g.step()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1), Error);
  CHECK_THROWS_AS(Grid1D(1.0, 1.0, 4), Error);
}

TEST_CASE("kernel profiles peak at zero with unit support") {
  for (const auto family : {KernelFamily::Triangle, KernelFamily::Epanechnikov,
                            KernelFamily::Tricube, KernelFamily::TruncatedGaussian}) {
    CHECK(kernel_profile(family, 0.0) == 1.0);
    CHECK(kernel_profile(family, 1.1) == 0.0);
    CHECK(kernel_profile(family, -1.1) == 0.0);
    for (double u = -1.0; u <= 1.0; u += 0.125) {
      CHECK(kernel_profile(family, u) >= 0.0);
      CHECK(kernel_profile(family, u) <= 1.0);
      CHECK(kernel_profile(family, u) == kernel_profile(family, -u));
    }
  }
}

TEST_CASE("density-normalized kernels integrate to one over the plane") {
  // Polar quadrature of 2 pi * int_0^1 K(r) r dr.
  for (const auto family : {KernelFamily::Triangle, KernelFamily::Epanechnikov,
                            KernelFamily::Tricube, KernelFamily::TruncatedGaussian}) {
    const int n = 200000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = (i + 0.5) / n;
      acc += kernel_density2d(family, r) * r / n;
    }
    CHECK(2.0 * 3.141592653589793 * acc == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("require_matched rejects mismatched grids") {
  SummaryCurve a, b;
  a.grid = Grid1D(0.0, 1.0, 8);
  a.orders = Matrix::Zero(1, 8);
  b = a;
  CHECK_NOTHROW(require_matched(a, b));
  b.grid = Grid1D(0.0, 1.0, 9);
  b.orders = Matrix::Zero(1, 9);
  CHECK_THROWS_AS(require_matched(a, b), Error);
}
