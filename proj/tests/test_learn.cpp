#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "tdasum/inference.hpp"
#include "tdasum/learn.hpp"

using namespace tdasum;

namespace {

const Grid1D kGrid(0.0, 1.0, 65);

SummaryCurve constant_curve(double value) {
  SummaryCurve c;
  c.grid = kGrid;
  c.kind = CurveKind::Silhouette;
  c.orders = Matrix::Constant(1, kGrid.m, value);
  return c;
}

LabeledCurveSet constants(const std::vector<std::pair<double, int>>& value_labels) {
  LabeledCurveSet set;
  for (const auto& [v, label] : value_labels) {
    set.curves.push_back(constant_curve(v));
    set.labels.push_back(label);
  }
  return set;
}

}  // namespace

TEST_CASE("knn with k=1 returns the label of an identical curve") {
  const auto train = constants({{0.0, 0}, {5.0, 1}, {9.0, 2}});
  CHECK(knn_classify(train, constant_curve(5.0), 1, MetricSpec::sup()) == 1);
}

TEST_CASE("binary vote ties go to class 0") {
  const auto train = constants({{0.0, 0}, {1.9, 1}});
  // query at 1.0: both neighbors used with k=2, sum of labels = 1 <= k/2
  CHECK(knn_classify(train, constant_curve(1.0), 2, MetricSpec::sup()) == 0);
}

TEST_CASE("knn picks the nearer constant") {
  const auto train = constants({{0.0, 7}, {10.0, 3}});
  CHECK(knn_classify(train, constant_curve(1.0), 1, MetricSpec::sup()) == 7);
  CHECK(knn_classify(train, constant_curve(9.0), 1, MetricSpec::sup()) == 3);
}

TEST_CASE("multi-class plurality breaks ties toward the lowest label") {
  const auto train = constants({{0.0, 2}, {0.5, 1}, {1.0, 1}, {1.5, 2}});
  // k=4: two votes each for labels 1 and 2
  CHECK(knn_classify(train, constant_curve(0.75), 4, MetricSpec::sup()) == 1);
}

TEST_CASE("knn rejects bad k") {
  const auto train = constants({{0.0, 0}, {1.0, 1}});
  CHECK_THROWS_WITH_AS(knn_classify(train, constant_curve(0.0), 0, MetricSpec::sup()),
                       doctest::Contains("BadK"), Error);
  CHECK_THROWS_WITH_AS(knn_classify(train, constant_curve(0.0), 3, MetricSpec::sup()),
                       doctest::Contains("BadK"), Error);
}

TEST_CASE("knn is invariant under distance rescaling") {
  Rng rng(51);
  LabeledCurveSet train;
  for (int i = 0; i < 12; ++i) {
    SummaryCurve c;
    c.grid = kGrid;
    c.kind = CurveKind::Silhouette;
    c.orders.resize(1, kGrid.m);
    for (int j = 0; j < kGrid.m; ++j) c.orders(0, j) = rng.normal();
    train.curves.push_back(std::move(c));
    train.labels.push_back(static_cast<int>(rng.uniform_index(3)));
  }
  const auto query = train.curves[5];
  // Scaling every curve (hence every distance) by a positive constant only
  // rescales the ranking, so the vote cannot change.
  LabeledCurveSet scaled = train;
  for (auto& c : scaled.curves) c.orders *= 37.5;
  auto scaled_query = query;
  scaled_query.orders *= 37.5;
  for (const int k : {1, 3, 5}) {
    CHECK(knn_classify(train, query, k, MetricSpec::lp(2.0)) ==
          knn_classify(scaled, scaled_query, k, MetricSpec::lp(2.0)));
  }
}

TEST_CASE("loocv on separated classes returns the smallest tied k") {
  const auto train = constants({{0.0, 0}, {0.1, 0}, {0.2, 0}, {9.0, 1}, {9.1, 1}, {9.2, 1}});
  const std::vector<int> candidates = {1, 3};
  const auto [k, err] = loocv_select_k(train, candidates, MetricSpec::sup());
  CHECK(k == 1);
  CHECK(err == 0.0);
}

TEST_CASE("loocv on a single class has zero error") {
  const auto train = constants({{0.0, 4}, {1.0, 4}, {2.0, 4}, {3.0, 4}});
  const std::vector<int> candidates = {1, 2, 3};
  const auto [k, err] = loocv_select_k(train, candidates, MetricSpec::sup());
  CHECK(err == 0.0);
  CHECK(k == 1);
}

TEST_CASE("loocv counts a mislabeled outlier") {
  const auto train = constants({{0.0, 0}, {0.1, 0}, {0.25, 1}});
  const std::vector<int> candidates = {1};
  const auto [k, err] = loocv_select_k(train, candidates, MetricSpec::sup());
  CHECK(k == 1);
  // only the mislabeled point is predicted wrong
  CHECK(err == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_WITH_AS(loocv_select_k(train, std::vector<int>{}, MetricSpec::sup()),
                       doctest::Contains("EmptyCandidates"), Error);
  CHECK_THROWS_WITH_AS(loocv_select_k(train, std::vector<int>{3}, MetricSpec::sup()),
                       doctest::Contains("BadK"), Error);
}

TEST_CASE("distance matrix hand values and structure") {
  std::vector<SummaryCurve> curves = {constant_curve(0.0), constant_curve(3.0),
                                      constant_curve(7.0)};
  const auto dm = distance_matrix(curves, MetricSpec::sup());
  CHECK(dm(0, 1) == 3.0);
  CHECK(dm(0, 2) == 7.0);
  CHECK(dm(1, 2) == 4.0);
  CHECK(dm.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK((dm - dm.transpose()).cwiseAbs().maxCoeff() <= 1e-12);

  std::vector<SummaryCurve> same(5, constant_curve(1.0));
  CHECK(distance_matrix(same, MetricSpec::lp(2.0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("distance matrix satisfies the triangle inequality") {
  Rng rng(52);
  std::vector<SummaryCurve> curves;
  for (int i = 0; i < 8; ++i) {
    SummaryCurve c = constant_curve(0.0);
    for (int j = 0; j < kGrid.m; ++j) c.orders(0, j) = rng.normal();
    curves.push_back(std::move(c));
  }
  for (const auto spec : {MetricSpec::sup(), MetricSpec::lp(1.0), MetricSpec::lp(2.0)}) {
    const auto dm = distance_matrix(curves, spec);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        for (int l = 0; l < 8; ++l) CHECK(dm(i, j) <= dm(i, l) + dm(l, j) + 1e-9);
  }
}

TEST_CASE("classical MDS recovers collinear points") {
  Matrix d(3, 3);
  d << 0, 1, 3, 1, 0, 2, 3, 2, 0;  // points at 0, 1, 3 on a line
  const auto coords = classical_mds(d, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(coords(i, 0) - coords(j, 0)) == doctest::Approx(d(i, j)).epsilon(1e-9));
}

TEST_CASE("classical MDS reproduces planar configurations") {
  Matrix pts(4, 2);
  pts << 0.0, 0.0, 2.0, 0.0, 1.0, 2.0, -1.0, 1.0;
  Matrix d(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = (pts.row(i) - pts.row(j)).norm();
  const auto coords = classical_mds(d, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK((coords.row(i) - coords.row(j)).norm() == doctest::Approx(d(i, j)).epsilon(1e-9));
}

TEST_CASE("classical MDS maps a zero matrix to the origin") {
  const auto coords = classical_mds(Matrix::Zero(4, 4), 2);
  CHECK(coords.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_WITH_AS(classical_mds(Matrix::Zero(2, 2), 3), doctest::Contains("BadDim"), Error);
}
