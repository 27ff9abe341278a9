#include "tdasum/learn.hpp"

#include <algorithm>
#include <map>

#include "tdasum/inference.hpp"
#include "tdasum/parallel.hpp"

namespace tdasum {

namespace {

/// Plurality vote with the lowest label winning ties. For binary labels
/// this is exactly the rule "1 iff strictly more than half the neighbors
/// are 1", since a tie falls back to 0.
int vote(const std::vector<int>& neighbor_labels) {
  std::map<int, int> counts;
  for (const int label : neighbor_labels) ++counts[label];
  int best_label = 0, best_count = -1;
  for (const auto& [label, count] : counts) {
    if (count > best_count) {
      best_label = label;
      best_count = count;
    }
  }
  return best_label;
}

void check_labeled(const LabeledCurveSet& train) {
  require(!train.curves.empty(), Errc::EmptyInput, "empty training set");
  require(train.curves.size() == train.labels.size(), Errc::BadConfig,
          "labels and curves differ in length");
}

}  // namespace

int knn_classify(const LabeledCurveSet& train, const SummaryCurve& query, int k,
                 const MetricSpec& metric) {
  check_labeled(train);
  const auto n = train.curves.size();
  require(k >= 1 && static_cast<std::size_t>(k) <= n, Errc::BadK, "k must be in [1, n]");

  std::vector<std::pair<double, std::size_t>> dists(n);
  for (std::size_t i = 0; i < n; ++i) {
    dists[i] = {metric_distance(train.curves[i], query, metric), i};
  }
  std::sort(dists.begin(), dists.end());  // distance ties break by index

  std::vector<int> neighbor_labels(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) neighbor_labels[static_cast<std::size_t>(i)] =
      train.labels[dists[static_cast<std::size_t>(i)].second];
  return vote(neighbor_labels);
}

std::pair<int, double> loocv_select_k(const LabeledCurveSet& train,
                                      std::span<const int> k_candidates,
                                      const MetricSpec& metric, int threads) {
  check_labeled(train);
  require(!k_candidates.empty(), Errc::EmptyCandidates, "no k candidates");
  const auto n = train.curves.size();
  for (const int k : k_candidates) {
    require(k >= 1 && static_cast<std::size_t>(k) <= n - 1, Errc::BadK,
            "k candidates must be in [1, n-1]");
  }

  const Matrix dm = distance_matrix(train.curves, metric, threads);

  // Per held-out curve, the other curves in ascending (distance, index) order.
  std::vector<std::vector<std::size_t>> neighbor_order(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> dists;
    dists.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) dists.emplace_back(dm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), j);
    }
    std::sort(dists.begin(), dists.end());
    neighbor_order[i].reserve(dists.size());
    for (const auto& [d, j] : dists) neighbor_order[i].push_back(j);
  }

  int best_k = k_candidates[0];
  double best_err = 2.0;
  for (const int k : k_candidates) {
    int errors = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> labels(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j)
        labels[static_cast<std::size_t>(j)] = train.labels[neighbor_order[i][static_cast<std::size_t>(j)]];
      if (vote(labels) != train.labels[i]) ++errors;
    }
    const double err = static_cast<double>(errors) / static_cast<double>(n);
    if (err < best_err) {  // strict: ties keep the smallest k seen first
      best_err = err;
      best_k = k;
    }
  }
  return {best_k, best_err};
}

Matrix distance_matrix(std::span<const SummaryCurve> curves, const MetricSpec& metric,
                       int threads) {
  require(!curves.empty(), Errc::EmptyInput, "no curves given");
  const auto n = static_cast<Eigen::Index>(curves.size());
  Matrix dm = Matrix::Zero(n, n);
  // One task per upper-triangle pair.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  parallel_for(pairs.size(), threads, [&](std::size_t t) {
    const auto [i, j] = pairs[t];
    const double d = metric_distance(curves[static_cast<std::size_t>(i)],
                                     curves[static_cast<std::size_t>(j)], metric);
    dm(i, j) = d;
    dm(j, i) = d;
  });
  return dm;
}

Matrix classical_mds(const Matrix& distances, int out_dim) {
  const Eigen::Index n = distances.rows();
  require(distances.cols() == n, Errc::BadDim, "distance matrix must be square");
  require(out_dim >= 1 && n >= out_dim, Errc::BadDim, "need n >= out_dim >= 1");

  // Double-center the squared distances: B = -1/2 J D^2 J.
  const Matrix sq = distances.array().square();
  const Vector row_mean = sq.rowwise().mean();
  const double total_mean = sq.mean();
  Matrix b(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      b(i, j) = -0.5 * (sq(i, j) - row_mean[i] - row_mean[j] + total_mean);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(b);
  require(eig.info() == Eigen::Success, Errc::BadDim, "eigendecomposition failed");

  // Eigenvalues ascend; take the top out_dim, clamping negatives to zero
  // and fixing each axis sign so the largest-magnitude entry is positive.
  Matrix coords(n, out_dim);
  for (int d = 0; d < out_dim; ++d) {
    const Eigen::Index col = n - 1 - d;
    const double lambda = std::max(eig.eigenvalues()[col], 0.0);
    Vector axis = eig.eigenvectors().col(col) * std::sqrt(lambda);
    Eigen::Index top = 0;
    axis.cwiseAbs().maxCoeff(&top);
    if (axis[top] < 0.0) axis = -axis;
    coords.col(d) = axis;
  }
  return coords;
}

}  // namespace tdasum
