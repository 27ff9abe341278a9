#ifndef TDASUM_LEARN_HPP
#define TDASUM_LEARN_HPP

#include <span>
#include <utility>
#include <vector>

#include "tdasum/core.hpp"

namespace tdasum {

struct LabeledCurveSet {
  std::vector<SummaryCurve> curves;
  std::vector<int> labels;

  std::size_t size() const { return curves.size(); }
};

/// kNN vote over the k closest training curves. Binary labels follow the
/// majority rule with ties going to 0; general labels use plurality with
/// the lowest label winning ties. Distance ties break by training index.
int knn_classify(const LabeledCurveSet& train, const SummaryCurve& query, int k,
                 const MetricSpec& metric);

/// Leave-one-out cross-validation over the candidate ks; returns the
/// error-minimizing k (smallest k on ties) and its error rate.
std::pair<int, double> loocv_select_k(const LabeledCurveSet& train,
                                      std::span<const int> k_candidates,
                                      const MetricSpec& metric, int threads = 1);

/// Symmetric pairwise distance matrix with zero diagonal; each unordered
/// pair is computed once.
Matrix distance_matrix(std::span<const SummaryCurve> curves, const MetricSpec& metric,
                       int threads = 1);

/// Classical multidimensional scaling: eigendecomposition of the
/// double-centered squared-distance matrix, top out_dim eigenpairs with
/// negative eigenvalues clamped to zero. Returns n x out_dim coordinates.
Matrix classical_mds(const Matrix& distances, int out_dim);

}  // namespace tdasum

#endif
