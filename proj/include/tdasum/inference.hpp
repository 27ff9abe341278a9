#ifndef TDASUM_INFERENCE_HPP
#define TDASUM_INFERENCE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tdasum/core.hpp"

namespace tdasum {

enum class WidthMode { Fixed, Variable };

/// Bootstrap confidence band around the sample mean curve. Fixed mode has
/// constant half width t_hat; variable mode scales a studentized half width
/// s_dagger by the pointwise standard deviation curve.
struct BandResult {
  SummaryCurve center;
  SummaryCurve lower;
  SummaryCurve upper;
  double alpha = 0.1;
  WidthMode width_mode = WidthMode::Fixed;
  double half_width = 0.0;
  Matrix sigma;  // pointwise standard deviations (variable mode)
  int B = 0;
  std::uint64_t seed = 0;
};

/// Prediction band from the residual quantile q_hat. Envelope curves are
/// present only for the sigma-weighted supremum metric, where the band has
/// the closed form center +- q_hat * sigma(t).
struct Prediction {
  SummaryCurve center;
  double q_hat = 0.0;
  double gamma = 0.0;
  MetricSpec metric;
  bool has_envelopes = false;
  SummaryCurve lower;
  SummaryCurve upper;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int B = 0;
  MetricSpec metric;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  bool exhaustive = false;
};

/// Pointwise arithmetic mean of the curves (per order).
SummaryCurve mean_curve(std::span<const SummaryCurve> curves);

/// Pointwise variance with divisor n:
/// sigma^2(t) = (1/n) sum_i (F_i(t) - Fbar(t))^2.
SummaryCurve variance_curve(std::span<const SummaryCurve> curves);

/// Metric d_{p,w} between two curves on the same grid. Finite p integrates
/// (|f-g|/w)^p by the trapezoid rule; p = inf takes the max over grid
/// points. Multi-order curves are treated as the concatenation of their
/// orders, each with the same quadrature weights. With a sigma weight, grid
/// points where sigma < 1e-12 * max(sigma) are excluded; if every point is
/// degenerate the metric is undefined and an error is raised.
double metric_distance(const SummaryCurve& f, const SummaryCurve& g, const MetricSpec& spec);

/// Bootstrap band: B resampled mean curves, half width from the 1-alpha
/// order-statistic quantile of sup |F*_j - F| (fixed) or of the
/// sigma-studentized supremum (variable). Replicate j draws from a stream
/// derived from (seed, j), so results are independent of scheduling.
BandResult bootstrap_band(std::span<const SummaryCurve> curves, double alpha, int B,
                          WidthMode mode, std::uint64_t seed, int threads = 1);

/// Prediction band from residuals e_i = d(F_i, Fbar): q_hat is the
/// order-statistic gamma-quantile e_(ceil(gamma n)).
Prediction prediction_band(std::span<const SummaryCurve> curves, double gamma,
                           const MetricSpec& metric, std::uint64_t seed = 0);

/// Two-sample permutation test with statistic T = d(mean_A, mean_B) and B
/// uniformly random relabelings; p = (1/B) sum I(T* >= T). With add_one the
/// numerator and denominator are both incremented (off by default).
TestResult permutation_test(std::span<const SummaryCurve> group_a,
                            std::span<const SummaryCurve> group_b, const MetricSpec& metric,
                            int B, std::uint64_t seed, int threads = 1, bool add_one = false);

/// Exact version enumerating all C(n+m, n) relabelings; intended for small
/// groups and as the oracle for the sampled test.
TestResult permutation_test_exhaustive(std::span<const SummaryCurve> group_a,
                                       std::span<const SummaryCurve> group_b,
                                       const MetricSpec& metric);

}  // namespace tdasum

#endif
