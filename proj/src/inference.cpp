#include "tdasum/inference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tdasum/parallel.hpp"
#include "tdasum/rng.hpp"

namespace tdasum {

namespace {

void require_same_family(std::span<const SummaryCurve> curves) {
  require(!curves.empty(), Errc::EmptyInput, "no curves given");
  for (std::size_t i = 1; i < curves.size(); ++i) {
    require_matched(curves[0], curves[i]);
    require(curves[0].kind == curves[i].kind, Errc::GridMismatch,
            "curves are of different summary kinds");
  }
}

/// Order-statistic quantile: the ceil(q * n)-th smallest of sorted values.
double order_statistic(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  rank = std::min(std::max<std::size_t>(rank, 1), values.size());
  return values[rank - 1];
}

/// Weight mask for a sigma-weighted metric; points below 1e-12 * max(sigma)
/// are excluded. All-degenerate sigma is an error.
Eigen::ArrayXXd sigma_mask(const Matrix& sigma) {
  const double top = sigma.maxCoeff();
  require(top > 0.0, Errc::DegenerateSigma, "sigma weight is identically zero");
  return (sigma.array() >= 1e-12 * top).cast<double>();
}

double sup_residual(const Matrix& delta, const Matrix* sigma, const Eigen::ArrayXXd* mask) {
  if (sigma == nullptr) return delta.array().abs().maxCoeff();
  return (*mask * (delta.array().abs() / sigma->array().max(1e-300))).maxCoeff();
}

Matrix mean_of(std::span<const SummaryCurve> curves, const std::vector<std::uint32_t>& idx) {
  Matrix acc = curves[idx[0]].orders;
  for (std::size_t i = 1; i < idx.size(); ++i) acc += curves[idx[i]].orders;
  return acc / static_cast<double>(idx.size());
}

}  // namespace

SummaryCurve mean_curve(std::span<const SummaryCurve> curves) {
  require_same_family(curves);
  SummaryCurve out = curves[0];
  Matrix acc = curves[0].orders;
  for (std::size_t i = 1; i < curves.size(); ++i) acc += curves[i].orders;
  out.orders = acc / static_cast<double>(curves.size());
  return out;
}

SummaryCurve variance_curve(std::span<const SummaryCurve> curves) {
  require_same_family(curves);
  const SummaryCurve mean = mean_curve(curves);
  SummaryCurve out = curves[0];
  Matrix acc = Matrix::Zero(curves[0].orders.rows(), curves[0].orders.cols());
  for (const auto& curve : curves) {
    acc.array() += (curve.orders - mean.orders).array().square();
  }
  out.orders = acc / static_cast<double>(curves.size());
  return out;
}

double metric_distance(const SummaryCurve& f, const SummaryCurve& g, const MetricSpec& spec) {
  require_matched(f, g);
  require(spec.p > 0.0, Errc::BadP, "metric exponent must be positive");

  const Matrix delta = f.orders - g.orders;
  const Matrix* sigma = nullptr;
  Eigen::ArrayXXd mask;
  if (spec.weight == WeightKind::Sigma) {
    require(spec.sigma.rows() == delta.rows() && spec.sigma.cols() == delta.cols(),
            Errc::GridMismatch, "sigma weight does not match the curve layout");
    mask = sigma_mask(spec.sigma);
    sigma = &spec.sigma;
  }

  if (std::isinf(spec.p)) return sup_residual(delta, sigma, sigma ? &mask : nullptr);

  // Trapezoid quadrature per order; multi-order curves integrate each order
  // with the same weights and add the pieces before the final root.
  const double dt = f.grid.step();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < delta.rows(); ++k) {
    for (Eigen::Index i = 0; i < delta.cols(); ++i) {
      double v = std::abs(delta(k, i));
      if (sigma != nullptr) {
        if (mask(k, i) == 0.0) continue;
        v /= (*sigma)(k, i);
      }
      const double w = (i == 0 || i + 1 == delta.cols()) ? 0.5 : 1.0;
      acc += w * std::pow(v, spec.p) * dt;
    }
  }
  return std::pow(acc, 1.0 / spec.p);
}

BandResult bootstrap_band(std::span<const SummaryCurve> curves, double alpha, int B,
                          WidthMode mode, std::uint64_t seed, int threads) {
  require(curves.size() >= 2, Errc::TooFewCurves, "bootstrap needs at least 2 curves");
  require(B >= 1, Errc::BadConfig, "bootstrap needs B >= 1");
  require(alpha > 0.0 && alpha < 1.0, Errc::BadConfig, "alpha must be in (0, 1)");
  require_same_family(curves);

  BandResult band;
  band.alpha = alpha;
  band.width_mode = mode;
  band.B = B;
  band.seed = seed;
  band.center = mean_curve(curves);

  Eigen::ArrayXXd mask;
  if (mode == WidthMode::Variable) {
    band.sigma = variance_curve(curves).orders.array().sqrt().matrix();
    mask = sigma_mask(band.sigma);
  }

  const std::size_t n = curves.size();
  std::vector<double> stats(static_cast<std::size_t>(B));
  parallel_for(static_cast<std::size_t>(B), threads, [&](std::size_t j) {
    Rng rng(seed, j);
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
      idx[i] = static_cast<std::uint32_t>(rng.uniform_index(n));
    const Matrix delta = mean_of(curves, idx) - band.center.orders;
    stats[j] = (mode == WidthMode::Fixed) ? sup_residual(delta, nullptr, nullptr)
                                          : sup_residual(delta, &band.sigma, &mask);
  });

  band.half_width = order_statistic(stats, 1.0 - alpha);
  band.lower = band.center;
  band.upper = band.center;
  if (mode == WidthMode::Fixed) {
    band.lower.orders.array() -= band.half_width;
    band.upper.orders.array() += band.half_width;
  } else {
    band.lower.orders -= band.half_width * band.sigma;
    band.upper.orders += band.half_width * band.sigma;
  }
  return band;
}

Prediction prediction_band(std::span<const SummaryCurve> curves, double gamma,
                           const MetricSpec& metric, std::uint64_t) {
  require(curves.size() >= 2, Errc::TooFewCurves, "prediction needs at least 2 curves");
  require(gamma > 0.0 && gamma < 1.0, Errc::BadConfig, "gamma must be in (0, 1)");
  require_same_family(curves);

  Prediction pred;
  pred.gamma = gamma;
  pred.center = mean_curve(curves);
  pred.metric = metric;
  if (metric.weight == WeightKind::Sigma && metric.sigma.size() == 0) {
    pred.metric.sigma = variance_curve(curves).orders.array().sqrt().matrix();
  }

  std::vector<double> residuals;
  residuals.reserve(curves.size());
  for (const auto& curve : curves)
    residuals.push_back(metric_distance(curve, pred.center, pred.metric));
  pred.q_hat = order_statistic(residuals, gamma);

  if (pred.metric.weight == WeightKind::Sigma && std::isinf(pred.metric.p)) {
    pred.has_envelopes = true;
    pred.lower = pred.center;
    pred.upper = pred.center;
    pred.lower.orders -= pred.q_hat * pred.metric.sigma;
    pred.upper.orders += pred.q_hat * pred.metric.sigma;
  }
  return pred;
}

namespace {

struct PooledTest {
  std::vector<SummaryCurve> pooled;
  std::size_t n = 0, m = 0;
  double observed = 0.0;
  MetricSpec metric;

  double statistic_for(const std::vector<std::uint32_t>& order) const {
    std::vector<std::uint32_t> a(order.begin(), order.begin() + static_cast<long>(n));
    std::vector<std::uint32_t> b(order.begin() + static_cast<long>(n), order.end());
    SummaryCurve fa = pooled[0];
    fa.orders = mean_of(pooled, a);
    SummaryCurve fb = pooled[0];
    fb.orders = mean_of(pooled, b);
    return metric_distance(fa, fb, metric);
  }
};

PooledTest make_pooled(std::span<const SummaryCurve> group_a,
                       std::span<const SummaryCurve> group_b, const MetricSpec& metric) {
  require(!group_a.empty() && !group_b.empty(), Errc::EmptyGroup,
          "both groups need at least one curve");
  PooledTest t;
  t.pooled.assign(group_a.begin(), group_a.end());
  t.pooled.insert(t.pooled.end(), group_b.begin(), group_b.end());
  require_same_family(t.pooled);
  t.n = group_a.size();
  t.m = group_b.size();
  t.metric = metric;
  std::vector<std::uint32_t> identity(t.pooled.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<std::uint32_t>(i);
  t.observed = t.statistic_for(identity);
  return t;
}

}  // namespace

TestResult permutation_test(std::span<const SummaryCurve> group_a,
                            std::span<const SummaryCurve> group_b, const MetricSpec& metric,
                            int B, std::uint64_t seed, int threads, bool add_one) {
  require(B >= 1, Errc::BadConfig, "permutation test needs B >= 1");
  const PooledTest t = make_pooled(group_a, group_b, metric);

  std::vector<std::uint8_t> hits(static_cast<std::size_t>(B), 0);
  parallel_for(static_cast<std::size_t>(B), threads, [&](std::size_t j) {
    Rng rng(seed, j);
    std::vector<std::uint32_t> order;
    rng.shuffle_indices(order, t.pooled.size());
    hits[j] = t.statistic_for(order) >= t.observed ? 1 : 0;
  });

  long count = 0;
  for (const auto h : hits) count += h;

  TestResult result;
  result.statistic = t.observed;
  result.p_value = add_one ? (static_cast<double>(count) + 1.0) / (static_cast<double>(B) + 1.0)
                           : static_cast<double>(count) / static_cast<double>(B);
  result.B = B;
  result.metric = metric;
  result.seed = seed;
  result.n = static_cast<int>(t.n);
  result.m = static_cast<int>(t.m);
  return result;
}

TestResult permutation_test_exhaustive(std::span<const SummaryCurve> group_a,
                                       std::span<const SummaryCurve> group_b,
                                       const MetricSpec& metric) {
  const PooledTest t = make_pooled(group_a, group_b, metric);
  const std::size_t total = t.pooled.size();

  // Enumerate every way to pick which pooled indices form group A.
  std::vector<std::uint32_t> pick(t.n);
  for (std::size_t i = 0; i < t.n; ++i) pick[i] = static_cast<std::uint32_t>(i);
  long count = 0, splits = 0;
  for (;;) {
    std::vector<std::uint32_t> order(pick);
    std::vector<bool> in_a(total, false);
    for (const auto i : pick) in_a[i] = true;
    for (std::uint32_t i = 0; i < total; ++i)
      if (!in_a[i]) order.push_back(i);
    if (t.statistic_for(order) >= t.observed) ++count;
    ++splits;

    // Next combination in lexicographic order.
    long pos = static_cast<long>(t.n) - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] ==
                           static_cast<std::uint32_t>(total - t.n + static_cast<std::size_t>(pos)))
      --pos;
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
    for (auto i = static_cast<std::size_t>(pos) + 1; i < t.n; ++i) pick[i] = pick[i - 1] + 1;
  }

  TestResult result;
  result.statistic = t.observed;
  result.p_value = static_cast<double>(count) / static_cast<double>(splits);
  result.B = static_cast<int>(splits);
  result.metric = metric;
  result.n = static_cast<int>(t.n);
  result.m = static_cast<int>(t.m);
  result.exhaustive = true;
  return result;
}

}  // namespace tdasum
