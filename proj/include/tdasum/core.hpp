#ifndef TDASUM_CORE_HPP
#define TDASUM_CORE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tdasum/error.hpp"

namespace tdasum {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Diagrams
// ---------------------------------------------------------------------------

/// One feature of a persistence diagram: homology dimension plus the
/// canonical (birth, death) pair with death >= birth.
struct DiagramPoint {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;
  bool essential = false;

  double lifetime() const { return death - birth; }
};

enum class Orientation { SublevelCanonical, SuperlevelNegated };

struct PersistenceDiagram {
  std::vector<DiagramPoint> points;
  Orientation orientation = Orientation::SublevelCanonical;
  std::string source;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Builds a canonical diagram from raw superlevel (birth_level, death_level)
/// pairs, where births happen at higher levels than deaths. Both coordinates
/// are negated so that death >= birth afterwards; the orientation flag keeps
/// the raw levels recoverable as (-birth, -death).
PersistenceDiagram canonicalize_superlevel(
    const std::vector<std::tuple<int, double, double>>& raw_pairs);

/// Subset of points with the given homology dimension, input order preserved.
PersistenceDiagram filter_by_dim(const PersistenceDiagram& diagram, int dim);

// ---------------------------------------------------------------------------
// Fields and clouds
// ---------------------------------------------------------------------------

struct Extent {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

/// A 2D grid of values with a physical bounding box. values(r, c) is the
/// sample for row r, column c; row 0 sits at the y0 edge of the extent.
struct ScalarField {
  Matrix values;  // rows x cols
  Extent extent;
  std::string source;

  ScalarField() = default;
  ScalarField(Eigen::Index rows, Eigen::Index cols, double fill = 0.0,
              Extent ext = Extent{})
      : values(Matrix::Constant(rows, cols, fill)), extent(ext) {}

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }

  double cell_center_x(Eigen::Index c) const {
    return extent.x0 + (static_cast<double>(c) + 0.5) * extent.width() / static_cast<double>(cols());
  }
  double cell_center_y(Eigen::Index r) const {
    return extent.y0 + (static_cast<double>(r) + 0.5) * extent.height() / static_cast<double>(rows());
  }
};

struct PointCloud {
  Matrix points;  // n x dim

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
};

// ---------------------------------------------------------------------------
// Grids and curves
// ---------------------------------------------------------------------------

/// Uniform 1D sampling grid: t_i = t0 + i * (t1 - t0) / (m - 1).
struct Grid1D {
  double t0 = 0.0;
  double t1 = 1.0;
  int m = 2;

  Grid1D() = default;
  Grid1D(double a, double b, int samples) : t0(a), t1(b), m(samples) {
    require(samples >= 2, Errc::BadConfig, "Grid1D needs at least 2 samples");
    require(a < b, Errc::BadConfig, "Grid1D needs t0 < t1");
  }

  double step() const { return (t1 - t0) / static_cast<double>(m - 1); }

  /// Sample i; the last sample is exactly t1 so grids survive text
  /// round-trips bit-for-bit.
  double at(int i) const {
    if (i == m - 1) return t1;
    return t0 + static_cast<double>(i) * (t1 - t0) / static_cast<double>(m - 1);
  }

  Vector samples() const {
    Vector t(m);
    for (int i = 0; i < m; ++i) t[i] = at(i);
    return t;
  }

  friend bool operator==(const Grid1D& a, const Grid1D& b) {
    return a.t0 == b.t0 && a.t1 == b.t1 && a.m == b.m;
  }
};

enum class CurveKind { Landscape, GeneralizedLandscape, Silhouette, APF, Unspecified };

enum class KernelFamily { Triangle, Epanechnikov, Tricube, TruncatedGaussian };

const char* kernel_name(KernelFamily family);
KernelFamily kernel_from_name(const std::string& name);

/// Peak-normalized kernel profile: K(0) = 1, support |u| <= 1.
/// The truncated Gaussian is exp(-8 u^2), a Gaussian cut at four standard
/// deviations so the profile is nearly zero at the support edge.
double kernel_profile(KernelFamily family, double u);

/// The same profile scaled to integrate to one over the plane as a radial
/// density, which is the normalization the kernel density estimator uses.
double kernel_density2d(KernelFamily family, double u);

struct CurveParams {
  KernelFamily kernel = KernelFamily::Triangle;
  double h = 0.0;       // bandwidth, when the summary has one
  double weight_p = 0.0;  // weight exponent, when the summary has one
  int dim = 0;          // homology dimension the curve was computed from
};

/// A functional summary sampled on a shared grid. orders has one row per
/// landscape order; silhouette and APF use a single row.
struct SummaryCurve {
  Grid1D grid;
  Matrix orders;  // k_max x grid.m
  CurveKind kind = CurveKind::Unspecified;
  CurveParams params;

  int k_max() const { return static_cast<int>(orders.rows()); }
};

/// Checks the hard precondition for any cross-curve arithmetic: identical
/// grids and order counts. Mismatch is an error, never silent resampling.
void require_matched(const SummaryCurve& a, const SummaryCurve& b);

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

enum class WeightKind { Unit, Sigma };

/// Specification of the curve metric d_{p,w}: p in (0, inf], with either a
/// unit weight or a supplied curve of pointwise standard deviations. The
/// sigma matrix must match the order layout of the curves it weighs.
struct MetricSpec {
  double p = kInf;
  WeightKind weight = WeightKind::Unit;
  Matrix sigma;  // k_max x m, used only when weight == Sigma

  static MetricSpec lp(double p) { return MetricSpec{p, WeightKind::Unit, {}}; }
  static MetricSpec sup() { return MetricSpec{kInf, WeightKind::Unit, {}}; }
  static MetricSpec sup_sigma(Matrix sigma) {
    return MetricSpec{kInf, WeightKind::Sigma, std::move(sigma)};
  }
};

}  // namespace tdasum

#endif
