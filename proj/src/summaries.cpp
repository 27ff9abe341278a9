#include "tdasum/summaries.hpp"

#include <algorithm>
#include <vector>

namespace tdasum {

namespace {

// Shared kmax evaluation: row k-1 of the output is the k-th largest of
// per-feature values at each grid point, zero when fewer than k features.
template <typename FeatureValue>
Matrix kmax_rows(std::size_t n_features, int k_max, const Grid1D& grid,
                 const FeatureValue& feature_value) {
  Matrix rows = Matrix::Zero(k_max, grid.m);
  std::vector<double> vals(n_features);
  for (int i = 0; i < grid.m; ++i) {
    const double t = grid.at(i);
    for (std::size_t j = 0; j < n_features; ++j) vals[j] = feature_value(j, t);
    const int take = std::min<int>(k_max, static_cast<int>(n_features));
    std::partial_sort(vals.begin(), vals.begin() + take, vals.end(), std::greater<>());
    for (int k = 0; k < take; ++k) rows(k, i) = std::max(0.0, vals[k]);
  }
  return rows;
}

}  // namespace

Grid1D default_grid(const PersistenceDiagram& diagram, int m) {
  if (diagram.empty()) return Grid1D(0.0, 1.0, m);
  double lo = diagram.points.front().birth, hi = diagram.points.front().death;
  for (const auto& pt : diagram.points) {
    lo = std::min(lo, pt.birth);
    hi = std::max(hi, pt.death);
  }
  double pad = 0.05 * (hi - lo);
  if (pad == 0.0) pad = 0.5;
  return Grid1D(lo - pad, hi + pad, m);
}

SummaryCurve landscape(const PersistenceDiagram& diagram, int dim, int k_max,
                       const Grid1D& grid) {
  require(k_max >= 1, Errc::BadK, "landscape needs k_max >= 1");
  const PersistenceDiagram d = filter_by_dim(diagram, dim);
  SummaryCurve curve;
  curve.grid = grid;
  curve.kind = CurveKind::Landscape;
  curve.params.dim = dim;
  curve.orders = kmax_rows(d.size(), k_max, grid, [&](std::size_t j, double t) {
    return tent(d.points[j].birth, d.points[j].death, t);
  });
  return curve;
}

SummaryCurve generalized_landscape(const PersistenceDiagram& diagram, int dim,
                                   KernelFamily kernel, double h, int k_max,
                                   const Grid1D& grid) {
  require(h > 0.0, Errc::BadBandwidth, "generalized landscape bandwidth must be positive");
  require(k_max >= 1, Errc::BadK, "generalized landscape needs k_max >= 1");
  const PersistenceDiagram d = filter_by_dim(diagram, dim);
  SummaryCurve curve;
  curve.grid = grid;
  curve.kind = CurveKind::GeneralizedLandscape;
  curve.params.kernel = kernel;
  curve.params.h = h;
  curve.params.dim = dim;
  curve.orders = kmax_rows(d.size(), k_max, grid, [&](std::size_t j, double t) {
    return kernel_tent(kernel, h, d.points[j].birth, d.points[j].death, t);
  });
  return curve;
}

SummaryCurve silhouette(const PersistenceDiagram& diagram, int dim, double p,
                        const Grid1D& grid) {
  require(p > 0.0, Errc::BadP, "silhouette weight exponent must be positive");
  const PersistenceDiagram d = filter_by_dim(diagram, dim);

  double total_weight = 0.0;
  for (const auto& pt : d.points) total_weight += std::pow(std::abs(pt.lifetime()), p);
  require(total_weight > 0.0, Errc::EmptySilhouette,
          "silhouette needs a feature with positive lifetime");

  SummaryCurve curve;
  curve.grid = grid;
  curve.kind = CurveKind::Silhouette;
  curve.params.weight_p = p;
  curve.params.dim = dim;
  curve.orders = Matrix::Zero(1, grid.m);
  for (int i = 0; i < grid.m; ++i) {
    const double t = grid.at(i);
    double acc = 0.0;
    for (const auto& pt : d.points) {
      acc += std::pow(std::abs(pt.lifetime()), p) * tent(pt.birth, pt.death, t);
    }
    curve.orders(0, i) = acc / total_weight;
  }
  return curve;
}

SummaryCurve apf(const PersistenceDiagram& diagram, int dim, const Grid1D& grid) {
  const PersistenceDiagram d = filter_by_dim(diagram, dim);
  SummaryCurve curve;
  curve.grid = grid;
  curve.kind = CurveKind::APF;
  curve.params.dim = dim;
  curve.orders = Matrix::Zero(1, grid.m);
  for (int i = 0; i < grid.m; ++i) {
    const double t = grid.at(i);
    double acc = 0.0;
    for (const auto& pt : d.points) {
      if (pt.birth + pt.death <= 2.0 * t) acc += pt.lifetime();
    }
    curve.orders(0, i) = acc;
  }
  return curve;
}

SummarySurface intensity(const PersistenceDiagram& diagram, KernelFamily kernel, double h,
                         double p_weight, const Grid1D& birth_grid, const Grid1D& death_grid) {
  require(h > 0.0, Errc::BadBandwidth, "intensity bandwidth must be positive");
  std::size_t off_diagonal = 0;
  for (const auto& pt : diagram.points) {
    if (pt.death > pt.birth) ++off_diagonal;
  }
  require(off_diagonal > 0, Errc::EmptyDiagram,
          "intensity needs at least one off-diagonal point");

  SummarySurface surface;
  surface.birth_grid = birth_grid;
  surface.death_grid = death_grid;
  surface.params.kernel = kernel;
  surface.params.h = h;
  surface.params.weight_p = p_weight;
  surface.values = Matrix::Zero(birth_grid.m, death_grid.m);
  const double inv_count = 1.0 / static_cast<double>(off_diagonal);
  for (int i = 0; i < birth_grid.m; ++i) {
    const double t = birth_grid.at(i);
    for (int j = 0; j < death_grid.m; ++j) {
      const double s = death_grid.at(j);
      double acc = 0.0;
      for (const auto& pt : diagram.points) {
        if (pt.death <= pt.birth) continue;
        const double db = pt.birth - t;
        const double dd = pt.death - s;
        const double u = std::sqrt(db * db + dd * dd) / h;
        if (u > 1.0) continue;
        acc += std::pow(std::abs(pt.lifetime()), p_weight) * kernel_profile(kernel, u);
      }
      surface.values(i, j) = acc * inv_count;
    }
  }
  return surface;
}

Vector persistence_image(const SummarySurface& surface) {
  const Eigen::Index rows = surface.values.rows(), cols = surface.values.cols();
  Vector flat(rows * cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) flat[r * cols + c] = surface.values(r, c);
  return flat;
}

}  // namespace tdasum
