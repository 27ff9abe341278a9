#ifndef TDASUM_SUMMARIES_HPP
#define TDASUM_SUMMARIES_HPP

#include "tdasum/core.hpp"

namespace tdasum {

/// Bivariate summary over the (birth, death) plane.
struct SummarySurface {
  Grid1D birth_grid;
  Grid1D death_grid;
  Matrix values;  // birth_grid.m x death_grid.m
  CurveParams params;
};

/// Tent function of one diagram point: min(t - b, d - t) clamped at zero.
inline double tent(double birth, double death, double t) {
  return std::max(0.0, std::min(t - birth, death - t));
}

/// A diagram point after the 45-degree rotation: x is the feature midpoint,
/// y its half-lifetime (non-negative for canonical diagrams).
struct RotatedPoint {
  double x;
  double y;
};

inline RotatedPoint rotated(const DiagramPoint& pt) {
  return {0.5 * (pt.birth + pt.death), 0.5 * (pt.death - pt.birth)};
}

/// Kernel bump through the rotated point (x_j, y_j):
/// y_j * K((t - x_j)/h) / K(0), zero outside |t - x_j| <= h.
inline double kernel_tent(KernelFamily kernel, double h, double birth, double death, double t) {
  const auto [x, y] = rotated(DiagramPoint{0, birth, death, false});
  const double u = (t - x) / h;
  if (std::abs(u) > 1.0) return 0.0;
  return y * kernel_profile(kernel, u);
}

/// Grid covering [min birth, max death] of the diagram padded 5% per side,
/// with m samples (default 512). Falls back to [0, 1] for empty diagrams.
Grid1D default_grid(const PersistenceDiagram& diagram, int m = 512);

/// Persistence landscape: row k-1 holds the k-th largest tent value at each
/// grid point, zero when fewer than k features exist.
SummaryCurve landscape(const PersistenceDiagram& diagram, int dim, int k_max,
                       const Grid1D& grid);

/// Landscape with the tent replaced by a kernel bump of bandwidth h.
SummaryCurve generalized_landscape(const PersistenceDiagram& diagram, int dim,
                                   KernelFamily kernel, double h, int k_max,
                                   const Grid1D& grid);

/// Lifetime-weighted average of the tents with weight |d - b|^p.
SummaryCurve silhouette(const PersistenceDiagram& diagram, int dim, double p,
                        const Grid1D& grid);

/// Accumulative persistence function: sum of lifetimes of features whose
/// midpoint has been passed, (b + d) <= 2t inclusive.
SummaryCurve apf(const PersistenceDiagram& diagram, int dim, const Grid1D& grid);

/// Persistence intensity surface:
/// (1/|D|) sum_j w(d_j - b_j) K(dist((b_j, d_j), (t, s)) / h), w(l) = |l|^p.
/// |D| counts the off-diagonal points (death > birth); diagrams without any
/// are rejected since the 1/|D| factor is undefined.
SummarySurface intensity(const PersistenceDiagram& diagram, KernelFamily kernel, double h,
                         double p_weight, const Grid1D& birth_grid, const Grid1D& death_grid);

/// Row-major flattening of a surface into a vector.
Vector persistence_image(const SummarySurface& surface);

}  // namespace tdasum

#endif
