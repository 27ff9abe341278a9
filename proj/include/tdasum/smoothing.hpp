#ifndef TDASUM_SMOOTHING_HPP
#define TDASUM_SMOOTHING_HPP

#include <optional>

#include "tdasum/core.hpp"

namespace tdasum {

/// Kernel density estimation onto a fixed output grid. The kernel is the
/// density-normalized radial profile with support radius h in data units.
/// When extent is unset it defaults to the cloud's bounding box padded by
/// 3h per side.
struct KdeSpec {
  KernelFamily kernel = KernelFamily::TruncatedGaussian;
  double h = 0.1;
  Eigen::Index rows = 64;
  Eigen::Index cols = 64;
  std::optional<Extent> extent;
};

/// Local quadratic regression smoothing with an adaptive bandwidth covering
/// a fraction of the nearest pixels (default 0.1%). The neighbor count is
/// clamped below at 6, the minimum for a 2D quadratic fit.
struct LoessSpec {
  double neighbor_fraction = 0.001;
};

ScalarField kde(const PointCloud& points, const KdeSpec& spec);

ScalarField loess_smooth(const ScalarField& field, const LoessSpec& spec);

/// kde followed by superlevel_diagram.
PersistenceDiagram point_cloud_diagram(const PointCloud& points, const KdeSpec& spec,
                                       int max_dim);

}  // namespace tdasum

#endif
