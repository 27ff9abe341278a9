#include "tdasum/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tdasum/homology.hpp"

namespace tdasum {

namespace {

double tricube(double u) {
  if (u >= 1.0) return 0.0;
  const double w = 1.0 - u * u * u;
  return w * w * w;
}

}  // namespace

ScalarField kde(const PointCloud& points, const KdeSpec& spec) {
  require(points.size() > 0, Errc::EmptyCloud, "kde needs at least one point");
  require(points.dim() == 2, Errc::BadConfig, "kde supports 2D clouds");
  require(spec.h > 0.0, Errc::BadBandwidth, "kde bandwidth must be positive");
  require(spec.rows >= 1 && spec.cols >= 1, Errc::BadConfig, "kde output grid is degenerate");

  Extent ext;
  if (spec.extent) {
    ext = *spec.extent;
    require(ext.width() > 0.0 && ext.height() > 0.0, Errc::BadConfig, "kde extent is degenerate");
  } else {
    const double pad = 3.0 * spec.h;
    ext.x0 = points.points.col(0).minCoeff() - pad;
    ext.x1 = points.points.col(0).maxCoeff() + pad;
    ext.y0 = points.points.col(1).minCoeff() - pad;
    ext.y1 = points.points.col(1).maxCoeff() + pad;
  }

  ScalarField field(spec.rows, spec.cols, 0.0, ext);
  const double cw = ext.width() / static_cast<double>(spec.cols);
  const double ch = ext.height() / static_cast<double>(spec.rows);
  const double inv_nh2 =
      1.0 / (static_cast<double>(points.size()) * spec.h * spec.h);

  // Scatter each point into the cells its support window overlaps; the
  // kernel has support radius h, so the window is h wide per side.
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    const double px = points.points(i, 0);
    const double py = points.points(i, 1);
    const auto c_lo = static_cast<Eigen::Index>(std::floor((px - spec.h - ext.x0) / cw - 0.5));
    const auto c_hi = static_cast<Eigen::Index>(std::ceil((px + spec.h - ext.x0) / cw - 0.5));
    const auto r_lo = static_cast<Eigen::Index>(std::floor((py - spec.h - ext.y0) / ch - 0.5));
    const auto r_hi = static_cast<Eigen::Index>(std::ceil((py + spec.h - ext.y0) / ch - 0.5));
    for (Eigen::Index r = std::max<Eigen::Index>(r_lo, 0);
         r <= std::min<Eigen::Index>(r_hi, spec.rows - 1); ++r) {
      for (Eigen::Index c = std::max<Eigen::Index>(c_lo, 0);
           c <= std::min<Eigen::Index>(c_hi, spec.cols - 1); ++c) {
        const double dx = field.cell_center_x(c) - px;
        const double dy = field.cell_center_y(r) - py;
        const double u = std::sqrt(dx * dx + dy * dy) / spec.h;
        if (u <= 1.0) field.values(r, c) += kernel_density2d(spec.kernel, u) * inv_nh2;
      }
    }
  }
  field.source = "kde";
  return field;
}

ScalarField loess_smooth(const ScalarField& field, const LoessSpec& spec) {
  const Eigen::Index R = field.rows(), C = field.cols();
  const auto n_pixels = static_cast<std::size_t>(R * C);
  require(n_pixels >= 6, Errc::TooFewPixels, "loess needs at least 6 pixels");
  require(spec.neighbor_fraction > 0.0 && spec.neighbor_fraction <= 1.0, Errc::BadConfig,
          "neighbor_fraction must be in (0, 1]");

  // Adaptive bandwidth: the nearest-neighbor count, clamped below at the
  // six points a 2D quadratic fit needs.
  const auto k = std::max<std::size_t>(
      6, static_cast<std::size_t>(std::ceil(spec.neighbor_fraction * static_cast<double>(n_pixels))));
  require(k <= n_pixels, Errc::TooFewPixels, "neighbor fraction exceeds the image");

  // Offsets sorted by distance. A quarter-disc of the radius holds k pixels
  // so corner pixels find k in-bounds neighbors; thin images may still fall
  // short, in which case the radius doubles below.
  struct Offset {
    Eigen::Index dr, dc;
    double d2;
  };
  std::vector<Offset> offsets;
  const auto build_offsets = [&](Eigen::Index radius) {
    offsets.clear();
    offsets.reserve(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)));
    for (Eigen::Index dr = -radius; dr <= radius; ++dr)
      for (Eigen::Index dc = -radius; dc <= radius; ++dc)
        offsets.push_back({dr, dc, static_cast<double>(dr * dr + dc * dc)});
    std::sort(offsets.begin(), offsets.end(), [](const Offset& a, const Offset& b) {
      if (a.d2 != b.d2) return a.d2 < b.d2;
      if (a.dr != b.dr) return a.dr < b.dr;
      return a.dc < b.dc;
    });
  };
  Eigen::Index radius = static_cast<Eigen::Index>(std::ceil(
                            std::sqrt(4.0 * static_cast<double>(k) / 3.141592653589793))) +
                        3;
  build_offsets(radius);
  const Eigen::Index max_radius = std::max(R, C) - 1;

  ScalarField out = field;
  out.source = field.source.empty() ? "loess" : field.source + "/loess";

  std::vector<Eigen::Index> nr(k), nc(k);
  std::vector<double> nd(k);
  Eigen::MatrixXd A(k, 6);
  Eigen::VectorXd rhs(k);

  for (Eigen::Index r = 0; r < R; ++r) {
    for (Eigen::Index c = 0; c < C; ++c) {
      std::size_t found = 0;
      for (;;) {
        found = 0;
        for (const Offset& o : offsets) {
          const Eigen::Index rr = r + o.dr, cc = c + o.dc;
          if (rr < 0 || rr >= R || cc < 0 || cc >= C) continue;
          nr[found] = rr;
          nc[found] = cc;
          nd[found] = std::sqrt(o.d2);
          if (++found == k) break;
        }
        if (found == k || radius >= max_radius) break;
        radius = std::min(2 * radius, max_radius);
        build_offsets(radius);
      }
      require(found == k, Errc::TooFewPixels, "cannot gather enough loess neighbors");
      const double dmax = nd[k - 1];

      double wsum = 0.0, wfsum = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        const double w = tricube(nd[i] / dmax);
        const double sw = std::sqrt(w);
        const double x = static_cast<double>(nc[i] - c) / dmax;
        const double y = static_cast<double>(nr[i] - r) / dmax;
        A(i, 0) = sw;
        A(i, 1) = sw * x;
        A(i, 2) = sw * y;
        A(i, 3) = sw * x * x;
        A(i, 4) = sw * x * y;
        A(i, 5) = sw * y * y;
        rhs[i] = sw * field.values(nr[i], nc[i]);
        wsum += w;
        wfsum += w * field.values(nr[i], nc[i]);
      }

      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
      qr.setThreshold(1e-9);
      if (qr.rank() < 6) {
        // Singular local design: fall back to the weighted local mean.
        out.values(r, c) = wfsum / wsum;
      } else {
        const Eigen::VectorXd beta = qr.solve(rhs);
        out.values(r, c) = beta[0];
      }
    }
  }
  return out;
}

PersistenceDiagram point_cloud_diagram(const PointCloud& points, const KdeSpec& spec,
                                       int max_dim) {
  return superlevel_diagram(kde(points, spec), max_dim);
}

}  // namespace tdasum
