// Test-only reference implementations, kept independent of the library's
// computation paths: naive pointwise summary evaluation, a plain one-matrix
// boundary reduction for diagrams, and small statistics helpers.
#ifndef TDASUM_TESTS_ORACLES_HPP
#define TDASUM_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "tdasum/core.hpp"
#include "tdasum/rng.hpp"

namespace oracles {

using tdasum::PersistenceDiagram;
using tdasum::ScalarField;

inline double tent_value(double b, double d, double t) {
  const double v = std::min(t - b, d - t);
  return std::max(0.0, v);
}

inline double kth_largest_or_zero(std::vector<double> values, int k) {
  if (static_cast<int>(values.size()) < k) return 0.0;
  std::sort(values.begin(), values.end(), std::greater<>());
  return values[static_cast<std::size_t>(k - 1)];
}

inline double landscape_value(const PersistenceDiagram& diagram, int dim, int k, double t) {
  std::vector<double> vals;
  for (const auto& pt : diagram.points)
    if (pt.dim == dim) vals.push_back(tent_value(pt.birth, pt.death, t));
  return kth_largest_or_zero(std::move(vals), k);
}

inline double glandscape_value(const PersistenceDiagram& diagram, int dim,
                               tdasum::KernelFamily kernel, double h, int k, double t) {
  std::vector<double> vals;
  for (const auto& pt : diagram.points) {
    if (pt.dim != dim) continue;
    const double x = 0.5 * (pt.birth + pt.death);
    const double y = 0.5 * (pt.death - pt.birth);
    const double u = (t - x) / h;
    vals.push_back(std::abs(u) > 1.0 ? 0.0 : y * tdasum::kernel_profile(kernel, u));
  }
  return kth_largest_or_zero(std::move(vals), k);
}

inline double silhouette_value(const PersistenceDiagram& diagram, int dim, double p, double t) {
  double num = 0.0, den = 0.0;
  for (const auto& pt : diagram.points) {
    if (pt.dim != dim) continue;
    const double w = std::pow(std::abs(pt.death - pt.birth), p);
    num += w * tent_value(pt.birth, pt.death, t);
    den += w;
  }
  return num / den;
}

inline double apf_value(const PersistenceDiagram& diagram, int dim, double t) {
  double acc = 0.0;
  for (const auto& pt : diagram.points) {
    if (pt.dim != dim) continue;
    if (pt.birth + pt.death <= 2.0 * t) acc += pt.death - pt.birth;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Plain boundary-matrix reduction over the whole complex, no fast paths.
// Cells are the vertices, edges and squares of the pixel-as-vertex cubical
// complex; each cell's (negated) value is the max over its vertices.
// ---------------------------------------------------------------------------
inline PersistenceDiagram naive_reduction_diagram(const ScalarField& field, int max_dim) {
  const Eigen::Index R = field.rows(), C = field.cols();
  struct Cell {
    double value;
    int dim;
    std::size_t id;
    std::vector<std::size_t> boundary;  // cell ids
  };
  std::vector<Cell> cells;
  const auto vid = [&](Eigen::Index r, Eigen::Index c) {
    return static_cast<std::size_t>(r * C + c);
  };
  const std::size_t nv = static_cast<std::size_t>(R * C);
  for (Eigen::Index r = 0; r < R; ++r)
    for (Eigen::Index c = 0; c < C; ++c)
      cells.push_back({-field.values(r, c), 0, vid(r, c), {}});
  std::size_t next = nv;
  for (Eigen::Index r = 0; r < R; ++r)
    for (Eigen::Index c = 0; c + 1 < C; ++c) {
      cells.push_back({std::max(cells[vid(r, c)].value, cells[vid(r, c + 1)].value), 1, next++,
                       {vid(r, c), vid(r, c + 1)}});
    }
  for (Eigen::Index r = 0; r + 1 < R; ++r)
    for (Eigen::Index c = 0; c < C; ++c) {
      cells.push_back({std::max(cells[vid(r, c)].value, cells[vid(r + 1, c)].value), 1, next++,
                       {vid(r, c), vid(r + 1, c)}});
    }
  const std::size_t hedge0 = nv;
  const auto hid = [&](Eigen::Index r, Eigen::Index c) {
    return hedge0 + static_cast<std::size_t>(r * (C - 1) + c);
  };
  const std::size_t vedge0 = hedge0 + static_cast<std::size_t>(R * (C - 1));
  const auto vidge = [&](Eigen::Index r, Eigen::Index c) {
    return vedge0 + static_cast<std::size_t>(r * C + c);
  };
  for (Eigen::Index r = 0; r + 1 < R; ++r)
    for (Eigen::Index c = 0; c + 1 < C; ++c) {
      std::vector<std::size_t> bd = {hid(r, c), hid(r + 1, c), vidge(r, c), vidge(r, c + 1)};
      double v = cells[bd[0]].value;
      for (const auto b : bd) v = std::max(v, cells[b].value);
      cells.push_back({v, 2, next++, bd});
    }

  // Filtration order: (value, dim, id) ascending.
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cells[a].value != cells[b].value) return cells[a].value < cells[b].value;
    if (cells[a].dim != cells[b].dim) return cells[a].dim < cells[b].dim;
    return cells[a].id < cells[b].id;
  });
  std::vector<std::size_t> pos(cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

  // Standard reduction of the full boundary matrix.
  std::vector<std::vector<std::size_t>> col(cells.size());
  std::vector<long> owner(cells.size(), -1);  // pivot position -> column
  std::vector<bool> is_death(cells.size(), false), is_birth_paired(cells.size(), false);
  PersistenceDiagram out;
  out.orientation = tdasum::Orientation::SuperlevelNegated;

  for (std::size_t i = 0; i < order.size(); ++i) {
    const Cell& cell = cells[order[i]];
    std::vector<std::size_t> cur;
    for (const auto b : cell.boundary) cur.push_back(pos[b]);
    std::sort(cur.begin(), cur.end());
    while (!cur.empty() && owner[cur.back()] >= 0) {
      const auto& other = col[static_cast<std::size_t>(owner[cur.back()])];
      std::vector<std::size_t> merged;
      std::set_symmetric_difference(cur.begin(), cur.end(), other.begin(), other.end(),
                                    std::back_inserter(merged));
      cur.swap(merged);
    }
    if (!cur.empty()) {
      const std::size_t pivot = cur.back();
      owner[pivot] = static_cast<long>(i);
      is_death[i] = true;
      is_birth_paired[pivot] = true;
      const Cell& birth = cells[order[pivot]];
      if (cell.value > birth.value && birth.dim <= max_dim) {
        out.points.push_back(
            tdasum::DiagramPoint{birth.dim, birth.value, cell.value, false});
      }
    }
    col[i] = std::move(cur);
  }
  // Unpaired non-death cells are essential; finitize at the max negated
  // value (the global minimum of the field).
  const double finitize_at = -field.values.minCoeff();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Cell& cell = cells[order[i]];
    if (!is_death[i] && !is_birth_paired[i] && cell.dim <= max_dim) {
      out.points.push_back(tdasum::DiagramPoint{cell.dim, cell.value, finitize_at, true});
    }
  }
  return out;
}

// Kahan-compensated mean across a set of values.
inline double kahan_mean(const std::vector<double>& values) {
  double sum = 0.0, comp = 0.0;
  for (const double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(values.size());
}

// Kolmogorov-Smirnov sup distance between a sample and Uniform(0, 1).
inline double ks_uniform_distance(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double u = std::clamp(sample[i], 0.0, 1.0);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - u));
    d = std::max(d, std::abs(u - static_cast<double>(i) / n));
  }
  return d;
}

// Random diagram with up to max_points points, births and deaths in
// [lo, hi], all in the given homology dimension.
inline PersistenceDiagram random_diagram(tdasum::Rng& rng, int max_points, double lo,
                                         double hi, int dim = 0) {
  PersistenceDiagram d;
  const auto n = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_points) + 1));
  for (int i = 0; i < n; ++i) {
    double a = rng.uniform(lo, hi), b = rng.uniform(lo, hi);
    if (a > b) std::swap(a, b);
    d.points.push_back(tdasum::DiagramPoint{dim, a, b, false});
  }
  return d;
}

inline ScalarField random_field(tdasum::Rng& rng, Eigen::Index rows, Eigen::Index cols,
                                int distinct_values) {
  ScalarField f(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      f.values(r, c) = static_cast<double>(
          rng.uniform_index(static_cast<std::uint64_t>(distinct_values)));
  return f;
}

}  // namespace oracles

#endif
