#include "tdasum/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "tdasum/homology.hpp"
#include "tdasum/inference.hpp"
#include "tdasum/learn.hpp"
#include "tdasum/parallel.hpp"
#include "tdasum/rng.hpp"
#include "tdasum/summaries.hpp"

namespace tdasum {

namespace {

double point_segment_distance(double px, double py, double ax, double ay, double bx,
                              double by) {
  const double vx = bx - ax, vy = by - ay;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((px - ax) * vx + (py - ay) * vy) / len2, 0.0, 1.0);
  const double dx = px - (ax + t * vx), dy = py - (ay + t * vy);
  return std::sqrt(dx * dx + dy * dy);
}

struct Stick {
  double ax, ay, bx, by, half_width;
};

std::string format_h(double h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", h);
  return buf;
}

/// One order of a multi-order curve as a standalone single-row curve.
SummaryCurve single_order(const SummaryCurve& curve, int k) {
  SummaryCurve out = curve;
  out.orders = curve.orders.row(k);
  return out;
}

}  // namespace

ScalarField stix(const StixConfig& config) {
  require(config.n_sticks >= 0, Errc::BadConfig, "n_sticks must be non-negative");
  require(config.thickness_df > 0.0, Errc::BadConfig, "thickness_df must be positive");
  require(config.rows >= 1 && config.cols >= 1, Errc::BadConfig, "image must be at least 1x1");

  // Widths are drawn in abstract line-width units and cover
  // w * (rows/512) pixels at the raster, i.e. w/512 box units regardless of
  // resolution. Stick i consumes stream 2i (endpoints) and 2i+1 (width).
  std::vector<Stick> sticks(static_cast<std::size_t>(config.n_sticks));
  for (std::size_t i = 0; i < sticks.size(); ++i) {
    Rng endpoints(config.seed, 2 * i);
    sticks[i].ax = endpoints.uniform();
    sticks[i].ay = endpoints.uniform();
    sticks[i].bx = endpoints.uniform();
    sticks[i].by = endpoints.uniform();
    Rng width(config.seed, 2 * i + 1);
    sticks[i].half_width = width.chi_squared(config.thickness_df) / 1024.0;
  }

  ScalarField field(config.rows, config.cols, config.background, Extent{0.0, 0.0, 1.0, 1.0});
  field.source = "stix";
  const double pixel_diag =
      std::sqrt(1.0 / static_cast<double>(config.rows * config.rows) +
                1.0 / static_cast<double>(config.cols * config.cols));
  for (Eigen::Index r = 0; r < config.rows; ++r) {
    const double py = field.cell_center_y(r);
    for (Eigen::Index c = 0; c < config.cols; ++c) {
      const double px = field.cell_center_x(c);
      double level = config.background;
      for (const Stick& s : sticks) {
        const double d = point_segment_distance(px, py, s.ax, s.ay, s.bx, s.by);
        if (config.antialias) {
          // Coverage ramp one pixel diagonal wide around the capsule edge.
          const double coverage = std::clamp(0.5 + (s.half_width - d) / pixel_diag, 0.0, 1.0);
          level = std::max(level, config.background +
                                      coverage * (config.foreground - config.background));
        } else if (d <= s.half_width) {
          level = std::max(level, config.foreground);
        }
      }
      field.values(r, c) = level;
    }
  }
  return field;
}

PointCloud gland(const GlandConfig& config) {
  require(config.n_points >= 1, Errc::BadConfig, "n_points must be positive");
  require(config.irregularity >= 0.0 && config.irregularity <= 1.0, Errc::BadConfig,
          "irregularity must be in [0, 1]");
  const double sigma = config.jitter_sigma();
  require(config.radius > 0.0 && config.radius + 4.0 * sigma < 0.5, Errc::BadConfig,
          "radius plus jitter must fit inside the unit box");

  PointCloud cloud;
  cloud.points.resize(config.n_points, 2);
  for (int i = 0; i < config.n_points; ++i) {
    Rng rng(config.seed, static_cast<std::uint64_t>(i));
    if (rng.uniform() < config.irregularity) {
      cloud.points(i, 0) = rng.uniform();
      cloud.points(i, 1) = rng.uniform();
    } else {
      const double angle = 2.0 * 3.141592653589793 * rng.uniform();
      const double z = std::clamp(rng.normal(), -4.0, 4.0);
      const double r = config.radius + sigma * z;
      cloud.points(i, 0) = 0.5 + r * std::cos(angle);
      cloud.points(i, 1) = 0.5 + r * std::sin(angle);
    }
  }
  return cloud;
}

PValueTable stix_experiment(const StixExperimentConfig& config) {
  require(config.images_per_group >= 1 && config.reps >= 1 && config.B >= 1, Errc::BadConfig,
          "counts must be at least 1");
  require(config.summary.dim == 0 || config.summary.dim == 1, Errc::BadDim,
          "summary dim must be 0 or 1");

  PValueTable table;
  for (int k = 1; k <= config.summary.landscape_k; ++k)
    table.columns.push_back("landscape_k" + std::to_string(k));
  for (const double h : config.summary.glandscape_h)
    for (int k = 1; k <= config.summary.glandscape_k; ++k)
      table.columns.push_back("glandscape_h" + format_h(h) + "_k" + std::to_string(k));
  table.p_values.resize(config.reps, static_cast<Eigen::Index>(table.columns.size()));

  const LoessSpec loess{config.loess_fraction};
  parallel_for(static_cast<std::size_t>(config.reps), config.threads, [&](std::size_t rep) {
    // Both groups' diagrams for this repetition.
    std::vector<PersistenceDiagram> diagrams[2];
    for (int group = 0; group < 2; ++group) {
      for (int img = 0; img < config.images_per_group; ++img) {
        StixConfig image = config.image;
        image.thickness_df = group == 0 ? config.null_df : config.alt_df;
        image.seed = mix_seed(config.seed, rep, static_cast<std::uint64_t>(group),
                              static_cast<std::uint64_t>(img));
        const ScalarField smoothed = loess_smooth(stix(image), loess);
        diagrams[group].push_back(superlevel_diagram(smoothed, config.summary.dim));
      }
    }

    // Shared evaluation grid across both groups of this repetition.
    double lo = 0.0, hi = 1.0;
    bool first = true;
    for (const auto& group : diagrams)
      for (const auto& d : group)
        for (const auto& pt : d.points) {
          if (first || pt.birth < lo) lo = pt.birth;
          if (first || pt.death > hi) hi = pt.death;
          first = false;
        }
    double pad = 0.05 * (hi - lo);
    if (pad == 0.0) pad = 0.5;
    const Grid1D grid(lo - pad, hi + pad, config.summary.grid_m);

    Eigen::Index col = 0;
    auto run_tests = [&](const std::vector<SummaryCurve> (&curves)[2], int k_count) {
      for (int k = 0; k < k_count; ++k) {
        std::vector<SummaryCurve> a, b;
        for (const auto& c : curves[0]) a.push_back(single_order(c, k));
        for (const auto& c : curves[1]) b.push_back(single_order(c, k));
        const TestResult res =
            permutation_test(a, b, config.metric, config.B,
                             mix_seed(config.seed, rep, 1000 + static_cast<std::uint64_t>(col)), 1);
        table.p_values(static_cast<Eigen::Index>(rep), col++) = res.p_value;
      }
    };

    {
      std::vector<SummaryCurve> curves[2];
      for (int g = 0; g < 2; ++g)
        for (const auto& d : diagrams[g])
          curves[g].push_back(landscape(d, config.summary.dim, config.summary.landscape_k, grid));
      run_tests(curves, config.summary.landscape_k);
    }
    for (const double h : config.summary.glandscape_h) {
      std::vector<SummaryCurve> curves[2];
      for (int g = 0; g < 2; ++g)
        for (const auto& d : diagrams[g])
          curves[g].push_back(generalized_landscape(d, config.summary.dim,
                                                    config.summary.glandscape_kernel, h,
                                                    config.summary.glandscape_k, grid));
      run_tests(curves, config.summary.glandscape_k);
    }
  });
  return table;
}

GlandExperimentResult gland_experiment(const GlandExperimentConfig& config) {
  require(config.train_per_type >= 2 && config.test_per_type >= 1, Errc::BadConfig,
          "need at least 2 training and 1 test gland per type");
  require(config.type_irregularities.size() >= 2, Errc::BadConfig,
          "need at least two gland types");
  const auto types = static_cast<int>(config.type_irregularities.size());

  KdeSpec kde_spec;
  kde_spec.kernel = KernelFamily::TruncatedGaussian;
  kde_spec.h = config.kde_h;
  kde_spec.rows = config.kde_grid;
  kde_spec.cols = config.kde_grid;
  kde_spec.extent = Extent{0.0, 0.0, 1.0, 1.0};

  // Diagrams first: the curve grid is shared and depends on all of them.
  const int n_train = types * config.train_per_type;
  const int n_test = types * config.test_per_type;
  std::vector<PersistenceDiagram> diagrams(static_cast<std::size_t>(n_train + n_test));
  std::vector<int> labels(diagrams.size());
  parallel_for(diagrams.size(), config.threads, [&](std::size_t i) {
    const bool is_test = static_cast<int>(i) >= n_train;
    const int local = is_test ? static_cast<int>(i) - n_train : static_cast<int>(i);
    const int per = is_test ? config.test_per_type : config.train_per_type;
    const int type = local / per;
    GlandConfig g;
    g.n_points = config.n_points;
    g.radius = config.radius;
    g.irregularity = config.type_irregularities[static_cast<std::size_t>(type)];
    g.seed = mix_seed(config.seed, is_test ? 1 : 0, static_cast<std::uint64_t>(type),
                      static_cast<std::uint64_t>(local % per));
    diagrams[i] = point_cloud_diagram(gland(g), kde_spec, config.dim);
    labels[i] = type;
  });

  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (const auto& d : diagrams)
    for (const auto& pt : d.points) {
      if (first || pt.birth < lo) lo = pt.birth;
      if (first || pt.death > hi) hi = pt.death;
      first = false;
    }
  double pad = 0.05 * (hi - lo);
  if (pad == 0.0) pad = 0.5;
  const Grid1D grid(lo - pad, hi + pad, config.grid_m);

  GlandExperimentResult result;
  std::vector<SummaryCurve> curves(diagrams.size());
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    try {
      curves[i] = silhouette(diagrams[i], config.dim, config.silhouette_p, grid);
    } catch (const Error& e) {
      if (e.code() != Errc::EmptySilhouette) throw;
      // No feature of this dimension: the natural embedding is the zero curve.
      curves[i].grid = grid;
      curves[i].kind = CurveKind::Silhouette;
      curves[i].orders = Matrix::Zero(1, grid.m);
      ++result.empty_summaries;
    }
  }

  LabeledCurveSet train;
  train.curves.assign(curves.begin(), curves.begin() + n_train);
  train.labels.assign(labels.begin(), labels.begin() + n_train);

  const MetricSpec metric = MetricSpec::lp(config.metric_p);
  const auto [k, err] = loocv_select_k(train, config.k_candidates, metric, config.threads);
  result.chosen_k = k;
  result.loocv_error = err;

  result.confusion = Matrix::Zero(types, types);
  result.predicted.resize(static_cast<std::size_t>(n_test));
  std::vector<int> predictions(static_cast<std::size_t>(n_test));
  parallel_for(static_cast<std::size_t>(n_test), config.threads, [&](std::size_t q) {
    predictions[q] = knn_classify(train, curves[static_cast<std::size_t>(n_train) + q], k, metric);
  });
  int correct = 0;
  for (int q = 0; q < n_test; ++q) {
    const int actual = labels[static_cast<std::size_t>(n_train + q)];
    result.predicted[static_cast<std::size_t>(q)] = predictions[static_cast<std::size_t>(q)];
    result.confusion(actual, predictions[static_cast<std::size_t>(q)]) += 1.0;
    if (predictions[static_cast<std::size_t>(q)] == actual) ++correct;
  }
  result.test_accuracy = static_cast<double>(correct) / static_cast<double>(n_test);
  return result;
}

}  // namespace tdasum
