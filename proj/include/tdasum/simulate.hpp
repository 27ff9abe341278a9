#ifndef TDASUM_SIMULATE_HPP
#define TDASUM_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tdasum/core.hpp"
#include "tdasum/smoothing.hpp"

namespace tdasum {

/// Pick-up-sticks image simulator: n_sticks segments with uniform endpoints
/// in the unit box and chi-squared widths. A width draw w covers the pixels
/// within w * (rows/512) / 2 pixels of the segment (so the physical stick
/// width is w/512 box units at any resolution). Hard rasterization paints
/// exactly two intensity levels; the anti-aliased mode ramps intensity with
/// coverage near the capsule edge.
struct StixConfig {
  int n_sticks = 0;
  double thickness_df = 5.0;
  Eigen::Index rows = 64;
  Eigen::Index cols = 64;
  double foreground = 1.0;
  double background = 0.0;
  std::uint64_t seed = 0;
  bool antialias = false;
};

ScalarField stix(const StixConfig& config);

/// Simplified gland point generator: with probability (1 - irregularity) a
/// point lies on a circle of the given radius with radial Gaussian jitter
/// (sigma = 0.05 * radius, clamped at 4 sigma); otherwise it is uniform in
/// the unit box. irregularity 0 is a clean ring, 1 is pure noise.
struct GlandConfig {
  int n_points = 200;
  double radius = 0.3;
  double irregularity = 0.0;
  std::uint64_t seed = 0;

  double jitter_sigma() const { return 0.05 * radius; }
};

PointCloud gland(const GlandConfig& config);

/// Which functional summaries a two-sample experiment evaluates, one test
/// per landscape order and per generalized-landscape (bandwidth, order).
struct SummarySpec {
  int dim = 1;
  int landscape_k = 3;
  std::vector<double> glandscape_h;
  int glandscape_k = 3;
  KernelFamily glandscape_kernel = KernelFamily::Triangle;
  int grid_m = 256;
};

struct StixExperimentConfig {
  double null_df = 5.0;
  double alt_df = 5.0;
  int images_per_group = 8;
  int reps = 20;
  int B = 200;
  StixConfig image;  // n_sticks, rows, cols, intensities (seed is derived)
  double loess_fraction = 0.001;
  SummarySpec summary;
  MetricSpec metric = MetricSpec::sup();
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Table of permutation p-values, one row per repetition and one column per
/// summary in the spec.
struct PValueTable {
  std::vector<std::string> columns;
  Matrix p_values;  // reps x columns
};

/// Full two-sample pipeline per repetition: generate both groups of STIX
/// images, loess-smooth, compute superlevel diagrams, summarize, and run
/// the permutation test per summary column. Deterministic given the seed.
PValueTable stix_experiment(const StixExperimentConfig& config);

/// Gland classification experiment: generate labeled train and test sets of
/// gland clouds (one class per entry of type_irregularities), push each
/// through kde -> superlevel diagram -> silhouette, select k by LOOCV on
/// the training set, classify the test set, and tabulate the confusion
/// matrix (rows: actual class, columns: predicted).
struct GlandExperimentConfig {
  int train_per_type = 50;
  int test_per_type = 10;
  std::vector<double> type_irregularities = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
  int n_points = 300;
  double radius = 0.3;
  double kde_h = 0.1;
  Eigen::Index kde_grid = 48;
  double silhouette_p = 1.0;
  int dim = 1;
  int grid_m = 256;
  double metric_p = 2.0;
  std::vector<int> k_candidates = {1, 3, 5, 7};
  std::uint64_t seed = 0;
  int threads = 1;
};

struct GlandExperimentResult {
  Matrix confusion;  // counts, types x types
  int chosen_k = 0;
  double loocv_error = 0.0;
  double test_accuracy = 0.0;
  std::vector<int> predicted;  // per test item, type-major order
  int empty_summaries = 0;     // items that fell back to a zero curve
};

GlandExperimentResult gland_experiment(const GlandExperimentConfig& config);

}  // namespace tdasum

#endif
