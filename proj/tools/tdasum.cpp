// tdasum: persistence diagrams of 2D fields and point clouds, functional
// summaries, and the statistics on top of them (bands, tests, kNN, MDS),
// plus the STIX and gland data generators.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tdasum/homology.hpp"
#include "tdasum/inference.hpp"
#include "tdasum/io.hpp"
#include "tdasum/learn.hpp"
#include "tdasum/parallel.hpp"
#include "tdasum/simulate.hpp"
#include "tdasum/smoothing.hpp"
#include "tdasum/summaries.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tdasum;

namespace {

constexpr const char* kVersion = "0.1.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Records one invocation: flags, input/output digests, wall time. Written
// next to the primary output as <name>.manifest.json (or manifest.json in
// an output directory).
class Manifest {
 public:
  Manifest(std::string command, std::uint64_t seed, bool has_seed)
      : command_(std::move(command)), seed_(seed), has_seed_(has_seed) {
    start_ = std::chrono::steady_clock::now();
  }

  void flag(const std::string& name, const std::string& value) { flags_[name] = value; }
  template <typename T>
  void flag(const std::string& name, T value) {
    flags_[name] = json(value);
  }
  void input(const std::string& path) { inputs_[path] = file_digest(path); }
  void output(const std::string& path) { outputs_.push_back(path); }

  void write(const std::string& manifest_path) const {
    json doc;
    doc["command"] = command_;
    doc["version"] = kVersion;
    if (has_seed_) doc["seed"] = seed_;
    doc["flags"] = flags_;
    doc["inputs"] = inputs_;
    json outs = json::object();
    for (const auto& path : outputs_) outs[path] = file_digest(path);
    doc["outputs"] = outs;
    doc["wall_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    std::ofstream out(manifest_path);
    out << doc.dump(2) << '\n';
  }

 private:
  std::string command_;
  std::uint64_t seed_;
  bool has_seed_;
  json flags_ = json::object();
  json inputs_ = json::object();
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

double parse_metric_p(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return kInf;
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw UsageError("--metric-p expects a positive number or 'inf', got '" + text + "'");
  }
}

MetricSpec build_metric(const std::string& p_text, const std::string& weight,
                        std::span<const SummaryCurve> sigma_source) {
  MetricSpec spec;
  spec.p = parse_metric_p(p_text);
  if (weight == "unit") {
    spec.weight = WeightKind::Unit;
  } else if (weight == "sigma") {
    spec.weight = WeightKind::Sigma;
    spec.sigma = variance_curve(sigma_source).orders.array().sqrt().matrix();
  } else {
    throw UsageError("--metric-weight must be 'unit' or 'sigma'");
  }
  return spec;
}

std::vector<SummaryCurve> read_curves(const std::vector<std::string>& paths, Manifest& manifest) {
  std::vector<SummaryCurve> curves;
  curves.reserve(paths.size());
  for (const auto& path : paths) {
    manifest.input(path);
    curves.push_back(read_curve_csv(path));
  }
  return curves;
}

std::string json_path_for(const std::string& out) { return out + ".manifest.json"; }

// ---------------------------------------------------------------------------
// diagram
// ---------------------------------------------------------------------------
struct DiagramArgs {
  std::string field_path, cloud_path, out;
  int max_dim = 1;
  double smooth_fraction = 0.0;
  double kde_h = 0.0;
  std::string kde_kernel = "gaussian";
  int kde_rows = 64, kde_cols = 64;
  std::vector<double> kde_extent;
};

int run_diagram(const DiagramArgs& args) {
  if (args.field_path.empty() == args.cloud_path.empty()) {
    throw UsageError("give exactly one of --field or --cloud");
  }
  Manifest manifest("diagram", 0, false);
  manifest.flag("max-dim", args.max_dim);

  PersistenceDiagram diagram;
  if (!args.field_path.empty()) {
    manifest.input(args.field_path);
    ScalarField field = read_field_text(args.field_path);
    if (args.smooth_fraction > 0.0) {
      manifest.flag("smooth", args.smooth_fraction);
      field = loess_smooth(field, LoessSpec{args.smooth_fraction});
    }
    diagram = superlevel_diagram(field, args.max_dim);
  } else {
    if (args.kde_h <= 0.0) throw UsageError("--cloud input needs --kde-h > 0");
    manifest.input(args.cloud_path);
    manifest.flag("kde-h", args.kde_h);
    manifest.flag("kde-kernel", args.kde_kernel);
    KdeSpec spec;
    spec.kernel = kernel_from_name(args.kde_kernel);
    spec.h = args.kde_h;
    spec.rows = args.kde_rows;
    spec.cols = args.kde_cols;
    if (!args.kde_extent.empty()) {
      if (args.kde_extent.size() != 4) throw UsageError("--kde-extent expects x0 y0 x1 y1");
      spec.extent = Extent{args.kde_extent[0], args.kde_extent[1], args.kde_extent[2],
                           args.kde_extent[3]};
    }
    diagram = point_cloud_diagram(read_cloud_csv(args.cloud_path), spec, args.max_dim);
  }

  write_diagram_csv(diagram, args.out);
  manifest.output(args.out);
  manifest.write(json_path_for(args.out));
  return 0;
}

// ---------------------------------------------------------------------------
// summarize
// ---------------------------------------------------------------------------
struct SummarizeArgs {
  std::string diagram_path, kind, out;
  int dim = 0;
  int k = 1;
  std::string kernel;  // resolved per kind
  double h = 0.25;
  double p = 1.0;
  double p_weight = 1.0;
  double t0 = 0.0, t1 = 0.0;
  int m = 512;
  bool have_t0 = false, have_t1 = false;
  double b0 = 0.0, b1 = 0.0, d0 = 0.0, d1 = 0.0;
  int mb = 64, md = 64;
  bool have_birth = false, have_death = false;
};

Grid1D resolve_grid(const PersistenceDiagram& diagram, const SummarizeArgs& args) {
  if (args.have_t0 != args.have_t1) throw UsageError("give both --t0 and --t1 or neither");
  if (args.have_t0) return Grid1D(args.t0, args.t1, args.m);
  return default_grid(diagram, args.m);
}

int run_summarize(const SummarizeArgs& args) {
  const bool known_kind = args.kind == "landscape" || args.kind == "glandscape" ||
                          args.kind == "silhouette" || args.kind == "apf" ||
                          args.kind == "intensity";
  if (!known_kind) {
    throw UsageError("--kind must be landscape, glandscape, silhouette, apf or intensity");
  }
  Manifest manifest("summarize", 0, false);
  manifest.input(args.diagram_path);
  manifest.flag("kind", args.kind);
  manifest.flag("dim", args.dim);
  const PersistenceDiagram diagram = read_diagram_csv(args.diagram_path);

  if (args.kind == "intensity") {
    auto bounds = [&](auto select, double fallback_lo, double fallback_hi) {
      double lo = fallback_lo, hi = fallback_hi;
      bool first = true;
      for (const auto& pt : diagram.points) {
        const double v = select(pt);
        if (first || v < lo) lo = v;
        if (first || v > hi) hi = v;
        first = false;
      }
      double pad = 0.05 * (hi - lo);
      if (pad == 0.0) pad = 0.5;
      return std::pair(lo - pad, hi + pad);
    };
    const auto [b_lo, b_hi] = bounds([](const DiagramPoint& p) { return p.birth; }, 0.0, 1.0);
    const auto [d_lo, d_hi] = bounds([](const DiagramPoint& p) { return p.death; }, 0.0, 1.0);
    const Grid1D births(args.have_birth ? args.b0 : b_lo, args.have_birth ? args.b1 : b_hi,
                        args.mb);
    const Grid1D deaths(args.have_death ? args.d0 : d_lo, args.have_death ? args.d1 : d_hi,
                        args.md);
    const auto kernel = kernel_from_name(args.kernel.empty() ? "gaussian" : args.kernel);
    const auto surface = intensity(diagram, kernel, args.h, args.p_weight, births, deaths);
    write_surface_csv(surface, args.out);
  } else {
    const Grid1D grid = resolve_grid(diagram, args);
    SummaryCurve curve;
    if (args.kind == "landscape") {
      curve = landscape(diagram, args.dim, args.k, grid);
    } else if (args.kind == "glandscape") {
      const auto kernel = kernel_from_name(args.kernel.empty() ? "triangle" : args.kernel);
      curve = generalized_landscape(diagram, args.dim, kernel, args.h, args.k, grid);
    } else if (args.kind == "silhouette") {
      curve = silhouette(diagram, args.dim, args.p, grid);
    } else if (args.kind == "apf") {
      curve = apf(diagram, args.dim, grid);
    } else {
      throw UsageError("--kind must be landscape, glandscape, silhouette, apf or intensity");
    }
    write_curve_csv(curve, args.out);
  }

  manifest.output(args.out);
  manifest.write(json_path_for(args.out));
  return 0;
}

// ---------------------------------------------------------------------------
// test / band / predict
// ---------------------------------------------------------------------------
struct TestArgs {
  std::vector<std::string> group_a, group_b;
  std::string metric_p = "inf", metric_weight = "unit", out;
  int B = 1000;
  std::uint64_t seed = 0;
  bool have_seed = false;
  bool exhaustive = false;
  bool add_one = false;
  int threads = 0;
};

int run_test(const TestArgs& args) {
  if (!args.exhaustive && !args.have_seed) {
    throw UsageError("--seed is required unless --exhaustive is given");
  }
  Manifest manifest("test", args.seed, args.have_seed);
  auto a = read_curves(args.group_a, manifest);
  auto b = read_curves(args.group_b, manifest);
  std::vector<SummaryCurve> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const MetricSpec metric = build_metric(args.metric_p, args.metric_weight, pooled);

  const TestResult result =
      args.exhaustive
          ? permutation_test_exhaustive(a, b, metric)
          : permutation_test(a, b, metric, args.B, args.seed, resolve_threads(args.threads),
                             args.add_one);

  json doc;
  doc["statistic"] = result.statistic;
  doc["p_value"] = result.p_value;
  doc["B"] = result.B;
  doc["n"] = result.n;
  doc["m"] = result.m;
  doc["exhaustive"] = result.exhaustive;
  doc["metric_p"] = args.metric_p;
  doc["metric_weight"] = args.metric_weight;
  if (args.have_seed) doc["seed"] = args.seed;
  std::ofstream(args.out) << doc.dump(2) << '\n';

  manifest.flag("B", args.B);
  manifest.flag("metric-p", args.metric_p);
  manifest.output(args.out);
  manifest.write(json_path_for(args.out));
  std::cout << "statistic " << result.statistic << "  p_value " << result.p_value << '\n';
  return 0;
}

struct BandArgs {
  std::vector<std::string> curves;
  std::string mode = "fixed", out_prefix;
  double alpha = 0.1;
  int B = 1000;
  std::uint64_t seed = 0;
  int threads = 0;
};

int run_band(const BandArgs& args) {
  Manifest manifest("band", args.seed, true);
  const auto curves = read_curves(args.curves, manifest);
  WidthMode mode;
  if (args.mode == "fixed") {
    mode = WidthMode::Fixed;
  } else if (args.mode == "variable") {
    mode = WidthMode::Variable;
  } else {
    throw UsageError("--mode must be 'fixed' or 'variable'");
  }

  const BandResult band =
      bootstrap_band(curves, args.alpha, args.B, mode, args.seed, resolve_threads(args.threads));

  const std::string center = args.out_prefix + "_center.csv";
  const std::string lower = args.out_prefix + "_lower.csv";
  const std::string upper = args.out_prefix + "_upper.csv";
  write_curve_csv(band.center, center);
  write_curve_csv(band.lower, lower);
  write_curve_csv(band.upper, upper);
  manifest.output(center);
  manifest.output(lower);
  manifest.output(upper);
  if (mode == WidthMode::Variable) {
    SummaryCurve sigma = band.center;
    sigma.orders = band.sigma;
    write_curve_csv(sigma, args.out_prefix + "_sigma.csv");
    manifest.output(args.out_prefix + "_sigma.csv");
  }

  json doc;
  doc["alpha"] = band.alpha;
  doc["width_mode"] = args.mode;
  doc["half_width"] = band.half_width;
  doc["B"] = band.B;
  doc["seed"] = band.seed;
  doc["n"] = curves.size();
  std::ofstream(args.out_prefix + ".json") << doc.dump(2) << '\n';
  manifest.output(args.out_prefix + ".json");

  manifest.flag("alpha", args.alpha);
  manifest.flag("B", args.B);
  manifest.flag("mode", args.mode);
  manifest.write(args.out_prefix + ".manifest.json");
  return 0;
}

struct PredictArgs {
  std::vector<std::string> curves;
  std::string metric_p = "inf", metric_weight = "sigma", out_prefix;
  double gamma = 0.9;
};

int run_predict(const PredictArgs& args) {
  Manifest manifest("predict", 0, false);
  const auto curves = read_curves(args.curves, manifest);
  MetricSpec metric;
  metric.p = parse_metric_p(args.metric_p);
  if (args.metric_weight == "sigma") {
    metric.weight = WeightKind::Sigma;  // filled in from the curves
  } else if (args.metric_weight != "unit") {
    throw UsageError("--metric-weight must be 'unit' or 'sigma'");
  }

  const Prediction pred = prediction_band(curves, args.gamma, metric);
  write_curve_csv(pred.center, args.out_prefix + "_center.csv");
  manifest.output(args.out_prefix + "_center.csv");
  if (pred.has_envelopes) {
    write_curve_csv(pred.lower, args.out_prefix + "_lower.csv");
    write_curve_csv(pred.upper, args.out_prefix + "_upper.csv");
    manifest.output(args.out_prefix + "_lower.csv");
    manifest.output(args.out_prefix + "_upper.csv");
  }

  json doc;
  doc["gamma"] = pred.gamma;
  doc["q_hat"] = pred.q_hat;
  doc["metric_p"] = args.metric_p;
  doc["metric_weight"] = args.metric_weight;
  doc["n"] = curves.size();
  doc["has_envelopes"] = pred.has_envelopes;
  std::ofstream(args.out_prefix + ".json") << doc.dump(2) << '\n';
  manifest.output(args.out_prefix + ".json");

  manifest.flag("gamma", args.gamma);
  manifest.write(args.out_prefix + ".manifest.json");
  return 0;
}

// ---------------------------------------------------------------------------
// classify / mds
// ---------------------------------------------------------------------------
struct ClassifyArgs {
  std::vector<std::string> train;
  std::string labels_path, out;
  std::vector<std::string> queries;
  std::string metric_p = "2", metric_weight = "unit";
  int k = 0;  // 0: select by LOOCV
  std::vector<int> k_candidates = {1, 3, 5, 7};
  int threads = 0;
};

int run_classify(const ClassifyArgs& args) {
  Manifest manifest("classify", 0, false);
  LabeledCurveSet train;
  train.curves = read_curves(args.train, manifest);
  manifest.input(args.labels_path);
  train.labels = read_labels_csv(args.labels_path);
  if (train.labels.size() != train.curves.size()) {
    fail(Errc::BadConfig, "label count does not match training curves");
  }
  const MetricSpec metric = build_metric(args.metric_p, args.metric_weight, train.curves);

  int k = args.k;
  double loocv_error = -1.0;
  if (k == 0) {
    std::tie(k, loocv_error) =
        loocv_select_k(train, args.k_candidates, metric, resolve_threads(args.threads));
  }

  std::vector<int> predicted;
  for (const auto& path : args.queries) {
    manifest.input(path);
    predicted.push_back(knn_classify(train, read_curve_csv(path), k, metric));
  }

  json doc;
  doc["k"] = k;
  if (loocv_error >= 0.0) doc["loocv_error"] = loocv_error;
  doc["labels"] = predicted;
  std::ofstream(args.out) << doc.dump(2) << '\n';
  manifest.output(args.out);
  manifest.flag("k", k);
  manifest.write(json_path_for(args.out));
  for (const int label : predicted) std::cout << label << '\n';
  return 0;
}

struct MdsArgs {
  std::vector<std::string> curves;
  std::string matrix_path, out, out_matrix;
  std::string metric_p = "2", metric_weight = "unit";
  int out_dim = 2;
  int threads = 0;
};

int run_mds(const MdsArgs& args) {
  if (args.curves.empty() == args.matrix_path.empty()) {
    throw UsageError("give curves via --curves or a --matrix, not both");
  }
  Manifest manifest("mds", 0, false);
  Matrix dm;
  if (!args.matrix_path.empty()) {
    manifest.input(args.matrix_path);
    dm = read_distance_matrix_csv(args.matrix_path);
  } else {
    const auto curves = read_curves(args.curves, manifest);
    dm = distance_matrix(curves, build_metric(args.metric_p, args.metric_weight, curves),
                         resolve_threads(args.threads));
  }
  if (!args.out_matrix.empty()) {
    write_distance_matrix_csv(dm, args.out_matrix);
    manifest.output(args.out_matrix);
  }
  const Matrix coords = classical_mds(dm, args.out_dim);
  write_embedding_csv(coords, args.out);
  manifest.output(args.out);
  manifest.flag("out-dim", args.out_dim);
  manifest.write(json_path_for(args.out));
  return 0;
}

// ---------------------------------------------------------------------------
// simulate-stix / simulate-gland
// ---------------------------------------------------------------------------
struct StixArgs {
  StixConfig config;
  std::string out;
};

int run_stix(const StixArgs& args) {
  Manifest manifest("simulate-stix", args.config.seed, true);
  const ScalarField field = stix(args.config);
  write_field_text(field, args.out);
  manifest.flag("n-sticks", args.config.n_sticks);
  manifest.flag("df", args.config.thickness_df);
  manifest.output(args.out);
  manifest.write(json_path_for(args.out));
  return 0;
}

struct GlandArgs {
  GlandConfig config;
  std::string out;
};

int run_gland(const GlandArgs& args) {
  Manifest manifest("simulate-gland", args.config.seed, true);
  const PointCloud cloud = gland(args.config);
  write_cloud_csv(cloud, args.out);
  manifest.flag("n", args.config.n_points);
  manifest.flag("irregularity", args.config.irregularity);
  manifest.output(args.out);
  manifest.write(json_path_for(args.out));
  return 0;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------
struct ConfigFile {
  std::map<std::string, std::string> values;

  static ConfigFile parse(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::BadFile, "cannot open config '" + path + "'");
    ConfigFile cfg;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
      };
      cfg.values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return cfg;
  }
};

// Declarative schema so every violation is reported before exiting.
class ConfigReader {
 public:
  explicit ConfigReader(const ConfigFile& cfg) : cfg_(cfg) {}

  std::string required(const std::string& key) {
    seen_.push_back(key);
    const auto it = cfg_.values.find(key);
    if (it == cfg_.values.end()) {
      errors_.push_back("missing required key '" + key + "'");
      return {};
    }
    return it->second;
  }

  std::string optional(const std::string& key, const std::string& fallback) {
    seen_.push_back(key);
    const auto it = cfg_.values.find(key);
    return it == cfg_.values.end() ? fallback : it->second;
  }

  double number(const std::string& key, double fallback) {
    const auto text = optional(key, "");
    if (text.empty()) return fallback;
    try {
      return text == "inf" ? kInf : std::stod(text);
    } catch (const std::exception&) {
      errors_.push_back("key '" + key + "' is not a number: '" + text + "'");
      return fallback;
    }
  }

  std::vector<double> number_list(const std::string& key, std::vector<double> fallback) {
    const auto text = optional(key, "");
    if (text.empty()) return fallback;
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        errors_.push_back("key '" + key + "' has a bad list entry: '" + item + "'");
      }
    }
    return out;
  }

  void finish() {
    for (const auto& [key, value] : cfg_.values) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        errors_.push_back("unknown key '" + key + "'");
      }
    }
    if (!errors_.empty()) {
      std::ostringstream msg;
      msg << "config errors:";
      for (const auto& e : errors_) msg << "\n  " << e;
      throw UsageError(msg.str());
    }
  }

 private:
  const ConfigFile& cfg_;
  std::vector<std::string> seen_;
  std::vector<std::string> errors_;
};

int run_experiment(const std::string& config_path, const std::string& out_dir, int threads) {
  Manifest manifest("experiment", 0, false);
  manifest.input(config_path);
  const ConfigFile cfg = ConfigFile::parse(config_path);
  ConfigReader reader(cfg);
  const std::string kind = reader.required("kind");
  fs::create_directories(out_dir);

  if (kind == "stix") {
    StixExperimentConfig exp;
    exp.seed = static_cast<std::uint64_t>(reader.number("seed", 0));
    const bool has_seed = cfg.values.count("seed") > 0;
    exp.null_df = reader.number("null_df", 5.0);
    exp.alt_df = reader.number("alt_df", 5.0);
    exp.images_per_group = static_cast<int>(reader.number("images_per_group", 8));
    exp.reps = static_cast<int>(reader.number("reps", 20));
    exp.B = static_cast<int>(reader.number("B", 200));
    exp.image.n_sticks = static_cast<int>(reader.number("n_sticks", 30));
    exp.image.rows = static_cast<Eigen::Index>(reader.number("rows", 64));
    exp.image.cols = static_cast<Eigen::Index>(reader.number("cols", 64));
    exp.image.foreground = reader.number("foreground", 1.0);
    exp.image.background = reader.number("background", 0.0);
    exp.loess_fraction = reader.number("loess_frac", 0.001);
    exp.summary.dim = static_cast<int>(reader.number("dim", 1));
    exp.summary.landscape_k = static_cast<int>(reader.number("landscape_k", 3));
    exp.summary.glandscape_h = reader.number_list("glandscape_h", {});
    exp.summary.glandscape_k = static_cast<int>(reader.number("glandscape_k", 3));
    exp.summary.grid_m = static_cast<int>(reader.number("grid_m", 256));
    exp.metric = MetricSpec::lp(reader.number("metric_p", kInf));
    if (!has_seed) reader.required("seed");
    reader.finish();
    exp.threads = resolve_threads(threads);

    const PValueTable table = stix_experiment(exp);
    const std::string out = (fs::path(out_dir) / "pvalues.csv").string();
    std::ofstream file(out);
    file << "rep";
    for (const auto& col : table.columns) file << ',' << col;
    file << '\n';
    for (Eigen::Index r = 0; r < table.p_values.rows(); ++r) {
      file << r;
      for (Eigen::Index c = 0; c < table.p_values.cols(); ++c)
        file << ',' << format_real(table.p_values(r, c));
      file << '\n';
    }
    file.close();
    manifest.output(out);
  } else if (kind == "gland") {
    GlandExperimentConfig exp;
    exp.seed = static_cast<std::uint64_t>(reader.number("seed", 0));
    const bool has_seed = cfg.values.count("seed") > 0;
    exp.train_per_type = static_cast<int>(reader.number("train_per_type", 50));
    exp.test_per_type = static_cast<int>(reader.number("test_per_type", 10));
    exp.n_points = static_cast<int>(reader.number("n_points", 300));
    exp.radius = reader.number("radius", 0.3);
    exp.kde_h = reader.number("kde_h", 0.1);
    exp.kde_grid = static_cast<Eigen::Index>(reader.number("kde_grid", 48));
    exp.silhouette_p = reader.number("silhouette_p", 1.0);
    exp.dim = static_cast<int>(reader.number("dim", 1));
    exp.grid_m = static_cast<int>(reader.number("grid_m", 256));
    exp.metric_p = reader.number("metric_p", 2.0);
    const auto ks = reader.number_list("k_candidates", {1, 3, 5, 7});
    exp.k_candidates.clear();
    for (const double k : ks) exp.k_candidates.push_back(static_cast<int>(k));
    if (!has_seed) reader.required("seed");
    reader.finish();
    exp.threads = resolve_threads(threads);

    const GlandExperimentResult result = gland_experiment(exp);
    const std::string confusion = (fs::path(out_dir) / "confusion.csv").string();
    write_distance_matrix_csv(result.confusion, confusion);
    manifest.output(confusion);

    json doc;
    doc["chosen_k"] = result.chosen_k;
    doc["loocv_error"] = result.loocv_error;
    doc["test_accuracy"] = result.test_accuracy;
    doc["empty_summaries"] = result.empty_summaries;
    const std::string summary = (fs::path(out_dir) / "summary.json").string();
    std::ofstream(summary) << doc.dump(2) << '\n';
    manifest.output(summary);
  } else {
    throw UsageError("config key 'kind' must be 'stix' or 'gland'");
  }

  manifest.write((fs::path(out_dir) / "manifest.json").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"functional summaries of persistence diagrams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  // --h is a real bandwidth option below, so help is --help only.
  app.set_help_flag("--help", "print help");
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (or TDASUM_THREADS, default 1)")
      ->capture_default_str();

  DiagramArgs diagram_args;
  auto* diagram_cmd = app.add_subcommand("diagram", "superlevel persistence diagram of a field or cloud");
  diagram_cmd->add_option("--field", diagram_args.field_path, "scalar field input (text format)");
  diagram_cmd->add_option("--cloud", diagram_args.cloud_path, "point cloud input (x,y CSV)");
  diagram_cmd->add_option("--max-dim", diagram_args.max_dim, "highest homology dimension (0 or 1)")
      ->capture_default_str();
  diagram_cmd->add_option("--smooth", diagram_args.smooth_fraction,
                          "loess neighbor fraction applied to field input first")
      ->capture_default_str();
  diagram_cmd->add_option("--kde-h", diagram_args.kde_h, "KDE bandwidth for cloud input");
  diagram_cmd->add_option("--kde-kernel", diagram_args.kde_kernel, "KDE kernel family")
      ->capture_default_str();
  diagram_cmd->add_option("--kde-rows", diagram_args.kde_rows, "KDE grid rows")->capture_default_str();
  diagram_cmd->add_option("--kde-cols", diagram_args.kde_cols, "KDE grid cols")->capture_default_str();
  diagram_cmd->add_option("--kde-extent", diagram_args.kde_extent,
                          "KDE grid extent: x0 y0 x1 y1 (default: cloud bbox + 3h)")
      ->expected(4);
  diagram_cmd->add_option("--out", diagram_args.out, "output diagram CSV")->required();

  SummarizeArgs sum_args;
  auto* sum_cmd = app.add_subcommand("summarize", "functional summary of a diagram");
  sum_cmd->set_help_flag("--help", "print help");
  sum_cmd->add_option("--diagram", sum_args.diagram_path, "diagram CSV input")->required();
  sum_cmd->add_option("--kind", sum_args.kind,
                      "landscape | glandscape | silhouette | apf | intensity")
      ->required();
  sum_cmd->add_option("--dim", sum_args.dim, "homology dimension")->capture_default_str();
  sum_cmd->add_option("--k", sum_args.k, "number of landscape orders")->capture_default_str();
  sum_cmd->add_option("--kernel", sum_args.kernel,
                      "kernel family (default: triangle for glandscape, gaussian for intensity)");
  sum_cmd->add_option("--h", sum_args.h, "kernel bandwidth")->capture_default_str();
  sum_cmd->add_option("--p", sum_args.p, "silhouette weight exponent")->capture_default_str();
  sum_cmd->add_option("--p-weight", sum_args.p_weight, "intensity weight exponent")
      ->capture_default_str();
  sum_cmd->add_option("--t0", sum_args.t0, "grid start (default: diagram range padded 5%)");
  sum_cmd->add_option("--t1", sum_args.t1, "grid end");
  sum_cmd->add_option("--m", sum_args.m, "grid samples")->capture_default_str();
  sum_cmd->add_option("--b0", sum_args.b0, "intensity birth grid start");
  sum_cmd->add_option("--b1", sum_args.b1, "intensity birth grid end");
  sum_cmd->add_option("--mb", sum_args.mb, "intensity birth samples")->capture_default_str();
  sum_cmd->add_option("--d0", sum_args.d0, "intensity death grid start");
  sum_cmd->add_option("--d1", sum_args.d1, "intensity death grid end");
  sum_cmd->add_option("--md", sum_args.md, "intensity death samples")->capture_default_str();
  sum_cmd->add_option("--out", sum_args.out, "output curve/surface CSV")->required();

  TestArgs test_args;
  auto* test_cmd = app.add_subcommand("test", "two-sample permutation test");
  test_cmd->add_option("--group-a", test_args.group_a, "curve CSVs of group A")->required();
  test_cmd->add_option("--group-b", test_args.group_b, "curve CSVs of group B")->required();
  test_cmd->add_option("--metric-p", test_args.metric_p, "metric exponent or 'inf'")
      ->capture_default_str();
  test_cmd->add_option("--metric-weight", test_args.metric_weight, "unit | sigma")
      ->capture_default_str();
  test_cmd->add_option("--B", test_args.B, "number of permutations")->capture_default_str();
  test_cmd->add_option("--seed", test_args.seed, "RNG seed (required unless --exhaustive)");
  test_cmd->add_flag("--exhaustive", test_args.exhaustive, "enumerate all relabelings");
  test_cmd->add_flag("--add-one", test_args.add_one, "add-one p-value smoothing");
  test_cmd->add_option("--out", test_args.out, "output JSON")->required();

  BandArgs band_args;
  auto* band_cmd = app.add_subcommand("band", "bootstrap confidence band for the mean curve");
  band_cmd->add_option("--curves", band_args.curves, "curve CSV inputs")->required();
  band_cmd->add_option("--alpha", band_args.alpha, "1 - confidence level")->capture_default_str();
  band_cmd->add_option("--B", band_args.B, "bootstrap replicates")->capture_default_str();
  band_cmd->add_option("--mode", band_args.mode, "fixed | variable")->capture_default_str();
  band_cmd->add_option("--seed", band_args.seed, "RNG seed")->required();
  band_cmd->add_option("--out-prefix", band_args.out_prefix, "output file prefix")->required();

  PredictArgs predict_args;
  auto* predict_cmd = app.add_subcommand("predict", "prediction band from residual quantiles");
  predict_cmd->add_option("--curves", predict_args.curves, "curve CSV inputs")->required();
  predict_cmd->add_option("--gamma", predict_args.gamma, "prediction level")->capture_default_str();
  predict_cmd->add_option("--metric-p", predict_args.metric_p, "metric exponent or 'inf'")
      ->capture_default_str();
  predict_cmd->add_option("--metric-weight", predict_args.metric_weight, "unit | sigma")
      ->capture_default_str();
  predict_cmd->add_option("--out-prefix", predict_args.out_prefix, "output file prefix")
      ->required();

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "kNN classification of curves");
  classify_cmd->add_option("--train", classify_args.train, "training curve CSVs")->required();
  classify_cmd->add_option("--labels", classify_args.labels_path, "labels CSV (id,label)")
      ->required();
  classify_cmd->add_option("--query", classify_args.queries, "curves to classify")->required();
  classify_cmd->add_option("--k", classify_args.k, "neighbor count (0: choose by LOOCV)")
      ->capture_default_str();
  classify_cmd->add_option("--k-candidates", classify_args.k_candidates,
                           "candidate ks for LOOCV")
      ->capture_default_str();
  classify_cmd->add_option("--metric-p", classify_args.metric_p, "metric exponent or 'inf'")
      ->capture_default_str();
  classify_cmd->add_option("--metric-weight", classify_args.metric_weight, "unit | sigma")
      ->capture_default_str();
  classify_cmd->add_option("--out", classify_args.out, "output JSON")->required();

  MdsArgs mds_args;
  auto* mds_cmd = app.add_subcommand("mds", "classical MDS embedding of curves");
  mds_cmd->add_option("--curves", mds_args.curves, "curve CSV inputs");
  mds_cmd->add_option("--matrix", mds_args.matrix_path, "precomputed distance matrix CSV");
  mds_cmd->add_option("--metric-p", mds_args.metric_p, "metric exponent or 'inf'")
      ->capture_default_str();
  mds_cmd->add_option("--metric-weight", mds_args.metric_weight, "unit | sigma")
      ->capture_default_str();
  mds_cmd->add_option("--out-dim", mds_args.out_dim, "embedding dimension")->capture_default_str();
  mds_cmd->add_option("--out-matrix", mds_args.out_matrix, "also write the distance matrix");
  mds_cmd->add_option("--out", mds_args.out, "output embedding CSV")->required();

  StixArgs stix_args;
  auto* stix_cmd = app.add_subcommand("simulate-stix", "pick-up-sticks image simulator");
  stix_cmd->add_option("--n-sticks", stix_args.config.n_sticks, "number of sticks")
      ->capture_default_str();
  stix_cmd->add_option("--df", stix_args.config.thickness_df, "chi-squared width df")
      ->capture_default_str();
  stix_cmd->add_option("--rows", stix_args.config.rows, "image rows")->capture_default_str();
  stix_cmd->add_option("--cols", stix_args.config.cols, "image cols")->capture_default_str();
  stix_cmd->add_option("--fg", stix_args.config.foreground, "foreground intensity")
      ->capture_default_str();
  stix_cmd->add_option("--bg", stix_args.config.background, "background intensity")
      ->capture_default_str();
  stix_cmd->add_flag("--antialias", stix_args.config.antialias, "coverage-ramped rasterization");
  stix_cmd->add_option("--seed", stix_args.config.seed, "RNG seed")->required();
  stix_cmd->add_option("--out", stix_args.out, "output field text file")->required();

  GlandArgs gland_args;
  auto* gland_cmd = app.add_subcommand("simulate-gland", "gland point cloud generator");
  gland_cmd->add_option("--n", gland_args.config.n_points, "number of points")
      ->capture_default_str();
  gland_cmd->add_option("--radius", gland_args.config.radius, "ring radius in the unit box")
      ->capture_default_str();
  gland_cmd->add_option("--irregularity", gland_args.config.irregularity,
                        "0 (clean ring) to 1 (uniform)")
      ->capture_default_str();
  gland_cmd->add_option("--seed", gland_args.config.seed, "RNG seed")->required();
  gland_cmd->add_option("--out", gland_args.out, "output cloud CSV")->required();

  std::string experiment_config, experiment_out;
  auto* exp_cmd = app.add_subcommand("experiment", "batch experiment from a config file");
  exp_cmd->add_option("--config", experiment_config, "key=value config file")->required();
  exp_cmd->add_option("--out-dir", experiment_out, "output directory")->required();

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();  // let --threads appear after the subcommand
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  sum_args.have_t0 = sum_cmd->count("--t0") > 0;
  sum_args.have_t1 = sum_cmd->count("--t1") > 0;
  sum_args.have_birth = sum_cmd->count("--b0") > 0 && sum_cmd->count("--b1") > 0;
  sum_args.have_death = sum_cmd->count("--d0") > 0 && sum_cmd->count("--d1") > 0;
  test_args.have_seed = test_cmd->count("--seed") > 0;
  test_args.threads = threads;
  band_args.threads = threads;
  classify_args.threads = threads;
  mds_args.threads = threads;

  try {
    if (*diagram_cmd) return run_diagram(diagram_args);
    if (*sum_cmd) return run_summarize(sum_args);
    if (*test_cmd) return run_test(test_args);
    if (*band_cmd) return run_band(band_args);
    if (*predict_cmd) return run_predict(predict_args);
    if (*classify_cmd) return run_classify(classify_args);
    if (*mds_cmd) return run_mds(mds_args);
    if (*stix_cmd) return run_stix(stix_args);
    if (*gland_cmd) return run_gland(gland_args);
    if (*exp_cmd) return run_experiment(experiment_config, experiment_out, threads);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::DegenerateSigma ? 4 : 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
