#include "tdasum/core.hpp"

#include <numbers>

namespace tdasum {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::RawPairInverted: return "RawPairInverted";
    case Errc::EmptyField: return "EmptyField";
    case Errc::BadTiling: return "BadTiling";
    case Errc::EmptyCloud: return "EmptyCloud";
    case Errc::BadBandwidth: return "BadBandwidth";
    case Errc::TooFewPixels: return "TooFewPixels";
    case Errc::EmptySilhouette: return "EmptySilhouette";
    case Errc::EmptyDiagram: return "EmptyDiagram";
    case Errc::GridMismatch: return "GridMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::BadP: return "BadP";
    case Errc::TooFewCurves: return "TooFewCurves";
    case Errc::DegenerateSigma: return "DegenerateSigma";
    case Errc::EmptyGroup: return "EmptyGroup";
    case Errc::BadK: return "BadK";
    case Errc::EmptyCandidates: return "EmptyCandidates";
    case Errc::BadDim: return "BadDim";
    case Errc::BadConfig: return "BadConfig";
    case Errc::BadFile: return "BadFile";
  }
  return "UnknownError";
}

PersistenceDiagram canonicalize_superlevel(
    const std::vector<std::tuple<int, double, double>>& raw_pairs) {
  PersistenceDiagram out;
  out.orientation = Orientation::SuperlevelNegated;
  out.points.reserve(raw_pairs.size());
  for (const auto& [dim, birth_level, death_level] : raw_pairs) {
    require(birth_level >= death_level, Errc::RawPairInverted,
            "superlevel birth level must be >= death level");
    out.points.push_back(DiagramPoint{dim, -birth_level, -death_level, false});
  }
  return out;
}

PersistenceDiagram filter_by_dim(const PersistenceDiagram& diagram, int dim) {
  PersistenceDiagram out;
  out.orientation = diagram.orientation;
  out.source = diagram.source;
  for (const auto& pt : diagram.points) {
    if (pt.dim == dim) out.points.push_back(pt);
  }
  return out;
}

const char* kernel_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::Triangle: return "triangle";
    case KernelFamily::Epanechnikov: return "epanechnikov";
    case KernelFamily::Tricube: return "tricube";
    case KernelFamily::TruncatedGaussian: return "gaussian";
  }
  return "?";
}

KernelFamily kernel_from_name(const std::string& name) {
  if (name == "triangle") return KernelFamily::Triangle;
  if (name == "epanechnikov") return KernelFamily::Epanechnikov;
  if (name == "tricube") return KernelFamily::Tricube;
  if (name == "gaussian") return KernelFamily::TruncatedGaussian;
  fail(Errc::BadConfig, "unknown kernel '" + name + "'");
}

double kernel_profile(KernelFamily family, double u) {
  const double a = std::abs(u);
  if (a > 1.0) return 0.0;
  switch (family) {
    case KernelFamily::Triangle: return 1.0 - a;
    case KernelFamily::Epanechnikov: return 1.0 - u * u;
    case KernelFamily::Tricube: {
      const double w = 1.0 - a * a * a;
      return w * w * w;
    }
    case KernelFamily::TruncatedGaussian: return std::exp(-8.0 * u * u);
  }
  return 0.0;
}

double kernel_density2d(KernelFamily family, double u) {
  // Normalizers are 1 / (2 pi * int_0^1 profile(r) r dr) per family.
  using std::numbers::pi;
  double c = 0.0;
  switch (family) {
    case KernelFamily::Triangle: c = 3.0 / pi; break;
    case KernelFamily::Epanechnikov: c = 2.0 / pi; break;
    case KernelFamily::Tricube: c = 220.0 / (81.0 * pi); break;
    case KernelFamily::TruncatedGaussian: c = 8.0 / (pi * (1.0 - std::exp(-8.0))); break;
  }
  return c * kernel_profile(family, u);
}

void require_matched(const SummaryCurve& a, const SummaryCurve& b) {
  require(a.grid == b.grid, Errc::GridMismatch, "curves sampled on different grids");
  require(a.orders.rows() == b.orders.rows(), Errc::GridMismatch,
          "curves have different order counts");
}

}  // namespace tdasum
