#include "tdasum/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tdasum {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::BadFile, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), Errc::BadFile, "cannot open '" + path + "' for writing");
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) fields.push_back(field);
  return fields;
}

double parse_real(const std::string& s, const std::string& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    require(used > 0, Errc::BadFile, path + ": bad number '" + s + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::BadFile, path + ": bad number '" + s + "'");
  }
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_diagram_csv(const PersistenceDiagram& diagram, const std::string& path) {
  auto out = open_out(path);
  out << "dim,birth,death,essential\n";
  for (const auto& pt : diagram.points) {
    out << pt.dim << ',' << format_real(pt.birth) << ',' << format_real(pt.death) << ','
        << (pt.essential ? 1 : 0) << '\n';
  }
}

PersistenceDiagram read_diagram_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), Errc::BadFile, path + ": empty file");
  require(line.rfind("dim,birth,death,essential", 0) == 0, Errc::BadFile,
          path + ": expected diagram CSV header");
  PersistenceDiagram diagram;
  diagram.source = path;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    require(fields.size() == 4, Errc::BadFile, path + ": expected 4 columns, got line '" + line + "'");
    DiagramPoint pt;
    pt.dim = static_cast<int>(parse_real(fields[0], path));
    pt.birth = parse_real(fields[1], path);
    pt.death = parse_real(fields[2], path);
    pt.essential = parse_real(fields[3], path) != 0.0;
    require(std::isfinite(pt.birth) && std::isfinite(pt.death), Errc::BadFile,
            path + ": non-finite diagram point");
    require(pt.death >= pt.birth, Errc::BadFile,
            path + ": diagram point with death < birth (not in canonical form)");
    diagram.points.push_back(pt);
  }
  return diagram;
}

void write_field_text(const ScalarField& field, const std::string& path) {
  auto out = open_out(path);
  out << field.rows() << ' ' << field.cols() << ' ' << format_real(field.extent.x0) << ' '
      << format_real(field.extent.y0) << ' ' << format_real(field.extent.x1) << ' '
      << format_real(field.extent.y1) << '\n';
  for (Eigen::Index r = 0; r < field.rows(); ++r) {
    for (Eigen::Index c = 0; c < field.cols(); ++c) {
      if (c) out << ' ';
      out << format_real(field.values(r, c));
    }
    out << '\n';
  }
}

ScalarField read_field_text(const std::string& path) {
  auto in = open_in(path);
  Eigen::Index rows = 0, cols = 0;
  ScalarField field;
  in >> rows >> cols >> field.extent.x0 >> field.extent.y0 >> field.extent.x1 >>
      field.extent.y1;
  require(in.good() && rows > 0 && cols > 0, Errc::BadFile,
          path + ": bad scalar field header");
  field.values.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      in >> field.values(r, c);
      require(!in.fail(), Errc::BadFile, path + ": truncated scalar field");
    }
  require(field.values.allFinite(), Errc::BadFile, path + ": non-finite field value");
  field.source = path;
  return field;
}

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
  auto out = open_out(path);
  out << "x,y\n";
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    out << format_real(cloud.points(i, 0)) << ',' << format_real(cloud.points(i, 1)) << '\n';
  }
}

PointCloud read_cloud_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), Errc::BadFile, path + ": empty file");
  require(line.rfind("x,y", 0) == 0, Errc::BadFile, path + ": expected point cloud header");
  std::vector<std::pair<double, double>> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    require(fields.size() == 2, Errc::BadFile, path + ": expected 2 columns");
    pts.emplace_back(parse_real(fields[0], path), parse_real(fields[1], path));
  }
  PointCloud cloud;
  cloud.points.resize(static_cast<Eigen::Index>(pts.size()), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    cloud.points(static_cast<Eigen::Index>(i), 0) = pts[i].first;
    cloud.points(static_cast<Eigen::Index>(i), 1) = pts[i].second;
  }
  require(cloud.points.allFinite(), Errc::BadFile, path + ": non-finite coordinate");
  return cloud;
}

void write_curve_csv(const SummaryCurve& curve, const std::string& path) {
  auto out = open_out(path);
  out << 't';
  for (int k = 1; k <= curve.k_max(); ++k) out << ",k" << k;
  out << '\n';
  for (int i = 0; i < curve.grid.m; ++i) {
    out << format_real(curve.grid.at(i));
    for (int k = 0; k < curve.k_max(); ++k) out << ',' << format_real(curve.orders(k, i));
    out << '\n';
  }
}

SummaryCurve read_curve_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), Errc::BadFile, path + ": empty file");
  const auto header = split(line, ',');
  require(header.size() >= 2 && header[0] == "t", Errc::BadFile,
          path + ": expected curve CSV header");
  const auto k_max = static_cast<int>(header.size()) - 1;

  std::vector<double> ts;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    require(static_cast<int>(fields.size()) == k_max + 1, Errc::BadFile,
            path + ": ragged curve row");
    ts.push_back(parse_real(fields[0], path));
    for (int k = 0; k < k_max; ++k) values.push_back(parse_real(fields[k + 1], path));
  }
  require(ts.size() >= 2, Errc::BadFile, path + ": curve needs at least 2 samples");

  SummaryCurve curve;
  curve.grid = Grid1D(ts.front(), ts.back(), static_cast<int>(ts.size()));
  const double tol = 1e-9 * std::max(1.0, std::abs(ts.back() - ts.front()));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    require(std::abs(ts[i] - curve.grid.at(static_cast<int>(i))) <= tol, Errc::BadFile,
            path + ": curve samples are not on a uniform grid");
  }
  curve.orders.resize(k_max, static_cast<Eigen::Index>(ts.size()));
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (int k = 0; k < k_max; ++k)
      curve.orders(k, static_cast<Eigen::Index>(i)) = values[i * k_max + k];
  curve.kind = CurveKind::Unspecified;
  return curve;
}

void write_surface_csv(const SummarySurface& surface, const std::string& path) {
  auto out = open_out(path);
  out << "birth,death,value\n";
  for (int i = 0; i < surface.birth_grid.m; ++i)
    for (int j = 0; j < surface.death_grid.m; ++j) {
      out << format_real(surface.birth_grid.at(i)) << ',' << format_real(surface.death_grid.at(j))
          << ',' << format_real(surface.values(i, j)) << '\n';
    }
}

void write_distance_matrix_csv(const Matrix& m, const std::string& path) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
}

Matrix read_distance_matrix_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_real(f, path));
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), Errc::BadFile, path + ": empty matrix");
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == rows[0].size(), Errc::BadFile, path + ": ragged matrix");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  require(m.rows() == m.cols(), Errc::BadFile, path + ": matrix is not square");
  return m;
}

void write_embedding_csv(const Matrix& coords, const std::string& path) {
  auto out = open_out(path);
  out << "id";
  for (Eigen::Index d = 1; d <= coords.cols(); ++d) out << ",x" << d;
  out << '\n';
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    out << i;
    for (Eigen::Index d = 0; d < coords.cols(); ++d) out << ',' << format_real(coords(i, d));
    out << '\n';
  }
}

void write_labels_csv(const std::vector<int>& labels, const std::string& path) {
  auto out = open_out(path);
  out << "id,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

std::vector<int> read_labels_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), Errc::BadFile, path + ": empty file");
  require(line.rfind("id,label", 0) == 0, Errc::BadFile, path + ": expected labels header");
  std::vector<std::pair<long, int>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    require(fields.size() == 2, Errc::BadFile, path + ": expected 2 columns");
    rows.emplace_back(static_cast<long>(parse_real(fields[0], path)),
                      static_cast<int>(parse_real(fields[1], path)));
  }
  std::vector<int> labels(rows.size(), 0);
  for (const auto& [id, label] : rows) {
    require(id >= 0 && id < static_cast<long>(rows.size()), Errc::BadFile,
            path + ": label id out of range");
    labels[static_cast<std::size_t>(id)] = label;
  }
  return labels;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::BadFile, "cannot open '" + path + "' for digest");
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001B3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

}  // namespace tdasum
