#ifndef TDASUM_IO_HPP
#define TDASUM_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tdasum/core.hpp"
#include "tdasum/summaries.hpp"

namespace tdasum {

// File formats. All text, UTF-8, '.' decimal separator; reals are written
// with enough digits to round-trip exactly.
//
//   diagram CSV:      header "dim,birth,death,essential", one point per row
//   scalar field:     first line "rows cols x0 y0 x1 y1", then rows lines of
//                     cols space-separated reals
//   point cloud CSV:  header "x,y"
//   curve CSV:        header "t,k1,k2,..."
//   surface CSV:      header "birth,death,value"
//   distance matrix:  square, headerless, comma-separated
//   embedding CSV:    header "id,x1,...,xd"
//   labels CSV:       header "id,label"

std::string format_real(double v);

void write_diagram_csv(const PersistenceDiagram& diagram, const std::string& path);
PersistenceDiagram read_diagram_csv(const std::string& path);

void write_field_text(const ScalarField& field, const std::string& path);
ScalarField read_field_text(const std::string& path);

void write_cloud_csv(const PointCloud& cloud, const std::string& path);
PointCloud read_cloud_csv(const std::string& path);

void write_curve_csv(const SummaryCurve& curve, const std::string& path);
SummaryCurve read_curve_csv(const std::string& path);

void write_surface_csv(const SummarySurface& surface, const std::string& path);

void write_distance_matrix_csv(const Matrix& m, const std::string& path);
Matrix read_distance_matrix_csv(const std::string& path);

void write_embedding_csv(const Matrix& coords, const std::string& path);

void write_labels_csv(const std::vector<int>& labels, const std::string& path);
std::vector<int> read_labels_csv(const std::string& path);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest(const std::string& path);

}  // namespace tdasum

#endif
