#ifndef TDASUM_HOMOLOGY_HPP
#define TDASUM_HOMOLOGY_HPP

#include <utility>
#include <vector>

#include "tdasum/core.hpp"

namespace tdasum {

/// Persistence diagram of the superlevel-set filtration of a 2D field.
///
/// The complex is the full cubical complex with one vertex per pixel; every
/// edge and square carries the minimum of its incident pixel values, so a
/// cell is present in the superlevel set at level L exactly when all of its
/// pixels are >= L. Internally the field is negated and processed as a
/// lower-star filtration: H0 pairs come from union-find with the elder rule
/// (ties broken by linear cell index), H1 pairs from boundary-matrix
/// reduction of the squares. Zero-persistence pairings are dropped. The one
/// essential component is finitized at the global minimum value and flagged.
///
/// max_dim must be 0 or 1; with 0 the H1 reduction is skipped.
PersistenceDiagram superlevel_diagram(const ScalarField& field, int max_dim);

/// Betti numbers (beta0, beta1) of the superlevel set {f >= level}, computed
/// independently of the reduction: beta0 by union-find over edge-connected
/// pixels, beta1 = beta0 - chi with chi counted on the thresholded complex
/// (vertices, edges and squares whose pixels are all >= level). A planar
/// subcomplex has no 2-cycles, so the Euler identity is exact.
std::pair<int, int> betti_at_level(const ScalarField& field, double level);

/// Splits a field into tiles_r x tiles_c sub-fields in row-major tile order,
/// partitioning the extent accordingly. Remainder pixels are truncated when
/// the dimensions do not divide evenly; the tiles' source strings say so.
std::vector<ScalarField> tile_field(const ScalarField& field, int tiles_r, int tiles_c);

}  // namespace tdasum

#endif
