#include "tdasum/homology.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>

namespace tdasum {

namespace {

// Cell layout of the full cubical complex on an R x C pixel grid with pixels
// as vertices. Linear cell ids enumerate vertices, then horizontal edges,
// then vertical edges, then squares; ids double as the deterministic
// tie-break for equal filtration values.
struct CellGrid {
  Eigen::Index rows, cols;
  std::size_t n_vert, n_hedge, n_vedge, n_square;

  explicit CellGrid(const ScalarField& f)
      : rows(f.rows()),
        cols(f.cols()),
        n_vert(static_cast<std::size_t>(rows * cols)),
        n_hedge(static_cast<std::size_t>(rows * std::max<Eigen::Index>(cols - 1, 0))),
        n_vedge(static_cast<std::size_t>(std::max<Eigen::Index>(rows - 1, 0) * cols)),
        n_square(static_cast<std::size_t>(std::max<Eigen::Index>(rows - 1, 0) *
                                          std::max<Eigen::Index>(cols - 1, 0))) {}

  std::size_t total() const { return n_vert + n_hedge + n_vedge + n_square; }
  std::size_t vert(Eigen::Index r, Eigen::Index c) const {
    return static_cast<std::size_t>(r * cols + c);
  }
  std::size_t hedge(Eigen::Index r, Eigen::Index c) const {
    return n_vert + static_cast<std::size_t>(r * (cols - 1) + c);
  }
  std::size_t vedge(Eigen::Index r, Eigen::Index c) const {
    return n_vert + n_hedge + static_cast<std::size_t>(r * cols + c);
  }
  std::size_t square(Eigen::Index r, Eigen::Index c) const {
    return n_vert + n_hedge + n_vedge + static_cast<std::size_t>(r * (cols - 1) + c);
  }
};

struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

// Symmetric difference of two ascending index lists (Z2 column addition).
void xor_into(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
              std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(scratch));
  a.swap(scratch);
}

}  // namespace

PersistenceDiagram superlevel_diagram(const ScalarField& field, int max_dim) {
  require(field.rows() * field.cols() > 0, Errc::EmptyField, "field has no pixels");
  require(max_dim == 0 || max_dim == 1, Errc::BadDim, "max_dim must be 0 or 1");

  const CellGrid g(field);
  const Eigen::Index R = g.rows, C = g.cols;

  // Work on the negated field: the superlevel filtration of f is the
  // lower-star filtration of -f, and canonical (birth, death) coordinates
  // are exactly the negated levels.
  std::vector<double> value(g.total());
  std::vector<std::uint8_t> dim(g.total());
  for (Eigen::Index r = 0; r < R; ++r)
    for (Eigen::Index c = 0; c < C; ++c) {
      value[g.vert(r, c)] = -field.values(r, c);
      dim[g.vert(r, c)] = 0;
    }
  for (Eigen::Index r = 0; r < R; ++r)
    for (Eigen::Index c = 0; c + 1 < C; ++c) {
      value[g.hedge(r, c)] = std::max(value[g.vert(r, c)], value[g.vert(r, c + 1)]);
      dim[g.hedge(r, c)] = 1;
    }
  for (Eigen::Index r = 0; r + 1 < R; ++r)
    for (Eigen::Index c = 0; c < C; ++c) {
      value[g.vedge(r, c)] = std::max(value[g.vert(r, c)], value[g.vert(r + 1, c)]);
      dim[g.vedge(r, c)] = 1;
    }
  for (Eigen::Index r = 0; r + 1 < R; ++r)
    for (Eigen::Index c = 0; c + 1 < C; ++c) {
      value[g.square(r, c)] = std::max(value[g.hedge(r, c)], value[g.hedge(r + 1, c)]);
      dim[g.square(r, c)] = 2;
    }

  // Filtration order: ascending value, faces before cofaces on ties, then
  // linear cell id. position[cell] is the cell's rank in this order.
  std::vector<std::uint32_t> order(g.total());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (value[a] != value[b]) return value[a] < value[b];
    if (dim[a] != dim[b]) return dim[a] < dim[b];
    return a < b;
  });
  std::vector<std::uint32_t> position(g.total());
  for (std::uint32_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  PersistenceDiagram out;
  out.orientation = Orientation::SuperlevelNegated;

  // H0 fast path: union-find over vertices with edges processed in
  // filtration order. Each component remembers its creator vertex; the
  // elder rule keeps the component whose creator entered first (smaller
  // value, then smaller cell id) and kills the younger one.
  UnionFind uf(g.n_vert);
  std::vector<double> creator_value(g.n_vert);
  std::vector<std::uint32_t> creator_id(g.n_vert);
  for (std::size_t v = 0; v < g.n_vert; ++v) {
    creator_value[v] = value[v];
    creator_id[v] = static_cast<std::uint32_t>(v);
  }

  auto edge_endpoints = [&](std::size_t e) -> std::pair<std::uint32_t, std::uint32_t> {
    if (e < g.n_vert + g.n_hedge) {
      const std::size_t k = e - g.n_vert;
      const Eigen::Index r = static_cast<Eigen::Index>(k) / (C - 1);
      const Eigen::Index c = static_cast<Eigen::Index>(k) % (C - 1);
      return {static_cast<std::uint32_t>(g.vert(r, c)), static_cast<std::uint32_t>(g.vert(r, c + 1))};
    }
    const std::size_t k = e - g.n_vert - g.n_hedge;
    const Eigen::Index r = static_cast<Eigen::Index>(k) / C;
    const Eigen::Index c = static_cast<Eigen::Index>(k) % C;
    return {static_cast<std::uint32_t>(g.vert(r, c)), static_cast<std::uint32_t>(g.vert(r + 1, c))};
  };

  for (std::uint32_t cell : order) {
    if (dim[cell] != 1) continue;
    const auto [a, b] = edge_endpoints(cell);
    std::uint32_t ra = uf.find(a), rb = uf.find(b);
    if (ra == rb) continue;  // cycle edge; a candidate H1 birth
    // Elder = lexicographically smaller (creator value, creator id).
    std::uint32_t elder = ra, young = rb;
    if (std::make_pair(creator_value[rb], creator_id[rb]) <
        std::make_pair(creator_value[ra], creator_id[ra])) {
      elder = rb;
      young = ra;
    }
    if (value[cell] > creator_value[young]) {
      out.points.push_back(DiagramPoint{0, creator_value[young], value[cell], false});
    }
    uf.parent[young] = elder;
  }

  // Essential components, finitized at the global minimum field value
  // (the largest negated value).
  const double finitize_at = -field.values.minCoeff();
  for (std::size_t v = 0; v < g.n_vert; ++v) {
    if (uf.find(static_cast<std::uint32_t>(v)) == v) {
      out.points.push_back(DiagramPoint{0, creator_value[v], finitize_at, true});
    }
  }

  if (max_dim >= 1 && g.n_square > 0) {
    // H1: reduce the square columns over the edges. Edge columns are never
    // reduced at all; union-find already paired the negative edges, which
    // is the twist observation specialized to a 2-complex. Pivots land on
    // cycle edges and pair them with the squares that fill them.
    std::unordered_map<std::uint32_t, std::uint32_t> pivot_owner;  // edge pos -> column slot
    std::vector<std::vector<std::uint32_t>> columns;
    columns.reserve(g.n_square);
    std::vector<std::uint32_t> scratch;

    for (std::uint32_t cell : order) {
      if (dim[cell] != 2) continue;
      const std::size_t k = cell - g.n_vert - g.n_hedge - g.n_vedge;
      const Eigen::Index r = static_cast<Eigen::Index>(k) / (C - 1);
      const Eigen::Index c = static_cast<Eigen::Index>(k) % (C - 1);
      std::vector<std::uint32_t> col = {
          position[g.hedge(r, c)], position[g.hedge(r + 1, c)],
          position[g.vedge(r, c)], position[g.vedge(r, c + 1)]};
      std::sort(col.begin(), col.end());
      while (!col.empty()) {
        const std::uint32_t pivot = col.back();
        auto it = pivot_owner.find(pivot);
        if (it == pivot_owner.end()) break;
        xor_into(col, columns[it->second], scratch);
      }
      require(!col.empty(), Errc::BadDim, "degenerate square boundary");
      const std::uint32_t pivot = col.back();
      const std::uint32_t birth_cell = order[pivot];
      if (value[cell] > value[birth_cell]) {
        out.points.push_back(DiagramPoint{1, value[birth_cell], value[cell], false});
      }
      pivot_owner.emplace(pivot, static_cast<std::uint32_t>(columns.size()));
      columns.push_back(std::move(col));
    }
  }

  return out;
}

std::pair<int, int> betti_at_level(const ScalarField& field, double level) {
  require(field.rows() * field.cols() > 0, Errc::EmptyField, "field has no pixels");
  const Eigen::Index R = field.rows(), C = field.cols();
  const auto in = [&](Eigen::Index r, Eigen::Index c) { return field.values(r, c) >= level; };

  UnionFind uf(static_cast<std::size_t>(R * C));
  auto id = [&](Eigen::Index r, Eigen::Index c) {
    return static_cast<std::uint32_t>(r * C + c);
  };

  long vertices = 0, edges = 0, squares = 0;
  for (Eigen::Index r = 0; r < R; ++r)
    for (Eigen::Index c = 0; c < C; ++c) {
      if (!in(r, c)) continue;
      ++vertices;
      if (c + 1 < C && in(r, c + 1)) {
        ++edges;
        uf.parent[uf.find(id(r, c))] = uf.find(id(r, c + 1));
      }
      if (r + 1 < R && in(r + 1, c)) {
        ++edges;
        uf.parent[uf.find(id(r, c))] = uf.find(id(r + 1, c));
      }
      if (r + 1 < R && c + 1 < C && in(r, c + 1) && in(r + 1, c) && in(r + 1, c + 1)) {
        ++squares;
      }
    }

  int beta0 = 0;
  for (Eigen::Index r = 0; r < R; ++r)
    for (Eigen::Index c = 0; c < C; ++c) {
      if (in(r, c) && uf.find(id(r, c)) == id(r, c)) ++beta0;
    }

  // A planar subcomplex has no 2-cycles, so chi = beta0 - beta1 exactly.
  const long chi = vertices - edges + squares;
  const int beta1 = static_cast<int>(beta0 - chi);
  return {beta0, beta1};
}

std::vector<ScalarField> tile_field(const ScalarField& field, int tiles_r, int tiles_c) {
  require(field.rows() * field.cols() > 0, Errc::EmptyField, "field has no pixels");
  require(tiles_r >= 1 && tiles_r <= field.rows() && tiles_c >= 1 && tiles_c <= field.cols(),
          Errc::BadTiling, "tile counts must be in [1, rows] x [1, cols]");

  const Eigen::Index th = field.rows() / tiles_r;
  const Eigen::Index tw = field.cols() / tiles_c;
  const bool truncated = th * tiles_r != field.rows() || tw * tiles_c != field.cols();

  const double cell_w = field.extent.width() / static_cast<double>(field.cols());
  const double cell_h = field.extent.height() / static_cast<double>(field.rows());

  std::vector<ScalarField> tiles;
  tiles.reserve(static_cast<std::size_t>(tiles_r) * tiles_c);
  for (int i = 0; i < tiles_r; ++i) {
    for (int j = 0; j < tiles_c; ++j) {
      ScalarField tile;
      tile.values = field.values.block(i * th, j * tw, th, tw);
      tile.extent.x0 = field.extent.x0 + static_cast<double>(j) * tw * cell_w;
      tile.extent.x1 = tile.extent.x0 + static_cast<double>(tw) * cell_w;
      tile.extent.y0 = field.extent.y0 + static_cast<double>(i) * th * cell_h;
      tile.extent.y1 = tile.extent.y0 + static_cast<double>(th) * cell_h;
      tile.source = field.source + "/tile_" + std::to_string(i) + "_" + std::to_string(j);
      if (truncated) tile.source += " (remainder pixels truncated)";
      tiles.push_back(std::move(tile));
    }
  }
  return tiles;
}

}  // namespace tdasum
