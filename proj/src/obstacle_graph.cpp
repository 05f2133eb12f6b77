#include "skyroute/obstacle_graph.hpp"

#include <algorithm>

namespace skyroute {

ObstacleGraph::ObstacleGraph(const OccupancyGrid& grid)
    : grid_(grid),
      vertex_lookup_(static_cast<std::size_t>(grid.rows() + 1) *
                         static_cast<std::size_t>(grid.cols() + 1),
                     -1),
      blocking_by_column_(static_cast<std::size_t>(grid.cols() + 1)),
      blocking_by_row_(static_cast<std::size_t>(grid.rows() + 1)) {
  // Row-major scan over lattice points keeps ids deterministic. A corner is a
  // vertex iff one of its four cells is occupied, so only rows touching an
  // obstacle matter; the cell scan below finds them.
  std::vector<std::uint8_t> corner(vertex_lookup_.size(), 0);
  for (const auto& c : grid_.occupied_cells()) {
    for (std::int32_t dy = 0; dy <= 1; ++dy) {
      for (std::int32_t dx = 0; dx <= 1; ++dx) {
        corner[lattice_index({c.col + dx, c.row + dy})] = 1;
      }
    }
  }
  for (std::int32_t y = 0; y <= grid_.rows(); ++y) {
    for (std::int32_t x = 0; x <= grid_.cols(); ++x) {
      const LatticePoint p{x, y};
      if (!corner[lattice_index(p)]) continue;
      const int cells = grid_.incident_occupied(p);
      vertex_lookup_[lattice_index(p)] = static_cast<std::int32_t>(vertices_.size());
      vertices_.push_back({p, cells, cells == 4});
    }
  }
  adjacency_.resize(vertices_.size());

  auto add_edge = [this](LatticePoint a, LatticePoint b, int shared) {
    const auto id = static_cast<std::int32_t>(edges_.size());
    edges_.push_back({a, b, shared, shared == 2});
    adjacency_[static_cast<std::size_t>(vertex_lookup_[lattice_index(a)])].push_back(id);
    adjacency_[static_cast<std::size_t>(vertex_lookup_[lattice_index(b)])].push_back(id);
    // The map exterior counts as solid for sight lines: an obstacle edge on
    // the map boundary is as impassable as one between two obstacle cells.
    const bool on_boundary = a.y == b.y ? (a.y == 0 || a.y == grid_.rows())
                                        : (a.x == 0 || a.x == grid_.cols());
    if (shared == 2 || on_boundary) {
      if (a.y == b.y) {
        blocking_by_row_[static_cast<std::size_t>(a.y)].push_back(a.x);
      } else {
        blocking_by_column_[static_cast<std::size_t>(a.x)].push_back(a.y);
      }
    }
  };

  for (const auto& v : vertices_) {
    const LatticePoint p = v.pos;
    // Horizontal edge p -> p+(1,0) borders cells (x, y) above and (x, y-1) below.
    if (p.x < grid_.cols()) {
      const int shared = int{grid_.occupied(p.x, p.y)} + int{grid_.occupied(p.x, p.y - 1)};
      if (shared > 0) add_edge(p, {p.x + 1, p.y}, shared);
    }
    // Vertical edge p -> p+(0,1) borders cells (x-1, y) left and (x, y) right.
    if (p.y < grid_.rows()) {
      const int shared = int{grid_.occupied(p.x - 1, p.y)} + int{grid_.occupied(p.x, p.y)};
      if (shared > 0) add_edge(p, {p.x, p.y + 1}, shared);
    }
  }
  // Edges are generated in lattice order, so the per-line indexes are already
  // sorted.
}

std::optional<std::int32_t> ObstacleGraph::vertex_at(LatticePoint p) const {
  if (!grid_.on_lattice(p)) return std::nullopt;
  const auto id = vertex_lookup_[lattice_index(p)];
  if (id < 0) return std::nullopt;
  return id;
}

std::int32_t ObstacleGraph::other_end(std::int32_t edge_id, std::int32_t vertex_id) const {
  const auto& e = edges_[static_cast<std::size_t>(edge_id)];
  const auto a = vertex_lookup_[lattice_index(e.a)];
  return a == vertex_id ? vertex_lookup_[lattice_index(e.b)] : a;
}

std::vector<LatticePoint> ObstacleGraph::marked_vertices() const {
  std::vector<LatticePoint> out;
  for (const auto& v : vertices_) {
    if (v.marked_interior) out.push_back(v.pos);
  }
  return out;
}

std::vector<ObstacleEdge> ObstacleGraph::blocking_edges() const {
  std::vector<ObstacleEdge> out;
  std::copy_if(edges_.begin(), edges_.end(), std::back_inserter(out),
               [](const ObstacleEdge& e) { return e.blocking; });
  return out;
}

CornerRole ObstacleGraph::corner_role(LatticePoint p) const {
  return {grid_.occupied(p.x, p.y), grid_.occupied(p.x, p.y - 1)};
}

namespace {

// Sorted unit-edge starts; an edge [s, s+1] overlaps the open span (lo, hi)
// iff lo <= s < hi.
bool any_start_in(const std::vector<std::int32_t>& starts, std::int32_t lo, std::int32_t hi) {
  const auto it = std::lower_bound(starts.begin(), starts.end(), lo);
  return it != starts.end() && *it < hi;
}

}  // namespace

bool ObstacleGraph::vertical_blocking_overlap(std::int32_t x, std::int32_t y_lo,
                                              std::int32_t y_hi) const {
  if (x < 0 || x > grid_.cols()) return false;
  return any_start_in(blocking_by_column_[static_cast<std::size_t>(x)], y_lo, y_hi);
}

bool ObstacleGraph::horizontal_blocking_overlap(std::int32_t y, std::int32_t x_lo,
                                                std::int32_t x_hi) const {
  if (y < 0 || y > grid_.rows()) return false;
  return any_start_in(blocking_by_row_[static_cast<std::size_t>(y)], x_lo, x_hi);
}

void ObstacleGraph::dump(std::ostream& os) const {
  for (const auto& v : vertices_) {
    os << "v " << v.pos.x << ' ' << v.pos.y << ' ' << v.incident_obstacle_cells << ' '
       << (v.marked_interior ? 1 : 0) << '\n';
  }
  for (const auto& e : edges_) {
    os << "e " << e.a.x << ' ' << e.a.y << ' ' << e.b.x << ' ' << e.b.y << ' '
       << e.shared_obstacle_cells << ' ' << (e.blocking ? 1 : 0) << '\n';
  }
}

}  // namespace skyroute
