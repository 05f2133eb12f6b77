#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "skyroute/geometry.hpp"
#include "skyroute/gridmap.hpp"

namespace skyroute {

struct ObstacleVertex {
  LatticePoint pos;
  int incident_obstacle_cells = 0;  // 1..4
  bool marked_interior = false;     // all four surrounding cells occupied
};

struct ObstacleEdge {
  LatticePoint a;  // lower-left endpoint
  LatticePoint b;  // a + (1,0) or a + (0,1)
  int shared_obstacle_cells = 0;  // 1..2
  bool blocking = false;          // lies between two obstacle cells

  bool horizontal() const { return a.y == b.y; }
  Segment segment() const { return {a, b}; }
};

struct CornerRole {
  bool is_left_bottom_corner = false;
  bool is_left_top_corner = false;

  friend constexpr bool operator==(const CornerRole&, const CornerRole&) = default;
};

// Corners and unit bounding edges of all obstacle cells. Vertices and edges
// are ordered row-major by (y, x) of their lower-left point; for edges at the
// same point the horizontal one comes first.
class ObstacleGraph {
 public:
  explicit ObstacleGraph(const OccupancyGrid& grid);

  const OccupancyGrid& grid() const { return grid_; }
  const std::vector<ObstacleVertex>& vertices() const { return vertices_; }
  const std::vector<ObstacleEdge>& edges() const { return edges_; }

  // Incident edge ids of a vertex.
  std::span<const std::int32_t> incident_edges(std::int32_t vertex_id) const {
    return adjacency_[static_cast<std::size_t>(vertex_id)];
  }
  // Vertex id at a lattice point, if the point is a corner of an obstacle cell.
  std::optional<std::int32_t> vertex_at(LatticePoint p) const;
  // Endpoint of an edge other than the given vertex.
  std::int32_t other_end(std::int32_t edge_id, std::int32_t vertex_id) const;

  std::vector<LatticePoint> marked_vertices() const;
  std::vector<ObstacleEdge> blocking_edges() const;
  CornerRole corner_role(LatticePoint p) const;

  // Any impassable edge on the vertical line x with positive-length overlap
  // of the open span (y_lo, y_hi). Impassable means blocking, or an obstacle
  // edge on the map boundary (the exterior counts as solid). Logarithmic in
  // the column's edge count.
  bool vertical_blocking_overlap(std::int32_t x, std::int32_t y_lo, std::int32_t y_hi) const;
  // Same for the horizontal line y and span (x_lo, x_hi).
  bool horizontal_blocking_overlap(std::int32_t y, std::int32_t x_lo, std::int32_t x_hi) const;

  // One "v x y cells marked" line per vertex, then "e x1 y1 x2 y2 shared blocking".
  void dump(std::ostream& os) const;

 private:
  std::size_t lattice_index(LatticePoint p) const {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(grid_.cols() + 1) +
           static_cast<std::size_t>(p.x);
  }

  OccupancyGrid grid_;
  std::vector<ObstacleVertex> vertices_;
  std::vector<ObstacleEdge> edges_;
  std::vector<std::vector<std::int32_t>> adjacency_;
  std::vector<std::int32_t> vertex_lookup_;  // per lattice point, -1 if absent
  // Lower y of each vertical blocking edge, per column x (sorted).
  std::vector<std::vector<std::int32_t>> blocking_by_column_;
  // Left x of each horizontal blocking edge, per row y (sorted).
  std::vector<std::vector<std::int32_t>> blocking_by_row_;
};

inline ObstacleGraph build_obstacle_graph(const OccupancyGrid& grid) { return ObstacleGraph(grid); }

}  // namespace skyroute
