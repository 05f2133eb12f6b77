#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "skyroute/geometry.hpp"
#include "skyroute/gridmap.hpp"
#include "skyroute/obstacle_graph.hpp"

namespace skyroute {

// How generic-position pairs are decided.
enum class SweepMode {
  per_pivot,  // one rotational pass per pivot answers all of its targets
  per_pair,   // a fresh sweep for every (pivot, target) pair, cut off at the target
  full_scan,  // no critical-edge pruning: every obstacle edge is tested
};

struct VisibilityOptions {
  // Literal corner rule for 45-degree pairs: any left-bottom or left-top
  // corner on the line blocks, regardless of direction. Not oracle-exact.
  bool strict_case3 = false;
  SweepMode mode = SweepMode::per_pivot;
  // Worker threads for the per-pivot loop; 0 picks hardware concurrency.
  unsigned threads = 1;
  // Per-pivot probe trace. Forces sequential execution.
  std::ostream* trace = nullptr;
};

enum class PairCase { vertical, horizontal, diagonal45, generic };

// Requires s_in != d_in and d_in.x >= s_in.x.
PairCase classify_pair(LatticePoint s_in, LatticePoint d_in);

bool visible_vertical(LatticePoint s_in, LatticePoint d_in, const ObstacleGraph& g);
bool visible_horizontal(LatticePoint s_in, LatticePoint d_in, const ObstacleGraph& g);
// Ascending lines are blocked by left-bottom corners of obstacle cells,
// descending lines by left-top corners, for every lattice point from s_in up
// to (not including) d_in.
bool visible_diagonal45(LatticePoint s_in, LatticePoint d_in, const ObstacleGraph& g,
                        bool strict = false);

// Targets sorted by decreasing slope around the pivot, nearer first on ties.
// Every target must lie strictly right of the pivot.
std::vector<LatticePoint> sweep_order(LatticePoint pivot, std::vector<LatticePoint> targets);

// Rotational sweep around the pivot. Returns the visible subset of the given
// generic-position targets, in sweep order.
std::vector<LatticePoint> sweep_visible_set(LatticePoint pivot,
                                            std::span<const LatticePoint> targets,
                                            const ObstacleGraph& g,
                                            SweepMode mode = SweepMode::per_pivot,
                                            std::ostream* trace = nullptr);

// Ground truth: the segment crosses no open obstacle cell and runs along no
// unit edge with solid cells on both sides (outside the map counts as
// solid). Reads the grid directly.
bool brute_force_visible(LatticePoint s_in, LatticePoint d_in, const OccupancyGrid& grid);

struct VisibilityEdge {
  std::int32_t u = 0;  // u < v
  std::int32_t v = 0;
  double weight_m = 0.0;
};

struct Neighbor {
  std::int32_t vertex = 0;
  double weight_m = 0.0;
};

class VisibilityGraph {
 public:
  VisibilityGraph(std::vector<LatticePoint> vertices,
                  std::vector<std::pair<std::int32_t, std::int32_t>> edges, double cell_size_m,
                  std::int32_t source, std::int32_t dest);

  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  const std::vector<VisibilityEdge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(std::int32_t vertex) const {
    return adjacency_[static_cast<std::size_t>(vertex)];
  }
  std::int32_t source() const { return source_; }
  std::int32_t dest() const { return dest_; }
  double cell_size_m() const { return cell_size_m_; }

  std::optional<std::int32_t> index_of(LatticePoint p) const;
  bool connected(LatticePoint p, LatticePoint q) const;

  // Edges as point pairs (smaller point first), sorted. Handy for comparing
  // graphs built over different vertex numberings.
  std::vector<std::pair<LatticePoint, LatticePoint>> edge_set() const;

 private:
  std::vector<LatticePoint> vertices_;
  std::vector<VisibilityEdge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<std::pair<LatticePoint, std::int32_t>> sorted_index_;
  double cell_size_m_;
  std::int32_t source_;
  std::int32_t dest_;
};

// Throws InvalidEndpoint if p is off the lattice or surrounded by four
// obstacle cells.
void validate_endpoint(const OccupancyGrid& grid, LatticePoint p, const char* name);

// Vertices: unmarked obstacle vertices plus source and dest. Each unordered
// pair is decided once, from the pivot that has the other point to its right
// (or above it, for vertical pairs).
VisibilityGraph build_visibility_graph(const ObstacleGraph& g, LatticePoint source,
                                       LatticePoint dest, const VisibilityOptions& options = {});

}  // namespace skyroute

namespace skyroute {

// Reference construction: vertex set recomputed from the grid (corners with
// one to three obstacle cells, plus source and dest) and every pair decided
// by brute_force_visible. Quadratic in vertices times segment length.
VisibilityGraph build_visibility_graph_brute_force(const OccupancyGrid& grid, LatticePoint source,
                                                   LatticePoint dest);

}  // namespace skyroute
