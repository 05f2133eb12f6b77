#include "skyroute/visibility.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "skyroute/errors.hpp"

namespace skyroute {

PairCase classify_pair(LatticePoint s_in, LatticePoint d_in) {
  const std::int64_t dx = std::int64_t{d_in.x} - s_in.x;
  const std::int64_t dy = std::int64_t{d_in.y} - s_in.y;
  if (dx < 0) throw InvalidArgument("classify_pair: destination lies left of the source");
  if (dx == 0 && dy == 0) throw InvalidArgument("classify_pair: identical points");
  if (dx == 0) return PairCase::vertical;
  if (dy == 0) return PairCase::horizontal;
  if (dx == dy || dx == -dy) return PairCase::diagonal45;
  return PairCase::generic;
}

bool visible_vertical(LatticePoint s_in, LatticePoint d_in, const ObstacleGraph& g) {
  const auto lo = std::min(s_in.y, d_in.y);
  const auto hi = std::max(s_in.y, d_in.y);
  return !g.vertical_blocking_overlap(s_in.x, lo, hi);
}

bool visible_horizontal(LatticePoint s_in, LatticePoint d_in, const ObstacleGraph& g) {
  const auto lo = std::min(s_in.x, d_in.x);
  const auto hi = std::max(s_in.x, d_in.x);
  return !g.horizontal_blocking_overlap(s_in.y, lo, hi);
}

bool visible_diagonal45(LatticePoint s_in, LatticePoint d_in, const ObstacleGraph& g,
                        bool strict) {
  const std::int32_t steps = d_in.x - s_in.x;
  const std::int32_t step_y = d_in.y > s_in.y ? 1 : -1;
  for (std::int32_t i = 0; i < steps; ++i) {
    const CornerRole role = g.corner_role({s_in.x + i, s_in.y + i * step_y});
    if (strict) {
      if (role.is_left_bottom_corner || role.is_left_top_corner) return false;
    } else if (step_y > 0 ? role.is_left_bottom_corner : role.is_left_top_corner) {
      // The line enters the cell whose left-bottom (left-top) corner this is.
      return false;
    }
  }
  return true;
}

namespace {

struct Event {
  LatticePoint pos;
  std::int64_t dx;
  std::int64_t dy;
  std::int32_t obstacle_vertex;  // -1 when not a corner of an obstacle cell
  std::int32_t target;           // -1 when only an edge event
};

// Clockwise sweep order: decreasing slope, nearer first on equal slope.
bool sweeps_before(const Event& a, const Event& b) {
  if (a.dx == 0 && b.dx == 0) {
    if ((a.dy > 0) != (b.dy > 0)) return a.dy > 0;
    return std::abs(a.dy) < std::abs(b.dy);
  }
  const std::int64_t lhs = a.dy * b.dx;
  const std::int64_t rhs = b.dy * a.dx;
  if (lhs != rhs) return lhs > rhs;
  return a.dx * a.dx + a.dy * a.dy < b.dx * b.dx + b.dy * b.dy;
}

// Slope of pivot->q compared to the slope of the event ray.
int slope_sign(LatticePoint pivot, LatticePoint q, const Event& ev) {
  const std::int64_t qdx = std::int64_t{q.x} - pivot.x;
  const std::int64_t qdy = std::int64_t{q.y} - pivot.y;
  if (qdx == 0 && ev.dx == 0) {
    return (qdy > 0) == (ev.dy > 0) ? 0 : (qdy > 0 ? 1 : -1);
  }
  const std::int64_t lhs = qdy * ev.dx;
  const std::int64_t rhs = ev.dy * qdx;
  return (lhs > rhs) - (lhs < rhs);
}

// Dynamic set of critical edges with O(1) insert/erase.
class CriticalEdges {
 public:
  explicit CriticalEdges(std::size_t edge_count) : slot_(edge_count, -1) {}

  void insert(std::int32_t e) {
    auto& s = slot_[static_cast<std::size_t>(e)];
    if (s >= 0) return;
    s = static_cast<std::int32_t>(members_.size());
    members_.push_back(e);
  }
  void erase(std::int32_t e) {
    auto& s = slot_[static_cast<std::size_t>(e)];
    if (s < 0) return;
    const std::int32_t last = members_.back();
    members_[static_cast<std::size_t>(s)] = last;
    slot_[static_cast<std::size_t>(last)] = s;
    members_.pop_back();
    s = -1;
  }
  void clear() {
    for (auto e : members_) slot_[static_cast<std::size_t>(e)] = -1;
    members_.clear();
  }
  const std::vector<std::int32_t>& members() const { return members_; }

 private:
  std::vector<std::int32_t> slot_;
  std::vector<std::int32_t> members_;
};

// Reusable per-thread state for sweeping pivots.
class PivotSweeper {
 public:
  explicit PivotSweeper(const ObstacleGraph& g)
      : g_(g), critical_(g.edges().size()), stamp_(g.vertices().size(), -1) {}

  // Decides visibility from pivot to each target (all strictly right of the
  // pivot, generic position). Result is indexed like targets.
  std::vector<bool> run(LatticePoint pivot, std::span<const LatticePoint> targets, SweepMode mode,
                        std::ostream* trace) {
    ++round_;
    events_.clear();
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto gov = g_.vertex_at(targets[i]).value_or(-1);
      if (gov >= 0) stamp_[static_cast<std::size_t>(gov)] = round_;
      events_.push_back(make_event(pivot, targets[i], gov, static_cast<std::int32_t>(i)));
    }
    if (mode != SweepMode::full_scan) {
      // Every obstacle corner in the closed right half-plane is a sweep event,
      // including marked ones: their edges still enter and leave the list.
      const auto& verts = g_.vertices();
      for (std::size_t v = 0; v < verts.size(); ++v) {
        const auto p = verts[v].pos;
        if (p.x < pivot.x || p == pivot || stamp_[v] == round_) continue;
        events_.push_back(make_event(pivot, p, static_cast<std::int32_t>(v), -1));
      }
    }
    std::sort(events_.begin(), events_.end(), sweeps_before);

    std::vector<bool> visible(targets.size(), true);
    if (trace) *trace << "pivot " << pivot.x << ' ' << pivot.y << '\n';
    switch (mode) {
      case SweepMode::per_pivot:
        sweep_once(pivot, visible, trace);
        break;
      case SweepMode::per_pair:
        sweep_per_pair(pivot, visible);
        break;
      case SweepMode::full_scan:
        scan_all(pivot, visible);
        break;
    }
    return visible;
  }

 private:
  static Event make_event(LatticePoint pivot, LatticePoint p, std::int32_t gov,
                          std::int32_t target) {
    return {p, std::int64_t{p.x} - pivot.x, std::int64_t{p.y} - pivot.y, gov, target};
  }

  // Edge classification at an event: +1 clockwise (far end has a smaller
  // slope), -1 anti-clockwise, 0 irrelevant to rays leaving the pivot
  // rightwards (collinear with the ray, touching the pivot, or reaching
  // into the left half-plane).
  int edge_turn(LatticePoint pivot, const Event& ev, std::int32_t edge) const {
    const auto far = g_.vertices()[static_cast<std::size_t>(g_.other_end(edge, ev.obstacle_vertex))].pos;
    if (far == pivot || far.x < pivot.x) return 0;
    return -slope_sign(pivot, far, ev);
  }

  bool crosses_any(const Segment& sight, const std::vector<std::int32_t>& edges) const {
    for (auto e : edges) {
      if (segments_properly_intersect(sight, g_.edges()[static_cast<std::size_t>(e)].segment())) {
        return true;
      }
    }
    return false;
  }

  void sweep_once(LatticePoint pivot, std::vector<bool>& visible, std::ostream* trace) {
    critical_.clear();
    for (const auto& ev : events_) {
      int added = 0;
      int removed = 0;
      if (ev.obstacle_vertex >= 0) {
        for (auto e : g_.incident_edges(ev.obstacle_vertex)) {
          const int turn = edge_turn(pivot, ev, e);
          if (turn > 0) {
            critical_.insert(e);
            ++added;
          } else if (turn < 0) {
            critical_.erase(e);
            ++removed;
          }
        }
      }
      if (ev.target >= 0) {
        visible[static_cast<std::size_t>(ev.target)] =
            !crosses_any({pivot, ev.pos}, critical_.members());
      }
      if (trace) {
        *trace << "probe " << ev.pos.x << ' ' << ev.pos.y << " +" << added << " -" << removed
               << " lcr " << critical_.members().size();
        if (ev.target >= 0) {
          *trace << (visible[static_cast<std::size_t>(ev.target)] ? " visible" : " blocked");
        }
        *trace << '\n';
      }
    }
    critical_.clear();
  }

  // Sweeps from the top down to each target separately and tests every edge
  // as it is inserted. An edge crossing pivot->target has its clockwise end
  // above the target's slope, so it is inserted before the cutoff; removals
  // never change the answer and are skipped.
  void sweep_per_pair(LatticePoint pivot, std::vector<bool>& visible) {
    for (std::size_t t = 0; t < events_.size(); ++t) {
      if (events_[t].target < 0) continue;
      const Segment sight{pivot, events_[t].pos};
      bool blocked = false;
      for (std::size_t i = 0; i < t && !blocked; ++i) {
        const auto& ev = events_[i];
        if (ev.obstacle_vertex < 0) continue;
        for (auto e : g_.incident_edges(ev.obstacle_vertex)) {
          if (edge_turn(pivot, ev, e) > 0 &&
              segments_properly_intersect(sight, g_.edges()[static_cast<std::size_t>(e)].segment())) {
            blocked = true;
            break;
          }
        }
      }
      visible[static_cast<std::size_t>(events_[t].target)] = !blocked;
    }
  }

  void scan_all(LatticePoint pivot, std::vector<bool>& visible) {
    const auto& edges = g_.edges();
    for (const auto& ev : events_) {
      const Segment sight{pivot, ev.pos};
      bool blocked = false;
      for (const auto& e : edges) {
        if (segments_properly_intersect(sight, e.segment())) {
          blocked = true;
          break;
        }
      }
      visible[static_cast<std::size_t>(ev.target)] = !blocked;
    }
  }

  const ObstacleGraph& g_;
  CriticalEdges critical_;
  std::vector<std::int32_t> stamp_;
  std::int32_t round_ = 0;
  std::vector<Event> events_;
};

}  // namespace

std::vector<LatticePoint> sweep_order(LatticePoint pivot, std::vector<LatticePoint> targets) {
  std::vector<Event> events;
  events.reserve(targets.size());
  for (const auto& t : targets) {
    if (t.x <= pivot.x) throw InvalidArgument("sweep target must lie right of the pivot");
    events.push_back({t, std::int64_t{t.x} - pivot.x, std::int64_t{t.y} - pivot.y, -1, -1});
  }
  std::sort(events.begin(), events.end(), sweeps_before);
  for (std::size_t i = 0; i < events.size(); ++i) targets[i] = events[i].pos;
  return targets;
}

std::vector<LatticePoint> sweep_visible_set(LatticePoint pivot,
                                            std::span<const LatticePoint> targets,
                                            const ObstacleGraph& g, SweepMode mode,
                                            std::ostream* trace) {
  for (const auto& t : targets) {
    if (t.x <= pivot.x || t.y == pivot.y || std::abs(t.x - pivot.x) == std::abs(t.y - pivot.y)) {
      throw InvalidArgument("sweep targets must be in generic position right of the pivot");
    }
  }
  PivotSweeper sweeper(g);
  const auto visible = sweeper.run(pivot, targets, mode, trace);
  std::vector<LatticePoint> out;
  for (const auto& t : sweep_order(pivot, {targets.begin(), targets.end()})) {
    const auto it = std::find(targets.begin(), targets.end(), t);
    if (visible[static_cast<std::size_t>(it - targets.begin())]) out.push_back(t);
  }
  return out;
}

bool brute_force_visible(LatticePoint s_in, LatticePoint d_in, const OccupancyGrid& grid) {
  const Segment sight{s_in, d_in};
  const auto col_lo = std::max(0, std::min(s_in.x, d_in.x));
  const auto col_hi = std::min(grid.cols(), std::max(s_in.x, d_in.x));
  const auto row_lo = std::max(0, std::min(s_in.y, d_in.y));
  const auto row_hi = std::min(grid.rows(), std::max(s_in.y, d_in.y));
  // Cells outside the bounding box cannot meet the segment.
  for (std::int32_t row = row_lo; row < row_hi; ++row) {
    for (std::int32_t col = col_lo; col < col_hi; ++col) {
      if (grid.occupied(col, row) && segment_crosses_open_cell(sight, col, row)) return false;
    }
  }
  // Running along a unit edge is forbidden when both sides are solid; the
  // outside of the map counts as solid.
  auto solid = [&grid](std::int32_t col, std::int32_t row) {
    return !grid.in_bounds(col, row) || grid.occupied(col, row);
  };
  if (s_in.x == d_in.x) {
    const auto x = s_in.x;
    for (std::int32_t y = std::min(s_in.y, d_in.y); y < std::max(s_in.y, d_in.y); ++y) {
      if (solid(x - 1, y) && solid(x, y)) return false;
    }
  } else if (s_in.y == d_in.y) {
    const auto y = s_in.y;
    for (std::int32_t x = std::min(s_in.x, d_in.x); x < std::max(s_in.x, d_in.x); ++x) {
      if (solid(x, y - 1) && solid(x, y)) return false;
    }
  }
  return true;
}

// --- graph ---------------------------------------------------------------

VisibilityGraph::VisibilityGraph(std::vector<LatticePoint> vertices,
                                 std::vector<std::pair<std::int32_t, std::int32_t>> edges,
                                 double cell_size_m, std::int32_t source, std::int32_t dest)
    : vertices_(std::move(vertices)),
      adjacency_(vertices_.size()),
      cell_size_m_(cell_size_m),
      source_(source),
      dest_(dest) {
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    const double w = euclid_distance(vertices_[static_cast<std::size_t>(u)],
                                     vertices_[static_cast<std::size_t>(v)]) *
                     cell_size_m_;
    edges_.push_back({u, v, w});
    adjacency_[static_cast<std::size_t>(u)].push_back({v, w});
    adjacency_[static_cast<std::size_t>(v)].push_back({u, w});
  }
  sorted_index_.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    sorted_index_.emplace_back(vertices_[i], static_cast<std::int32_t>(i));
  }
  std::sort(sorted_index_.begin(), sorted_index_.end());
}

std::optional<std::int32_t> VisibilityGraph::index_of(LatticePoint p) const {
  const auto it = std::lower_bound(
      sorted_index_.begin(), sorted_index_.end(), p,
      [](const std::pair<LatticePoint, std::int32_t>& e, LatticePoint q) { return e.first < q; });
  if (it == sorted_index_.end() || it->first != p) return std::nullopt;
  return it->second;
}

bool VisibilityGraph::connected(LatticePoint p, LatticePoint q) const {
  const auto u = index_of(p);
  const auto v = index_of(q);
  if (!u || !v) return false;
  const auto nbrs = neighbors(*u);
  return std::any_of(nbrs.begin(), nbrs.end(), [&](const Neighbor& n) { return n.vertex == *v; });
}

std::vector<std::pair<LatticePoint, LatticePoint>> VisibilityGraph::edge_set() const {
  std::vector<std::pair<LatticePoint, LatticePoint>> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) {
    auto a = vertices_[static_cast<std::size_t>(e.u)];
    auto b = vertices_[static_cast<std::size_t>(e.v)];
    if (b < a) std::swap(a, b);
    out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate_endpoint(const OccupancyGrid& grid, LatticePoint p, const char* name) {
  if (!grid.on_lattice(p)) {
    throw InvalidEndpoint(std::string(name) + " (" + std::to_string(p.x) + "," +
                          std::to_string(p.y) + ") is outside the grid lattice");
  }
  if (grid.incident_occupied(p) == 4) {
    throw InvalidEndpoint(std::string(name) + " (" + std::to_string(p.x) + "," +
                          std::to_string(p.y) + ") lies inside an obstacle");
  }
}

namespace {

using EdgeList = std::vector<std::pair<std::int32_t, std::int32_t>>;

// All visibility edges whose pivot (smaller endpoint in sweep terms) is the
// given vertex.
EdgeList pivot_edges(std::int32_t pivot_id, const std::vector<LatticePoint>& verts,
                     const ObstacleGraph& g, const VisibilityOptions& options,
                     PivotSweeper& sweeper, std::ostream* trace) {
  const LatticePoint pivot = verts[static_cast<std::size_t>(pivot_id)];
  EdgeList out;
  std::vector<LatticePoint> generic;
  std::vector<std::int32_t> generic_ids;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    const LatticePoint q = verts[j];
    if (q.x < pivot.x || (q.x == pivot.x && q.y <= pivot.y)) continue;
    const auto id = static_cast<std::int32_t>(j);
    bool vis = false;
    switch (classify_pair(pivot, q)) {
      case PairCase::vertical:
        vis = visible_vertical(pivot, q, g);
        break;
      case PairCase::horizontal:
        vis = visible_horizontal(pivot, q, g);
        break;
      case PairCase::diagonal45:
        vis = visible_diagonal45(pivot, q, g, options.strict_case3);
        break;
      case PairCase::generic:
        generic.push_back(q);
        generic_ids.push_back(id);
        continue;
    }
    if (vis) out.emplace_back(pivot_id, id);
  }
  if (!generic.empty()) {
    const auto visible = sweeper.run(pivot, generic, options.mode, trace);
    for (std::size_t k = 0; k < generic.size(); ++k) {
      if (visible[k]) out.emplace_back(pivot_id, generic_ids[k]);
    }
  }
  return out;
}

}  // namespace

VisibilityGraph build_visibility_graph(const ObstacleGraph& g, LatticePoint source,
                                       LatticePoint dest, const VisibilityOptions& options) {
  const auto& grid = g.grid();
  validate_endpoint(grid, source, "source");
  validate_endpoint(grid, dest, "destination");

  std::vector<LatticePoint> verts;
  for (const auto& v : g.vertices()) {
    if (!v.marked_interior) verts.push_back(v.pos);
  }
  auto ensure = [&verts](LatticePoint p) {
    const auto it = std::find(verts.begin(), verts.end(), p);
    if (it != verts.end()) return static_cast<std::int32_t>(it - verts.begin());
    verts.push_back(p);
    return static_cast<std::int32_t>(verts.size() - 1);
  };
  const auto source_id = ensure(source);
  const auto dest_id = ensure(dest);

  const auto n = static_cast<std::int32_t>(verts.size());
  std::vector<EdgeList> per_pivot(static_cast<std::size_t>(n));

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  if (options.trace) threads = 1;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(1, n)));

  if (threads <= 1) {
    PivotSweeper sweeper(g);
    for (std::int32_t i = 0; i < n; ++i) {
      per_pivot[static_cast<std::size_t>(i)] = pivot_edges(i, verts, g, options, sweeper, options.trace);
    }
  } else {
    std::atomic<std::int32_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        PivotSweeper sweeper(g);
        for (std::int32_t i = next++; i < n; i = next++) {
          per_pivot[static_cast<std::size_t>(i)] = pivot_edges(i, verts, g, options, sweeper, nullptr);
        }
      });
    }
  }

  EdgeList edges;
  for (auto& list : per_pivot) edges.insert(edges.end(), list.begin(), list.end());
  return VisibilityGraph(std::move(verts), std::move(edges), grid.cell_size_m(), source_id, dest_id);
}

}  // namespace skyroute

namespace skyroute {

VisibilityGraph build_visibility_graph_brute_force(const OccupancyGrid& grid, LatticePoint source,
                                                   LatticePoint dest) {
  validate_endpoint(grid, source, "source");
  validate_endpoint(grid, dest, "destination");
  std::vector<LatticePoint> verts;
  for (std::int32_t y = 0; y <= grid.rows(); ++y) {
    for (std::int32_t x = 0; x <= grid.cols(); ++x) {
      const int n = grid.incident_occupied({x, y});
      if (n >= 1 && n <= 3) verts.push_back({x, y});
    }
  }
  auto ensure = [&verts](LatticePoint p) {
    const auto it = std::find(verts.begin(), verts.end(), p);
    if (it != verts.end()) return static_cast<std::int32_t>(it - verts.begin());
    verts.push_back(p);
    return static_cast<std::int32_t>(verts.size() - 1);
  };
  const auto s = ensure(source);
  const auto d = ensure(dest);
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (brute_force_visible(verts[i], verts[j], grid)) {
        edges.emplace_back(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j));
      }
    }
  }
  return VisibilityGraph(std::move(verts), std::move(edges), grid.cell_size_m(), s, d);
}

}  // namespace skyroute
