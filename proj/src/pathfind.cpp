#include "skyroute/pathfind.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

#include "skyroute/errors.hpp"

namespace skyroute {

namespace {

std::vector<LatticePoint> merge_collinear(std::vector<LatticePoint> pts) {
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<LatticePoint> out;
  out.reserve(pts.size());
  out.push_back(pts.front());
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const auto prev = out.back();
    const auto cur = pts[i];
    const auto next = pts[i + 1];
    const std::int64_t ax = std::int64_t{cur.x} - prev.x;
    const std::int64_t ay = std::int64_t{cur.y} - prev.y;
    const std::int64_t bx = std::int64_t{next.x} - cur.x;
    const std::int64_t by = std::int64_t{next.y} - cur.y;
    // Only a straight continuation is dropped; a U-turn is a real deflection.
    if (orientation(prev, cur, next) == 0 && ax * bx + ay * by > 0) continue;
    out.push_back(cur);
  }
  out.push_back(pts.back());
  return out;
}

}  // namespace

std::vector<LatticePoint> deflection_points(const Path& path) {
  const auto merged = merge_collinear(path.waypoints);
  if (merged.size() < 3) return {};
  return {merged.begin() + 1, merged.end() - 1};
}

Path make_path(std::vector<LatticePoint> waypoints, double cell_size_m) {
  Path path;
  path.waypoints = merge_collinear(std::move(waypoints));
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    path.length_m += euclid_distance(path.waypoints[i - 1], path.waypoints[i]);
  }
  path.length_m *= cell_size_m;
  if (path.waypoints.size() >= 3) {
    path.deflections.assign(path.waypoints.begin() + 1, path.waypoints.end() - 1);
  }
  return path;
}

namespace {

struct Label {
  double dist = std::numeric_limits<double>::infinity();
  std::int32_t hops = 0;
  std::int32_t pred = -1;
  bool done = false;
};

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<LatticePoint> chain(const VisibilityGraph& g, const std::vector<Label>& labels,
                                std::int32_t v) {
  std::vector<LatticePoint> out;
  for (; v >= 0; v = labels[static_cast<std::size_t>(v)].pred) {
    out.push_back(g.vertices()[static_cast<std::size_t>(v)]);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

Path dijkstra_shortest_path(const VisibilityGraph& graph, LatticePoint source, LatticePoint dest) {
  const auto s = graph.index_of(source);
  const auto d = graph.index_of(dest);
  if (!s || !d) throw InvalidArgument("source and destination must be visibility-graph vertices");
  if (*s == *d) return make_path({source}, graph.cell_size_m());

  std::vector<Label> labels(graph.vertices().size());
  labels[static_cast<std::size_t>(*s)].dist = 0.0;

  struct Entry {
    double dist;
    std::int32_t hops;
    std::int32_t vertex;
    bool operator>(const Entry& o) const {
      if (dist != o.dist) return dist > o.dist;
      if (hops != o.hops) return hops > o.hops;
      return vertex > o.vertex;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  queue.push({0.0, 0, *s});

  while (!queue.empty()) {
    const Entry top = queue.top();
    queue.pop();
    auto& lu = labels[static_cast<std::size_t>(top.vertex)];
    if (lu.done) continue;
    lu.done = true;
    if (top.vertex == *d) break;

    for (const auto& nb : graph.neighbors(top.vertex)) {
      auto& lv = labels[static_cast<std::size_t>(nb.vertex)];
      if (lv.done) continue;
      const double cand = lu.dist + nb.weight_m;
      const std::int32_t cand_hops = lu.hops + 1;
      bool better = false;
      if (lv.pred < 0 || (!nearly_equal(cand, lv.dist) && cand < lv.dist)) {
        better = true;
      } else if (nearly_equal(cand, lv.dist)) {
        if (cand_hops != lv.hops) {
          better = cand_hops < lv.hops;
        } else {
          // Same length and hop count: both chains end in v, so compare the
          // predecessor chains. Predecessors are finalized already.
          better = chain(graph, labels, top.vertex) < chain(graph, labels, lv.pred);
        }
      }
      if (better) {
        lv.dist = cand;
        lv.hops = cand_hops;
        lv.pred = top.vertex;
        queue.push({cand, cand_hops, nb.vertex});
      }
    }
  }

  if (!labels[static_cast<std::size_t>(*d)].done) {
    throw NoPath("destination is unreachable from the source");
  }
  return make_path(chain(graph, labels, *d), graph.cell_size_m());
}

double path_length(std::span<const std::int64_t> squared_lengths) {
  double total = 0.0;
  for (auto sq : squared_lengths) total += std::sqrt(static_cast<double>(sq));
  return total;
}

std::string format_length(double length) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", length);
  return buf;
}

std::string serialize_path(const Path& path) {
  std::string out;
  for (const auto& p : path.waypoints) {
    out += std::to_string(p.x) + ' ' + std::to_string(p.y) + '\n';
  }
  out += "length_m " + format_length(path.length_m) + '\n';
  return out;
}

Path parse_path(std::string_view text, double cell_size_m) {
  std::vector<LatticePoint> pts;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool saw_length = false;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.starts_with("length_m")) {
      saw_length = true;
      break;
    }
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) throw ParseError(line_no, "expected 'x y'");
    LatticePoint p;
    const auto xs = line.substr(0, sp);
    const auto ys = line.substr(sp + 1);
    const auto rx = std::from_chars(xs.data(), xs.data() + xs.size(), p.x);
    const auto ry = std::from_chars(ys.data(), ys.data() + ys.size(), p.y);
    if (rx.ec != std::errc{} || rx.ptr != xs.data() + xs.size() || ry.ec != std::errc{} ||
        ry.ptr != ys.data() + ys.size()) {
      throw ParseError(line_no, "invalid waypoint '" + std::string(line) + "'");
    }
    pts.push_back(p);
  }
  if (pts.empty()) throw ParseError(line_no + 1, "path has no waypoints");
  if (!saw_length) throw ParseError(line_no + 1, "missing 'length_m' line");
  return make_path(std::move(pts), cell_size_m);
}

}  // namespace skyroute
