#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skyroute/geometry.hpp"
#include "skyroute/visibility.hpp"

namespace skyroute {

struct Path {
  std::vector<LatticePoint> waypoints;  // source first, destination last
  double length_m = 0.0;
  std::vector<LatticePoint> deflections;  // waypoints without the endpoints

  friend bool operator==(const Path&, const Path&) = default;
};

// Builds a Path from waypoints: merges repeated and collinear-consecutive
// points, recomputes the length and the deflection list.
Path make_path(std::vector<LatticePoint> waypoints, double cell_size_m);

// Shortest source->dest path in the visibility graph. Equal lengths (within
// 1e-9 relative) are broken by fewer waypoints, then by the lexicographically
// smallest waypoint sequence. Throws NoPath when dest is unreachable.
Path dijkstra_shortest_path(const VisibilityGraph& graph, LatticePoint source, LatticePoint dest);

// Sum of square roots of squared segment lengths.
double path_length(std::span<const std::int64_t> squared_lengths);

// Two-decimal display form.
std::string format_length(double length);

// Interior waypoints where the heading actually changes.
std::vector<LatticePoint> deflection_points(const Path& path);

// "x y" per waypoint, then "length_m <value>".
std::string serialize_path(const Path& path);
// Reads serialize_path output; the length line is recomputed, not trusted.
Path parse_path(std::string_view text, double cell_size_m);

}  // namespace skyroute
