#include "skyroute/planner.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "skyroute/errors.hpp"
#include "skyroute/obstacle_graph.hpp"

namespace skyroute {

Path plan2d(const OccupancyGrid& grid, LatticePoint source, LatticePoint dest,
            const PlanConfig& config) {
  validate_endpoint(grid, source, "source");
  validate_endpoint(grid, dest, "destination");
  if (source == dest) return make_path({source}, grid.cell_size_m());
  const ObstacleGraph obstacles(grid);
  const auto visibility = build_visibility_graph(obstacles, source, dest, config.visibility());
  return dijkstra_shortest_path(visibility, source, dest);
}

OccupancyGrid ScriptedMapProvider::grid_at(LatticePoint position) const {
  const auto it = grids_.find(position);
  return it == grids_.end() ? fallback_ : it->second;
}

Path plan_with_stops(const MapProvider& provider, LatticePoint source, LatticePoint dest,
                     std::span<const LatticePoint> stops, const PlanConfig& config) {
  for (const auto& s : stops) {
    if (s == source || s == dest) {
      throw InvalidArgument("stops must differ from the source and the destination");
    }
  }
  std::vector<LatticePoint> legs_at;
  legs_at.push_back(source);
  legs_at.insert(legs_at.end(), stops.begin(), stops.end());
  legs_at.push_back(dest);

  if (legs_at.size() == 2) return plan2d(provider.grid_at(source), source, dest, config);

  Path total;
  for (std::size_t leg = 0; leg + 1 < legs_at.size(); ++leg) {
    const auto grid = provider.grid_at(legs_at[leg]);
    Path part;
    try {
      part = plan2d(grid, legs_at[leg], legs_at[leg + 1], config);
    } catch (const NoPath& e) {
      throw NoPath("leg " + std::to_string(leg) + ": " + e.what(), leg);
    }
    auto begin = part.waypoints.begin();
    if (!total.waypoints.empty() && total.waypoints.back() == *begin) ++begin;
    total.waypoints.insert(total.waypoints.end(), begin, part.waypoints.end());
    total.length_m += part.length_m;
  }
  if (total.waypoints.size() >= 3) {
    total.deflections.assign(total.waypoints.begin() + 1, total.waypoints.end() - 1);
  }
  return total;
}

std::size_t choose_layer(std::span<const OccupancyGrid> layers) {
  if (layers.empty()) throw InvalidArgument("choose_layer needs at least one layer");
  std::size_t best = 0;
  std::size_t best_count = layers[0].occupied_count();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].rows() != layers[0].rows() || layers[i].cols() != layers[0].cols()) {
      throw InvalidArgument("layers must share the same dimensions");
    }
    const auto count = layers[i].occupied_count();
    if (count < best_count) {
      best = i;
      best_count = count;
    }
  }
  return best;
}

std::vector<double> plane_angles(int plane_count, double step_deg) {
  if (plane_count < 1) throw InvalidArgument("plane count must be >= 1");
  if (!(step_deg > 0.0)) throw InvalidArgument("plane angle step must be positive");
  const double half = (plane_count - 1) / 2.0;
  if (half * step_deg > 90.0 + 1e-9) {
    throw InvalidArgument("plane angles must stay within +-90 degrees");
  }
  std::vector<double> out;
  for (int i = 0; i < plane_count; ++i) out.push_back((i - half) * step_deg);
  return out;
}

RotatedPlanResult plan_rotated_planes(const VoxelWorld& world, Point3 source, Point3 dest,
                                      const PlanConfig& config) {
  auto angles = plane_angles(config.plane_count, config.plane_angle_step_deg);
  // Preference order for equal lengths.
  std::stable_sort(angles.begin(), angles.end(), [](double a, double b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a < b;
  });

  std::optional<RotatedPlanResult> best;
  for (const double theta : angles) {
    auto slice = slice_plane(world, source, dest, theta, config.precision_m);
    Path path;
    try {
      path = plan2d(slice.grid, slice.source, slice.dest, config);
    } catch (const NoPath&) {
      continue;
    } catch (const InvalidEndpoint&) {
      // Endpoint buried in this slice: the plane is unusable.
      continue;
    }
    const bool better =
        !best || path.length_m < best->path.length_m -
                                     1e-9 * std::max(1.0, best->path.length_m);
    if (better) {
      RotatedPlanResult r{std::move(path), {}, theta, std::move(slice)};
      for (const auto& p : r.path.waypoints) r.world_waypoints.push_back(r.slice.frame.to_world(p));
      best = std::move(r);
    }
  }
  if (!best) throw NoPath("no rotated plane connects the source and the destination");
  return std::move(*best);
}

}  // namespace skyroute
