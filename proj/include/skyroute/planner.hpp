#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "skyroute/gridmap.hpp"
#include "skyroute/pathfind.hpp"
#include "skyroute/visibility.hpp"
#include "skyroute/voxel.hpp"

namespace skyroute {

struct PlanConfig {
  // In-plane cell size for rotated-plane slicing. 2D plans use the grid's
  // own cell size.
  double precision_m = 1.0;
  bool strict_case3 = false;
  SweepMode sweep = SweepMode::per_pivot;
  unsigned threads = 1;
  std::vector<LatticePoint> stop_list;
  int plane_count = 7;
  double plane_angle_step_deg = 15.0;

  VisibilityOptions visibility() const { return {strict_case3, sweep, threads, nullptr}; }
};

// Obstacle graph -> visibility graph -> Dijkstra.
Path plan2d(const OccupancyGrid& grid, LatticePoint source, LatticePoint dest,
            const PlanConfig& config = {});

// Yields the grid perceived at a position (re-perception at each stop).
class MapProvider {
 public:
  virtual ~MapProvider() = default;
  virtual OccupancyGrid grid_at(LatticePoint position) const = 0;
};

class StaticMapProvider : public MapProvider {
 public:
  explicit StaticMapProvider(OccupancyGrid grid) : grid_(std::move(grid)) {}
  OccupancyGrid grid_at(LatticePoint) const override { return grid_; }

 private:
  OccupancyGrid grid_;
};

// Returns a per-position grid when one is registered, the fallback otherwise.
class ScriptedMapProvider : public MapProvider {
 public:
  explicit ScriptedMapProvider(OccupancyGrid fallback) : fallback_(std::move(fallback)) {}
  void set(LatticePoint position, OccupancyGrid grid) { grids_.insert_or_assign(position, std::move(grid)); }
  OccupancyGrid grid_at(LatticePoint position) const override;

 private:
  OccupancyGrid fallback_;
  std::map<LatticePoint, OccupancyGrid> grids_;
};

// Plans source -> stops... -> dest, each leg on the grid the provider
// reports at the leg's start. NoPath carries the failing leg index.
Path plan_with_stops(const MapProvider& provider, LatticePoint source, LatticePoint dest,
                     std::span<const LatticePoint> stops, const PlanConfig& config = {});

// Layer with the fewest obstacle cells; the lowest one wins ties.
std::size_t choose_layer(std::span<const OccupancyGrid> layers);

// Plane angles symmetric about zero: (i - (k-1)/2) * step for i in [0, k).
std::vector<double> plane_angles(int plane_count, double step_deg);

struct RotatedPlanResult {
  Path path;  // in-plane lattice coordinates of the chosen slice
  std::vector<Point3> world_waypoints;
  double theta_deg = 0.0;
  PlaneSlice slice;
};

// Plans in every rotated plane and keeps the shortest; ties go to the
// smaller |theta|, then the negative angle.
RotatedPlanResult plan_rotated_planes(const VoxelWorld& world, Point3 source, Point3 dest,
                                      const PlanConfig& config = {});

}  // namespace skyroute
