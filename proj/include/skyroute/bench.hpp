#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "skyroute/gridmap.hpp"
#include "skyroute/planner.hpp"

namespace skyroute {

// splitmix64; the stream that drives map generation everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Picks obstacle_count cells uniformly without replacement (partial
// Fisher-Yates, j = i + next() % (n - i)) from all cells in row-major order
// except cell (0,0) and cell (cols-1, rows-1), which touch the default
// source (0,0) and destination (cols,rows).
OccupancyGrid gen_random_map(std::int32_t rows, std::int32_t cols, std::int64_t obstacle_count,
                             std::uint64_t seed, double cell_size_m = 1.0);

enum class Scenario { grid_and_obstacles, fixed_obstacles, fixed_grid };

char scenario_letter(Scenario s);
Scenario scenario_from_letter(char c);

struct BenchPoint {
  std::int32_t g = 0;  // grid side
  std::int64_t o = 0;  // obstacle count
};

struct BenchSpec {
  Scenario scenario = Scenario::fixed_obstacles;
  std::vector<BenchPoint> points;
  std::uint64_t seed = 1;
  int repetitions = 3;
};

// Default parameter sweep of each scenario.
std::vector<BenchPoint> default_points(Scenario s);
BenchSpec default_bench(Scenario s, std::uint64_t seed = 1, int repetitions = 3);

struct BenchRow {
  Scenario scenario;
  BenchPoint point;
  std::uint64_t seed = 0;
  double time_sec = 0.0;              // median wall clock of the full pipeline
  std::optional<double> path_len_m;   // empty when unreachable
};

// Wall-clock seconds for one plan2d run, corners (0,0) -> (cols,rows).
double time_plan(const OccupancyGrid& grid, const PlanConfig& config,
                 std::optional<double>* path_len_m = nullptr);

std::vector<BenchRow> run_bench(const BenchSpec& spec,
                                const std::function<void(const BenchRow&)>& on_row = {});

void write_bench_csv(std::ostream& os, const BenchSpec& spec, const std::vector<BenchRow>& rows);

}  // namespace skyroute
