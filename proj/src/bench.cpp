#include "skyroute/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>

#include "skyroute/errors.hpp"

namespace skyroute {

OccupancyGrid gen_random_map(std::int32_t rows, std::int32_t cols, std::int64_t obstacle_count,
                             std::uint64_t seed, double cell_size_m) {
  OccupancyGrid grid(rows, cols, cell_size_m);
  std::vector<Cell> candidates;
  candidates.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  const Cell near_source{0, 0};
  const Cell near_dest{cols - 1, rows - 1};
  for (std::int32_t row = 0; row < rows; ++row) {
    for (std::int32_t col = 0; col < cols; ++col) {
      const Cell c{col, row};
      if (c != near_source && c != near_dest) candidates.push_back(c);
    }
  }
  if (obstacle_count < 0 || static_cast<std::uint64_t>(obstacle_count) > candidates.size()) {
    throw InvalidArgument("obstacle count " + std::to_string(obstacle_count) +
                          " exceeds the " + std::to_string(candidates.size()) +
                          " cells available");
  }
  SplitMix64 rng(seed);
  const std::size_t n = candidates.size();
  for (std::size_t i = 0; i < static_cast<std::size_t>(obstacle_count); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next() % (n - i));
    std::swap(candidates[i], candidates[j]);
    grid.set(candidates[i], true);
  }
  return grid;
}

char scenario_letter(Scenario s) {
  switch (s) {
    case Scenario::grid_and_obstacles:
      return 'a';
    case Scenario::fixed_obstacles:
      return 'b';
    case Scenario::fixed_grid:
      return 'c';
  }
  return '?';
}

Scenario scenario_from_letter(char c) {
  switch (c) {
    case 'a':
      return Scenario::grid_and_obstacles;
    case 'b':
      return Scenario::fixed_obstacles;
    case 'c':
      return Scenario::fixed_grid;
    default:
      throw InvalidArgument(std::string("unknown scenario '") + c + "'");
  }
}

std::vector<BenchPoint> default_points(Scenario s) {
  std::vector<BenchPoint> out;
  switch (s) {
    case Scenario::grid_and_obstacles:
      for (std::int32_t g : {5, 10, 20, 30, 40, 50, 60, 70, 80}) out.push_back({g, std::int64_t{g} * g / 5});
      break;
    case Scenario::fixed_obstacles:
      for (std::int32_t g : {5, 10, 20, 40, 80, 160}) out.push_back({g, 20});
      break;
    case Scenario::fixed_grid:
      for (std::int64_t o : {40, 80, 160, 320, 640, 1280}) out.push_back({80, o});
      break;
  }
  return out;
}

BenchSpec default_bench(Scenario s, std::uint64_t seed, int repetitions) {
  return {s, default_points(s), seed, repetitions};
}

double time_plan(const OccupancyGrid& grid, const PlanConfig& config,
                 std::optional<double>* path_len_m) {
  const LatticePoint source{0, 0};
  const LatticePoint dest{grid.cols(), grid.rows()};
  const auto start = std::chrono::steady_clock::now();
  std::optional<double> len;
  try {
    len = plan2d(grid, source, dest, config).length_m;
  } catch (const NoPath&) {
    len.reset();
  }
  const auto stop = std::chrono::steady_clock::now();
  if (path_len_m) *path_len_m = len;
  return std::chrono::duration<double>(stop - start).count();
}

std::vector<BenchRow> run_bench(const BenchSpec& spec,
                                const std::function<void(const BenchRow&)>& on_row) {
  if (spec.repetitions < 1) throw InvalidArgument("bench needs at least one repetition");
  PlanConfig config;
  config.threads = 1;
  std::vector<BenchRow> rows;
  for (const auto& point : spec.points) {
    if (point.g < 1 || point.o < 0) throw InvalidArgument("bench parameters must be positive");
    const auto grid = gen_random_map(point.g, point.g, point.o, spec.seed);
    std::vector<double> times;
    std::optional<double> len;
    for (int r = 0; r < spec.repetitions; ++r) times.push_back(time_plan(grid, config, &len));
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    const double median =
        times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    rows.push_back({spec.scenario, point, spec.seed, median, len});
    if (on_row) on_row(rows.back());
  }
  return rows;
}

void write_bench_csv(std::ostream& os, const BenchSpec& spec, const std::vector<BenchRow>& rows) {
  // Reference timings measured on other hardware; only trends are comparable.
  os << "# reference (non-binding): a g=80 o=1280 22.809s; b g=160 o=20 0.043s; c g=80 o=1280 22.809s\n";
  os << "# scenario " << scenario_letter(spec.scenario) << ", median of " << spec.repetitions
     << " runs\n";
  os << "scenario,g,o,seed,time_sec,path_len\n";
  char buf[64];
  for (const auto& r : rows) {
    os << scenario_letter(r.scenario) << ',' << r.point.g << ',' << r.point.o << ',' << r.seed << ',';
    std::snprintf(buf, sizeof(buf), "%.6f", r.time_sec);
    os << buf << ',';
    if (r.path_len_m) {
      std::snprintf(buf, sizeof(buf), "%.6f", *r.path_len_m);
      os << buf;
    } else {
      os << "inf";
    }
    os << '\n';
  }
}

}  // namespace skyroute
