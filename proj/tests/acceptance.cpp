// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "skyroute/bench.hpp"
#include "skyroute/cli.hpp"
#include "skyroute/errors.hpp"
#include "skyroute/planner.hpp"
#include "support/oracles.hpp"

using namespace skyroute;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void run(const std::string& name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!r.ok) ++failures;
  std::printf("%s %s: %s (%.2fs)\n", r.ok ? "PASS" : "FAIL", name.c_str(), r.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// --- oracle equivalence -------------------------------------------------

Outcome visibility_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  int mismatches = 0;
  std::size_t edges = 0;
  for (int i = 0; i < 100; ++i) {
    const auto c = testing::random_case(rng, 20, 0.4);
    const auto vg = build_visibility_graph(build_obstacle_graph(c.grid), c.source, c.dest);
    const auto oracle = build_visibility_graph_brute_force(c.grid, c.source, c.dest);
    if (vg.edge_set() != oracle.edge_set()) ++mismatches;
    edges += oracle.edges().size();
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && t < 30.0,
          fmt("100 grids, %zu oracle edges, %d mismatching graphs, %.2fs (limit 30s)", edges,
              mismatches, t)};
}

Outcome path_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(8080);
  int bad = 0;
  int reachable = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto c = testing::random_case(rng, 8, 0.4, 2);
    const auto oracle = build_visibility_graph_brute_force(c.grid, c.source, c.dest);
    const double best = testing::exhaustive_best_length(oracle);
    double got = std::numeric_limits<double>::infinity();
    try {
      got = plan2d(c.grid, c.source, c.dest).length_m;
    } catch (const NoPath&) {
    }
    if (std::isinf(best) || std::isinf(got)) {
      if (std::isinf(best) != std::isinf(got)) ++bad;
      continue;
    }
    ++reachable;
    const double rel = std::abs(got - best) / best;
    worst = std::max(worst, rel);
    if (rel > 1e-9) ++bad;
  }
  const double t = seconds_since(start);
  return {bad == 0 && t < 60.0,
          fmt("50 grids (%d reachable), worst relative gap %.3g, %d disagreements, %.2fs (limit 60s)",
              reachable, worst, bad, t)};
}

// --- printed arithmetic ---------------------------------------------------

Outcome arithmetic() {
  const std::vector<std::int64_t> a{162, 90};
  const std::vector<std::int64_t> b{36, 40, 8, 20, 8, 4};
  const std::vector<std::int64_t> c{9, 17, 5, 26, 13, 2, 5, 18, 13, 72};
  const auto la = format_length(path_length(a));
  const auto lb = format_length(path_length(b));
  const auto lc = format_length(path_length(c));
  return {la == "22.21" && lb == "24.45" && lc == "38.05",
          "got " + la + ", " + lb + ", " + lc + " (want 22.21, 24.45, 38.05)"};
}

// --- scaling trends --------------------------------------------------------

std::vector<BenchRow> bench(Scenario s) { return run_bench(default_bench(s, 1, 5)); }

Outcome scaling_b() {
  const auto start = Clock::now();
  const auto rows = bench(Scenario::fixed_obstacles);
  double t20 = 0.0;
  double t160 = 0.0;
  for (const auto& r : rows) {
    if (r.point.g == 20) t20 = r.time_sec;
    if (r.point.g == 160) t160 = r.time_sec;
  }
  const double ratio = t160 / t20;
  const double t = seconds_since(start);
  return {ratio <= 10.0 && t < 300.0,
          fmt("t(g=160)=%.6fs, t(g=20)=%.6fs, ratio %.2f (limit 10)", t160, t20, ratio)};
}

Outcome scaling_c() {
  const auto start = Clock::now();
  const auto rows = bench(Scenario::fixed_grid);
  bool increasing = true;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::string series;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].time_sec > rows[i - 1].time_sec)) increasing = false;
    const double x = std::log(static_cast<double>(rows[i].point.o));
    const double y = std::log(rows[i].time_sec);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    series += fmt("%s%lld:%.4f", i ? " " : "", static_cast<long long>(rows[i].point.o), rows[i].time_sec);
  }
  const double n = static_cast<double>(rows.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double t = seconds_since(start);
  return {increasing && slope >= 0.8 && slope <= 2.5 && t < 300.0,
          fmt("log-log slope %.3f (want [0.8, 2.5]), strictly increasing: %s; o:t = ", slope,
              increasing ? "yes" : "no") +
              series};
}

Outcome scaling_a() {
  const auto start = Clock::now();
  const auto rows = bench(Scenario::grid_and_obstacles);
  double small = 0.0;
  double large = 0.0;
  for (const auto& r : rows) {
    if (r.point.g == 20 && r.point.o == 80) small = r.time_sec;
    if (r.point.g == 80 && r.point.o == 1280) large = r.time_sec;
  }
  const double ratio = large / small;
  const double t = seconds_since(start);
  return {ratio >= 10.0 && t < 300.0,
          fmt("t(80,1280)=%.6fs, t(20,80)=%.6fs, ratio %.1f (want >= 10)", large, small, ratio)};
}

// --- invariant suites --------------------------------------------------------

struct Tally {
  int cases = 0;
  int failures = 0;
  void check(bool ok) {
    ++cases;
    if (!ok) ++failures;
  }
  Outcome outcome(int min_cases) const {
    return {failures == 0 && cases >= min_cases,
            fmt("%d cases, %d failures (need >= %d cases)", cases, failures, min_cases)};
  }
};

Outcome symmetry() {
  std::mt19937_64 rng(1);
  Tally tally;
  for (int i = 0; i < 500; ++i) {
    const auto c = testing::random_case(rng, 14, 0.4);
    const auto g = build_obstacle_graph(c.grid);
    const auto fwd = build_visibility_graph(g, c.source, c.dest);
    const auto rev = build_visibility_graph(g, c.dest, c.source);
    bool ok = fwd.edge_set() == rev.edge_set();
    for (const auto& [p, q] : fwd.edge_set()) {
      ok = ok && brute_force_visible(q, p, c.grid);
    }
    std::uniform_int_distribution<int> px(0, c.grid.cols());
    std::uniform_int_distribution<int> py(0, c.grid.rows());
    for (int k = 0; k < 20; ++k) {
      const LatticePoint p{px(rng), py(rng)};
      const LatticePoint q{px(rng), py(rng)};
      if (p == q) continue;
      ok = ok && brute_force_visible(p, q, c.grid) == brute_force_visible(q, p, c.grid);
    }
    tally.check(ok);
  }
  return tally.outcome(500);
}

Outcome lower_bound() {
  std::mt19937_64 rng(2);
  Tally tally;
  while (tally.cases < 500) {
    auto c = testing::random_case(rng, 16, 0.4);
    const double cell = 0.25 * (1 + tally.cases % 8);
    OccupancyGrid grid(c.grid.rows(), c.grid.cols(), cell);
    for (const auto& cl : c.grid.occupied_cells()) grid.set(cl, true);
    try {
      const auto p = plan2d(grid, c.source, c.dest);
      tally.check(p.length_m >= euclid_distance(c.source, c.dest) * cell * (1 - 1e-12));
    } catch (const NoPath&) {
    }
  }
  return tally.outcome(500);
}

Outcome removal_monotone() {
  std::mt19937_64 rng(3);
  Tally tally;
  while (tally.cases < 500) {
    auto c = testing::random_case(rng, 12, 0.4);
    const auto cells = c.grid.occupied_cells();
    if (cells.empty()) continue;
    double before = std::numeric_limits<double>::infinity();
    try {
      before = plan2d(c.grid, c.source, c.dest).length_m;
    } catch (const NoPath&) {
    }
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    OccupancyGrid lighter = c.grid;
    lighter.set(cells[pick(rng)], false);
    double after = std::numeric_limits<double>::infinity();
    try {
      after = plan2d(lighter, c.source, c.dest).length_m;
    } catch (const NoPath&) {
    }
    tally.check(after <= before * (1 + 1e-12) || (std::isinf(after) && std::isinf(before)));
  }
  return tally.outcome(500);
}

Outcome deflections_are_vertices() {
  std::mt19937_64 rng(4);
  Tally tally;
  while (tally.cases < 500) {
    const auto c = testing::random_case(rng, 16, 0.4);
    Path p;
    try {
      p = plan2d(c.grid, c.source, c.dest);
    } catch (const NoPath&) {
      continue;
    }
    bool ok = true;
    for (const auto& d : p.deflections) {
      const int n = c.grid.incident_occupied(d);
      ok = ok && n >= 1 && n <= 3;
    }
    tally.check(ok);
  }
  return tally.outcome(500);
}

Outcome segment_safety() {
  std::mt19937_64 rng(5);
  Tally tally;
  while (tally.cases < 500) {
    const auto c = testing::random_case(rng, 16, 0.4);
    Path p;
    try {
      p = plan2d(c.grid, c.source, c.dest);
    } catch (const NoPath&) {
      continue;
    }
    bool ok = true;
    for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
      ok = ok && brute_force_visible(p.waypoints[i - 1], p.waypoints[i], c.grid);
    }
    tally.check(ok);
  }
  return tally.outcome(500);
}

// --- structural counts ---------------------------------------------------------

Outcome structure() {
  auto block = [](int k) {
    OccupancyGrid g(k + 2, k + 2, 1.0);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) g.set(c + 1, r + 1, true);
    return build_obstacle_graph(g);
  };
  const auto two = block(2);
  bool ok = two.vertices().size() == 9 && two.marked_vertices().size() == 1 &&
            two.edges().size() == 12 && two.blocking_edges().size() == 4;
  std::string detail = fmt("2x2: %zu/%zu/%zu/%zu;", two.vertices().size(), two.marked_vertices().size(),
                           two.edges().size(), two.blocking_edges().size());
  for (int k = 2; k <= 5; ++k) {
    const auto n = block(k).blocking_edges().size();
    ok = ok && n == static_cast<std::size_t>(2 * k * (k - 1));
    detail += fmt(" k=%d: %zu blocking (want %d)", k, n, 2 * k * (k - 1));
  }
  return {ok, detail};
}

// --- determinism ---------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const auto dir = fs::temp_directory_path() / "skyroute_acceptance";
  fs::create_directories(dir);
  bool ok = true;
  std::string detail;

  const bool gen_same = serialize_map(gen_random_map(40, 40, 320, 99)) ==
                        serialize_map(gen_random_map(40, 40, 320, 99));
  std::ostringstream sink;
  for (const char* name : {"a.map", "b.map"}) {
    ok = ok && run_cli({"gen", "--rows", "40", "--cols", "40", "--obstacles", "320", "--seed", "99",
                        "--out", (dir / name).string()},
                       sink, sink) == 0;
  }
  const bool gen_files_same = slurp(dir / "a.map") == slurp(dir / "b.map");
  ok = ok && gen_same && gen_files_same;
  detail += fmt("gen %s;", gen_same && gen_files_same ? "identical" : "DIFFERENT");

  std::ostringstream out1, out2, err;
  const int c1 = run_cli({"plan", "--map", (dir / "a.map").string()}, out1, err);
  const int c2 = run_cli({"plan", "--map", (dir / "a.map").string()}, out2, err);
  const bool plan_same = c1 == c2 && out1.str() == out2.str() && !out1.str().empty();
  ok = ok && plan_same;
  detail += fmt(" plan %s (exit %d);", plan_same ? "identical" : "DIFFERENT", c1);

  std::mt19937_64 rng(6);
  int graph_diffs = 0;
  for (int i = 0; i < 30; ++i) {
    const auto c = testing::random_case(rng, 20, 0.4, 8);
    const auto g = build_obstacle_graph(c.grid);
    const auto seq = build_visibility_graph(g, c.source, c.dest, {.threads = 1});
    const auto par = build_visibility_graph(g, c.source, c.dest, {.threads = 4});
    bool same = seq.vertices() == par.vertices() && seq.edges().size() == par.edges().size();
    for (std::size_t e = 0; same && e < seq.edges().size(); ++e) {
      same = seq.edges()[e].u == par.edges()[e].u && seq.edges()[e].v == par.edges()[e].v &&
             seq.edges()[e].weight_m == par.edges()[e].weight_m;
    }
    if (!same) ++graph_diffs;
  }
  ok = ok && graph_diffs == 0;
  detail += fmt(" parallel vs sequential G_V: %d of 30 differ", graph_diffs);
  return {ok, detail};
}

// --- 3D ---------------------------------------------------------------------------

Outcome rotated_planes() {
  VoxelWorld w(5, 5, 5, 1.0);
  for (int y = 0; y < 5; ++y)
    for (int z = 0; z < 5; ++z)
      if (!(y == 1 && z == 4)) w.set(2, y, z, true);
  const Point3 s{0.5, 2.5, 2.5};
  const Point3 d{4.5, 2.5, 2.5};
  PlanConfig cfg;
  cfg.precision_m = 0.5;
  cfg.plane_count = 3;
  cfg.plane_angle_step_deg = 30;
  const auto r = plan_rotated_planes(w, s, d, cfg);

  // Per-plane oracle: brute-force G_V and exhaustive search in every plane.
  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  for (double theta : plane_angles(3, 30)) {
    const auto sl = slice_plane(w, s, d, theta, 0.5);
    const double len = testing::exhaustive_best_length(
        build_visibility_graph_brute_force(sl.grid, sl.source, sl.dest));
    if (len < best) {
      best = len;
      best_theta = theta;
    }
  }
  const bool gap_ok = r.theta_deg == 30.0 && best_theta == 30.0 &&
                      std::abs(r.path.length_m - best) <= 1e-9 * best;

  // k = 1 against direct planning in the vertical plane, in a world whose
  // gap lies in that plane.
  VoxelWorld centred(5, 5, 5, 1.0);
  for (int y = 0; y < 5; ++y)
    for (int z = 0; z < 5; ++z)
      if (!(y == 2 && z == 4)) centred.set(2, y, z, true);
  cfg.plane_count = 1;
  const auto one = plan_rotated_planes(centred, s, d, cfg);
  const auto vertical = slice_plane(centred, s, d, 0.0, 0.5);
  const bool k1_ok = one.theta_deg == 0.0 && one.slice.grid == vertical.grid &&
                     one.path == plan2d(vertical.grid, vertical.source, vertical.dest);
  return {gap_ok && k1_ok,
          fmt("chosen theta %.0f, length %.9f vs oracle %.9f (oracle theta %.0f); k=1 equals vertical slice: %s",
              r.theta_deg, r.path.length_m, best, best_theta, k1_ok ? "yes" : "no")};
}

}  // namespace

int main() {
  run("oracle equivalence (visibility)", visibility_oracle);
  run("oracle equivalence (paths)", path_oracle);
  run("path-length arithmetic", arithmetic);
  run("scaling trend (b) fixed obstacles", scaling_b);
  run("scaling trend (c) fixed grid", scaling_c);
  run("scaling trend (a) grid and obstacles", scaling_a);
  run("invariant: visibility symmetry", symmetry);
  run("invariant: length lower bound", lower_bound);
  run("invariant: obstacle-removal monotonicity", removal_monotone);
  run("invariant: deflections are unmarked obstacle vertices", deflections_are_vertices);
  run("invariant: per-segment safety", segment_safety);
  run("structural counts", structure);
  run("determinism", determinism);
  run("3D rotated planes", rotated_planes);
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
