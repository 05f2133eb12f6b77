#include "skyroute/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "skyroute/bench.hpp"
#include "skyroute/errors.hpp"
#include "skyroute/obstacle_graph.hpp"
#include "skyroute/planner.hpp"
#include "skyroute/render.hpp"
#include "skyroute/visibility.hpp"
#include "skyroute/voxel.hpp"

namespace skyroute {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

template <typename T>
T to_number(const std::string& s, const std::string& what) {
  T value{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("invalid " + what + " '" + s + "'");
  }
  return value;
}

LatticePoint parse_point(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw InvalidArgument("expected X,Y but got '" + s + "'");
  return {to_number<std::int32_t>(parts[0], "coordinate"), to_number<std::int32_t>(parts[1], "coordinate")};
}

Point3 parse_point3(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw InvalidArgument("expected X,Y,Z but got '" + s + "'");
  return {to_number<double>(parts[0], "coordinate"), to_number<double>(parts[1], "coordinate"),
          to_number<double>(parts[2], "coordinate")};
}

std::vector<LatticePoint> parse_stops(const std::string& s) {
  std::vector<LatticePoint> out;
  for (const auto& part : split(s, ';')) {
    if (!part.empty()) out.push_back(parse_point(part));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << content;
}

struct PlanArgs {
  std::string map;
  std::string source;
  std::string dest;
  std::string stops;
  std::string svg;
  bool strict_case3 = false;
  bool oracle = false;
  bool per_pair = false;
};

struct Plan3dArgs {
  std::string voxels;
  std::string source;
  std::string dest;
  int planes = 7;
  double angle_step = 15.0;
  double precision = 0.0;
};

struct GenArgs {
  std::int32_t rows = 0;
  std::int32_t cols = 0;
  std::int64_t obstacles = 0;
  std::uint64_t seed = 0;
  double cell_size = 1.0;
  std::string out;
};

struct BenchArgs {
  std::string scenario;
  std::uint64_t seed = 1;
  int reps = 3;
  std::string out;
};

struct RenderArgs {
  std::string map;
  std::string path;
  std::string out;
};

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const auto map = load_map_file(a.map);
  const auto source = a.source.empty() ? map.source : std::optional(parse_point(a.source));
  const auto dest = a.dest.empty() ? map.dest : std::optional(parse_point(a.dest));
  if (!source || !dest) throw InvalidArgument("source and destination are required");

  PlanConfig config;
  config.strict_case3 = a.strict_case3;
  config.sweep = a.per_pair ? SweepMode::per_pair : SweepMode::per_pivot;
  config.stop_list = parse_stops(a.stops);

  std::optional<std::string> oracle_line;
  if (a.oracle) {
    const ObstacleGraph g(map.grid);
    const auto swept = build_visibility_graph(g, *source, *dest, config.visibility());
    const auto truth = build_visibility_graph_brute_force(map.grid, *source, *dest);
    oracle_line = swept.edge_set() == truth.edge_set() ? "oracle: MATCH" : "oracle: MISMATCH";
  }

  int code = kExitOk;
  try {
    const StaticMapProvider provider(map.grid);
    const Path path = plan_with_stops(provider, *source, *dest, config.stop_list, config);
    out << serialize_path(path);
    if (!a.svg.empty()) write_file(a.svg, render_svg(map.grid, path));
  } catch (const NoPath& e) {
    err << "no path: " << e.what() << '\n';
    code = kExitNoPath;
  }
  if (oracle_line) {
    out << *oracle_line << '\n';
    if (*oracle_line != "oracle: MATCH" && code == kExitOk) code = kExitInputError;
  }
  return code;
}

int cmd_plan3d(const Plan3dArgs& a, std::ostream& out, std::ostream&) {
  const auto world = load_voxel_file(a.voxels);
  PlanConfig config;
  config.plane_count = a.planes;
  config.plane_angle_step_deg = a.angle_step;
  config.precision_m = a.precision > 0.0 ? a.precision : world.voxel_size_m();
  const auto result = plan_rotated_planes(world, parse_point3(a.source), parse_point3(a.dest), config);
  char buf[128];
  for (const auto& p : result.world_waypoints) {
    std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f\n", p.x, p.y, p.z);
    out << buf;
  }
  out << "length_m " << format_length(result.path.length_m) << '\n';
  std::snprintf(buf, sizeof(buf), "theta_deg %.6f\n", result.theta_deg);
  out << buf;
  return kExitOk;
}

int cmd_gen(const GenArgs& a, std::ostream&, std::ostream&) {
  const auto grid = gen_random_map(a.rows, a.cols, a.obstacles, a.seed, a.cell_size);
  save_map_file(a.out, {grid, LatticePoint{0, 0}, LatticePoint{a.cols, a.rows}});
  return kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream&) {
  if (a.scenario.size() != 1) throw InvalidArgument("scenario must be a, b or c");
  const auto spec = default_bench(scenario_from_letter(a.scenario[0]), a.seed, a.reps);
  const auto rows = run_bench(spec, [&out](const BenchRow& r) {
    out << scenario_letter(r.scenario) << " g=" << r.point.g << " o=" << r.point.o << " "
        << r.time_sec << "s\n";
  });
  std::ofstream csv(a.out, std::ios::binary);
  if (!csv) throw InvalidArgument("cannot write '" + a.out + "'");
  write_bench_csv(csv, spec, rows);
  return kExitOk;
}

int cmd_render(const RenderArgs& a, std::ostream&, std::ostream&) {
  const auto map = load_map_file(a.map);
  const auto path = parse_path(read_file(a.path), map.grid.cell_size_m());
  for (const auto& p : path.waypoints) {
    if (!map.grid.on_lattice(p)) throw InvalidArgument("path waypoint outside the map");
  }
  write_file(a.out, render_svg(map.grid, path));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shortest obstacle-free paths over occupancy grids"};
  app.require_subcommand(1);

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "Plan a 2D path on a map file");
  plan_cmd->add_option("--map", plan.map, "Map file")->required();
  plan_cmd->add_option("--source", plan.source, "Source lattice point X,Y");
  plan_cmd->add_option("--dest", plan.dest, "Destination lattice point X,Y");
  plan_cmd->add_option("--stops", plan.stops, "Intermediate stops \"X,Y;X,Y\"");
  plan_cmd->add_flag("--strict-case3", plan.strict_case3, "Literal corner rule on 45-degree lines");
  plan_cmd->add_flag("--oracle", plan.oracle, "Compare the sweep against brute force");
  plan_cmd->add_option("--svg", plan.svg, "Write an SVG rendering");
  plan_cmd->add_flag("--per-pair-sweep", plan.per_pair, "One sweep per vertex pair");

  Plan3dArgs plan3d;
  auto* plan3d_cmd = app.add_subcommand("plan3d", "Plan across rotated planes of a voxel world");
  plan3d_cmd->add_option("--voxels", plan3d.voxels, "Voxel file")->required();
  plan3d_cmd->add_option("--source", plan3d.source, "Source X,Y,Z in meters")->required();
  plan3d_cmd->add_option("--dest", plan3d.dest, "Destination X,Y,Z in meters")->required();
  plan3d_cmd->add_option("--planes", plan3d.planes, "Number of planes");
  plan3d_cmd->add_option("--angle-step", plan3d.angle_step, "Angle between planes (degrees)");
  plan3d_cmd->add_option("--precision", plan3d.precision, "In-plane cell size (default: voxel size)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random map");
  gen_cmd->add_option("--rows", gen.rows)->required();
  gen_cmd->add_option("--cols", gen.cols)->required();
  gen_cmd->add_option("--obstacles", gen.obstacles)->required();
  gen_cmd->add_option("--seed", gen.seed)->required();
  gen_cmd->add_option("--cell-size", gen.cell_size, "Cell size in meters");
  gen_cmd->add_option("--out", gen.out)->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Timing sweep, CSV output");
  bench_cmd->add_option("--scenario", bench.scenario, "a, b or c")->required();
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--reps", bench.reps);
  bench_cmd->add_option("--out", bench.out)->required();

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Render a map and a path to SVG");
  render_cmd->add_option("--map", render.map)->required();
  render_cmd->add_option("--path", render.path)->required();
  render_cmd->add_option("--out", render.out)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*plan_cmd) return cmd_plan(plan, out, err);
    if (*plan3d_cmd) return cmd_plan3d(plan3d, out, err);
    if (*gen_cmd) return cmd_gen(gen, out, err);
    if (*bench_cmd) return cmd_bench(bench, out, err);
    if (*render_cmd) return cmd_render(render, out, err);
  } catch (const NoPath& e) {
    err << "no path: " << e.what() << '\n';
    return kExitNoPath;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace skyroute
