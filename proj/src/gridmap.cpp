#include "skyroute/gridmap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "skyroute/errors.hpp"

namespace skyroute {

OccupancyGrid::OccupancyGrid(std::int32_t rows, std::int32_t cols, double cell_size_m)
    : rows_(rows), cols_(cols), cell_size_m_(cell_size_m) {
  if (rows < 1 || cols < 1) {
    throw InvalidArgument("grid needs at least one row and one column");
  }
  if (!(cell_size_m > 0.0) || !std::isfinite(cell_size_m)) {
    throw InvalidArgument("cell size must be positive");
  }
  cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

void OccupancyGrid::set(std::int32_t col, std::int32_t row, bool value) {
  if (!in_bounds(col, row)) {
    throw OutOfBounds("cell (" + std::to_string(col) + "," + std::to_string(row) +
                      ") outside grid");
  }
  cells_[index(col, row)] = value ? 1 : 0;
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::vector<Cell> OccupancyGrid::occupied_cells() const {
  std::vector<Cell> out;
  for (std::int32_t row = 0; row < rows_; ++row) {
    for (std::int32_t col = 0; col < cols_; ++col) {
      if (cells_[index(col, row)] != 0) out.push_back({col, row});
    }
  }
  return out;
}

int OccupancyGrid::incident_occupied(LatticePoint p) const {
  return int{occupied(p.x - 1, p.y - 1)} + int{occupied(p.x, p.y - 1)} +
         int{occupied(p.x - 1, p.y)} + int{occupied(p.x, p.y)};
}

namespace {

std::int32_t snapped_ceil(double ratio) {
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::int32_t>(nearest);
  }
  return static_cast<std::int32_t>(std::ceil(ratio));
}

double cross(const RealPoint& o, const RealPoint& a, const RealPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::pair<std::int32_t, std::int32_t> discretize_dimensions(double region_rows_m,
                                                            double region_cols_m,
                                                            double precision_m) {
  if (!(region_rows_m > 0.0) || !(region_cols_m > 0.0) || !(precision_m > 0.0)) {
    throw InvalidArgument("region size and precision must be positive");
  }
  const double rows = region_rows_m / precision_m;
  const double cols = region_cols_m / precision_m;
  if (rows > std::numeric_limits<std::int32_t>::max() ||
      cols > std::numeric_limits<std::int32_t>::max()) {
    throw InvalidArgument("grid dimensions overflow");
  }
  return {snapped_ceil(rows), snapped_ceil(cols)};
}

std::vector<RealPoint> convex_hull(std::vector<RealPoint> points) {
  if (points.size() < 3) {
    throw DegenerateObstacle("convex hull needs at least 3 points");
  }
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidArgument("polygon vertex is not finite");
    }
  }
  std::sort(points.begin(), points.end(), [](const RealPoint& a, const RealPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<RealPoint> hull(2 * points.size());
  std::size_t k = 0;
  // Lower hull.
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  // Upper hull.
  const std::size_t lower = k + 1;
  for (std::size_t i = points.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    throw DegenerateObstacle("polygon points are collinear");
  }
  return hull;
}

namespace {

constexpr double kRasterEps = 1e-9;

struct Interval {
  double lo;
  double hi;
};

Interval project(const std::vector<RealPoint>& poly, double ax, double ay) {
  Interval out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : poly) {
    const double d = p.x * ax + p.y * ay;
    out.lo = std::min(out.lo, d);
    out.hi = std::max(out.hi, d);
  }
  return out;
}

bool separated(const Interval& a, const Interval& b, double scale) {
  const double eps = kRasterEps * scale;
  return a.hi <= b.lo + eps || b.hi <= a.lo + eps;
}

// Interiors of a convex polygon and a unit square overlap iff no candidate
// axis separates them. Touching along an edge or at a corner counts as
// separated.
bool interiors_overlap(const std::vector<RealPoint>& hull, const std::vector<RealPoint>& square) {
  if (separated(project(hull, 1.0, 0.0), project(square, 1.0, 0.0), 1.0)) return false;
  if (separated(project(hull, 0.0, 1.0), project(square, 0.0, 1.0), 1.0)) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& q = hull[(i + 1) % hull.size()];
    const double nx = q.y - p.y;
    const double ny = p.x - q.x;
    const double len = std::hypot(nx, ny);
    if (separated(project(hull, nx, ny), project(square, nx, ny), len)) return false;
  }
  return true;
}

}  // namespace

std::vector<Cell> rasterize_hull(const std::vector<RealPoint>& hull, const OccupancyGrid& grid) {
  if (hull.size() < 3) {
    throw DegenerateObstacle("hull needs at least 3 vertices");
  }
  const double scale = 1.0 / grid.cell_size_m();
  std::vector<RealPoint> cells_units;
  cells_units.reserve(hull.size());
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& v : hull) {
    const RealPoint p{v.x * scale, v.y * scale};
    if (p.x < -kRasterEps || p.y < -kRasterEps || p.x > grid.cols() + kRasterEps ||
        p.y > grid.rows() + kRasterEps) {
      throw OutOfBounds("obstacle hull extends beyond the grid");
    }
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
    cells_units.push_back(p);
  }

  const auto col_lo = std::max<std::int32_t>(0, static_cast<std::int32_t>(std::floor(min_x)));
  const auto row_lo = std::max<std::int32_t>(0, static_cast<std::int32_t>(std::floor(min_y)));
  const auto col_hi = std::min<std::int32_t>(grid.cols(), static_cast<std::int32_t>(std::ceil(max_x)));
  const auto row_hi = std::min<std::int32_t>(grid.rows(), static_cast<std::int32_t>(std::ceil(max_y)));

  std::vector<Cell> out;
  std::vector<RealPoint> square(4);
  for (std::int32_t row = row_lo; row < row_hi; ++row) {
    for (std::int32_t col = col_lo; col < col_hi; ++col) {
      const double x = col;
      const double y = row;
      square[0] = {x, y};
      square[1] = {x + 1, y};
      square[2] = {x + 1, y + 1};
      square[3] = {x, y + 1};
      if (interiors_overlap(cells_units, square)) out.push_back({col, row});
    }
  }
  return out;
}

std::size_t add_polygon_obstacle(OccupancyGrid& grid, const PolygonObstacle& obstacle) {
  const auto hull = convex_hull(obstacle.vertices);
  std::size_t added = 0;
  for (const auto& c : rasterize_hull(hull, grid)) {
    if (!grid.occupied(c)) {
      grid.set(c, true);
      ++added;
    }
  }
  return added;
}

// --- map files --------------------------------------------------------------

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size()) break;
    const std::size_t j = line.find(' ', i);
    const std::size_t end = j == std::string_view::npos ? line.size() : j;
    out.push_back(line.substr(i, end - i));
    i = end;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* what) {
  T value{};
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError(line_no, std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

MapFile parse_map(std::string_view text) {
  auto lines = split_lines(text);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "empty map");

  const auto header = split_fields(lines[0]);
  if (header.size() != 3) throw ParseError(1, "header must be '<rows> <cols> <cell_size_m>'");
  const auto rows = parse_number<std::int32_t>(header[0], 1, "row count");
  const auto cols = parse_number<std::int32_t>(header[1], 1, "column count");
  const auto cell = parse_number<double>(header[2], 1, "cell size");
  if (rows < 1 || cols < 1) throw ParseError(1, "dimensions must be positive");
  if (!(cell > 0.0) || !std::isfinite(cell)) throw ParseError(1, "cell size must be positive");

  if (lines.size() < static_cast<std::size_t>(rows) + 1) {
    throw ParseError(lines.size() + 1, "expected " + std::to_string(rows) + " grid rows, got " +
                                           std::to_string(lines.size() - 1));
  }
  MapFile map{OccupancyGrid(rows, cols, cell), std::nullopt, std::nullopt};
  for (std::int32_t i = 0; i < rows; ++i) {
    const std::size_t line_no = static_cast<std::size_t>(i) + 2;
    const auto line = lines[static_cast<std::size_t>(i) + 1];
    if (line.size() != static_cast<std::size_t>(cols)) {
      throw ParseError(line_no, "expected " + std::to_string(cols) + " cells, got " +
                                    std::to_string(line.size()));
    }
    const std::int32_t row = rows - 1 - i;
    for (std::int32_t col = 0; col < cols; ++col) {
      const char c = line[static_cast<std::size_t>(col)];
      if (c == '#') {
        map.grid.set(col, row, true);
      } else if (c != '.') {
        throw ParseError(line_no, std::string("unknown cell character '") + c + "'");
      }
    }
  }

  for (std::size_t i = static_cast<std::size_t>(rows) + 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 3 || (fields[0] != "S" && fields[0] != "D")) {
      throw ParseError(line_no, "expected 'S <x> <y>' or 'D <x> <y>'");
    }
    const LatticePoint p{parse_number<std::int32_t>(fields[1], line_no, "x coordinate"),
                         parse_number<std::int32_t>(fields[2], line_no, "y coordinate")};
    if (!map.grid.on_lattice(p)) {
      throw ParseError(line_no, "point outside the lattice bounds");
    }
    auto& slot = fields[0] == "S" ? map.source : map.dest;
    if (slot) throw ParseError(line_no, "duplicate " + std::string(fields[0]) + " line");
    slot = p;
  }
  return map;
}

std::string serialize_map(const OccupancyGrid& grid, std::optional<LatticePoint> source,
                          std::optional<LatticePoint> dest) {
  std::string out;
  out.reserve(static_cast<std::size_t>(grid.rows()) * (static_cast<std::size_t>(grid.cols()) + 1) + 64);
  out += std::to_string(grid.rows()) + ' ' + std::to_string(grid.cols()) + ' ' +
         format_real(grid.cell_size_m()) + '\n';
  for (std::int32_t row = grid.rows() - 1; row >= 0; --row) {
    for (std::int32_t col = 0; col < grid.cols(); ++col) {
      out += grid.occupied(col, row) ? '#' : '.';
    }
    out += '\n';
  }
  if (source) out += "S " + std::to_string(source->x) + ' ' + std::to_string(source->y) + '\n';
  if (dest) out += "D " + std::to_string(dest->x) + ' ' + std::to_string(dest->y) + '\n';
  return out;
}

MapFile load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open map file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_map(ss.str());
}

void save_map_file(const std::string& path, const MapFile& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write map file '" + path + "'");
  out << serialize_map(map);
}

}  // namespace skyroute
