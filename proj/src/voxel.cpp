#include "skyroute/voxel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "skyroute/errors.hpp"

namespace skyroute {

double norm(Point3 a) { return std::sqrt(dot(a, a)); }

VoxelWorld::VoxelWorld(std::int32_t nx, std::int32_t ny, std::int32_t nz, double voxel_size_m)
    : nx_(nx), ny_(ny), nz_(nz), voxel_size_m_(voxel_size_m) {
  if (nx < 1 || ny < 1 || nz < 1) throw InvalidArgument("voxel world dimensions must be >= 1");
  if (!(voxel_size_m > 0.0) || !std::isfinite(voxel_size_m)) {
    throw InvalidArgument("voxel size must be positive");
  }
  cells_.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
                    static_cast<std::size_t>(nz),
                0);
}

void VoxelWorld::set(std::int32_t ix, std::int32_t iy, std::int32_t iz, bool value) {
  if (!in_bounds(ix, iy, iz)) throw OutOfBounds("voxel index outside world");
  cells_[index(ix, iy, iz)] = value ? 1 : 0;
}

std::size_t VoxelWorld::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

bool VoxelWorld::contains(Point3 p, double eps) const {
  const auto e = extent();
  return p.x >= -eps && p.y >= -eps && p.z >= -eps && p.x <= e.x + eps && p.y <= e.y + eps &&
         p.z <= e.z + eps;
}

bool VoxelWorld::inside_occupied(Point3 p, double eps) const {
  const double s = voxel_size_m_;
  const auto ix = static_cast<std::int32_t>(std::floor(p.x / s));
  const auto iy = static_cast<std::int32_t>(std::floor(p.y / s));
  const auto iz = static_cast<std::int32_t>(std::floor(p.z / s));
  if (!occupied(ix, iy, iz)) return false;
  auto strictly_inside = [&](double v, std::int32_t i) {
    return v > i * s + eps && v < (i + 1) * s - eps;
  };
  return strictly_inside(p.x, ix) && strictly_inside(p.y, iy) && strictly_inside(p.z, iz);
}

// --- file format ---------------------------------------------------------

namespace {

template <typename T>
T parse_field(std::string_view field, std::size_t line_no, const char* what) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError(line_no, std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

VoxelWorld parse_voxels(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start < text.size();) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "empty voxel file");

  std::vector<std::string_view> header;
  for (std::size_t i = 0; i < lines[0].size();) {
    while (i < lines[0].size() && lines[0][i] == ' ') ++i;
    if (i >= lines[0].size()) break;
    auto j = lines[0].find(' ', i);
    if (j == std::string_view::npos) j = lines[0].size();
    header.push_back(lines[0].substr(i, j - i));
    i = j;
  }
  if (header.size() != 4) throw ParseError(1, "header must be '<nx> <ny> <nz> <voxel_size_m>'");
  const auto nx = parse_field<std::int32_t>(header[0], 1, "nx");
  const auto ny = parse_field<std::int32_t>(header[1], 1, "ny");
  const auto nz = parse_field<std::int32_t>(header[2], 1, "nz");
  const auto size = parse_field<double>(header[3], 1, "voxel size");
  if (nx < 1 || ny < 1 || nz < 1) throw ParseError(1, "dimensions must be positive");
  if (!(size > 0.0) || !std::isfinite(size)) throw ParseError(1, "voxel size must be positive");

  VoxelWorld world(nx, ny, nz, size);
  std::size_t li = 1;
  for (std::int32_t iz = 0; iz < nz; ++iz) {
    if (iz > 0) {
      if (li >= lines.size() || !lines[li].empty()) {
        throw ParseError(li + 1, "expected blank line between z blocks");
      }
      ++li;
    }
    for (std::int32_t r = 0; r < ny; ++r, ++li) {
      if (li >= lines.size()) throw ParseError(li + 1, "unexpected end of voxel data");
      const auto line = lines[li];
      if (line.size() != static_cast<std::size_t>(nx)) {
        throw ParseError(li + 1, "expected " + std::to_string(nx) + " voxels, got " +
                                     std::to_string(line.size()));
      }
      const std::int32_t iy = ny - 1 - r;
      for (std::int32_t ix = 0; ix < nx; ++ix) {
        const char c = line[static_cast<std::size_t>(ix)];
        if (c == '#') {
          world.set(ix, iy, iz, true);
        } else if (c != '.') {
          throw ParseError(li + 1, std::string("unknown voxel character '") + c + "'");
        }
      }
    }
  }
  if (li != lines.size()) throw ParseError(li + 1, "trailing data after the last z block");
  return world;
}

std::string serialize_voxels(const VoxelWorld& world) {
  std::string out = std::to_string(world.nx()) + ' ' + std::to_string(world.ny()) + ' ' +
                    std::to_string(world.nz()) + ' ' + format_real(world.voxel_size_m()) + '\n';
  for (std::int32_t iz = 0; iz < world.nz(); ++iz) {
    if (iz > 0) out += '\n';
    for (std::int32_t iy = world.ny() - 1; iy >= 0; --iy) {
      for (std::int32_t ix = 0; ix < world.nx(); ++ix) out += world.occupied(ix, iy, iz) ? '#' : '.';
      out += '\n';
    }
  }
  return out;
}

VoxelWorld load_voxel_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open voxel file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_voxels(ss.str());
}

// --- plane slicing -----------------------------------------------------------

Point3 PlaneFrame::to_world(LatticePoint p) const {
  const double u = (p.x - source_col) * cell_size_m;
  const double v = (p.y - source_row) * cell_size_m;
  return origin + u * u_axis + v * v_axis;
}

namespace {

Point3 normalized(Point3 a) { return (1.0 / norm(a)) * a; }

// Separating-axis test between a planar square and an open voxel box.
// Projections that only touch count as separated.
class SquareVoxelTester {
 public:
  SquareVoxelTester(Point3 u, Point3 v, double eps) : eps_(eps) {
    const Point3 basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const auto& b : basis) axes_.push_back(b);
    add_axis(cross(u, v));
    for (const auto& b : basis) {
      add_axis(cross(u, b));
      add_axis(cross(v, b));
    }
  }

  bool overlaps(const std::array<Point3, 4>& square, Point3 lo, Point3 hi) const {
    const Point3 center = 0.5 * (lo + hi);
    const Point3 half = 0.5 * (hi - lo);
    for (const auto& a : axes_) {
      double smin = std::numeric_limits<double>::infinity();
      double smax = -smin;
      for (const auto& p : square) {
        const double d = dot(p, a);
        smin = std::min(smin, d);
        smax = std::max(smax, d);
      }
      const double c = dot(center, a);
      const double r = half.x * std::abs(a.x) + half.y * std::abs(a.y) + half.z * std::abs(a.z);
      if (smax <= c - r + eps_ || c + r <= smin + eps_) return false;
    }
    return true;
  }

 private:
  void add_axis(Point3 a) {
    if (norm(a) > 1e-12) axes_.push_back(normalized(a));
  }

  double eps_;
  std::vector<Point3> axes_;
};

}  // namespace

PlaneSlice slice_plane(const VoxelWorld& world, Point3 source, Point3 dest, double theta_deg,
                       double precision_m) {
  if (!(precision_m > 0.0)) throw InvalidArgument("plane precision must be positive");
  const double tol = 1e-9 * world.voxel_size_m();
  if (!world.contains(source, tol) || !world.contains(dest, tol)) {
    throw InvalidArgument("3D endpoints must lie inside the voxel world");
  }
  const Point3 along = dest - source;
  const double length = norm(along);
  if (!(length > tol)) throw InvalidArgument("3D source and destination coincide");

  const Point3 u_axis = normalized(along);
  // Reference plane: vertical plane through the line; falls back to the x
  // axis when the line itself is vertical.
  Point3 up{0, 0, 1};
  Point3 ref = up - dot(up, u_axis) * u_axis;
  if (norm(ref) < 1e-9) {
    const Point3 x{1, 0, 0};
    ref = x - dot(x, u_axis) * u_axis;
  }
  ref = normalized(ref);
  const double theta = theta_deg * std::numbers::pi / 180.0;
  const Point3 v_axis =
      normalized(std::cos(theta) * ref + std::sin(theta) * cross(u_axis, ref));

  const auto cells_along = std::max<std::int32_t>(
      1, static_cast<std::int32_t>(std::ceil(length / precision_m - 1e-9)));
  const double cell = length / cells_along;

  // Lattice extent: projection of the world box onto the plane.
  const Point3 ext = world.extent();
  double umin = 0.0;
  double umax = length;
  double vmin = 0.0;
  double vmax = 0.0;
  for (int corner = 0; corner < 8; ++corner) {
    const Point3 c{(corner & 1) ? ext.x : 0.0, (corner & 2) ? ext.y : 0.0, (corner & 4) ? ext.z : 0.0};
    const Point3 rel = c - source;
    umin = std::min(umin, dot(rel, u_axis));
    umax = std::max(umax, dot(rel, u_axis));
    vmin = std::min(vmin, dot(rel, v_axis));
    vmax = std::max(vmax, dot(rel, v_axis));
  }
  const auto col_lo = static_cast<std::int32_t>(std::floor(umin / cell + 1e-9));
  const auto col_hi = std::max(cells_along, static_cast<std::int32_t>(std::ceil(umax / cell - 1e-9)));
  const auto row_lo = static_cast<std::int32_t>(std::floor(vmin / cell + 1e-9));
  auto row_hi = static_cast<std::int32_t>(std::ceil(vmax / cell - 1e-9));
  if (row_hi <= row_lo) row_hi = row_lo + 1;

  PlaneFrame frame{source, u_axis, v_axis, cell, -col_lo, -row_lo};
  OccupancyGrid grid(row_hi - row_lo, col_hi - col_lo, cell);

  const double vs = world.voxel_size_m();
  const SquareVoxelTester tester(u_axis, v_axis, tol);
  std::array<Point3, 4> square;
  for (std::int32_t row = 0; row < grid.rows(); ++row) {
    for (std::int32_t col = 0; col < grid.cols(); ++col) {
      square = {frame.to_world({col, row}), frame.to_world({col + 1, row}),
                frame.to_world({col + 1, row + 1}), frame.to_world({col, row + 1})};
      bool blocked = false;
      Point3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
      Point3 hi = -1.0 * lo;
      for (const auto& p : square) {
        if (!world.contains(p, tol)) blocked = true;
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
      }
      if (!blocked) {
        const auto ix0 = std::max(0, static_cast<std::int32_t>(std::floor((lo.x - tol) / vs)));
        const auto iy0 = std::max(0, static_cast<std::int32_t>(std::floor((lo.y - tol) / vs)));
        const auto iz0 = std::max(0, static_cast<std::int32_t>(std::floor((lo.z - tol) / vs)));
        const auto ix1 = std::min(world.nx() - 1, static_cast<std::int32_t>(std::floor((hi.x + tol) / vs)));
        const auto iy1 = std::min(world.ny() - 1, static_cast<std::int32_t>(std::floor((hi.y + tol) / vs)));
        const auto iz1 = std::min(world.nz() - 1, static_cast<std::int32_t>(std::floor((hi.z + tol) / vs)));
        for (std::int32_t iz = iz0; iz <= iz1 && !blocked; ++iz) {
          for (std::int32_t iy = iy0; iy <= iy1 && !blocked; ++iy) {
            for (std::int32_t ix = ix0; ix <= ix1 && !blocked; ++ix) {
              if (!world.occupied(ix, iy, iz)) continue;
              blocked = tester.overlaps(square, {ix * vs, iy * vs, iz * vs},
                                        {(ix + 1) * vs, (iy + 1) * vs, (iz + 1) * vs});
            }
          }
        }
      }
      if (blocked) grid.set(col, row, true);
    }
  }

  const LatticePoint s{frame.source_col, frame.source_row};
  const LatticePoint d{frame.source_col + cells_along, frame.source_row};
  return {std::move(grid), s, d, frame, theta_deg};
}

}  // namespace skyroute
