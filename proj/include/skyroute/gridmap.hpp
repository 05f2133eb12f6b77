#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skyroute/geometry.hpp"

namespace skyroute {

// Index of a grid cell: col along x, row along y.
struct Cell {
  std::int32_t col = 0;
  std::int32_t row = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

// Discretized planar world. Every cell is either wholly obstacle or wholly
// free; the lattice of cell corners is (cols+1) x (rows+1).
class OccupancyGrid {
 public:
  OccupancyGrid(std::int32_t rows, std::int32_t cols, double cell_size_m);

  std::int32_t rows() const { return rows_; }
  std::int32_t cols() const { return cols_; }
  double cell_size_m() const { return cell_size_m_; }

  bool in_bounds(std::int32_t col, std::int32_t row) const {
    return col >= 0 && row >= 0 && col < cols_ && row < rows_;
  }
  bool on_lattice(LatticePoint p) const {
    return p.x >= 0 && p.y >= 0 && p.x <= cols_ && p.y <= rows_;
  }

  // Out-of-range cells read as free.
  bool occupied(std::int32_t col, std::int32_t row) const {
    return in_bounds(col, row) && cells_[index(col, row)] != 0;
  }
  bool occupied(Cell c) const { return occupied(c.col, c.row); }

  void set(std::int32_t col, std::int32_t row, bool value);
  void set(Cell c, bool value) { set(c.col, c.row, value); }

  std::size_t occupied_count() const;
  std::vector<Cell> occupied_cells() const;

  // Number of occupied cells among the (up to) four cells around a corner.
  int incident_occupied(LatticePoint p) const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  std::size_t index(std::int32_t col, std::int32_t row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  std::int32_t rows_;
  std::int32_t cols_;
  double cell_size_m_;
  std::vector<std::uint8_t> cells_;
};

struct RealPoint {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const RealPoint&, const RealPoint&) = default;
};

// Obstacle footprint in meters, convex or concave.
struct PolygonObstacle {
  std::vector<RealPoint> vertices;
};

// rows = ceil(R / p), cols = ceil(C / p). Ratios within 1e-9 of an integer
// are snapped so that e.g. 1.1 / 0.1 gives 11, not 12.
std::pair<std::int32_t, std::int32_t> discretize_dimensions(double region_rows_m,
                                                            double region_cols_m,
                                                            double precision_m);

// Andrew's monotone chain. Counter-clockwise, starting at the lowest-leftmost
// point, collinear boundary points dropped. Throws DegenerateObstacle.
std::vector<RealPoint> convex_hull(std::vector<RealPoint> points);

// Cells whose open interior overlaps the hull (given in meters) with positive
// area. Throws OutOfBounds if the hull leaves the grid.
std::vector<Cell> rasterize_hull(const std::vector<RealPoint>& hull, const OccupancyGrid& grid);

// Replaces the polygon by its convex hull and marks the covered cells.
// Returns the number of cells that were newly marked.
std::size_t add_polygon_obstacle(OccupancyGrid& grid, const PolygonObstacle& obstacle);

struct MapFile {
  OccupancyGrid grid;
  std::optional<LatticePoint> source;
  std::optional<LatticePoint> dest;

  friend bool operator==(const MapFile&, const MapFile&) = default;
};

// Text map format:
//   <rows> <cols> <cell_size_m>
//   <rows lines of cols chars, '#' obstacle, '.' free; first line is the top row>
//   [S <x> <y>]
//   [D <x> <y>]
MapFile parse_map(std::string_view text);
std::string serialize_map(const OccupancyGrid& grid, std::optional<LatticePoint> source = {},
                          std::optional<LatticePoint> dest = {});
inline std::string serialize_map(const MapFile& map) {
  return serialize_map(map.grid, map.source, map.dest);
}

MapFile load_map_file(const std::string& path);
void save_map_file(const std::string& path, const MapFile& map);

// Shortest round-trippable decimal with at least one fractional digit
// ("1.0", "0.25").
std::string format_real(double value);

}  // namespace skyroute
