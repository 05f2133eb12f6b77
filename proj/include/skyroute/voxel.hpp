#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "skyroute/gridmap.hpp"

namespace skyroute {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(const Point3&, const Point3&) = default;
};

inline Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(Point3 a, Point3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(Point3 a);

// Boolean voxel field; voxel (ix, iy, iz) spans
// [ix, ix+1] x [iy, iy+1] x [iz, iz+1] times voxel_size_m.
class VoxelWorld {
 public:
  VoxelWorld(std::int32_t nx, std::int32_t ny, std::int32_t nz, double voxel_size_m);

  std::int32_t nx() const { return nx_; }
  std::int32_t ny() const { return ny_; }
  std::int32_t nz() const { return nz_; }
  double voxel_size_m() const { return voxel_size_m_; }
  Point3 extent() const { return {nx_ * voxel_size_m_, ny_ * voxel_size_m_, nz_ * voxel_size_m_}; }

  bool in_bounds(std::int32_t ix, std::int32_t iy, std::int32_t iz) const {
    return ix >= 0 && iy >= 0 && iz >= 0 && ix < nx_ && iy < ny_ && iz < nz_;
  }
  bool occupied(std::int32_t ix, std::int32_t iy, std::int32_t iz) const {
    return in_bounds(ix, iy, iz) && cells_[index(ix, iy, iz)] != 0;
  }
  void set(std::int32_t ix, std::int32_t iy, std::int32_t iz, bool value);
  std::size_t occupied_count() const;

  // Closed box test.
  bool contains(Point3 p, double eps = 1e-9) const;
  // True iff p lies in the open interior of an occupied voxel, shrunk by eps.
  bool inside_occupied(Point3 p, double eps = 1e-9) const;

  friend bool operator==(const VoxelWorld&, const VoxelWorld&) = default;

 private:
  std::size_t index(std::int32_t ix, std::int32_t iy, std::int32_t iz) const {
    return (static_cast<std::size_t>(iz) * static_cast<std::size_t>(ny_) +
            static_cast<std::size_t>(iy)) *
               static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(ix);
  }

  std::int32_t nx_;
  std::int32_t ny_;
  std::int32_t nz_;
  double voxel_size_m_;
  std::vector<std::uint8_t> cells_;
};

// Voxel text format:
//   <nx> <ny> <nz> <voxel_size_m>
//   nz blocks (z ascending) of ny rows of nx '#'/'.' chars, separated by a
//   blank line; within a block the first row is y = ny-1.
VoxelWorld parse_voxels(std::string_view text);
std::string serialize_voxels(const VoxelWorld& world);
VoxelWorld load_voxel_file(const std::string& path);

// Planar lattice embedded in 3D. The plane contains the source->dest line;
// u runs along that line and v along the rotated in-plane normal.
struct PlaneFrame {
  Point3 origin;  // world position of the source
  Point3 u_axis;  // unit, source -> dest
  Point3 v_axis;  // unit, orthogonal to u_axis
  double cell_size_m = 1.0;
  std::int32_t source_col = 0;  // lattice coordinates of the source
  std::int32_t source_row = 0;

  Point3 to_world(LatticePoint p) const;
};

struct PlaneSlice {
  OccupancyGrid grid;
  LatticePoint source;
  LatticePoint dest;
  PlaneFrame frame;
  double theta_deg = 0.0;
};

// Rasterizes the plane through source and dest, rotated by theta about the
// source->dest line away from the vertical reference plane. A cell is an
// obstacle if its square touches the interior of an occupied voxel or sticks
// out of the world box. The in-plane cell size is the largest value not above
// precision_m that puts dest exactly on the lattice.
PlaneSlice slice_plane(const VoxelWorld& world, Point3 source, Point3 dest, double theta_deg,
                       double precision_m);

}  // namespace skyroute
