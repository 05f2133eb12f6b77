#pragma once

// Exact lattice predicates. Everything that decides visibility is computed
// with 64-bit integer cross products; doubles only show up in distances.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace skyroute {

// Corner of a grid cell, in cell units. (0,0) is the lower-left corner.
struct LatticePoint {
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;
  // Lexicographic by x, then y.
  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

std::ostream& operator<<(std::ostream& os, const LatticePoint& p);

struct Segment {
  LatticePoint a;
  LatticePoint b;

  friend constexpr bool operator==(const Segment&, const Segment&) = default;
};

// Reduced direction of the ray origin->p for points in the closed right
// half-plane. dx >= 0 always; vertical rays are (+-1, 0).
class SlopeKey {
 public:
  SlopeKey(LatticePoint origin, LatticePoint p);

  std::int64_t dy() const { return dy_; }
  std::int64_t dx() const { return dx_; }
  bool vertical() const { return dx_ == 0; }

  friend bool operator==(const SlopeKey&, const SlopeKey&) = default;
  // Orders like real slopes on [-inf, +inf]: straight down first, straight
  // up last.
  friend std::strong_ordering operator<=>(const SlopeKey& lhs, const SlopeKey& rhs);

 private:
  std::int64_t dy_;
  std::int64_t dx_;
};

inline std::int64_t squared_distance(LatticePoint a, LatticePoint b) {
  const std::int64_t dx = std::int64_t{a.x} - b.x;
  const std::int64_t dy = std::int64_t{a.y} - b.y;
  return dx * dx + dy * dy;
}

// Euclidean distance in cell units; multiply by the cell size for meters.
double euclid_distance(LatticePoint a, LatticePoint b);

// Sign of (b - a) x (c - a): +1 counter-clockwise, -1 clockwise, 0 collinear.
int orientation(LatticePoint a, LatticePoint b, LatticePoint c);

// Compares the slope of origin->u against origin->v. Both points must be
// distinct from origin with non-negative x offset; throws InvalidArgument
// otherwise.
std::strong_ordering slope_compare(LatticePoint origin, LatticePoint u, LatticePoint v);

// True iff the relative interior of s meets the open square
// (col, col+1) x (row, row+1).
bool segment_crosses_open_cell(const Segment& s, std::int32_t col, std::int32_t row);

// True iff the segments are collinear and share a piece of positive length.
bool collinear_overlap(const Segment& s1, const Segment& s2);

// True iff the segments cross at a point interior to both, or collinearly
// overlap with positive length. Touching at an endpoint is not an
// intersection.
bool segments_properly_intersect(const Segment& s1, const Segment& s2);

}  // namespace skyroute

template <>
struct std::hash<skyroute::LatticePoint> {
  std::size_t operator()(const skyroute::LatticePoint& p) const noexcept {
    const auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x));
    const auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.y));
    return std::hash<std::uint64_t>{}((ux << 32) | uy);
  }
};
