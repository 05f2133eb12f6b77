#include "skyroute/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "skyroute/errors.hpp"

namespace skyroute {

std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

SlopeKey::SlopeKey(LatticePoint origin, LatticePoint p)
    : dy_(std::int64_t{p.y} - origin.y), dx_(std::int64_t{p.x} - origin.x) {
  if (dx_ < 0) {
    throw InvalidArgument("slope key: point lies left of the origin");
  }
  if (dx_ == 0 && dy_ == 0) {
    throw InvalidArgument("slope key: point coincides with the origin");
  }
  if (dx_ == 0) {
    dy_ = dy_ > 0 ? 1 : -1;
    return;
  }
  const std::int64_t g = std::gcd(dx_, dy_ < 0 ? -dy_ : dy_);
  dx_ /= g;
  dy_ /= g;
}

std::strong_ordering operator<=>(const SlopeKey& lhs, const SlopeKey& rhs) {
  if (lhs.dx_ == 0 && rhs.dx_ == 0) {
    return lhs.dy_ <=> rhs.dy_;
  }
  // Both denominators are non-negative, so cross-multiplying keeps the
  // direction of the comparison. A vertical ray has dx == 0 and sorts as
  // +inf or -inf by the sign of dy.
  return lhs.dy_ * rhs.dx_ <=> rhs.dy_ * lhs.dx_;
}

double euclid_distance(LatticePoint a, LatticePoint b) {
  return std::sqrt(static_cast<double>(squared_distance(a, b)));
}

int orientation(LatticePoint a, LatticePoint b, LatticePoint c) {
  const std::int64_t cross = (std::int64_t{b.x} - a.x) * (std::int64_t{c.y} - a.y) -
                             (std::int64_t{b.y} - a.y) * (std::int64_t{c.x} - a.x);
  return (cross > 0) - (cross < 0);
}

std::strong_ordering slope_compare(LatticePoint origin, LatticePoint u, LatticePoint v) {
  return SlopeKey(origin, u) <=> SlopeKey(origin, v);
}

namespace {

// num / den with den > 0.
struct Fraction {
  std::int64_t num;
  std::int64_t den;
};

bool less(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }

// Restricts the open parameter interval (lo, hi) to the slab lo_bound < a + t*d < hi_bound.
// Returns false when the slab excludes every t.
bool clip_axis(std::int64_t a, std::int64_t d, std::int64_t lo_bound, std::int64_t hi_bound,
               Fraction& lo, Fraction& hi) {
  if (d == 0) {
    return lo_bound < a && a < hi_bound;
  }
  Fraction enter{};
  Fraction leave{};
  if (d > 0) {
    enter = {lo_bound - a, d};
    leave = {hi_bound - a, d};
  } else {
    enter = {a - hi_bound, -d};
    leave = {a - lo_bound, -d};
  }
  if (less(lo, enter)) lo = enter;
  if (less(leave, hi)) hi = leave;
  return true;
}

}  // namespace

bool segment_crosses_open_cell(const Segment& s, std::int32_t col, std::int32_t row) {
  Fraction lo{0, 1};
  Fraction hi{1, 1};
  const std::int64_t dx = std::int64_t{s.b.x} - s.a.x;
  const std::int64_t dy = std::int64_t{s.b.y} - s.a.y;
  if (!clip_axis(s.a.x, dx, col, std::int64_t{col} + 1, lo, hi)) return false;
  if (!clip_axis(s.a.y, dy, row, std::int64_t{row} + 1, lo, hi)) return false;
  return less(lo, hi);
}

bool collinear_overlap(const Segment& s1, const Segment& s2) {
  if (orientation(s1.a, s1.b, s2.a) != 0 || orientation(s1.a, s1.b, s2.b) != 0) {
    return false;
  }
  // Project on the axis along which s1 actually extends.
  const bool use_x = s1.a.x != s1.b.x;
  auto coord = [use_x](LatticePoint p) { return use_x ? p.x : p.y; };
  const auto lo1 = std::min(coord(s1.a), coord(s1.b));
  const auto hi1 = std::max(coord(s1.a), coord(s1.b));
  const auto lo2 = std::min(coord(s2.a), coord(s2.b));
  const auto hi2 = std::max(coord(s2.a), coord(s2.b));
  return std::max(lo1, lo2) < std::min(hi1, hi2);
}

bool segments_properly_intersect(const Segment& s1, const Segment& s2) {
  const int o1 = orientation(s1.a, s1.b, s2.a);
  const int o2 = orientation(s1.a, s1.b, s2.b);
  if (o1 == 0 && o2 == 0) {
    return collinear_overlap(s1, s2);
  }
  const int o3 = orientation(s2.a, s2.b, s1.a);
  const int o4 = orientation(s2.a, s2.b, s1.b);
  // Any zero here means the lines meet at an endpoint of one segment.
  return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace skyroute
