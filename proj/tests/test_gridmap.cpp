#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "skyroute/bench.hpp"
#include "skyroute/errors.hpp"
#include "skyroute/gridmap.hpp"
#include "support/oracles.hpp"

using namespace skyroute;

namespace {

std::set<Cell> as_set(const std::vector<Cell>& v) { return {v.begin(), v.end()}; }

std::set<std::pair<double, double>> vertex_set(const std::vector<RealPoint>& v) {
  std::set<std::pair<double, double>> out;
  for (const auto& p : v) out.insert({p.x, p.y});
  return out;
}

}  // namespace

TEST_CASE("discretize_dimensions") {
  CHECK(discretize_dimensions(10, 20, 1) == std::pair{10, 20});
  CHECK(discretize_dimensions(10, 20, 3) == std::pair{4, 7});
  CHECK(discretize_dimensions(7.5, 7.5, 2.5) == std::pair{3, 3});
  CHECK(discretize_dimensions(1.1, 0.7, 0.1) == std::pair{11, 7});
  CHECK_THROWS_AS(discretize_dimensions(0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(discretize_dimensions(1, 1, -1), InvalidArgument);
}

TEST_CASE("discretize_dimensions covers the region") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> n(1, 400);
  std::uniform_int_distribution<int> d(1, 20);
  for (int i = 0; i < 2000; ++i) {
    // Integer metres over integer precision keeps "divides exactly" exact.
    const int r = n(rng);
    const int c = n(rng);
    const int p = d(rng);
    const auto [rows, cols] = discretize_dimensions(r, c, p);
    CHECK(rows * p >= r);
    CHECK(cols * p >= c);
    CHECK((rows * p == r) == (r % p == 0));
    CHECK((cols * p == c) == (c % p == 0));
    CHECK((rows - 1) * p < r);
  }
}

TEST_CASE("convex_hull examples") {
  const auto tri = convex_hull({{0, 0}, {4, 0}, {0, 4}});
  CHECK(tri == std::vector<RealPoint>{{0, 0}, {4, 0}, {0, 4}});
  const auto sq = convex_hull({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 2}});
  CHECK(sq == std::vector<RealPoint>{{0, 0}, {4, 0}, {4, 4}, {0, 4}});
  const auto with_edge_point = convex_hull({{0, 0}, {2, 0}, {4, 0}, {4, 4}, {0, 4}});
  CHECK(with_edge_point.size() == 4);
  CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}}), DegenerateObstacle);
  CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), DegenerateObstacle);
}

TEST_CASE("convex_hull matches gift wrapping on seeded random sets") {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RealPoint> pts(50);
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    const auto hull = convex_hull(pts);
    CHECK(vertex_set(hull) == vertex_set(testing::gift_wrap(pts)));
    // Counter-clockwise: positive signed area.
    double area = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto& a = hull[i];
      const auto& b = hull[(i + 1) % hull.size()];
      area += a.x * b.y - b.x * a.y;
    }
    CHECK(area > 0);
  }
}

TEST_CASE("rasterize_hull examples") {
  const OccupancyGrid grid(4, 4, 1.0);
  CHECK(as_set(rasterize_hull({{1, 1}, {2, 1}, {2, 2}, {1, 2}}, grid)) == std::set<Cell>{{1, 1}});
  CHECK(as_set(rasterize_hull({{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}}, grid)) ==
        std::set<Cell>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK_THROWS_AS(rasterize_hull({{3, 3}, {5, 3}, {5, 5}}, grid), OutOfBounds);
}

TEST_CASE("rasterize_hull scales meters by the cell size") {
  const OccupancyGrid grid(4, 4, 2.0);
  CHECK(as_set(rasterize_hull({{2, 2}, {4, 2}, {4, 4}, {2, 4}}, grid)) == std::set<Cell>{{1, 1}});
}

TEST_CASE("rasterize_hull triangle agrees with Monte-Carlo sampling") {
  const OccupancyGrid grid(4, 4, 1.0);
  const std::vector<RealPoint> tri{{0, 0}, {3, 0}, {0, 3}};
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::set<Cell> sampled;
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) {
      for (int s = 0; s < 100000; ++s) {
        const double x = col + u(rng);
        const double y = row + u(rng);
        if (x > 0 && y > 0 && x + y < 3) {
          sampled.insert({col, row});
          break;
        }
      }
    }
  }
  CHECK(sampled.size() == 6);
  CHECK(as_set(rasterize_hull(tri, grid)) == sampled);
}

TEST_CASE("rasterize_hull ignores vertex order and stacks disjoint squares") {
  OccupancyGrid grid(6, 6, 1.0);
  const std::vector<RealPoint> ccw{{0.2, 0.3}, {4.5, 1.0}, {3.0, 5.2}};
  const std::vector<RealPoint> cw{{0.2, 0.3}, {3.0, 5.2}, {4.5, 1.0}};
  CHECK(as_set(rasterize_hull(ccw, grid)) == as_set(rasterize_hull(convex_hull(cw), grid)));
  CHECK(as_set(rasterize_hull(cw, grid)) == as_set(rasterize_hull(ccw, grid)));

  const int k = 5;
  for (int i = 0; i < k; ++i) {
    const double x = i;
    const double y = (i * 2) % 6;
    add_polygon_obstacle(grid, {{{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}}});
  }
  CHECK(grid.occupied_count() == k);
}

TEST_CASE("concave polygons are replaced by their hull") {
  OccupancyGrid grid(4, 4, 1.0);
  // L-shape whose notch cell (1,1) is partly inside the hull x + y < 3.
  add_polygon_obstacle(grid, {{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}});
  CHECK(grid.occupied(1, 1));
  CHECK(grid.occupied_count() == 4);
  CHECK(grid.occupied(0, 0));
  CHECK(grid.occupied(1, 0));
  CHECK(grid.occupied(0, 1));
  OccupancyGrid wide(6, 6, 1.0);
  add_polygon_obstacle(wide, {{{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 4}, {0, 4}}});
  CHECK(wide.occupied(1, 1));  // inside the hull of the L, outside the L itself
}

TEST_CASE("parse_map examples") {
  const auto m = parse_map("3 3 1.0\n###\n...\n...\n");
  CHECK(m.grid.rows() == 3);
  CHECK(m.grid.cols() == 3);
  for (int c = 0; c < 3; ++c) {
    CHECK(m.grid.occupied(c, 2));
    CHECK_FALSE(m.grid.occupied(c, 0));
  }
  const auto one = parse_map("1 1 1.0\n.\n");
  CHECK(one.grid.occupied_count() == 0);
  CHECK_FALSE(one.source.has_value());

  const auto with_sd = parse_map("2 3 0.5\n#..\n...\nS 0 0\nD 3 2\n");
  CHECK(with_sd.source == LatticePoint{0, 0});
  CHECK(with_sd.dest == LatticePoint{3, 2});
  CHECK(with_sd.grid.cell_size_m() == 0.5);
  CHECK(with_sd.grid.occupied(0, 1));
}

TEST_CASE("parse_map errors name the line") {
  auto line_of = [](const char* text) {
    try {
      parse_map(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("2 2 1.0\n..\n...\n") == 3);     // ragged row
  CHECK(line_of("2 2 1.0\n.x\n..\n") == 2);      // unknown char
  CHECK(line_of("3 2 1.0\n..\n..\n") == 4);      // missing row
  CHECK(line_of("2 2 1.0\n..\n..\nS 3 0\n") == 4);  // S out of bounds
  CHECK(line_of("2 2 abc\n..\n..\n") == 1);
  CHECK(line_of("2 2 1.0\n..\n..\nQ 0 0\n") == 4);
  CHECK(line_of("2 2 1.0\n..\n..\nS 0 0\nS 1 1\n") == 5);
}

TEST_CASE("map serialization round-trips byte for byte") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> side(1, 30);
    const int rows = side(rng);
    const int cols = side(rng);
    const auto capacity = static_cast<std::int64_t>(rows) * cols - (rows * cols > 1 ? 2 : 1);
    std::uniform_int_distribution<std::int64_t> count(0, capacity);
    const double cells[] = {1.0, 0.5, 2.5, 0.1, 3.0};
    const auto grid = gen_random_map(rows, cols, count(rng), seed, cells[seed % 5]);
    const MapFile m{grid, LatticePoint{0, 0}, LatticePoint{cols, rows}};
    const auto text = serialize_map(m);
    const auto back = parse_map(text);
    CHECK(back == m);
    CHECK(serialize_map(back) == text);
  }
}

TEST_CASE("format_real") {
  CHECK(format_real(1.0) == "1.0");
  CHECK(format_real(0.25) == "0.25");
  CHECK(format_real(0.1) == "0.1");
}
