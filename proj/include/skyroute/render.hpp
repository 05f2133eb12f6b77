#pragma once

#include <string>

#include "skyroute/gridmap.hpp"
#include "skyroute/pathfind.hpp"

namespace skyroute {

struct RenderStyle {
  int cell_px = 20;
  int margin_px = 10;
  std::string obstacle_fill = "#9e9e9e";
  std::string path_stroke = "#d32f2f";
  std::string marker_fill = "#1976d2";
  int marker_radius_px = 4;
  std::string lattice_dot = "#212121";
};

// SVG 1.1: one rect per obstacle cell, lattice dots as a single path, the
// route as one red polyline and blue circles at the endpoints and at every
// deflection point. Origin renders bottom-left.
std::string render_svg(const OccupancyGrid& grid, const Path& path, const RenderStyle& style = {});

}  // namespace skyroute
