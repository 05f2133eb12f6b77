#include "skyroute/render.hpp"

#include <sstream>

namespace skyroute {

std::string render_svg(const OccupancyGrid& grid, const Path& path, const RenderStyle& style) {
  const int cell = style.cell_px;
  const int margin = style.margin_px;
  const int width = grid.cols() * cell + 2 * margin;
  const int height = grid.rows() * cell + 2 * margin;
  auto px = [&](std::int32_t x) { return margin + x * cell; };
  auto py = [&](std::int32_t y) { return margin + (grid.rows() - y) * cell; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";

  os << "<g class=\"obstacles\" fill=\"" << style.obstacle_fill << "\">\n";
  for (const auto& c : grid.occupied_cells()) {
    os << "<rect x=\"" << px(c.col) << "\" y=\"" << py(c.row + 1) << "\" width=\"" << cell
       << "\" height=\"" << cell << "\"/>\n";
  }
  os << "</g>\n";

  // Zero-length round-capped subpaths draw one dot per lattice corner.
  os << "<path class=\"lattice\" stroke=\"" << style.lattice_dot
     << "\" stroke-width=\"2\" stroke-linecap=\"round\" fill=\"none\" d=\"";
  for (std::int32_t y = 0; y <= grid.rows(); ++y) {
    for (std::int32_t x = 0; x <= grid.cols(); ++x) os << 'M' << px(x) << ' ' << py(y) << "h0";
  }
  os << "\"/>\n";

  if (!path.waypoints.empty()) {
    os << "<polyline class=\"route\" fill=\"none\" stroke=\"" << style.path_stroke
       << "\" stroke-width=\"3\" points=\"";
    for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
      if (i > 0) os << ' ';
      os << px(path.waypoints[i].x) << ',' << py(path.waypoints[i].y);
    }
    os << "\"/>\n";

    os << "<g class=\"markers\" fill=\"" << style.marker_fill << "\">\n";
    auto circle = [&](LatticePoint p, const char* cls) {
      os << "<circle class=\"" << cls << "\" cx=\"" << px(p.x) << "\" cy=\"" << py(p.y)
         << "\" r=\"" << style.marker_radius_px << "\"/>\n";
    };
    circle(path.waypoints.front(), "endpoint");
    for (const auto& d : path.deflections) circle(d, "deflection");
    if (path.waypoints.size() > 1) circle(path.waypoints.back(), "endpoint");
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace skyroute
