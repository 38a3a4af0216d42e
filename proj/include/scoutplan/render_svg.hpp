#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "scoutplan/geometry.hpp"
#include "scoutplan/occupancy_grid.hpp"

namespace scoutplan {

namespace detail {

inline std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

inline std::string gray_fill(double occupancy) {
  const int level = 255 - static_cast<int>(std::lround(std::clamp(occupancy, 0.0, 1.0) * 255.0));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", level, level, level);
  return buf;
}

}  // namespace detail

struct SvgOptions {
  // Cells where the inflated value crosses the threshold but the base map
  // does not are drawn as a gray safety margin.
  const OccupancyGrid2D* inflated = nullptr;
  double occupancy_threshold = 0.5;
  const std::vector<Point3>* trajectory = nullptr;
  bool altitude_chart = false;
  double scout_height = 0.0;  // reference line in the altitude chart
};

// Deterministic SVG: grayscale cells (0 -> white, 1 -> black), optional
// inflation overlay, path polyline, start/target markers, and an
// altitude-vs-waypoint-index strip chart. Identical inputs produce identical
// bytes.
inline std::string render_svg(const OccupancyGrid2D& grid, const SvgOptions& opts = {}) {
  grid.check_invariants();
  const double cell_px = 8.0;
  const double map_w = grid.nx * cell_px;
  const double map_h = grid.ny * cell_px;
  const bool chart = opts.altitude_chart && opts.trajectory && opts.trajectory->size() >= 2;
  const double chart_gap = 24.0, chart_h = 120.0;
  const double total_h = map_h + (chart ? chart_gap + chart_h : 0.0);

  auto to_px = [&](PlanarPoint p) {
    return PlanarPoint{(p.x - grid.origin_x) / grid.resolution * cell_px,
                       map_h - (p.y - grid.origin_y) / grid.resolution * cell_px};
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt_num(map_w) +
         "\" height=\"" + detail::fmt_num(total_h) + "\" viewBox=\"0 0 " + detail::fmt_num(map_w) +
         " " + detail::fmt_num(total_h) + "\">\n";

  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = i * cell_px;
      const double y = map_h - (j + 1) * cell_px;
      std::string fill = detail::gray_fill(grid.at(i, j));
      if (opts.inflated && grid.at(i, j) < opts.occupancy_threshold &&
          opts.inflated->at(i, j) >= opts.occupancy_threshold)
        fill = "#b4b4b4";
      svg += "<rect x=\"" + detail::fmt_num(x) + "\" y=\"" + detail::fmt_num(y) + "\" width=\"" +
             detail::fmt_num(cell_px) + "\" height=\"" + detail::fmt_num(cell_px) + "\" fill=\"" +
             fill + "\"/>\n";
    }
  }

  if (opts.trajectory && !opts.trajectory->empty()) {
    const auto& pts = *opts.trajectory;
    svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
    for (std::size_t t = 0; t < pts.size(); ++t) {
      const PlanarPoint q = to_px(pts[t].xy());
      if (t) svg += " ";
      svg += detail::fmt_num(q.x) + "," + detail::fmt_num(q.y);
    }
    svg += "\"/>\n";
    const PlanarPoint s = to_px(pts.front().xy());
    const PlanarPoint e = to_px(pts.back().xy());
    svg += "<circle cx=\"" + detail::fmt_num(s.x) + "\" cy=\"" + detail::fmt_num(s.y) +
           "\" r=\"5\" fill=\"#ff0000\"/>\n";
    svg += "<circle cx=\"" + detail::fmt_num(e.x) + "\" cy=\"" + detail::fmt_num(e.y) +
           "\" r=\"5\" fill=\"#ff00ff\"/>\n";
  }

  if (chart) {
    const auto& pts = *opts.trajectory;
    const double top = map_h + chart_gap;
    double z_hi = opts.scout_height;
    for (const Point3& p : pts) z_hi = std::max(z_hi, p.z);
    z_hi = z_hi <= 0.0 ? 1.0 : 1.05 * z_hi;
    auto chart_px = [&](std::size_t t, double z) {
      return PlanarPoint{map_w * static_cast<double>(t) / static_cast<double>(pts.size() - 1),
                         top + chart_h - (z / z_hi) * chart_h};
    };
    svg += "<rect x=\"0\" y=\"" + detail::fmt_num(top) + "\" width=\"" + detail::fmt_num(map_w) +
           "\" height=\"" + detail::fmt_num(chart_h) +
           "\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";
    if (opts.scout_height > 0.0) {
      const double hy = top + chart_h - (opts.scout_height / z_hi) * chart_h;
      svg += "<line x1=\"0\" y1=\"" + detail::fmt_num(hy) + "\" x2=\"" + detail::fmt_num(map_w) +
             "\" y2=\"" + detail::fmt_num(hy) +
             "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
    }
    svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t t = 0; t < pts.size(); ++t) {
      const PlanarPoint q = chart_px(t, pts[t].z);
      if (t) svg += " ";
      svg += detail::fmt_num(q.x) + "," + detail::fmt_num(q.y);
    }
    svg += "\"/>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace scoutplan
