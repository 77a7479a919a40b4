#pragma once

#include <string>
#include <vector>

#include "eccpie/geometry.hpp"

namespace eccpie {

struct ChartSpec {
  std::vector<double> shares;  // positive, summing to 1
  Point2 apex;
  Point2 start_point{0.0, 1.0};
  Orientation orientation = Orientation::counterclockwise;
};

struct ChartLayout {
  Point2 apex;
  Orientation orientation = Orientation::counterclockwise;
  std::vector<double> ray_angles;       // directions from the apex
  std::vector<Point2> boundary_points;  // on the unit circle
  std::vector<double> sector_areas;
  std::vector<std::string> warnings;
};

/// Computes the eccentric pie chart realizing the spec's shares: the first
/// ray points at start_point, each following ray closes a sector of area
/// share*pi (bracketed bisection, then Newton on the closing angle; the
/// area is strictly monotone in it). Shares off unity by up to 1e-3 are
/// renormalized with a warning; larger deviations are rejected.
ChartLayout solve_chart(const ChartSpec& spec, double tol = 1e-12);

/// Re-solves the layout's shares with the opposite orientation, keeping the
/// apex and first boundary point.
ChartLayout clockwise_counterpart(const ChartLayout& layout);

/// The nine 20-30-15-25-10% layouts with apex coordinates over
/// {-1/2, 0, 1/2} x {-1/2, 0, 1/2}, row-major from (-1/2, -1/2).
std::vector<ChartLayout> nine_cell_grid();

struct SvgOptions {
  double cell_size = 300.0;  // pixels per chart
  int columns = 1;
  bool labels = true;  // percentage text per sector
};

/// Standalone SVG 1.1 document with one cell per layout: unit circle, apex
/// dot, rays, filled sector paths (line, arc, line). Deterministic output,
/// coordinates at 6 decimals.
std::string render_svg(const std::vector<ChartLayout>& layouts,
                       const SvgOptions& options = {});

}  // namespace eccpie
