#include "eccpie/charts.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace eccpie {

namespace {

constexpr double kApexLimit = 1.0 - 1e-9;

// Area swept from phi0 over `sweep` in the given orientation.
double swept_area(Point2 apex, double phi0, double sweep, Orientation o) {
  const double sign = (o == Orientation::counterclockwise) ? 1.0 : -1.0;
  return sector_area_decomposed({apex, phi0, phi0 + sign * sweep, o});
}

// Solves swept_area(sweep) = target for sweep in (lo, 2*pi): bisection to a
// coarse bracket, then Newton with the exact derivative r(phi)^2 / 2.
double solve_sweep(Point2 apex, double phi0, Orientation o, double lo,
                   double target, double tol) {
  const double sign = (o == Orientation::counterclockwise) ? 1.0 : -1.0;
  double hi = 2.0 * kPi - 1e-9;
  auto f = [&](double s) { return swept_area(apex, phi0, s, o) - target; };

  // The swept area is strictly increasing, so the sign changes exactly once.
  double flo = f(std::max(lo, 1e-9));
  if (flo > 0.0) throw std::logic_error("solve_chart: bracket lost monotonicity");
  for (int it = 0; it < 60 && hi - lo > 1e-6; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    const double fs = f(s);
    if (std::abs(fs) < tol) break;
    const double r = ray_extent(apex, phi0 + sign * s);
    double next = s - fs / (0.5 * r * r);
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);  // fall back to bisection
    if (f(next) < 0.0)
      lo = next;
    else
      hi = next;
    s = next;
  }
  return s;
}

}  // namespace

ChartLayout solve_chart(const ChartSpec& spec, double tol) {
  const std::size_t n = spec.shares.size();
  if (n == 0) throw std::invalid_argument("solve_chart: no shares");
  for (double s : spec.shares)
    if (!(s > 0.0)) throw std::invalid_argument("solve_chart: shares must be positive");
  if (spec.apex.norm() >= kApexLimit)
    throw std::invalid_argument("solve_chart: apex must be strictly inside the circle");
  if (std::abs(spec.start_point.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("solve_chart: start_point must lie on the unit circle");

  ChartLayout layout;
  layout.apex = spec.apex;
  layout.orientation = spec.orientation;

  double sum = std::accumulate(spec.shares.begin(), spec.shares.end(), 0.0);
  std::vector<double> shares = spec.shares;
  if (std::abs(sum - 1.0) > 1e-9) {
    if (sum < 0.999 || sum > 1.001)
      throw std::invalid_argument("solve_chart: shares must sum to 1");
    for (double& s : shares) s /= sum;
    layout.warnings.push_back("shares renormalized from sum " + std::to_string(sum));
  }
  if (spec.apex.norm() > 0.99)
    layout.warnings.push_back("apex within 0.01 of the boundary: ill-conditioned layout");

  const Point2 d0 = spec.start_point - spec.apex;
  const double phi0 = std::atan2(d0.y, d0.x);
  layout.ray_angles.push_back(phi0);
  layout.boundary_points.push_back(spec.start_point);

  if (n == 1) {  // full disc, single ray
    layout.sector_areas.push_back(kPi);
    return layout;
  }

  const double sign = (spec.orientation == Orientation::counterclockwise) ? 1.0 : -1.0;
  double cum_sweep = 0.0;
  double cum_target = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cum_target += shares[i] * kPi;
    const double next_sweep =
        solve_sweep(spec.apex, phi0, spec.orientation, cum_sweep, cum_target, tol);
    const double phi = phi0 + sign * next_sweep;
    layout.ray_angles.push_back(phi);
    layout.boundary_points.push_back(ray_boundary_point(spec.apex, phi));
    layout.sector_areas.push_back(
        swept_area(spec.apex, phi0, next_sweep, spec.orientation) -
        (cum_target - shares[i] * kPi));
    cum_sweep = next_sweep;
  }
  // Closing sector back to the first ray.
  const double last = kPi - cum_target;
  const double actual =
      sector_area_decomposed({spec.apex, phi0 + sign * cum_sweep, phi0, spec.orientation});
  if (std::abs(actual - last) > 10.0 * std::max(tol, 1e-14))
    throw std::logic_error("solve_chart: closure failure (internal bug)");
  layout.sector_areas.push_back(actual);
  return layout;
}

ChartLayout clockwise_counterpart(const ChartLayout& layout) {
  ChartSpec spec;
  for (double a : layout.sector_areas) spec.shares.push_back(a / kPi);
  spec.apex = layout.apex;
  spec.start_point = layout.boundary_points.front();
  spec.orientation = (layout.orientation == Orientation::counterclockwise)
                         ? Orientation::clockwise
                         : Orientation::counterclockwise;
  return solve_chart(spec);
}

std::vector<ChartLayout> nine_cell_grid() {
  std::vector<ChartLayout> grid;
  for (double y : {-0.5, 0.0, 0.5})
    for (double x : {-0.5, 0.0, 0.5}) {
      ChartSpec spec;
      spec.shares = {0.2, 0.3, 0.15, 0.25, 0.1};
      spec.apex = {x, y};
      grid.push_back(solve_chart(spec));
    }
  return grid;
}

namespace {

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v + 0.0);  // normalize -0
  return buf;
}

const char* kPalette[10] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                            "#edc949", "#af7aa1", "#ff9da7", "#9c755f", "#bab0ab"};

}  // namespace

std::string render_svg(const std::vector<ChartLayout>& layouts,
                       const SvgOptions& options) {
  const int cols = std::max(1, options.columns);
  const int rows = (static_cast<int>(layouts.size()) + cols - 1) / cols;
  const double cell = options.cell_size;
  const double scale = cell / 2.2;  // viewBox span -1.1 .. 1.1 per cell

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << fmt6(cols * cell) << "\" height=\"" << fmt6(rows * cell) << "\" viewBox=\"0 0 "
      << fmt6(cols * cell) << ' ' << fmt6(rows * cell) << "\">\n";

  for (std::size_t li = 0; li < layouts.size(); ++li) {
    const ChartLayout& lay = layouts[li];
    const double cx = (static_cast<int>(li) % cols + 0.5) * cell;
    const double cy = (static_cast<int>(li) / cols + 0.5) * cell;
    auto X = [&](double x) { return cx + scale * x; };
    auto Y = [&](double y) { return cy - scale * y; };

    out << "  <g>\n";
    const std::size_t n = lay.ray_angles.size();
    const bool ccw = lay.orientation == Orientation::counterclockwise;
    for (std::size_t i = 0; i < n && n > 1; ++i) {
      const Point2 a = lay.boundary_points[i];
      const Point2 b = lay.boundary_points[(i + 1) % n];
      // Central sweep of this sector's arc, for the large-arc flag.
      double arc = ccw ? std::atan2(b.y, b.x) - std::atan2(a.y, a.x)
                       : std::atan2(a.y, a.x) - std::atan2(b.y, b.x);
      arc = std::fmod(arc, 2.0 * kPi);
      if (arc <= 0.0) arc += 2.0 * kPi;
      const int large = arc > kPi ? 1 : 0;
      const int sweep_flag = ccw ? 0 : 1;  // screen y points down
      out << "    <path d=\"M " << fmt6(X(lay.apex.x)) << ' ' << fmt6(Y(lay.apex.y))
          << " L " << fmt6(X(a.x)) << ' ' << fmt6(Y(a.y)) << " A " << fmt6(scale) << ' '
          << fmt6(scale) << " 0 " << large << ' ' << sweep_flag << ' ' << fmt6(X(b.x))
          << ' ' << fmt6(Y(b.y)) << " Z\" fill=\"" << kPalette[i % 10]
          << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    out << "    <circle cx=\"" << fmt6(cx) << "\" cy=\"" << fmt6(cy) << "\" r=\""
        << fmt6(scale) << "\" fill=\"" << (n > 1 ? "none" : kPalette[0])
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "    <circle cx=\"" << fmt6(X(lay.apex.x)) << "\" cy=\"" << fmt6(Y(lay.apex.y))
        << "\" r=\"3\" fill=\"black\"/>\n";
    if (options.labels) {
      // Labels sit on the sector's angular midline, partway to the rim.
      for (std::size_t i = 0; i < lay.sector_areas.size(); ++i) {
        double phi_mid;
        if (n > 1) {
          const double a0 = lay.ray_angles[i];
          const double a1 = lay.ray_angles[(i + 1) % n];
          const double sign = ccw ? 1.0 : -1.0;
          double sweep = std::fmod(sign * (a1 - a0), 2.0 * kPi);
          if (sweep <= 0.0) sweep += 2.0 * kPi;
          phi_mid = a0 + sign * 0.5 * sweep;
        } else {
          phi_mid = lay.ray_angles[0] + kPi;
        }
        const double r = 0.6 * ray_extent(lay.apex, phi_mid);
        const Point2 pos = lay.apex + r * unit_dir(phi_mid);
        const double pct = 100.0 * lay.sector_areas[i] / kPi;
        char label[32];
        std::snprintf(label, sizeof(label), "%.1f%%", pct);
        out << "    <text x=\"" << fmt6(X(pos.x)) << "\" y=\"" << fmt6(Y(pos.y))
            << "\" font-size=\"" << fmt6(cell / 20.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\">" << label
            << "</text>\n";
      }
    }
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace eccpie
