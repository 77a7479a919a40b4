#include "eccpie/geometry.hpp"

#include <algorithm>

namespace eccpie {

namespace {

constexpr double kOnCircleTol = 1e-9;

double wrap_positive(double angle) {
  double a = std::fmod(angle, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a;
}

// Adaptive Simpson on [a, b] with absolute tolerance tol.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("quadrature did not converge to requested tolerance");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

}  // namespace

double EccentricSector::sweep() const {
  double d = (orientation == Orientation::counterclockwise) ? phi_end - phi_start
                                                            : phi_start - phi_end;
  return wrap_positive(d);
}

double signed_triangle_area(Point2 p1, Point2 p2, Point2 p3) {
  return 0.5 * (p1.x * p2.y + p2.x * p3.y + p3.x * p1.y -
                p2.x * p1.y - p3.x * p2.y - p1.x * p3.y);
}

double triangle_area(Point2 p1, Point2 p2, Point2 p3) {
  return std::abs(signed_triangle_area(p1, p2, p3));
}

double central_angle(Point2 a, Point2 b) {
  if (std::abs(a.norm() - 1.0) > kOnCircleTol || std::abs(b.norm() - 1.0) > kOnCircleTol)
    throw std::invalid_argument("central_angle: point not on the unit circle");
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

double segment_area(double beta) {
  if (!(beta > 0.0 && beta < 2.0 * kPi))
    throw std::domain_error("segment_area: central angle must be in (0, 2*pi)");
  return 0.5 * (beta - std::sin(beta));
}

double ray_extent(Point2 apex, double phi) {
  const double d2 = apex.norm2();
  if (d2 >= 1.0) throw std::invalid_argument("ray_extent: apex not strictly inside the circle");
  const Point2 u = unit_dir(phi);
  const double au = apex.dot(u);
  return -au + std::sqrt(au * au + 1.0 - d2);
}

Point2 ray_boundary_point(Point2 apex, double phi) {
  return apex + ray_extent(apex, phi) * unit_dir(phi);
}

double sector_area_decomposed(const EccentricSector& s) {
  const double sw = s.sweep();
  if (sw < 1e-12 || sw >= 2.0 * kPi - 1e-12)
    throw std::invalid_argument("sector_area_decomposed: degenerate sweep");

  const Point2 a = ray_boundary_point(s.apex, s.phi_start);
  const Point2 b = ray_boundary_point(s.apex, s.phi_end);

  // Central sweep of the arc traversed from a to b in the sector's
  // orientation. The boundary point moves monotonically with the ray
  // direction for an interior apex, so this is the arc the sector owns.
  const double ta = std::atan2(a.y, a.x);
  const double tb = std::atan2(b.y, b.x);
  double arc = (s.orientation == Orientation::counterclockwise) ? tb - ta : ta - tb;
  arc = std::fmod(arc, 2.0 * kPi);
  if (arc <= 0.0) arc += 2.0 * kPi;

  const double seg = segment_area(arc);
  const double tri = triangle_area(a, b, s.apex);

  // Side test against the chord ab: if the apex sits on the opposite side
  // from the arc midpoint, the triangle is added to the segment, otherwise
  // the apex lies inside the segment and the triangle is carved out.
  const double tmid = (s.orientation == Orientation::counterclockwise) ? ta + 0.5 * arc
                                                                       : ta - 0.5 * arc;
  const Point2 mid = unit_dir(tmid);
  const double side_arc = signed_triangle_area(a, b, mid);
  const double side_apex = signed_triangle_area(a, b, s.apex);
  if (side_arc * side_apex < 0.0) return seg + tri;
  return seg - tri;
}

double sector_area_integral(const EccentricSector& s) {
  const double sw = s.sweep();
  const double phi0 = s.phi_start;
  const double sign = (s.orientation == Orientation::counterclockwise) ? 1.0 : -1.0;
  auto integrand = [&](double t) {
    const double r = ray_extent(s.apex, phi0 + sign * t);
    return 0.5 * r * r;
  };
  return integrate(integrand, 0.0, sw, 1e-11);
}

std::pair<double, double> pizza_check(Point2 apex, int n_blades, double alpha) {
  if (n_blades < 4 || n_blades % 2 != 0)
    throw std::invalid_argument("pizza_check: n_blades must be even and >= 4");
  if (apex.norm2() >= 1.0)
    throw std::invalid_argument("pizza_check: apex must be interior");

  const int n_sectors = 2 * n_blades;
  const double step = kPi / n_blades;
  double sums[2] = {0.0, 0.0};
  for (int k = 0; k < n_sectors; ++k) {
    EccentricSector s{apex, alpha + k * step, alpha + (k + 1) * step,
                      Orientation::counterclockwise};
    sums[k % 2] += sector_area_decomposed(s);
  }
  return {sums[0], sums[1]};
}

}  // namespace eccpie
