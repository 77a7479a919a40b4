#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eccpie {

inline constexpr double kPi = std::numbers::pi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  double dot(const Point2& o) const { return x * o.x + y * o.y; }
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

/// Unit direction vector for angle phi.
inline Point2 unit_dir(double phi) { return {std::cos(phi), std::sin(phi)}; }

enum class Orientation { counterclockwise, clockwise };

/// Region bounded by two rays from an interior apex and the circle arc
/// between their boundary intersections.
struct EccentricSector {
  Point2 apex;
  double phi_start = 0.0;
  double phi_end = 0.0;
  Orientation orientation = Orientation::counterclockwise;

  /// Positive sweep angle from phi_start to phi_end in the sector's
  /// orientation, in (0, 2*pi].
  double sweep() const;
};

/// Signed area of the triangle (p1, p2, p3); positive for counterclockwise
/// vertex order. Half the 3x3 coordinate determinant.
double signed_triangle_area(Point2 p1, Point2 p2, Point2 p3);

/// Unsigned triangle area; 0 for collinear input.
double triangle_area(Point2 p1, Point2 p2, Point2 p3);

/// Central angle in [0, pi] between two points on the unit circle,
/// arccos of their dot product. Throws if either point is off the circle
/// by more than 1e-9.
double central_angle(Point2 a, Point2 b);

/// Area of the unit-circle circular segment cut off by the chord whose
/// central angle is beta, (beta - sin beta)/2. Valid for beta in (0, 2*pi);
/// for beta > pi this is the major segment.
double segment_area(double beta);

/// Distance from an interior apex to the circle boundary along direction
/// phi. Throws if the apex is on or outside the circle.
double ray_extent(Point2 apex, double phi);

/// Boundary point hit by the ray from apex in direction phi.
Point2 ray_boundary_point(Point2 apex, double phi);

/// Eccentric sector area via segment + apex-triangle decomposition.
double sector_area_decomposed(const EccentricSector& s);

/// Eccentric sector area via adaptive quadrature of r(phi)^2 / 2 over the
/// sweep. Independent of the decomposition path; absolute target 1e-11.
double sector_area_integral(const EccentricSector& s);

/// Alternating sector-area sums for an equiangular 2n-sector partition
/// (n_blades diameters through apex, first at angle alpha). Both sums are
/// pi/2 for any interior apex.
std::pair<double, double> pizza_check(Point2 apex, int n_blades, double alpha);

}  // namespace eccpie
