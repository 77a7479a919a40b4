#include "eccpie/piecut.hpp"

#include <algorithm>
#include <cmath>

#include "eccpie/geometry.hpp"
#include "eccpie/newton.hpp"
#include "eccpie/taylor.hpp"

namespace eccpie {

namespace {

double wrap_2pi(double a) {
  double r = std::fmod(a, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r;
}

// Counterclockwise central sweep from a to b on the unit circle.
double ccw_central_sweep(Point2 a, Point2 b) {
  return wrap_2pi(std::atan2(b.y, b.x) - std::atan2(a.y, a.x));
}

// 11-vector (build_piecut_system variable order) from the reduced
// parameters: apex abscissa and the angle of the first blade.
RealVec expand_solution(double x0, double alpha) {
  const Point2 apex{x0, 0.0};
  Point2 p[3];
  for (int i = 0; i < 3; ++i)
    p[i] = ray_boundary_point(apex, alpha + i * 2.0 * kPi / 3.0);
  const double beta = ccw_central_sweep(p[0], p[1]);
  const double phi = ccw_central_sweep(p[1], p[2]);
  return {x0,   p[0].x, p[0].y, p[1].x, p[1].y, p[2].x,
          p[2].y, beta,   phi,    std::sin(beta), std::sin(phi)};
}

// Reflections across the horizontal axis (negate the y's) and the vertical
// axis (negate the x's) map solutions to solutions; beta, phi and the sin
// substitutes are invariant.
RealVec reflect(const RealVec& v, bool flip_x, bool flip_y) {
  RealVec r = v;
  if (flip_x) {
    r[0] = -r[0];
    r[1] = -r[1];
    r[3] = -r[3];
    r[5] = -r[5];
  }
  if (flip_y) {
    r[2] = -r[2];
    r[4] = -r[4];
    r[6] = -r[6];
  }
  return r;
}

bool close_vec(const RealVec& a, const RealVec& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// Groups solution vectors into reflection orbits and returns one canonical
// representative per orbit (largest y1, ties by largest x1) with the orbit
// size.
std::vector<PiecutSolution> group_by_reflection(const std::vector<RealVec>& sols,
                                                const RealResidualFn& exact,
                                                double match_tol = 1e-7) {
  std::vector<PiecutSolution> out;
  std::vector<bool> used(sols.size(), false);
  for (std::size_t i = 0; i < sols.size(); ++i) {
    if (used[i]) continue;
    // Full orbit of sols[i], deduplicated.
    std::vector<RealVec> orbit;
    for (bool fx : {false, true})
      for (bool fy : {false, true}) {
        RealVec m = reflect(sols[i], fx, fy);
        bool dup = false;
        for (const auto& o : orbit) dup = dup || close_vec(o, m, match_tol);
        if (!dup) orbit.push_back(std::move(m));
      }
    // Absorb other found solutions that lie in this orbit.
    for (std::size_t j = i; j < sols.size(); ++j) {
      if (used[j]) continue;
      for (const auto& o : orbit)
        if (close_vec(o, sols[j], match_tol)) {
          used[j] = true;
          break;
        }
    }
    const auto rep = std::max_element(
        orbit.begin(), orbit.end(), [](const RealVec& a, const RealVec& b) {
          if (a[2] != b[2]) return a[2] < b[2];
          return a[1] < b[1];
        });
    PiecutSolution s;
    s.values = *rep;
    s.class_size = static_cast<int>(orbit.size());
    s.exact_residual_norm = exact ? inf_norm(exact(s.values)) : 0.0;
    out.push_back(std::move(s));
  }
  return out;
}

// Residual of the reduced exact problem: first two ccw sector areas minus
// their targets, as a function of (x0, alpha).
RealResidualFn reduced_residual(double l1, double l2) {
  return [l1, l2](const RealVec& p) -> RealVec {
    const double x0 = p[0], alpha = p[1];
    if (std::abs(x0) >= 1.0 - 1e-12) return {1e6, 1e6};
    const Point2 apex{x0, 0.0};
    const double a0 = alpha, a1 = alpha + 2.0 * kPi / 3.0, a2 = alpha + 4.0 * kPi / 3.0;
    const double area1 =
        sector_area_decomposed({apex, a0, a1, Orientation::counterclockwise});
    const double area2 =
        sector_area_decomposed({apex, a1, a2, Orientation::counterclockwise});
    return {area1 - l1 * kPi, area2 - l2 * kPi};
  };
}

std::vector<RealVec> oracle_solve(double l1, double l2) {
  const auto f = reduced_residual(l1, l2);
  std::vector<std::pair<double, double>> found;
  for (double x0 = -0.9; x0 <= 0.9 + 1e-12; x0 += 0.1) {
    for (double alpha = 0.0; alpha <= 2.0 * kPi / 3.0 + 1e-12; alpha += 0.1) {
      try {
        const NewtonResult r = newton(f, {x0, alpha}, 1e-13, 60);
        const double rx0 = r.point[0];
        const double ralpha = wrap_2pi(r.point[1]);
        bool dup = false;
        for (auto [ux, ua] : found)
          dup = dup || (std::abs(ux - rx0) < 1e-8 &&
                        std::abs(wrap_2pi(ua - ralpha + kPi) - kPi) < 1e-8);
        if (!dup) found.emplace_back(rx0, ralpha);
      } catch (const NewtonFailure&) {
        // starts in flat or infeasible regions simply do not converge
      }
    }
  }
  std::vector<RealVec> sols;
  for (auto [x0, alpha] : found) sols.push_back(expand_solution(x0, alpha));
  return sols;
}

}  // namespace

PiecutOutcome solve_piecut(double lambda1, double lambda2, PiecutMode mode,
                           const TrackerConfig& cfg,
                           const std::vector<RealVec>& starts) {
  const double lambda3 = 1.0 - lambda1 - lambda2;
  if (!(lambda1 > 0.0 && lambda2 > 0.0 && lambda3 > 0.0))
    throw std::invalid_argument("solve_piecut: shares must be positive and sum to 1");

  PiecutOutcome out;
  const double lmax = std::max({lambda1, lambda2, lambda3});
  if (lmax > max_sector_fraction()) {
    out.infeasible_warning = true;
    out.diagnostics.push_back(
        "largest share exceeds the 3-blade bound 1 - (2/pi)(pi/6 - sqrt(3)/4)");
  }

  const PolySystem exact_sys =
      build_piecut_system(lambda1, lambda2, arccos_taylor(0.0, 6));
  const auto& exact = exact_sys.exact_residual;

  std::vector<RealVec> sols;
  switch (mode) {
    case PiecutMode::oracle:
      sols = oracle_solve(lambda1, lambda2);
      break;
    case PiecutMode::pipeline: {
      RootSet raw = total_degree_solve(exact_sys, cfg);
      RootSet filtered = filter_roots(exact_sys, raw);
      out.diagnostics.push_back(
          "pipeline: " + std::to_string(raw.roots.size()) + " distinct endpoints, " +
          std::to_string(filtered.count(RootClass::real_accepted)) + " accepted");
      for (const Root& r : filtered.roots) {
        if (r.classification != RootClass::real_accepted) continue;
        try {
          sols.push_back(newton(exact, r.real_point(), 1e-10, 50).point);
        } catch (const NewtonFailure&) {
          out.diagnostics.push_back("pipeline: refinement failed for an accepted root");
        }
      }
      break;
    }
    case PiecutMode::refine_only:
      for (const RealVec& s : starts) {
        try {
          sols.push_back(newton(exact, s, 1e-10, 50).point);
        } catch (const NewtonFailure&) {
          out.diagnostics.push_back("refine: no convergence from a supplied start");
        }
      }
      break;
  }

  if (sols.empty() && out.diagnostics.empty())
    out.diagnostics.push_back("no solution found");
  out.solutions = group_by_reflection(sols, exact);
  return out;
}

}  // namespace eccpie
