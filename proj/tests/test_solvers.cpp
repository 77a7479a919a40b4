#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "eccpie/charts.hpp"
#include "eccpie/homotopy.hpp"
#include "eccpie/newton.hpp"
#include "eccpie/piecut.hpp"
#include "eccpie/taylor.hpp"

using namespace eccpie;
using doctest::Approx;

namespace {

const RealVec kReference = {0.164641996,  0.375176778, 0.926953281, -0.939722783,
                                -0.341937259, 0.805164109, -0.593052069, 2.304361451,
                                2.157770813,  0.742792198, 0.832620150};

PolySystem circle_line_system() {
  PolySystem sys;
  sys.var_names = {"x", "y"};
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  sys.polys = {x * x + y * y - MultiPoly::constant(2, 1.0), x - y};
  return sys;
}

}  // namespace

TEST_CASE("newton: scalar square root") {
  auto f = [](const RealVec& v) -> RealVec { return {v[0] * v[0] - 1.0}; };
  const NewtonResult r = newton(f, {2.0}, 1e-12, 50);
  CHECK(r.point[0] == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("newton: confirms the reference listing on the exact system") {
  const PolySystem sys = build_piecut_system(0.4, 0.35, arccos_taylor(0.0, 6));
  const NewtonResult r = newton(sys.exact_residual, kReference, 1e-12, 3);
  CHECK(r.iterations <= 3);
  for (std::size_t i = 0; i < kReference.size(); ++i)
    CHECK(r.point[i] == Approx(kReference[i]).epsilon(1e-8));
}

TEST_CASE("newton: recovers the solution from a 0.002 perturbation") {
  const PolySystem sys = build_piecut_system(0.4, 0.35, arccos_taylor(0.0, 6));
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int rep = 0; rep < 10; ++rep) {
    RealVec start = kReference;
    for (double& v : start) v += (sign(rng) ? 0.002 : -0.002);
    const NewtonResult r = newton(sys.exact_residual, start, 1e-10, 10);
    for (std::size_t i = 0; i < kReference.size(); ++i)
      CHECK(std::abs(r.point[i] - kReference[i]) < 2e-9);
  }
}

TEST_CASE("newton: failure carries the best iterate") {
  auto f = [](const RealVec& v) -> RealVec { return {v[0] * v[0] + 1.0}; };  // no real root
  CHECK_THROWS_AS(newton(f, {3.0}, 1e-12, 25), NewtonFailure);
  try {
    newton(f, {3.0}, 1e-12, 25);
  } catch (const NewtonFailure& e) {
    CHECK(e.best_residual >= 1.0);  // min of x^2+1
    CHECK(e.best_residual < 1.5);
  }
}

TEST_CASE("track_path: identity homotopy stays put") {
  const PolySystem sys = circle_line_system();
  const double s = std::sqrt(0.5);
  TrackerConfig cfg;
  const PathResult r = track_path(sys, sys, {Complex{s, 0}, Complex{s, 0}}, cfg);
  CHECK(r.status == PathStatus::converged);
  CHECK(std::abs(r.endpoint[0] - Complex{s, 0}) < 1e-8);
}

TEST_CASE("track_path: univariate start system lands on both roots") {
  PolySystem f;
  f.var_names = {"x"};
  const MultiPoly x = MultiPoly::variable(1, 0);
  f.polys = {x * x - MultiPoly::constant(1, 1.0)};

  PolySystem g;
  g.var_names = {"x"};
  g.polys = {x * x - MultiPoly::constant(1, Complex{0.3, 0.4})};

  TrackerConfig cfg;
  std::vector<double> found;
  const Complex c{0.3, 0.4};
  for (const Complex root : {std::sqrt(c), -std::sqrt(c)}) {
    const PathResult r = track_path(f, g, {root}, cfg);
    REQUIRE(r.status == PathStatus::converged);
    found.push_back(r.endpoint[0].real());
  }
  std::sort(found.begin(), found.end());
  CHECK(found[0] == Approx(-1.0).epsilon(1e-9));
  CHECK(found[1] == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("total_degree_solve: circle and line") {
  const PolySystem sys = circle_line_system();
  TrackerConfig cfg;
  const RootSet roots = total_degree_solve(sys, cfg);
  // Bezout 4 paths, exactly 2 finite real roots after dedup
  std::size_t real_count = 0;
  const double s = std::sqrt(0.5);
  for (const Root& r : roots.roots) {
    if (r.classification == RootClass::complex_root) continue;
    ++real_count;
    CHECK(std::abs(std::abs(r.point[0].real()) - s) < 1e-9);
    CHECK(r.point[0].real() == Approx(r.point[1].real()).epsilon(1e-9));
    CHECK(inf_norm(sys.eval(r.point)) < 1e-8);
  }
  CHECK(real_count == 2);
}

TEST_CASE("total_degree_solve: budget gate") {
  const PolySystem sys = build_piecut_system(0.4, 0.35, arccos_taylor(0.0, 6));
  TrackerConfig cfg;  // default budget 1e5
  CHECK_THROWS_AS(total_degree_solve(sys, cfg), BudgetExceeded);
  try {
    total_degree_solve(sys, cfg);
  } catch (const BudgetExceeded& e) {
    CHECK(e.bezout_count == 3276800ULL);
  }
}

TEST_CASE("dedup is order independent") {
  // Two different seeds reorder nothing structurally, but shuffling the
  // endpoint list must not change the canonical root set; rely on the
  // sort-before-dedup by solving the same system twice.
  const PolySystem sys = circle_line_system();
  TrackerConfig a, b;
  a.seed = 0;
  b.seed = 12345;  // different gamma, different path order/geometry
  const RootSet ra = total_degree_solve(sys, a);
  const RootSet rb = total_degree_solve(sys, b);
  std::size_t na = 0, nb = 0;
  for (const auto& r : ra.roots)
    if (r.classification != RootClass::complex_root) ++na;
  for (const auto& r : rb.roots)
    if (r.classification != RootClass::complex_root) ++nb;
  CHECK(na == nb);
}

TEST_CASE("filter_roots: rejection tags") {
  const PolySystem sys = build_piecut_system(0.4, 0.35, arccos_taylor(0.0, 6));

  auto as_root = [](const RealVec& v) {
    Root r;
    for (double x : v) r.point.emplace_back(x, 0.0);
    r.classification = RootClass::real_rejected;
    return r;
  };

  RootSet in;
  RealVec sin_flipped = kReference;
  sin_flipped[9] = -kReference[9];   // s_beta = -sin(beta)
  sin_flipped[10] = -kReference[10];
  in.roots.push_back(as_root(sin_flipped));

  RealVec bad_x0 = kReference;
  bad_x0[0] = 1.7;
  in.roots.push_back(as_root(bad_x0));

  in.roots.push_back(as_root(kReference));

  const RootSet out = filter_roots(sys, in);
  REQUIRE(out.roots.size() == 3);

  CHECK(out.roots[0].classification == RootClass::real_rejected);
  // flipping s_beta breaks the absolute-value branch before the sin check
  CHECK_FALSE(out.roots[0].rejection_reasons.empty());

  CHECK(out.roots[1].classification == RootClass::real_rejected);
  CHECK(std::find(out.roots[1].rejection_reasons.begin(),
                  out.roots[1].rejection_reasons.end(),
                  "box_x0") != out.roots[1].rejection_reasons.end());

  CHECK(out.roots[2].classification == RootClass::real_accepted);
  CHECK(out.roots[2].rejection_reasons.empty());
}

TEST_CASE("filter_roots: sin mismatch tag on an otherwise consistent root") {
  const PolySystem sys = build_single_sector_system(0.25, 0.0, arccos_taylor(0.0, 6));
  Root r;
  // quarter-circle solution but with s_beta on the wrong branch
  for (double v : {-1.0, 0.0, kPi / 2, -1.0}) r.point.emplace_back(v, 0.0);
  r.classification = RootClass::real_rejected;
  RootSet in;
  in.roots.push_back(r);
  const RootSet out = filter_roots(sys, in);
  // 2*lambda*pi - beta + s_beta = pi/2 - 1 != |T| = 1, so the abs filter
  // fires; with matching tolerances the sin filter would too.
  CHECK(out.roots[0].classification == RootClass::real_rejected);
}

TEST_CASE("single-sector pipeline matches the scalar oracle") {
  const double lambda = 0.4, apex_x = 0.164641996;
  const PolySystem sys = build_single_sector_system(lambda, apex_x, arccos_taylor(0.0, 6));
  CHECK(sys.bezout_count() == 40);  // degrees 2,2,2,5 with (x1,y1) pinned to (0,1)

  // Scalar oracle through the charts module: close a sector of area
  // lambda*pi starting at (0,1).
  ChartSpec spec;
  spec.shares = {lambda, 1.0 - lambda};
  spec.apex = {apex_x, 0.0};
  const ChartLayout lay = solve_chart(spec);
  const Point2 expect = lay.boundary_points[1];
  const double beta_expect = central_angle({0.0, 1.0}, expect);

  TrackerConfig cfg;
  const RootSet raw = total_degree_solve(sys, cfg);
  const RootSet filtered = filter_roots(sys, raw);

  bool found_ccw = false;
  for (const Root& r : filtered.roots) {
    if (r.classification != RootClass::real_accepted) continue;
    const RealVec v = r.real_point();
    if (std::abs(v[0] - expect.x) < 0.002 && std::abs(v[1] - expect.y) < 0.002) {
      found_ccw = true;
      CHECK(std::abs(v[2] - beta_expect) < 0.002);
      // Newton refinement on the exact residual recovers full precision
      const NewtonResult ref = newton(sys.exact_residual, v, 1e-10, 30);
      CHECK(std::abs(ref.point[0] - expect.x) < 1e-10);
      CHECK(std::abs(ref.point[1] - expect.y) < 1e-10);
      CHECK(ref.residual_norm < 1e-10);
    }
  }
  CHECK(found_ccw);
}

TEST_CASE("accepted roots satisfy the exact residual in the Taylor regime") {
  const PolySystem sys = build_single_sector_system(0.3, 0.4, arccos_taylor(0.0, 6));
  TrackerConfig cfg;
  const RootSet filtered = filter_roots(sys, total_degree_solve(sys, cfg));
  std::size_t accepted = 0;
  for (const Root& r : filtered.roots) {
    if (r.classification != RootClass::real_accepted) continue;
    ++accepted;
    CHECK(inf_norm(sys.exact_residual(r.real_point())) < 0.05);
  }
  CHECK(accepted >= 1);
}

TEST_CASE("solve_piecut oracle reproduces the reference values") {
  const PiecutOutcome out = solve_piecut(0.4, 0.35, PiecutMode::oracle);
  REQUIRE(out.solutions.size() == 1);
  CHECK(out.solutions[0].class_size == 4);
  for (std::size_t i = 0; i < kReference.size(); ++i)
    CHECK(std::abs(out.solutions[0].values[i] - kReference[i]) < 1e-8);
  CHECK(out.solutions[0].exact_residual_norm < 1e-10);
}

TEST_CASE("solve_piecut symmetric shares") {
  const PiecutOutcome out = solve_piecut(1.0 / 3, 1.0 / 3, PiecutMode::oracle);
  REQUIRE(!out.solutions.empty());
  for (const auto& s : out.solutions) {
    CHECK(std::abs(s.values[0]) < 1e-9);                    // x0 = 0
    CHECK(s.values[7] == Approx(2 * kPi / 3).epsilon(1e-9));  // beta
    CHECK(s.values[8] == Approx(2 * kPi / 3).epsilon(1e-9));  // phi
  }
}

TEST_CASE("solve_piecut refine mode from perturbed reference values") {
  RealVec start = kReference;
  for (std::size_t i = 0; i < start.size(); ++i)
    start[i] += (i % 2 ? 0.002 : -0.002);
  const PiecutOutcome out =
      solve_piecut(0.4, 0.35, PiecutMode::refine_only, {}, {start});
  REQUIRE(out.solutions.size() == 1);
  for (std::size_t i = 0; i < kReference.size(); ++i)
    CHECK(std::abs(out.solutions[0].values[i] - kReference[i]) < 1e-8);
}

TEST_CASE("solve_piecut flags infeasible shares") {
  const PiecutOutcome out = solve_piecut(0.95, 0.03, PiecutMode::refine_only, {}, {});
  CHECK(out.infeasible_warning);
}
