#include "eccpie/homotopy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "eccpie/geometry.hpp"
#include "eccpie/newton.hpp"

namespace eccpie {

RealVec Root::real_point() const {
  RealVec r;
  r.reserve(point.size());
  for (const auto& z : point) r.push_back(z.real());
  return r;
}

std::size_t RootSet::count(RootClass c) const {
  return static_cast<std::size_t>(
      std::count_if(roots.begin(), roots.end(),
                    [c](const Root& r) { return r.classification == c; }));
}

Complex gamma_constant(unsigned seed) {
  std::mt19937 rng(seed ^ 0x9e3779b9u);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  return std::polar(1.0, angle(rng));
}

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct HomotopyEval {
  const PolySystem& f;  // target
  const PolySystem& g;  // start
  Complex gamma;

  Vec value(const ComplexVec& x, double t) const {
    const ComplexVec fv = f.eval(x), gv = g.eval(x);
    Vec h(static_cast<Eigen::Index>(fv.size()));
    for (std::size_t i = 0; i < fv.size(); ++i)
      h(static_cast<Eigen::Index>(i)) = gamma * t * gv[i] + (1.0 - t) * fv[i];
    return h;
  }

  Mat x_jacobian(const ComplexVec& x, double t) const {
    const auto jf = f.jacobian(x);
    const auto jg = g.jacobian(x);
    const auto n = static_cast<Eigen::Index>(jf.size());
    Mat J(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        J(i, j) = gamma * t * jg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                  (1.0 - t) * jf[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return J;
  }

  Vec t_derivative(const ComplexVec& x) const {
    const ComplexVec fv = f.eval(x), gv = g.eval(x);
    Vec d(static_cast<Eigen::Index>(fv.size()));
    for (std::size_t i = 0; i < fv.size(); ++i)
      d(static_cast<Eigen::Index>(i)) = gamma * gv[i] - fv[i];
    return d;
  }
};

// Newton corrector at fixed t. Returns true when the residual drops below
// tol within the iteration cap.
bool correct(const HomotopyEval& h, ComplexVec& x, double t, const TrackerConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(x.size());
  for (int it = 0; it < cfg.corrector_max_iters; ++it) {
    const Vec hv = h.value(x, t);
    if (hv.lpNorm<Eigen::Infinity>() < cfg.corrector_tol) return true;
    Eigen::PartialPivLU<Mat> lu(h.x_jacobian(x, t));
    const Vec step = lu.solve(hv);
    if (!step.allFinite()) return false;
    for (Eigen::Index j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] -= step(j);
  }
  return h.value(x, t).lpNorm<Eigen::Infinity>() < cfg.corrector_tol;
}

}  // namespace

PathResult track_path(const PolySystem& target, const PolySystem& start_system,
                      const ComplexVec& start_root, const TrackerConfig& cfg) {
  const HomotopyEval h{target, start_system, gamma_constant(cfg.seed)};
  const auto n = static_cast<Eigen::Index>(start_root.size());

  PathResult result;
  ComplexVec x = start_root;
  double t = 1.0;
  double dt = cfg.initial_step;
  int steps = 0;

  while (t > 0.0) {
    if (steps++ > cfg.max_path_steps) {
      result.status = PathStatus::truncated;
      result.endpoint = x;
      result.steps = steps;
      return result;
    }
    double step = std::min(dt, t);
    if (t < cfg.endgame_start) step = std::min(step, 0.25 * cfg.endgame_start);

    bool advanced = false;
    while (step >= cfg.min_step || step == t) {
      const double t_next = t - step;
      // Euler predictor: dx = J_x^{-1} * dH/dt * step.
      ComplexVec xp = x;
      Eigen::PartialPivLU<Mat> lu(h.x_jacobian(x, t));
      const Vec dxdt = lu.solve(h.t_derivative(x));
      if (dxdt.allFinite()) {
        // H_x dx/dt + H_t = 0 along the path and t decreases by `step`.
        for (Eigen::Index j = 0; j < n; ++j)
          xp[static_cast<std::size_t>(j)] += step * dxdt(j);
      }
      if (correct(h, xp, t_next, cfg)) {
        x = std::move(xp);
        t = t_next;
        advanced = true;
        break;
      }
      if (step <= cfg.min_step) break;
      step = std::max(step * cfg.step_contract, cfg.min_step);
    }

    if (!advanced) {
      // Corrector kept failing all the way down to the step floor.
      result.status = PathStatus::singular;
      result.endpoint = x;
      result.steps = steps;
      return result;
    }
    dt = std::min(step * cfg.step_expand, cfg.initial_step);

    double norm = 0.0;
    for (const auto& z : x) norm = std::max(norm, std::abs(z));
    if (norm > cfg.divergence_norm) {
      result.status = PathStatus::diverged;
      result.endpoint = x;
      result.steps = steps;
      return result;
    }
  }

  // Endpoint polish against the target itself.
  if (!newton_complex(target, x, cfg.corrector_tol, 20)) {
    result.status = PathStatus::singular;
    result.endpoint = x;
    result.steps = steps;
    result.final_residual = inf_norm(target.eval(x));
    return result;
  }
  result.status = PathStatus::converged;
  result.endpoint = x;
  result.steps = steps;
  result.final_residual = inf_norm(target.eval(x));
  return result;
}

namespace {

PolySystem total_degree_start(const PolySystem& sys) {
  PolySystem g;
  g.var_names = sys.var_names;
  const int n = sys.n_vars();
  for (int i = 0; i < n; ++i) {
    const int d = sys.polys[static_cast<std::size_t>(i)].total_degree();
    MultiPoly p(n);
    Monomial m(static_cast<std::size_t>(n), 0);
    m[static_cast<std::size_t>(i)] = d;
    p.add_term(m, 1.0);
    p.add_term(Monomial(static_cast<std::size_t>(n), 0), -1.0);
    g.polys.push_back(std::move(p));
  }
  return g;
}

bool lex_less(const ComplexVec& a, const ComplexVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

RootSet total_degree_solve(const PolySystem& sys, const TrackerConfig& cfg) {
  const unsigned long long paths = sys.bezout_count();
  if (paths > cfg.path_budget && !cfg.budget_override)
    throw BudgetExceeded(paths, cfg.path_budget);

  const PolySystem start = total_degree_start(sys);
  const int n = sys.n_vars();
  std::vector<int> degrees = sys.total_degrees();

  std::vector<ComplexVec> endpoints;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (unsigned long long p = 0; p < paths; ++p) {
    ComplexVec root(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      root[static_cast<std::size_t>(i)] = std::polar(
          1.0, 2.0 * kPi * idx[static_cast<std::size_t>(i)] / degrees[static_cast<std::size_t>(i)]);

    const PathResult pr = track_path(sys, start, root, cfg);
    if (pr.status == PathStatus::converged) endpoints.push_back(pr.endpoint);

    // next multi-index
    for (int i = 0; i < n; ++i) {
      auto& k = idx[static_cast<std::size_t>(i)];
      if (++k < degrees[static_cast<std::size_t>(i)]) break;
      k = 0;
    }
  }

  // Canonical order, then dedup at cfg.dedup_tol in the infinity norm.
  std::sort(endpoints.begin(), endpoints.end(), lex_less);
  RootSet out;
  for (const auto& e : endpoints) {
    bool dup = false;
    for (const auto& r : out.roots) {
      double d = 0.0;
      for (std::size_t i = 0; i < e.size(); ++i)
        d = std::max(d, std::abs(e[i] - r.point[i]));
      if (d < cfg.dedup_tol) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    Root r;
    r.point = e;
    double max_imag = 0.0;
    for (const auto& z : e) max_imag = std::max(max_imag, std::abs(z.imag()));
    r.classification = (max_imag < cfg.real_tol) ? RootClass::real_rejected
                                                 : RootClass::complex_root;
    if (r.classification == RootClass::complex_root)
      r.rejection_reasons.push_back("complex");
    out.roots.push_back(std::move(r));
  }
  return out;
}

RootSet filter_roots(const PolySystem& sys, const RootSet& roots,
                     const FilterTolerances& tol) {
  RootSet out;
  for (const Root& in : roots.roots) {
    Root r = in;
    if (r.classification == RootClass::complex_root) {
      out.roots.push_back(std::move(r));
      continue;
    }
    r.rejection_reasons.clear();
    const RealVec v = r.real_point();

    if (sys.filters.x0_var) {
      const double x0 = v[static_cast<std::size_t>(*sys.filters.x0_var)];
      if (!(std::abs(x0) < 1.0)) r.rejection_reasons.push_back("box_x0");
    }
    for (int i : sys.filters.unit_box_vars)
      if (std::abs(v[static_cast<std::size_t>(i)]) > 1.0 + tol.box) {
        r.rejection_reasons.push_back("box_s");
        break;
      }
    if (r.rejection_reasons.empty() && sys.filters.abs_residuals) {
      for (double res : sys.filters.abs_residuals(v))
        if (std::abs(res) > tol.algebraic) {
          r.rejection_reasons.push_back("abs_mismatch");
          break;
        }
    }
    if (r.rejection_reasons.empty() && sys.filters.sqrt_side) {
      for (double side : sys.filters.sqrt_side(v))
        if (side > tol.algebraic) {
          r.rejection_reasons.push_back("sqrt_side");
          break;
        }
    }
    if (r.rejection_reasons.empty()) {
      for (auto [angle_var, sin_var] : sys.filters.sin_pairs) {
        const double mismatch = std::abs(v[static_cast<std::size_t>(sin_var)] -
                                         std::sin(v[static_cast<std::size_t>(angle_var)]));
        if (mismatch > tol.algebraic) {
          r.rejection_reasons.push_back("sin_mismatch");
          break;
        }
      }
    }
    if (r.rejection_reasons.empty() && sys.filters.area_errors) {
      for (double err : sys.filters.area_errors(v))
        if (err > tol.geometric) {
          r.rejection_reasons.push_back("geometry");
          break;
        }
    }
    r.classification = r.rejection_reasons.empty() ? RootClass::real_accepted
                                                   : RootClass::real_rejected;
    out.roots.push_back(std::move(r));
  }
  return out;
}

}  // namespace eccpie
