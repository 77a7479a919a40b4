#include "eccpie/newton.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace eccpie {

double inf_norm(const RealVec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double inf_norm(const ComplexVec& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

namespace {

Eigen::VectorXd to_eigen(const RealVec& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

RealJacobianFn finite_difference_jacobian(const RealResidualFn& residual) {
  return [residual](const RealVec& x) {
    const std::size_t n = x.size();
    std::vector<RealVec> jac;
    RealVec xp = x, xm = x;
    for (std::size_t j = 0; j < n; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      xp[j] = x[j] + h;
      xm[j] = x[j] - h;
      const RealVec fp = residual(xp), fm = residual(xm);
      if (jac.empty()) jac.assign(fp.size(), RealVec(n));
      for (std::size_t i = 0; i < fp.size(); ++i)
        jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
      xp[j] = x[j];
      xm[j] = x[j];
    }
    return jac;
  };
}

}  // namespace

NewtonResult newton(const RealResidualFn& residual, const RealJacobianFn& jacobian,
                    const RealVec& start, double tol, int max_iters) {
  const std::size_t n = start.size();
  RealVec x = start;
  RealVec f = residual(x);
  if (f.size() != n) throw std::invalid_argument("newton: system is not square");
  double fnorm = inf_norm(f);

  RealVec best = x;
  double best_norm = fnorm;

  for (int iter = 0; iter < max_iters; ++iter) {
    if (fnorm < tol) return {x, fnorm, iter};

    const auto jac = jacobian(x);
    Eigen::MatrixXd J(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = jac[i][j];

    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (lu.rank() < static_cast<Eigen::Index>(n))
      throw NewtonFailure("newton: singular Jacobian", best, best_norm);
    const Eigen::VectorXd step = lu.solve(to_eigen(f));

    // Damping: halve the step while the residual norm fails to decrease.
    double scale = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 8; ++halving) {
      RealVec trial(n);
      for (std::size_t j = 0; j < n; ++j)
        trial[j] = x[j] - scale * step(static_cast<Eigen::Index>(j));
      const RealVec ft = residual(trial);
      const double tnorm = inf_norm(ft);
      if (std::isfinite(tnorm) && tnorm < fnorm) {
        x = std::move(trial);
        f = ft;
        fnorm = tnorm;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted)
      throw NewtonFailure("newton: damped step failed to reduce the residual", best, best_norm);
    if (fnorm < best_norm) {
      best = x;
      best_norm = fnorm;
    }
  }
  if (fnorm < tol) return {x, fnorm, max_iters};
  throw NewtonFailure("newton: no convergence in " + std::to_string(max_iters) +
                          " iterations",
                      best, best_norm);
}

NewtonResult newton(const RealResidualFn& residual, const RealVec& start,
                    double tol, int max_iters) {
  return newton(residual, finite_difference_jacobian(residual), start, tol, max_iters);
}

bool newton_complex(const PolySystem& sys, ComplexVec& x, double tol, int max_iters) {
  const auto n = static_cast<Eigen::Index>(sys.n_vars());
  for (int iter = 0; iter < max_iters; ++iter) {
    const ComplexVec f = sys.eval(x);
    if (inf_norm(f) < tol) return true;
    const auto jac = sys.jacobian(x);
    Eigen::MatrixXcd J(n, n);
    Eigen::VectorXcd F(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      F(i) = f[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < n; ++j)
        J(i, j) = jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
    const Eigen::VectorXcd step = lu.solve(F);
    if (!step.allFinite()) return false;
    for (Eigen::Index j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] -= step(j);
  }
  return inf_norm(sys.eval(x)) < tol;
}

}  // namespace eccpie
