#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "eccpie/polysys.hpp"

namespace eccpie {

struct NewtonFailure : std::runtime_error {
  NewtonFailure(const std::string& what, RealVec best, double best_norm)
      : std::runtime_error(what), best_iterate(std::move(best)), best_residual(best_norm) {}
  RealVec best_iterate;
  double best_residual;
};

using RealResidualFn = std::function<RealVec(const RealVec&)>;
/// Row-major Jacobian; when absent Newton falls back to central differences.
using RealJacobianFn = std::function<std::vector<RealVec>(const RealVec&)>;

struct NewtonResult {
  RealVec point;
  double residual_norm = 0.0;
  int iterations = 0;
};

/// Damped Newton on a square real system: full step first, halved up to
/// 8 times whenever the residual norm does not decrease. Throws
/// NewtonFailure (carrying the best iterate) on singular Jacobian or
/// non-convergence.
NewtonResult newton(const RealResidualFn& residual, const RealJacobianFn& jacobian,
                    const RealVec& start, double tol, int max_iters);

/// Same with a central finite-difference Jacobian.
NewtonResult newton(const RealResidualFn& residual, const RealVec& start,
                    double tol, int max_iters);

/// Newton for the polynomial part of a system, over complex vectors, with
/// the analytic Jacobian. Returns false if it fails to reach tol.
bool newton_complex(const PolySystem& sys, ComplexVec& x, double tol, int max_iters);

/// Infinity norm helpers.
double inf_norm(const RealVec& v);
double inf_norm(const ComplexVec& v);

}  // namespace eccpie
