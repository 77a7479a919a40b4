#pragma once

#include <string>
#include <vector>

#include "eccpie/polysys.hpp"

namespace eccpie {

struct TrackerConfig {
  double initial_step = 0.05;  // in the homotopy parameter t
  double min_step = 1e-7;
  double corrector_tol = 1e-10;
  int corrector_max_iters = 3;
  double step_expand = 2.0;
  double step_contract = 0.5;
  double endgame_start = 0.1;  // below this t the step is capped
  int max_path_steps = 10000;
  unsigned long long path_budget = 100000;
  bool budget_override = false;
  unsigned seed = 0;  // drives the gamma constant
  double divergence_norm = 1e6;
  double dedup_tol = 1e-6;
  double real_tol = 1e-8;
};

enum class PathStatus { converged, diverged, truncated, singular };

struct PathResult {
  ComplexVec endpoint;
  PathStatus status = PathStatus::singular;
  int steps = 0;
  double final_residual = 0.0;
};

enum class RootClass { complex_root, real_rejected, real_accepted };

struct Root {
  ComplexVec point;
  RootClass classification = RootClass::complex_root;
  std::vector<std::string> rejection_reasons;

  /// Real parts (imaginary parts zeroed), for filtering and reporting.
  RealVec real_point() const;
};

struct RootSet {
  std::vector<Root> roots;

  std::size_t count(RootClass c) const;
};

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(unsigned long long count, unsigned long long budget)
      : std::runtime_error("total-degree path count " + std::to_string(count) +
                           " exceeds budget " + std::to_string(budget) +
                           " (override required)"),
        bezout_count(count) {}
  unsigned long long bezout_count;
};

/// Tolerances for the false-root filters of the squared/Taylor system.
struct FilterTolerances {
  double box = 1e-9;        // slack on the unit boxes
  double algebraic = 0.05;  // unsquared equations, sin consistency
  double geometric = 0.02;  // reconstructed sector areas
};

/// Unit-modulus gamma constant derived deterministically from the seed.
Complex gamma_constant(unsigned seed);

/// Tracks one path of H(x,t) = gamma*t*G(x) + (1-t)*F(x) from t=1 to t=0
/// with an Euler predictor and Newton corrector; the endpoint is polished
/// by Newton on F.
PathResult track_path(const PolySystem& target, const PolySystem& start_system,
                      const ComplexVec& start_root, const TrackerConfig& cfg);

/// Total-degree homotopy: start system x_i^{d_i} - 1 with roots of unity,
/// all Bezout paths tracked, endpoints deduplicated and classified real /
/// complex. Throws BudgetExceeded when the path count tops the budget and
/// no override is set.
RootSet total_degree_solve(const PolySystem& sys, const TrackerConfig& cfg);

/// Applies the false-root filters in order (realness, boxes, unsquared
/// absolute-value equations, square-root side, sin consistency, geometric
/// sector areas), tagging every rejection.
RootSet filter_roots(const PolySystem& sys, const RootSet& roots,
                     const FilterTolerances& tol = {});

}  // namespace eccpie
