#pragma once

#include <string>
#include <vector>

#include "eccpie/homotopy.hpp"
#include "eccpie/polysys.hpp"

namespace eccpie {

enum class PiecutMode { oracle, pipeline, refine_only };

/// One validated 3-blade cutter placement. `values` follows the variable
/// order of build_piecut_system: x0 x1 y1 x2 y2 x3 y3 beta phi s_beta s_phi.
struct PiecutSolution {
  RealVec values;
  double exact_residual_norm = 0.0;
  int class_size = 1;  // size of its reflection-equivalence class
};

struct PiecutOutcome {
  std::vector<PiecutSolution> solutions;  // one canonical representative per class
  bool infeasible_warning = false;
  std::vector<std::string> diagnostics;
};

/// Solves the 3-blade pie-cutting problem with shares
/// (lambda1, lambda2, 1 - lambda1 - lambda2).
///
/// oracle      - multi-start Newton on the reduced exact 2-variable problem
///               (apex abscissa and first blade angle, sector areas from the
///               geometry module).
/// pipeline    - Taylor-polynomialized system, total-degree homotopy, root
///               filtering, Newton refinement on the exact residual. The full
///               system's Bezout count exceeds the default path budget; an
///               override in cfg is required.
/// refine_only - Newton on the exact residual from the supplied 11-value
///               start vectors.
///
/// Solutions are grouped into reflection-equivalence classes (vertical /
/// horizontal axis); the representative has the largest y1, ties broken by
/// largest x1.
PiecutOutcome solve_piecut(double lambda1, double lambda2, PiecutMode mode,
                           const TrackerConfig& cfg = {},
                           const std::vector<RealVec>& starts = {});

}  // namespace eccpie
