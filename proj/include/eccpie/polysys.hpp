#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eccpie/multipoly.hpp"
#include "eccpie/taylor.hpp"

namespace eccpie {

using RealVec = std::vector<double>;
using ComplexVec = std::vector<Complex>;

/// Metadata driving the post-solve root filters. The builders fill this in;
/// systems parsed from text carry none of it.
struct FilterMeta {
  std::optional<int> x0_var;           // |x0| < 1, strict
  std::vector<int> unit_box_vars;      // |v| <= 1 (the sin substitutes)
  std::vector<std::pair<int, int>> sin_pairs;  // (angle var, sin var)
  // Signed residuals of the unsquared absolute-value equations; the squared
  // system only pins their magnitude, the filter demands the right branch.
  std::function<RealVec(const RealVec&)> abs_residuals;
  // Quantities that must be <= 0 for the square-root equations to hold with
  // the negative cosine on the right-hand side (blade dot products).
  std::function<RealVec(const RealVec&)> sqrt_side;
  // |sector_area - lambda_i * pi| reconstructed through the geometry module.
  std::function<RealVec(const RealVec&)> area_errors;
  bool infeasible_warning = false;
};

/// Square polynomial system plus the exact (trigonometric) companion it
/// approximates and the filtering metadata for its false roots.
struct PolySystem {
  std::vector<std::string> var_names;
  std::vector<MultiPoly> polys;
  std::function<RealVec(const RealVec&)> exact_residual;  // null for parsed systems
  FilterMeta filters;

  int n_vars() const { return static_cast<int>(var_names.size()); }
  std::vector<int> total_degrees() const;
  /// Product of the per-equation total degrees.
  unsigned long long bezout_count() const;

  ComplexVec eval(const ComplexVec& point) const;
  /// Row-major n x n Jacobian of the polynomial part.
  std::vector<ComplexVec> jacobian(const ComplexVec& point) const;
};

/// Supremum of a single share realizable by a regular 3-blade cutter,
/// 1 - (2/pi)(pi/6 - sqrt(3)/4), about 0.9423.
double max_sector_fraction();

/// The 11-variable pie-cutting system for a regular 3-blade cutter with
/// shares (lambda1, lambda2, 1 - lambda1 - lambda2), apex on the x-axis.
/// Variables: x0 x1 y1 x2 y2 x3 y3 beta phi s_beta s_phi.
PolySystem build_piecut_system(double lambda1, double lambda2, const UniPoly& taylor);

/// Single eccentric sector of area lambda*pi with apex (apex_x, 0) and the
/// first boundary point pinned to (0, 1). Variables: x2 y2 beta s_beta.
PolySystem build_single_sector_system(double lambda, double apex_x, const UniPoly& taylor);

/// Text export of the polynomial part (format 1): a `vars:` line, then one
/// term per line as `coeff_re coeff_im e1 .. en`, blank line between
/// polynomials. Coefficients print as shortest roundtrip decimals.
std::string export_system(const PolySystem& sys);

/// Inverse of export_system; the exact companion and filters are not part
/// of the format. Throws std::runtime_error with a line number on bad input.
PolySystem parse_system(const std::string& text);

}  // namespace eccpie
