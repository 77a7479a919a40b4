#pragma once

#include <complex>
#include <vector>

namespace eccpie {

/// Truncated power series sum c_k (x - center)^k.
struct UniPoly {
  double center = 0.0;
  std::vector<double> coeffs;  // c_0 .. c_{m-1}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Truncated Taylor expansion of arccos around `center` with `n_terms`
/// coefficients. For center 0 the closed-form odd coefficients
/// -(2n)! / (4^n (n!)^2 (2n+1)) are used; otherwise the coefficients come
/// from the recurrence induced by (1 - x^2) f'' = x f'.
UniPoly arccos_taylor(double center, int n_terms);

double eval_unipoly(const UniPoly& p, double x);
std::complex<double> eval_unipoly(const UniPoly& p, std::complex<double> x);

/// Max |p(x) - arccos(x)| over a uniform grid of `samples` points in
/// [lo, hi] (endpoints included).
double max_abs_error(const UniPoly& p, double lo, double hi, int samples);

}  // namespace eccpie
