#pragma once

#include <complex>
#include <map>
#include <vector>

namespace eccpie {

using Complex = std::complex<double>;
using Monomial = std::vector<int>;  // exponent per variable

/// Sparse multivariate polynomial with complex coefficients.
/// Terms are kept normalized: no zero coefficients, unique exponent vectors.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(int n_vars) : n_vars_(n_vars) {}

  static MultiPoly constant(int n_vars, Complex c);
  static MultiPoly variable(int n_vars, int index, Complex coeff = 1.0);

  int n_vars() const { return n_vars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  int total_degree() const;

  const std::map<Monomial, Complex>& terms() const { return terms_; }

  /// Adds c * x^mono, merging with an existing term and dropping zeros.
  void add_term(const Monomial& mono, Complex c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(Complex s) const;
  MultiPoly pow(int e) const;

  /// Partial derivative with respect to variable `index`.
  MultiPoly derivative(int index) const;

  Complex eval(const std::vector<Complex>& point) const;
  double eval_real(const std::vector<double>& point) const;

 private:
  void check_compatible(const MultiPoly& o) const;

  int n_vars_ = 0;
  std::map<Monomial, Complex> terms_;
};

inline MultiPoly operator*(Complex s, const MultiPoly& p) { return p.scaled(s); }

/// Substitutes a univariate polynomial sum c_k (u - center)^k with the
/// multivariate `inner` as u.
MultiPoly compose_unipoly(const std::vector<double>& coeffs, double center,
                          const MultiPoly& inner);

}  // namespace eccpie
