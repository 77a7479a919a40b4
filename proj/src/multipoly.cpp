#include "eccpie/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eccpie {

namespace {
constexpr double kDropTol = 0.0;  // exact zero only; arithmetic is not rounded
}

MultiPoly MultiPoly::constant(int n_vars, Complex c) {
  MultiPoly p(n_vars);
  p.add_term(Monomial(static_cast<std::size_t>(n_vars), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int n_vars, int index, Complex coeff) {
  if (index < 0 || index >= n_vars) throw std::out_of_range("MultiPoly::variable index");
  MultiPoly p(n_vars);
  Monomial m(static_cast<std::size_t>(n_vars), 0);
  m[static_cast<std::size_t>(index)] = 1;
  p.add_term(m, coeff);
  return p;
}

int MultiPoly::total_degree() const {
  int deg = 0;
  for (const auto& [mono, c] : terms_)
    deg = std::max(deg, std::accumulate(mono.begin(), mono.end(), 0));
  return deg;
}

void MultiPoly::add_term(const Monomial& mono, Complex c) {
  if (static_cast<int>(mono.size()) != n_vars_)
    throw std::invalid_argument("MultiPoly::add_term: exponent vector length mismatch");
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (std::abs(it->second) <= kDropTol) terms_.erase(it);
  }
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (n_vars_ != o.n_vars_)
    throw std::invalid_argument("MultiPoly: variable count mismatch");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [mono, c] : o.terms_) r.add_term(mono, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [mono, c] : o.terms_) r.add_term(mono, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(n_vars_);
  Monomial prod(static_cast<std::size_t>(n_vars_));
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ma[i] + mb[i];
      r.add_term(prod, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(Complex s) const {
  MultiPoly r(n_vars_);
  if (s == Complex{}) return r;
  for (const auto& [mono, c] : terms_) r.add_term(mono, s * c);
  return r;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
  MultiPoly r = constant(n_vars_, 1.0);
  for (int i = 0; i < e; ++i) r = r * (*this);
  return r;
}

MultiPoly MultiPoly::derivative(int index) const {
  if (index < 0 || index >= n_vars_) throw std::out_of_range("MultiPoly::derivative index");
  MultiPoly r(n_vars_);
  const auto idx = static_cast<std::size_t>(index);
  for (const auto& [mono, c] : terms_) {
    if (mono[idx] == 0) continue;
    Monomial m = mono;
    const int e = m[idx]--;
    r.add_term(m, c * static_cast<double>(e));
  }
  return r;
}

Complex MultiPoly::eval(const std::vector<Complex>& point) const {
  if (static_cast<int>(point.size()) != n_vars_)
    throw std::invalid_argument("MultiPoly::eval: point dimension mismatch");
  Complex acc{};
  for (const auto& [mono, c] : terms_) {
    Complex t = c;
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (int e = 0; e < mono[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

double MultiPoly::eval_real(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != n_vars_)
    throw std::invalid_argument("MultiPoly::eval_real: point dimension mismatch");
  double acc = 0.0;
  for (const auto& [mono, c] : terms_) {
    double t = c.real();
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (int e = 0; e < mono[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

MultiPoly compose_unipoly(const std::vector<double>& coeffs, double center,
                          const MultiPoly& inner) {
  if (coeffs.empty()) throw std::invalid_argument("compose_unipoly: empty coefficient list");
  const MultiPoly shifted = inner - MultiPoly::constant(inner.n_vars(), center);
  // Horner in the shifted inner polynomial.
  MultiPoly acc = MultiPoly::constant(inner.n_vars(), coeffs.back());
  for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it)
    acc = acc * shifted + MultiPoly::constant(inner.n_vars(), *it);
  return acc;
}

}  // namespace eccpie
