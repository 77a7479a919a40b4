#include "eccpie/taylor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eccpie {

UniPoly arccos_taylor(double center, int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("arccos_taylor: need at least one term");
  if (n_terms > 16) throw std::invalid_argument("arccos_taylor: more than 16 terms is numerically unsupported");
  if (!(std::abs(center) < 1.0)) throw std::domain_error("arccos_taylor: |center| must be < 1");

  std::vector<double> c(static_cast<std::size_t>(n_terms), 0.0);
  if (center == 0.0) {
    c[0] = std::numbers::pi / 2.0;
    // c_{2n+1} = -(2n)! / (4^n (n!)^2 (2n+1)), running ratio update.
    double odd = -1.0;  // coefficient of x^{2n+1}, starting at n = 0
    for (int n = 0; 2 * n + 1 < n_terms; ++n) {
      c[static_cast<std::size_t>(2 * n + 1)] = odd;
      odd *= (2.0 * n + 1.0) * (2.0 * n + 2.0) / 4.0 / ((n + 1.0) * (n + 1.0)) *
             (2.0 * n + 1.0) / (2.0 * n + 3.0);
    }
  } else {
    const double a = center;
    const double one_m_a2 = 1.0 - a * a;
    c[0] = std::acos(a);
    if (n_terms > 1) c[1] = -1.0 / std::sqrt(one_m_a2);
    // From (1 - x^2) f'' = x f' at x = a + t:
    //   c_{k+2} = [ a (2k+1)(k+1) c_{k+1} + k^2 c_k ] / ( (1-a^2)(k+2)(k+1) )
    for (int k = 0; k + 2 < n_terms; ++k) {
      c[static_cast<std::size_t>(k + 2)] =
          (a * (2.0 * k + 1.0) * (k + 1.0) * c[static_cast<std::size_t>(k + 1)] +
           static_cast<double>(k) * k * c[static_cast<std::size_t>(k)]) /
          (one_m_a2 * (k + 2.0) * (k + 1.0));
    }
  }
  return UniPoly{center, std::move(c)};
}

namespace {

template <typename T>
T horner(const UniPoly& p, T x) {
  const T t = x - p.center;
  T acc = T(p.coeffs.back());
  for (auto it = p.coeffs.rbegin() + 1; it != p.coeffs.rend(); ++it)
    acc = acc * t + T(*it);
  return acc;
}

}  // namespace

double eval_unipoly(const UniPoly& p, double x) { return horner(p, x); }

std::complex<double> eval_unipoly(const UniPoly& p, std::complex<double> x) {
  return horner(p, x);
}

double max_abs_error(const UniPoly& p, double lo, double hi, int samples) {
  if (samples < 1) throw std::invalid_argument("max_abs_error: need at least one sample");
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = (samples == 1) ? lo : lo + (hi - lo) * i / (samples - 1.0);
    worst = std::max(worst, std::abs(eval_unipoly(p, x) - std::acos(x)));
  }
  return worst;
}

}  // namespace eccpie
