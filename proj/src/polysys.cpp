#include "eccpie/polysys.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "eccpie/geometry.hpp"

namespace eccpie {

std::vector<int> PolySystem::total_degrees() const {
  std::vector<int> d;
  d.reserve(polys.size());
  for (const auto& p : polys) d.push_back(p.total_degree());
  return d;
}

unsigned long long PolySystem::bezout_count() const {
  unsigned long long prod = 1;
  for (const auto& p : polys) prod *= static_cast<unsigned long long>(p.total_degree());
  return prod;
}

ComplexVec PolySystem::eval(const ComplexVec& point) const {
  ComplexVec r;
  r.reserve(polys.size());
  for (const auto& p : polys) r.push_back(p.eval(point));
  return r;
}

std::vector<ComplexVec> PolySystem::jacobian(const ComplexVec& point) const {
  const int n = n_vars();
  std::vector<ComplexVec> jac(polys.size(), ComplexVec(static_cast<std::size_t>(n)));
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (int j = 0; j < n; ++j)
      jac[i][static_cast<std::size_t>(j)] = polys[i].derivative(j).eval(point);
  return jac;
}

double max_sector_fraction() {
  return 1.0 - (2.0 / kPi) * (kPi / 6.0 - std::sqrt(3.0) / 4.0);
}

namespace {

// Minimum over both orientations of the worst per-sector area mismatch for
// a 3-blade configuration read off a root of the full system.
RealVec piecut_area_errors(const RealVec& v, double l1, double l2) {
  const double lam[3] = {l1, l2, 1.0 - l1 - l2};
  const Point2 apex{v[0], 0.0};
  if (apex.norm2() >= 1.0 - 1e-12) return {1e9, 1e9, 1e9};
  const Point2 pts[3] = {{v[1], v[2]}, {v[3], v[4]}, {v[5], v[6]}};
  double blade[3];
  for (int i = 0; i < 3; ++i) {
    const Point2 d = pts[i] - apex;
    if (d.norm2() < 1e-20) return {1e9, 1e9, 1e9};
    blade[i] = std::atan2(d.y, d.x);
  }
  RealVec best = {1e9, 1e9, 1e9};
  double best_worst = 1e18;
  for (Orientation o : {Orientation::counterclockwise, Orientation::clockwise}) {
    RealVec err(3);
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      try {
        EccentricSector s{apex, blade[i], blade[(i + 1) % 3], o};
        err[static_cast<std::size_t>(i)] =
            std::abs(sector_area_decomposed(s) - lam[i] * kPi);
      } catch (const std::exception&) {
        ok = false;
        break;
      }
      worst = std::max(worst, err[static_cast<std::size_t>(i)]);
    }
    if (ok && worst < best_worst) {
      best_worst = worst;
      best = err;
    }
  }
  return best;
}

void check_taylor(const UniPoly& taylor) {
  if (taylor.coeffs.empty())
    throw std::invalid_argument("build system: empty Taylor polynomial");
}

}  // namespace

PolySystem build_piecut_system(double lambda1, double lambda2, const UniPoly& taylor) {
  check_taylor(taylor);
  const double lambda3 = 1.0 - lambda1 - lambda2;
  if (!(lambda1 > 0.0 && lambda2 > 0.0 && lambda3 > 0.0))
    throw std::invalid_argument("build_piecut_system: shares must be positive and sum below 1");

  constexpr int N = 11;
  // Variable order: x0 x1 y1 x2 y2 x3 y3 beta phi s_beta s_phi
  enum { X0, X1, Y1, X2, Y2, X3, Y3, BETA, PHI, SB, SP };
  auto var = [](int i) { return MultiPoly::variable(N, i); };
  auto con = [](double c) { return MultiPoly::constant(N, c); };
  const MultiPoly x0 = var(X0), x1 = var(X1), y1 = var(Y1), x2 = var(X2),
                  y2 = var(Y2), x3 = var(X3), y3 = var(Y3), beta = var(BETA),
                  phi = var(PHI), sb = var(SB), sp = var(SP);

  const MultiPoly dot12 = x1 * x2 + y1 * y2;
  const MultiPoly dot23 = x2 * x3 + y2 * y3;
  // Apex triangles with y0 = 0 baked in.
  const MultiPoly t1 = x0 * (y1 - y2) + x1 * y2 - x2 * y1;
  const MultiPoly t2 = x0 * (y2 - y3) + x2 * y3 - x3 * y2;
  const MultiPoly d1 = (x1 - x0) * (x2 - x0) + y1 * y2;
  const MultiPoly d2 = (x2 - x0) * (x3 - x0) + y2 * y3;
  const MultiPoly q1 = (x1 - x0).pow(2) + y1 * y1;
  const MultiPoly q2 = (x2 - x0).pow(2) + y2 * y2;
  const MultiPoly q3 = (x3 - x0).pow(2) + y3 * y3;

  PolySystem sys;
  sys.var_names = {"x0", "x1", "y1", "x2", "y2", "x3", "y3",
                   "beta", "phi", "s_beta", "s_phi"};
  sys.polys = {
      d1 * d1 - 0.25 * (q1 * q2),
      d2 * d2 - 0.25 * (q2 * q3),
      dot12 * dot12 + sb * sb - con(1.0),
      dot23 * dot23 + sp * sp - con(1.0),
      (con(2.0 * lambda1 * kPi) - beta + sb).pow(2) - t1 * t1,
      (con(2.0 * lambda2 * kPi) - phi + sp).pow(2) - t2 * t2,
      x1 * x1 + y1 * y1 - con(1.0),
      x2 * x2 + y2 * y2 - con(1.0),
      x3 * x3 + y3 * y3 - con(1.0),
      beta - compose_unipoly(taylor.coeffs, taylor.center, dot12),
      phi - compose_unipoly(taylor.coeffs, taylor.center, dot23),
  };

  const double l1 = lambda1, l2 = lambda2;
  sys.exact_residual = [l1, l2](const RealVec& v) -> RealVec {
    const double X0v = v[0], X1v = v[1], Y1v = v[2], X2v = v[3], Y2v = v[4],
                 X3v = v[5], Y3v = v[6], B = v[7], P = v[8], SBv = v[9], SPv = v[10];
    const double T1 = X0v * (Y1v - Y2v) + X1v * Y2v - X2v * Y1v;
    const double T2 = X0v * (Y2v - Y3v) + X2v * Y3v - X3v * Y2v;
    const double D1 = (X1v - X0v) * (X2v - X0v) + Y1v * Y2v;
    const double D2 = (X2v - X0v) * (X3v - X0v) + Y2v * Y3v;
    const double Q1 = (X1v - X0v) * (X1v - X0v) + Y1v * Y1v;
    const double Q2 = (X2v - X0v) * (X2v - X0v) + Y2v * Y2v;
    const double Q3 = (X3v - X0v) * (X3v - X0v) + Y3v * Y3v;
    return {
        X1v * X1v + Y1v * Y1v - 1.0,
        X2v * X2v + Y2v * Y2v - 1.0,
        X3v * X3v + Y3v * Y3v - 1.0,
        2.0 * l1 * kPi - B + SBv - std::abs(T1),
        2.0 * l2 * kPi - P + SPv - std::abs(T2),
        D1 + 0.5 * std::sqrt(Q1 * Q2),
        D2 + 0.5 * std::sqrt(Q2 * Q3),
        X1v * X2v + Y1v * Y2v - std::cos(B),
        X2v * X3v + Y2v * Y3v - std::cos(P),
        SBv - std::sin(B),
        SPv - std::sin(P),
    };
  };

  sys.filters.x0_var = X0;
  sys.filters.unit_box_vars = {SB, SP};
  sys.filters.sin_pairs = {{BETA, SB}, {PHI, SP}};
  sys.filters.abs_residuals = [l1, l2](const RealVec& v) -> RealVec {
    const double T1 = v[0] * (v[2] - v[4]) + v[1] * v[4] - v[3] * v[2];
    const double T2 = v[0] * (v[4] - v[6]) + v[3] * v[6] - v[5] * v[4];
    return {2.0 * l1 * kPi - v[7] + v[9] - std::abs(T1),
            2.0 * l2 * kPi - v[8] + v[10] - std::abs(T2)};
  };
  sys.filters.sqrt_side = [](const RealVec& v) -> RealVec {
    const double D1 = (v[1] - v[0]) * (v[3] - v[0]) + v[2] * v[4];
    const double D2 = (v[3] - v[0]) * (v[5] - v[0]) + v[4] * v[6];
    return {D1, D2};
  };
  sys.filters.area_errors = [l1, l2](const RealVec& v) {
    return piecut_area_errors(v, l1, l2);
  };
  const double lmax = std::max({lambda1, lambda2, lambda3});
  sys.filters.infeasible_warning = lmax > max_sector_fraction();
  return sys;
}

PolySystem build_single_sector_system(double lambda, double apex_x, const UniPoly& taylor) {
  check_taylor(taylor);
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("build_single_sector_system: share must be in (0, 1)");
  if (!(std::abs(apex_x) < 1.0))
    throw std::invalid_argument("build_single_sector_system: apex must be interior");

  constexpr int N = 4;
  enum { X2, Y2, BETA, SB };
  auto var = [](int i) { return MultiPoly::variable(N, i); };
  auto con = [](double c) { return MultiPoly::constant(N, c); };
  const MultiPoly x2 = var(X2), y2 = var(Y2), beta = var(BETA), sb = var(SB);

  // First boundary point pinned to (0, 1), apex (apex_x, 0):
  //   dot = x1*x2 + y1*y2 = y2
  //   triangle = x0*(y1 - y2) + x1*(y2 - y0) + x2*(y0 - y1) = x0*(1 - y2) - x2
  const MultiPoly dot = y2;
  const MultiPoly tri = con(apex_x) - apex_x * y2 - x2;

  PolySystem sys;
  sys.var_names = {"x2", "y2", "beta", "s_beta"};
  sys.polys = {
      x2 * x2 + y2 * y2 - con(1.0),
      dot * dot + sb * sb - con(1.0),
      (con(2.0 * lambda * kPi) - beta + sb).pow(2) - tri * tri,
      beta - compose_unipoly(taylor.coeffs, taylor.center, dot),
  };

  const double lam = lambda, ax = apex_x;
  sys.exact_residual = [lam, ax](const RealVec& v) -> RealVec {
    const double X2v = v[0], Y2v = v[1], B = v[2], SBv = v[3];
    const double T = ax * (1.0 - Y2v) - X2v;
    return {
        X2v * X2v + Y2v * Y2v - 1.0,
        Y2v - std::cos(B),
        2.0 * lam * kPi - B + SBv - std::abs(T),
        SBv - std::sin(B),
    };
  };

  sys.filters.unit_box_vars = {SB};
  sys.filters.sin_pairs = {{BETA, SB}};
  sys.filters.abs_residuals = [lam, ax](const RealVec& v) -> RealVec {
    const double T = ax * (1.0 - v[1]) - v[0];
    return {2.0 * lam * kPi - v[2] + v[3] - std::abs(T)};
  };
  sys.filters.area_errors = [lam, ax](const RealVec& v) -> RealVec {
    const Point2 apex{ax, 0.0};
    const Point2 a{0.0, 1.0};
    const Point2 b{v[0], v[1]};
    const Point2 da = a - apex, db = b - apex;
    if (db.norm2() < 1e-20) return {1e9};
    const double pa = std::atan2(da.y, da.x), pb = std::atan2(db.y, db.x);
    double best = 1e9;
    for (Orientation o : {Orientation::counterclockwise, Orientation::clockwise}) {
      try {
        best = std::min(best,
                        std::abs(sector_area_decomposed({apex, pa, pb, o}) - lam * kPi));
      } catch (const std::exception&) {
      }
    }
    return {best};
  };
  sys.filters.infeasible_warning = lambda > max_sector_fraction();
  return sys;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

[[noreturn]] void parse_fail(int line_no, const std::string& expected) {
  throw std::runtime_error("parse_system: line " + std::to_string(line_no) +
                           ": expected " + expected);
}

}  // namespace

std::string export_system(const PolySystem& sys) {
  std::ostringstream out;
  out << "# format 1\n";
  out << "vars: " << sys.n_vars();
  for (const auto& name : sys.var_names) out << ' ' << name;
  out << '\n';
  for (std::size_t i = 0; i < sys.polys.size(); ++i) {
    if (i > 0) out << '\n';
    for (const auto& [mono, c] : sys.polys[i].terms()) {
      out << format_double(c.real()) << ' ' << format_double(c.imag());
      for (int e : mono) out << ' ' << e;
      out << '\n';
    }
  }
  return out.str();
}

PolySystem parse_system(const std::string& text) {
  PolySystem sys;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int n = -1;
  bool have_open_poly = false;
  MultiPoly current;

  auto flush = [&] {
    if (have_open_poly) {
      sys.polys.push_back(current);
      current = MultiPoly(n);
      have_open_poly = false;
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.front() == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      std::string tag;
      if (!(ls >> tag)) continue;  // leading blank lines
      if (tag != "vars:") parse_fail(line_no, "'vars:' header");
      if (!(ls >> n) || n < 1) parse_fail(line_no, "positive variable count");
      sys.var_names.resize(static_cast<std::size_t>(n));
      for (auto& name : sys.var_names)
        if (!(ls >> name)) parse_fail(line_no, std::to_string(n) + " variable names");
      current = MultiPoly(n);
      continue;
    }
    std::string first;
    if (!(ls >> first)) {  // blank line: end of current polynomial
      flush();
      continue;
    }
    double re, im;
    {
      std::istringstream rs(first);
      if (!(rs >> re) || !rs.eof()) parse_fail(line_no, "real coefficient");
    }
    if (!(ls >> im)) parse_fail(line_no, "imaginary coefficient");
    Monomial mono(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      if (!(ls >> mono[static_cast<std::size_t>(i)]))
        parse_fail(line_no, std::to_string(n) + " integer exponents");
    int extra;
    if (ls >> extra) parse_fail(line_no, "end of line after " + std::to_string(n) + " exponents");
    current.add_term(mono, Complex{re, im});
    have_open_poly = true;
  }
  flush();
  if (n < 0) throw std::runtime_error("parse_system: missing 'vars:' header");
  if (static_cast<int>(sys.polys.size()) != n)
    throw std::runtime_error("parse_system: system is not square: " +
                             std::to_string(sys.polys.size()) + " polynomials for " +
                             std::to_string(n) + " variables");
  return sys;
}

}  // namespace eccpie
