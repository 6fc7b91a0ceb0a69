#pragma once

// Picard-Vessiot extensions for a closed list of equation classes, their
// certificates, and realification of complexified solution spaces.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rpv/wronskian.hpp"

namespace rpv {

enum class ODEClass { Exp, Radical, Circle, ConstCoeff2 };

inline const char* to_string(ODEClass c) {
  switch (c) {
    case ODEClass::Exp: return "EXP";
    case ODEClass::Radical: return "RADICAL";
    case ODEClass::Circle: return "CIRCLE";
    case ODEClass::ConstCoeff2: return "CONSTCOEFF2";
  }
  return "?";
}

inline ODEClass parse_ode_class(const std::string& s) {
  if (s == "EXP") return ODEClass::Exp;
  if (s == "RADICAL") return ODEClass::Radical;
  if (s == "CIRCLE") return ODEClass::Circle;
  if (s == "CONSTCOEFF2") return ODEClass::ConstCoeff2;
  throw ParseError("unknown equation class '" + s + "'");
}

// Y^(n) + a_{n-1} Y^(n-1) + ... + a_0 Y.
struct LinearODE {
  std::vector<FieldElement> coeffs;  // a_0 .. a_{n-1}

  std::size_t order() const { return coeffs.size(); }

  FieldElement apply(const FieldElement& y) const {
    FieldElement d = y;
    FieldElement total = y - y;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      total = total + coeffs[k] * d;
      d = derive(d);
    }
    return total + d;
  }

  std::string str() const {
    auto y_name = [](std::size_t k) { return "Y" + std::string(k, '\''); };
    std::string s = y_name(order());
    for (std::size_t k = order(); k-- > 0;) {
      if (coeffs[k].is_zero()) continue;
      s += " + (" + coeffs[k].str() + ")*" + y_name(k);
    }
    return s;
  }
};

struct RadicalParams {
  FieldElement f;
  Rat exponent;  // the ODE is Y' = exponent * f'/f * Y
};

struct ScanBounds {
  unsigned degree = kDefaultScanDegree;
  unsigned coeff_degree = kDefaultScanCoeffDegree;
};

struct PVCertificates {
  std::vector<FieldElement> residuals;  // ODE applied to each solution
  bool solutions_ok = false;
  FieldElement wronskian;
  bool wronskian_ok = false;
  ConstantScan scan;
  bool scan_ok = false;

  bool all_ok() const { return solutions_ok && wronskian_ok && scan_ok; }
};

struct PVExtension {
  ODEClass cls = ODEClass::Exp;
  DiffTower base;
  DiffTower extension;
  LinearODE ode;
  std::vector<FieldElement> eta;
  // First-order system over the base: eta_j' = sum_i system[i][j] * eta_i.
  std::vector<std::vector<FieldElement>> system;
  // Generator first_new_generator + k of the extension equals
  // prod_j eta_j^gen_exponents[k][j].
  std::vector<std::vector<long>> gen_exponents;
  std::size_t first_new_generator = 0;
  PVCertificates certificates;
  std::vector<std::string> notes;

  std::size_t order() const { return eta.size(); }
};

// ---------------------------------------------------------------------------

namespace detail {

inline Rat rational_constant(const FieldElement& x, const char* what) {
  if (!x.den().is_constant() || !x.num().is_constant()) {
    throw UnsupportedEquation(std::string(what) + " must be a rational constant, got " + x.str());
  }
  GaussRat v = x.num().is_zero() ? GaussRat(0) : x.num().leading().coeff / x.den().leading().coeff;
  if (!v.is_real()) throw UnsupportedEquation(std::string(what) + " must be real");
  return v.re();
}

inline mpz_class rational_gcd_num(const Rat& a, const Rat& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
  return g;
}

inline mpz_class rational_lcm_den(const Rat& a, const Rat& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
  return l;
}

// Extended gcd on longs: returns (g, x, y) with a x + b y = g >= 0.
inline std::tuple<long, long, long> ext_gcd(long a, long b) {
  if (b == 0) return a >= 0 ? std::tuple{a, 1L, 0L} : std::tuple{-a, -1L, 0L};
  auto [g, x, y] = ext_gcd(b, a % b);
  return {g, y, x - (a / b) * y};
}

inline std::vector<std::vector<FieldElement>> zero_system(const DiffTower& base, std::size_t n) {
  return std::vector<std::vector<FieldElement>>(n, std::vector<FieldElement>(n, base.zero()));
}

// Power of a generator as a tower element, negative exponents as fractions.
inline FieldElement generator_power(const DiffTower& tower, const std::string& name, long e) {
  FieldElement g = tower.var(name);
  return e >= 0 ? g.pow(e) : g.inverse().pow(-e);
}

// r = sum c_k / (t - alpha_k) with rational alpha_k, c_k, if possible.
inline std::optional<std::vector<std::pair<Rat, Rat>>> logarithmic_residues(const DiffTower& base,
                                                                            const FieldElement& r) {
  if (!base.generators().empty() || !base.base_variable()) return std::nullopt;
  if (r.is_zero()) return std::vector<std::pair<Rat, Rat>>{};
  if (r.den().is_constant()) return std::nullopt;
  UPoly num = to_upoly(r.num(), 0);
  UPoly den = to_upoly(r.den(), 0);
  if (!num.is_real() || !den.is_real() || num.degree() >= den.degree()) return std::nullopt;
  if (!(den.squarefree_part() == den.monic())) return std::nullopt;
  auto roots = rational_roots(den);
  if (static_cast<long>(roots.size()) != den.degree()) return std::nullopt;
  UPoly dden = den.derivative();
  std::vector<std::pair<Rat, Rat>> out;
  for (const auto& a : roots) {
    GaussRat c = num.eval(GaussRat(a)) / dden.eval(GaussRat(a));
    out.emplace_back(a, c.re());
  }
  return out;
}

}  // namespace detail

inline PVCertificates certify(const PVExtension& pv, const ScanBounds& bounds) {
  PVCertificates c;
  c.solutions_ok = true;
  for (const auto& y : pv.eta) {
    c.residuals.push_back(pv.ode.apply(y));
    if (!c.residuals.back().is_zero()) c.solutions_ok = false;
  }
  c.wronskian = wronskian_det(pv.eta);
  c.wronskian_ok = !c.wronskian.is_zero();
  c.scan = constant_scan(pv.extension, bounds.degree, bounds.coeff_degree);
  c.scan_ok = c.scan.constants.empty();
  return c;
}

// The three PV certificates as report lines ("PASS ..." / "FAIL ...").
inline std::vector<std::string> verify_pv(const PVExtension& pv) {
  const auto& c = pv.certificates;
  std::vector<std::string> out;
  out.push_back(std::string(c.solutions_ok ? "PASS" : "FAIL") + " solutions satisfy " + pv.ode.str() + " = 0");
  out.push_back(std::string(c.wronskian_ok ? "PASS" : "FAIL") + " wronskian = " + c.wronskian.str());
  std::string scan = " constant scan (degree " + std::to_string(c.scan.degree_bound) + ", coefficient degree " +
                     std::to_string(c.scan.coeff_degree_bound) + ", " + std::to_string(c.scan.candidates) +
                     " candidates)";
  if (c.scan_ok) {
    out.push_back("PASS" + scan + " found no new constants");
  } else {
    std::string found;
    for (const auto& x : c.scan.constants) found += (found.empty() ? "" : ", ") + x.str();
    out.push_back("FAIL" + scan + " found new constants: " + found);
  }
  return out;
}

struct BuildOptions {
  ScanBounds scan;
  std::optional<RadicalParams> radical;
};

// Builds the extension without checking certificates (they are computed and
// stored); build_pv below throws NotPV when one fails.
inline PVExtension construct_pv(const DiffTower& base, const LinearODE& ode, ODEClass cls,
                                const BuildOptions& options = {}) {
  if (base.is_complexified()) throw ModeError("PV construction needs a REAL base tower");
  PVExtension pv;
  pv.cls = cls;
  pv.base = base;
  pv.ode = ode;
  for (auto& a : pv.ode.coeffs) {
    a = base.lift(a);
  }
  pv.first_new_generator = base.generators().size();
  std::size_t n = ode.order();
  auto one = base.one();

  auto build_circle = [&](const Rat& omega) {
    auto ctx = base.extension_context({"s", "c"});
    Poly s = poly_var(ctx, "s"), c = poly_var(ctx, "c"), unit = poly_const(ctx, GaussRat(1));
    pv.extension = adjoin(base, {{"s", GeneratorKind::Abstract, {c.scaled(GaussRat(omega)), unit}, std::nullopt},
                                 {"c", GeneratorKind::Abstract, {s.scaled(GaussRat(-omega)), unit},
                                  s * s + c * c - unit}});
    pv.eta = {pv.extension.var("s"), pv.extension.var("c")};
    pv.system = detail::zero_system(base, 2);
    pv.system[1][0] = base.constant(GaussRat(omega));
    pv.system[0][1] = base.constant(GaussRat(-omega));
    pv.gen_exponents = {{1, 0}, {0, 1}};
  };

  switch (cls) {
    case ODEClass::Exp: {
      if (n != 1) throw UnsupportedEquation("EXP needs a first-order equation");
      FieldElement f = -pv.ode.coeffs[0];
      pv.extension = adjoin_exponential(base, f, "e");
      pv.eta = {pv.extension.var("e")};
      pv.system = {{f}};
      pv.gen_exponents = {{1}};
      break;
    }
    case ODEClass::Radical: {
      if (n != 1) throw UnsupportedEquation("RADICAL needs a first-order equation");
      FieldElement r = -pv.ode.coeffs[0];
      if (options.radical) {
        FieldElement f = base.lift(options.radical->f);
        FieldElement expected = derive(f) / f * base.constant(GaussRat(options.radical->exponent));
        if (!(expected == r)) {
          throw UnsupportedEquation("coefficient is not -(p/q) f'/f for the declared f and exponent");
        }
      }
      auto residues = detail::logarithmic_residues(base, r);
      if (!residues) throw UnsupportedEquation("coefficient " + r.str() + " is not a rational logarithmic derivative");
      mpz_class q = 1;
      for (const auto& [alpha, c] : *residues) {
        mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.denominator().get_mpz_t());
      }
      auto ctx = base.extension_context({"g"});
      Poly t = poly_var(ctx, *base.base_variable());
      Poly pos = poly_const(ctx, GaussRat(1)), neg = poly_const(ctx, GaussRat(1));
      for (const auto& [alpha, c] : *residues) {
        Rat e = c * Rat(mpq_class(q));
        long k = e.numerator().get_si();
        Poly lin = t - poly_const(ctx, GaussRat(alpha));
        if (k > 0) pos = pos * lin.pow(static_cast<unsigned>(k));
        if (k < 0) neg = neg * lin.pow(static_cast<unsigned>(-k));
      }
      if (q == 1) {
        // The solution already lies in the base.
        pv.extension = base;
        pv.eta = {base.element(RatFunc{pos, neg})};
        pv.notes.push_back("exponents are integers: the solution lies in the base field");
        pv.system = {{r}};
        break;
      }
      long qq = q.get_si();
      Poly g = poly_var(ctx, "g");
      Poly relation = g.pow(static_cast<unsigned>(qq)) * neg - pos;
      pv.extension = adjoin_algebraic(base, "g", relation, {r.num().lifted(ctx) * g, r.den().lifted(ctx)});
      pv.eta = {pv.extension.var("g")};
      pv.system = {{r}};
      pv.gen_exponents = {{1}};
      break;
    }
    case ODEClass::Circle: {
      if (n != 2) throw UnsupportedEquation("CIRCLE needs a second-order equation");
      Rat a1 = detail::rational_constant(pv.ode.coeffs[1], "CIRCLE coefficient a1");
      Rat a0 = detail::rational_constant(pv.ode.coeffs[0], "CIRCLE coefficient a0");
      if (!a1.is_zero()) throw UnsupportedEquation("CIRCLE needs Y'' + w^2 Y");
      auto omega = a0.sqrt();
      if (a0.sign() <= 0 || !omega) throw UnsupportedEquation("CIRCLE needs a0 = w^2 with w rational nonzero");
      build_circle(*omega);
      break;
    }
    case ODEClass::ConstCoeff2: {
      if (n != 2) throw UnsupportedEquation("CONSTCOEFF2 needs a second-order equation");
      Rat a1 = detail::rational_constant(pv.ode.coeffs[1], "CONSTCOEFF2 coefficient a1");
      Rat a0 = detail::rational_constant(pv.ode.coeffs[0], "CONSTCOEFF2 coefficient a0");
      Rat disc = a1 * a1 - Rat(4) * a0;
      Rat half(1, 2);
      Rat lambda = -a1 * half;
      if (disc.sign() > 0) {
        auto root = disc.sqrt();
        if (!root) throw UnsupportedEquation("characteristic roots are irrational");
        Rat r1 = lambda - *root * half, r2 = lambda + *root * half;
        Rat r0 = r1.is_zero() ? r2 : r2.is_zero() ? r1 : Rat(mpq_class(detail::rational_gcd_num(r1, r2),
                                                                         detail::rational_lcm_den(r1, r2)));
        long p1 = (r1 / r0).numerator().get_si(), p2 = (r2 / r0).numerator().get_si();
        pv.extension = adjoin_exponential(base, base.constant(GaussRat(r0)), "E");
        pv.eta = {detail::generator_power(pv.extension, "E", p1), detail::generator_power(pv.extension, "E", p2)};
        pv.system = detail::zero_system(base, 2);
        pv.system[0][0] = base.constant(GaussRat(r1));
        pv.system[1][1] = base.constant(GaussRat(r2));
        auto [g, x, y] = detail::ext_gcd(p1, p2);
        pv.gen_exponents = {{x, y}};
        pv.notes.push_back("distinct rational roots " + r1.str() + ", " + r2.str() + "; E' = " + r0.str() + "*E");
      } else if (disc.sign() < 0) {
        auto root = (-disc).sqrt();
        if (!root) throw UnsupportedEquation("characteristic roots have irrational imaginary part");
        Rat mu = *root * half;
        if (lambda.is_zero()) {
          build_circle(mu);
          pv.notes.push_back("purely imaginary roots: circle tower");
          break;
        }
        auto ctx = base.extension_context({"u", "v"});
        Poly u = poly_var(ctx, "u"), v = poly_var(ctx, "v"), unit = poly_const(ctx, GaussRat(1));
        GaussRat l(lambda), m(mu);
        pv.extension = adjoin(base, {{"u", GeneratorKind::Abstract, {u.scaled(l) + v.scaled(m), unit}, std::nullopt},
                                     {"v", GeneratorKind::Abstract, {v.scaled(l) - u.scaled(m), unit}, std::nullopt}});
        pv.eta = {pv.extension.var("u"), pv.extension.var("v")};
        pv.system = detail::zero_system(base, 2);
        pv.system[0][0] = pv.system[1][1] = base.constant(l);
        pv.system[1][0] = base.constant(m);
        pv.system[0][1] = base.constant(-m);
        pv.gen_exponents = {{1, 0}, {0, 1}};
        pv.notes.push_back("conjugate roots " + lambda.str() + " +- " + mu.str() + "*i");
      } else {
        pv.system = detail::zero_system(base, 2);
        pv.system[0][0] = pv.system[1][1] = base.constant(GaussRat(lambda));
        pv.system[0][1] = one;
        if (base.base_variable()) {
          FieldElement t = base.var(*base.base_variable());
          if (lambda.is_zero()) {
            pv.extension = base;
            pv.eta = {one, t};
          } else {
            pv.extension = adjoin_exponential(base, base.constant(GaussRat(lambda)), "e");
            FieldElement e = pv.extension.var("e");
            pv.eta = {e, pv.extension.lift(t) * e};
            pv.gen_exponents = {{1, 0}};
          }
          pv.notes.push_back("double root " + lambda.str() + ": second solution t times the first");
        } else {
          auto ctx = base.extension_context(lambda.is_zero() ? std::vector<std::string>{"u"}
                                                             : std::vector<std::string>{"e", "u"});
          Poly u = poly_var(ctx, "u"), unit = poly_const(ctx, GaussRat(1));
          if (lambda.is_zero()) {
            pv.extension = adjoin(base, {{"u", GeneratorKind::Abstract, {unit, unit}, std::nullopt}});
            pv.eta = {pv.extension.one(), pv.extension.var("u")};
            pv.gen_exponents = {{0, 1}};
          } else {
            Poly e = poly_var(ctx, "e");
            GaussRat l(lambda);
            pv.extension = adjoin(base, {{"e", GeneratorKind::Exponential, {e.scaled(l), unit}, std::nullopt},
                                         {"u", GeneratorKind::Abstract, {u.scaled(l) + e, unit}, std::nullopt}});
            pv.eta = {pv.extension.var("e"), pv.extension.var("u")};
            pv.gen_exponents = {{1, 0}, {0, 1}};
          }
          pv.notes.push_back("double root " + lambda.str() + " over constant base: unipotent generator u");
        }
      }
      break;
    }
  }
  pv.certificates = certify(pv, options.scan);
  return pv;
}

inline PVExtension build_pv(const DiffTower& base, const LinearODE& ode, ODEClass cls,
                            const BuildOptions& options = {}) {
  PVExtension pv = construct_pv(base, ode, cls, options);
  if (!pv.certificates.all_ok()) {
    for (const auto& line : verify_pv(pv)) {
      if (line.rfind("FAIL", 0) == 0) throw NotPV(line);
    }
  }
  return pv;
}

// ---------------------------------------------------------------------------
// Complexification and realification

// The same extension seen over F = K(i): towers complexified, solutions kept.
inline PVExtension complexify(const PVExtension& pv) {
  PVExtension out = pv;
  out.base = complexify(pv.base);
  out.extension = complexify(pv.extension);
  for (auto& y : out.eta) y = out.extension.lift(y);
  return out;
}

struct Realification {
  PVExtension real;
  std::size_t stabilized_dimension = 0;  // dim of V + conj(V) when closure was needed
  bool needed_stabilization = false;
  std::vector<FieldElement> fixed_basis;  // V^c inside the complexified tower
};

namespace detail {

// Rows of coordinates of xs over the tower's monomials, brought to reduced
// echelon form; returns the canonical basis of their span.
inline std::vector<FieldElement> canonical_span_basis(const DiffTower& tower, const std::vector<FieldElement>& xs) {
  auto common = over_common_denominator(xs, *tower.data());
  Matrix coords = coordinate_matrix(common.numerators).transpose();  // one row per element
  // Columns of coordinate_matrix are sorted ascending structurally; order
  // them from the largest monomial in the tower order down.
  std::map<Monomial, std::size_t> rows;
  for (const auto& p : common.numerators) {
    for (const auto& term : p.terms()) rows.emplace(term.mono, 0);
  }
  std::vector<Monomial> monos;
  for (auto& [m, idx] : rows) monos.push_back(m);
  std::vector<std::size_t> order(monos.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& ctx = *tower.context();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return compare(ctx, monos[a], monos[b]) > 0; });
  Matrix m(coords.rows(), coords.cols());
  for (std::size_t r = 0; r < coords.rows(); ++r) {
    for (std::size_t c = 0; c < order.size(); ++c) m(r, c) = coords(r, order[c]);
  }
  auto pivots = m.rref();
  std::vector<FieldElement> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    std::vector<Poly::Term> terms;
    for (std::size_t c = 0; c < order.size(); ++c) {
      if (!m(r, c).is_zero()) terms.push_back({monos[order[c]], m(r, c)});
    }
    out.push_back(tower.element(RatFunc{Poly::from_terms(tower.context(), std::move(terms)), common.denominator}));
  }
  // Smallest leading monomial first.
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

// V^c for V = span over Q(i) of `solutions` (elements of the complexified
// extension of `complex_pv`), and the real PV extension it generates.
inline Realification realify(const PVExtension& complex_pv, std::vector<FieldElement> solutions = {}) {
  if (!complex_pv.extension.is_complexified()) throw ModeError("realify needs a COMPLEXIFIED extension");
  if (solutions.empty()) solutions = complex_pv.eta;
  const DiffTower& g = complex_pv.extension;
  for (auto& v : solutions) v = g.lift(v);
  Realification out;
  std::vector<FieldElement> basis = solutions;
  std::size_t n = basis.size();
  auto coords_of_conj = [&](const std::vector<FieldElement>& b) {
    std::vector<std::vector<GaussRat>> cols;
    for (const auto& v : b) {
      auto c = linear_coordinates(conj(v), b);
      if (!c) return std::optional<std::vector<std::vector<GaussRat>>>();
      cols.push_back(*c);
    }
    return std::optional(cols);
  };
  auto p = coords_of_conj(basis);
  if (!p) {
    out.needed_stabilization = true;
    std::vector<FieldElement> closed = basis;
    for (const auto& v : basis) closed.push_back(conj(v));
    closed = detail::canonical_span_basis(g, closed);
    out.stabilized_dimension = closed.size();
    p = coords_of_conj(closed);
    if (!p) throw StabilizationError("V + conj(V) is not conjugation-stable");
    basis = closed;
    n = basis.size();
  }
  // P conj(a) = a with a = x + i y: R x + J y = x and J x - R y = y.
  Matrix sys(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      GaussRat pij = (*p)[j][i];
      GaussRat r(pij.re()), im(pij.im());
      sys(i, j) = r;
      sys(i, n + j) = im;
      sys(n + i, j) = im;
      sys(n + i, n + j) = -r;
    }
    sys(i, i) -= GaussRat(1);
    sys(n + i, n + i) -= GaussRat(1);
  }
  std::vector<FieldElement> fixed;
  for (const auto& k : sys.kernel()) {
    std::vector<GaussRat> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = GaussRat(k[j].re(), k[n + j].re());
    fixed.push_back(combine(g, basis, a));
  }
  if (fixed.empty()) throw StabilizationError("conjugation-fixed subspace is zero");
  fixed = detail::canonical_span_basis(g, fixed);
  out.fixed_basis = fixed;

  PVExtension real = complex_pv;
  real.base = real_part(complex_pv.base);
  real.extension = real_part(g);
  real.eta.clear();
  for (const auto& v : fixed) real.eta.push_back(to_real(v));
  real.ode.coeffs.clear();
  for (const auto& a : complex_pv.ode.coeffs) real.ode.coeffs.push_back(to_real(a));
  for (auto& row : real.system) {
    for (auto& x : row) x = to_real(x);
  }
  bool same_eta = real.eta.size() == complex_pv.eta.size();
  for (std::size_t j = 0; same_eta && j < real.eta.size(); ++j) same_eta = real.eta[j] == complex_pv.eta[j];
  if (!same_eta) {
    real.notes.push_back("realified solutions differ from the input basis; system/generator data recomputed");
    real.system.clear();
    real.gen_exponents.clear();
  }
  real.certificates = certify(real, {real.certificates.scan.degree_bound, real.certificates.scan.coeff_degree_bound});
  out.real = std::move(real);
  return out;
}

}  // namespace rpv
