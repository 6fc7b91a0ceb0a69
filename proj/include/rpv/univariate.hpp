#pragma once

// Dense univariate polynomials over Q(i): gcd, square-free part, rational
// roots and Sturm counting of real roots. Used to simplify fractions in one
// variable, to detect radical equations, and to count the points of
// zero-dimensional groups in GL(1).

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "rpv/poly.hpp"

namespace rpv {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<GaussRat> c) : c_(std::move(c)) { trim(); }
  static UPoly x() { return UPoly({GaussRat(0), GaussRat(1)}); }
  static UPoly constant(GaussRat v) { return UPoly({std::move(v)}); }

  // Coefficients from degree 0 up; empty for the zero polynomial.
  const std::vector<GaussRat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const GaussRat& lc() const { return c_.back(); }
  GaussRat operator[](std::size_t k) const { return k < c_.size() ? c_[k] : GaussRat(0); }

  bool is_real() const {
    for (const auto& v : c_) {
      if (!v.is_real()) return false;
    }
    return true;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<GaussRat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[k] + b[k];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<GaussRat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[k] - b[k];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussRat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly scaled(const GaussRat& s) const {
    std::vector<GaussRat> r(c_);
    for (auto& v : r) v *= s;
    return UPoly(std::move(r));
  }
  UPoly monic() const { return is_zero() ? *this : scaled(lc().inverse()); }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<GaussRat> r(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * GaussRat(static_cast<long>(k));
    return UPoly(std::move(r));
  }

  GaussRat eval(const GaussRat& x) const {
    GaussRat acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  // Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DivisionByZero("univariate division by zero");
    std::vector<GaussRat> q(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0);
    UPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      GaussRat f = r.lc() / b.lc();
      q[shift] = f;
      std::vector<GaussRat> sub(shift + b.c_.size());
      for (std::size_t k = 0; k < b.c_.size(); ++k) sub[shift + k] = b.c_[k] * f;
      r = r - UPoly(std::move(sub));
    }
    return {UPoly(std::move(q)), r};
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  UPoly squarefree_part() const {
    if (degree() <= 0) return monic();
    return divmod(*this, gcd(*this, derivative())).first.monic();
  }

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<GaussRat> c_;
};

// The only variable occurring in p, if p is univariate (constants count as
// univariate in no variable: returns nullopt with `constant` set).
inline std::optional<std::size_t> sole_variable(const Poly& p) {
  std::optional<std::size_t> var;
  for (const auto& t : p.terms()) {
    for (std::size_t v = 0; v < t.mono.width(); ++v) {
      if (t.mono[v] == 0) continue;
      if (var && *var != v) return std::nullopt;
      var = v;
    }
  }
  return var;
}

inline UPoly to_upoly(const Poly& p, std::size_t var) {
  std::vector<GaussRat> c;
  for (const auto& t : p.terms()) {
    for (std::size_t v = 0; v < t.mono.width(); ++v) {
      if (v != var && t.mono[v] != 0) throw ContextError("polynomial is not univariate");
    }
    std::size_t e = t.mono[var];
    if (c.size() <= e) c.resize(e + 1);
    c[e] += t.coeff;
  }
  return UPoly(std::move(c));
}

inline Poly from_upoly(const UPoly& u, const ContextPtr& ctx, std::size_t var) {
  std::vector<Poly::Term> terms;
  for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
    if (u.coeffs()[k].is_zero()) continue;
    terms.push_back({k == 0 ? Monomial() : Monomial::var(var, static_cast<std::uint32_t>(k)), u.coeffs()[k]});
  }
  return Poly::from_terms(ctx, std::move(terms));
}

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  // Desk-scale inputs: trial division is fine.
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace detail

// All rational roots of a polynomial with rational coefficients (distinct,
// ascending). Rational root theorem on the primitive integer multiple.
inline std::vector<Rat> rational_roots(const UPoly& p) {
  if (!p.is_real()) throw Unsupported("rational_roots needs rational coefficients");
  std::set<Rat> roots;
  if (p.is_zero()) return {};
  std::size_t low = 0;
  while (p.coeffs()[low].is_zero()) ++low;
  if (low > 0) roots.insert(Rat(0));
  // Clear denominators.
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) {
    mpz_class d = c.re().denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  mpz_class a0 = (p.coeffs()[low].re() * Rat(mpq_class(l))).numerator();
  mpz_class an = (p.lc().re() * Rat(mpq_class(l))).numerator();
  if (p.degree() > static_cast<long>(low)) {
    for (const auto& num : detail::positive_divisors(a0)) {
      for (const auto& den : detail::positive_divisors(an)) {
        for (int sign : {1, -1}) {
          Rat cand(mpq_class(num * sign, den));
          if (p.eval(GaussRat(cand)).is_zero()) roots.insert(cand);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

// Number of distinct real roots of a real polynomial (Sturm's theorem on the
// whole line: sign changes at -inf minus sign changes at +inf).
inline std::size_t count_real_roots(const UPoly& p) {
  if (!p.is_real()) throw Unsupported("Sturm counting needs real coefficients");
  if (p.degree() <= 0) return 0;
  std::vector<UPoly> seq{p.squarefree_part()};
  seq.push_back(seq[0].derivative());
  while (seq.back().degree() > 0) {
    auto r = UPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(r.scaled(GaussRat(-1)));
  }
  auto changes = [&](bool at_plus_infinity) {
    std::size_t count = 0;
    int prev = 0;
    for (const auto& q : seq) {
      if (q.is_zero()) continue;
      int s = q.lc().re().sign();
      if (!at_plus_infinity && q.degree() % 2 == 1) s = -s;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  };
  return changes(false) - changes(true);
}

}  // namespace rpv
