#pragma once

// Fractions num/den over the quotient ring Q(i)[vars]/I, where I is the ideal
// of a rewrite system. I is assumed prime (towers are integral domains), so
// a/b = c/d exactly when a*d - b*c reduces to zero.

#include <utility>

#include "rpv/groebner.hpp"
#include "rpv/univariate.hpp"

namespace rpv {

struct RatFunc {
  Poly num;
  Poly den;
};

namespace detail {

inline Monomial monomial_content(const Poly& p) {
  Monomial g = p.leading().mono;
  for (const auto& t : p.terms()) g = Monomial::gcd(g, t.mono);
  return g;
}

inline Poly divide_monomial(const Poly& p, const Monomial& m) {
  std::vector<Poly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.mono / m, t.coeff});
  return Poly::from_terms(p.context(), std::move(terms));
}

}  // namespace detail

// Exact quotient p / d in the polynomial ring (no reduction modulo an ideal).
inline std::optional<Poly> exact_divide(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw DivisionByZero("exact_divide by zero polynomial");
  auto ctx = common_context(p.context(), d.context());
  Poly rest = p.lifted(ctx);
  std::vector<Poly::Term> quotient;
  const auto& ld = d.leading();
  while (!rest.is_zero()) {
    const auto& lr = rest.leading();
    if (!ld.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lr.mono / ld.mono;
    GaussRat c = lr.coeff / ld.coeff;
    quotient.push_back({m, c});
    rest = rest - d.mul_term(m, c);
  }
  return Poly::from_terms(ctx, std::move(quotient));
}

// Canonical representative: reduced numerator and denominator, common
// monomial factors and exact polynomial factors cancelled, univariate gcd
// removed, denominator with leading coefficient 1.
inline RatFunc normalize(const RatFunc& f, const RewriteSystem& rs) {
  Poly den = normal_form(f.den, rs);
  if (den.is_zero()) throw DivisionByZero("denominator reduces to zero");
  Poly num = normal_form(f.num, rs);
  auto ctx = common_context(num.context() ? num.context() : den.context(), den.context());
  if (num.is_zero()) return {Poly(ctx), poly_const(ctx, GaussRat(1))};
  num = num.lifted(ctx);
  den = den.lifted(ctx);

  Monomial g = Monomial::gcd(detail::monomial_content(num), detail::monomial_content(den));
  if (!g.is_one()) {
    num = detail::divide_monomial(num, g);
    den = detail::divide_monomial(den, g);
  }
  if (!den.is_constant()) {
    if (auto q = exact_divide(num, den)) {
      num = normal_form(*q, rs);
      den = poly_const(ctx, GaussRat(1));
    } else if (auto v = sole_variable(den)) {
      auto vn = sole_variable(num);
      if (num.is_constant() || (vn && *vn == *v)) {
        UPoly un = to_upoly(num, *v), ud = to_upoly(den, *v);
        UPoly gcd = UPoly::gcd(un, ud);
        if (gcd.degree() > 0) {
          num = from_upoly(UPoly::divmod(un, gcd).first, ctx, *v);
          den = from_upoly(UPoly::divmod(ud, gcd).first, ctx, *v);
        }
      }
    }
  }
  GaussRat lc = den.leading().coeff;
  if (!lc.is_one()) {
    GaussRat inv = lc.inverse();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return {std::move(num), std::move(den)};
}

inline RatFunc rf_add(const RatFunc& a, const RatFunc& b, const RewriteSystem& rs) {
  if (a.den == b.den) return normalize({a.num + b.num, a.den}, rs);
  return normalize({a.num * b.den + b.num * a.den, a.den * b.den}, rs);
}

inline RatFunc rf_sub(const RatFunc& a, const RatFunc& b, const RewriteSystem& rs) {
  if (a.den == b.den) return normalize({a.num - b.num, a.den}, rs);
  return normalize({a.num * b.den - b.num * a.den, a.den * b.den}, rs);
}

inline RatFunc rf_mul(const RatFunc& a, const RatFunc& b, const RewriteSystem& rs) {
  return normalize({a.num * b.num, a.den * b.den}, rs);
}

inline RatFunc rf_inv(const RatFunc& a, const RewriteSystem& rs) {
  if (normal_form(a.num, rs).is_zero()) throw DivisionByZero("inverse of zero");
  return normalize({a.den, a.num}, rs);
}

inline RatFunc rf_div(const RatFunc& a, const RatFunc& b, const RewriteSystem& rs) {
  return rf_mul(a, rf_inv(b, rs), rs);
}

inline bool rf_equals(const RatFunc& a, const RatFunc& b, const RewriteSystem& rs) {
  return normal_form(a.num * b.den - b.num * a.den, rs).is_zero();
}

}  // namespace rpv
