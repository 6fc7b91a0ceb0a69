#pragma once

// Sparse multivariate polynomials over an arbitrary commutative coefficient
// ring. Terms are kept sorted from the largest monomial down (in the order of
// the polynomial's context) and never hold a zero coefficient.
//
// Coefficient requirements: copyable, is_zero(), unary minus, +, -, *.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rpv/monomial.hpp"
#include "rpv/rational.hpp"

namespace rpv {

template <class R>
class MPoly {
 public:
  struct Term {
    Monomial mono;
    R coeff;
  };

  MPoly() = default;
  explicit MPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static MPoly constant(ContextPtr ctx, R c) {
    MPoly p(std::move(ctx));
    if (!c.is_zero()) p.terms_.push_back({Monomial(), std::move(c)});
    return p;
  }
  static MPoly monomial(ContextPtr ctx, Monomial m, R c) {
    MPoly p(std::move(ctx));
    if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }
  static MPoly variable(ContextPtr ctx, const std::string& name, R one) {
    auto idx = ctx->index_of(name);
    if (!idx) throw ContextError("unknown variable '" + name + "'");
    return monomial(ctx, Monomial::var(*idx), std::move(one));
  }

  // Builds from arbitrary (possibly repeated, possibly zero) terms.
  static MPoly from_terms(ContextPtr ctx, std::vector<Term> raw) {
    MPoly p(std::move(ctx));
    std::map<Monomial, R> acc;
    for (auto& t : raw) {
      auto it = acc.find(t.mono);
      if (it == acc.end()) {
        acc.emplace(std::move(t.mono), std::move(t.coeff));
      } else {
        it->second = it->second + t.coeff;
      }
    }
    for (auto& [m, c] : acc) {
      if (!c.is_zero()) p.terms_.push_back({m, std::move(c)});
    }
    p.sort_terms();
    return p;
  }

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  // True when every term only involves variables accepted by the predicate.
  bool uses_only(const std::function<bool(std::size_t)>& allowed) const {
    for (const auto& t : terms_) {
      for (std::size_t v = 0; v < t.mono.width(); ++v) {
        if (t.mono[v] != 0 && !allowed(v)) return false;
      }
    }
    return true;
  }

  // Same polynomial viewed in a context that extends this one.
  MPoly lifted(const ContextPtr& ctx) const {
    if (ctx_ && !ctx_->is_prefix_of(*ctx)) throw ContextError("lift into a non-extension context");
    MPoly p(*this);
    p.ctx_ = ctx;
    return p;
  }

  MPoly operator-() const {
    MPoly p(*this);
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, false); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, true); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    auto ctx = join(a, b);
    if (a.is_zero() || b.is_zero()) return MPoly(ctx);
    if (b.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff).with_context(ctx);
    if (a.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff).with_context(ctx);
    std::vector<Term> raw;
    raw.reserve(a.size() * b.size());
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) raw.push_back({x.mono * y.mono, x.coeff * y.coeff});
    }
    return from_terms(ctx, std::move(raw));
  }

  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(const R& c) const {
    if (c.is_zero()) return MPoly(ctx_);
    MPoly p(ctx_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      R v = t.coeff * c;
      if (!v.is_zero()) p.terms_.push_back({t.mono, std::move(v)});
    }
    return p;
  }

  // Multiplication by c*m; the order is preserved because it is a monomial order.
  MPoly mul_term(const Monomial& m, const R& c) const {
    MPoly p(ctx_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      R v = t.coeff * c;
      if (!v.is_zero()) p.terms_.push_back({t.mono * m, std::move(v)});
    }
    return p;
  }

  MPoly pow(unsigned e) const {
    MPoly result = MPoly::constant(ctx_, unit());
    MPoly base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  // Coefficient of a given monomial (zero_value when absent).
  R coefficient(const Monomial& m, const R& zero_value) const {
    for (const auto& t : terms_) {
      if (t.mono == m) return t.coeff;
    }
    return zero_value;
  }

  // Formal partial derivative in variable v (coefficient ring needs R(long)).
  MPoly partial(std::size_t v) const {
    std::vector<Term> raw;
    for (const auto& t : terms_) {
      auto e = t.mono[v];
      if (e == 0) continue;
      auto exps = t.mono.exponents();
      exps[v] -= 1;
      raw.push_back({Monomial(std::move(exps)), t.coeff * R(static_cast<long>(e))});
    }
    return from_terms(ctx_, std::move(raw));
  }

  // Ring homomorphism into S: every variable v maps to image(v), coefficients
  // through coeff_map. Powers of each variable are cached per call.
  template <class S, class CoeffMap, class VarImage>
  S evaluate(const S& one, CoeffMap coeff_map, VarImage image) const {
    S total = one - one;
    std::map<std::size_t, std::vector<S>> powers;  // powers[v][k] = image(v)^(k+1)
    auto power_of = [&](std::size_t v, std::uint32_t e) -> const S& {
      auto& list = powers[v];
      if (list.empty()) list.push_back(image(v));
      while (list.size() < e) list.push_back(list.back() * list.front());
      return list[e - 1];
    };
    for (const auto& t : terms_) {
      S term = coeff_map(t.coeff);
      for (std::size_t v = 0; v < t.mono.width(); ++v) {
        if (t.mono[v] != 0) term = term * power_of(v, t.mono[v]);
      }
      total = total + term;
    }
    return total;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].mono == b.terms_[i].mono)) return false;
      if (!(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    }
    if (!a.terms_.empty()) join(a, b);
    return true;
  }

 private:
  static R unit() { return R(1L); }

  static ContextPtr join(const MPoly& a, const MPoly& b) {
    if (!a.ctx_) return b.ctx_;
    if (!b.ctx_) return a.ctx_;
    return common_context(a.ctx_, b.ctx_);
  }

  MPoly with_context(ContextPtr ctx) && {
    ctx_ = std::move(ctx);
    return std::move(*this);
  }

  void sort_terms() {
    const auto& ctx = *ctx_;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& x, const Term& y) { return compare(ctx, x.mono, y.mono) > 0; });
  }

  static MPoly merge(const MPoly& a, const MPoly& b, bool subtract) {
    auto ctx = join(a, b);
    MPoly out(ctx);
    if (!ctx) return out;
    const auto& c = *ctx;
    std::size_t i = 0, j = 0;
    out.terms_.reserve(a.size() + b.size());
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && compare(c, a.terms_[i].mono, b.terms_[j].mono) > 0)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || compare(c, a.terms_[i].mono, b.terms_[j].mono) < 0) {
        const auto& t = b.terms_[j++];
        out.terms_.push_back({t.mono, subtract ? -t.coeff : t.coeff});
      } else {
        R v = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
        if (!v.is_zero()) out.terms_.push_back({a.terms_[i].mono, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  ContextPtr ctx_;
  std::vector<Term> terms_;
};

using Poly = MPoly<GaussRat>;

inline Poly poly_var(const ContextPtr& ctx, const std::string& name) {
  return Poly::variable(ctx, name, GaussRat(1));
}
inline Poly poly_const(const ContextPtr& ctx, GaussRat c) { return Poly::constant(ctx, std::move(c)); }

// Explicitly named ring operations with the context check made visible.
inline Poly poly_add(const Poly& p, const Poly& q) { return p + q; }
inline Poly poly_mul(const Poly& p, const Poly& q) { return p * q; }
inline Poly poly_scale(const Poly& p, const GaussRat& c) { return p.scaled(c); }

inline Poly conj(const Poly& p) {
  std::vector<Poly::Term> raw;
  raw.reserve(p.size());
  for (const auto& t : p.terms()) raw.push_back({t.mono, t.coeff.conj()});
  return Poly::from_terms(p.context(), std::move(raw));
}

inline bool has_real_coefficients(const Poly& p) {
  for (const auto& t : p.terms()) {
    if (!t.coeff.is_real()) return false;
  }
  return true;
}

// Canonical text form: terms from the largest monomial down, every coefficient
// written as "a/b" (or "(a/b+c/d*i)"), joined by " + " / " - ".
inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0/1";
  const auto& ctx = *p.context();
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string coeff;
    if (t.coeff.is_real()) {
      if (!first) {
        s += t.coeff.re().sign() < 0 ? " - " : " + ";
        coeff = t.coeff.re().abs().str();
      } else {
        coeff = t.coeff.re().str();
      }
    } else {
      if (!first) s += " + ";
      coeff = t.coeff.str();
    }
    s += coeff;
    if (!t.mono.is_one()) s += "*" + t.mono.str(ctx);
    first = false;
  }
  return s;
}

}  // namespace rpv
