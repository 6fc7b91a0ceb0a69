#pragma once

// Differential field towers.
//
// A tower is Q(t) (or the constants Q when there is no base variable)
// extended by finitely many generators, each with a derivative expressed in
// the tower and optionally an algebraic relation. Elements are fractions in
// the tower variables reduced modulo the relation ideal. The tower is REAL
// (all data and elements have rational coefficients) or COMPLEXIFIED
// (coefficients in Q(i), with the conjugation fixing every generator).

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rpv/linalg.hpp"
#include "rpv/ratfunc.hpp"

namespace rpv {

enum class GeneratorKind { Exponential, Algebraic, Abstract };
enum class ConstantsMode { Real, Complexified };

inline const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Exponential: return "EXPONENTIAL";
    case GeneratorKind::Algebraic: return "ALGEBRAIC";
    case GeneratorKind::Abstract: return "ABSTRACT";
  }
  return "?";
}

inline const char* to_string(ConstantsMode m) {
  return m == ConstantsMode::Real ? "REAL" : "COMPLEXIFIED";
}

struct Generator {
  std::string name;
  GeneratorKind kind;
  RatFunc derivative;
  std::optional<Poly> relation;
};

struct TowerData {
  ContextPtr ctx;
  std::optional<std::string> base_variable;
  std::vector<Generator> gens;
  RewriteSystem rewrite;
  ConstantsMode mode = ConstantsMode::Real;
  std::size_t budget = kDefaultBuchbergerBudget;
  std::shared_ptr<const TowerData> parent;     // tower this one extends
  std::shared_ptr<const TowerData> real_form;  // set on complexified towers
};

using TowerPtr = std::shared_ptr<const TowerData>;

class DiffTower;

class FieldElement {
 public:
  FieldElement() = default;

  const TowerPtr& tower_data() const { return tower_; }
  const RatFunc& value() const { return value_; }
  const Poly& num() const { return value_.num; }
  const Poly& den() const { return value_.den; }

  bool is_zero() const { return value_.num.is_zero(); }
  bool is_one() const { return value_.num == value_.den; }

  FieldElement operator-() const { return FieldElement(tower_, {-value_.num, value_.den}, true); }
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  FieldElement inverse() const;
  FieldElement pow(long e) const;
  FieldElement scaled(const GaussRat& c) const;

  // "num" or "(num)/(den)" in canonical polynomial text.
  std::string str() const {
    if (value_.den.is_constant()) return to_string(value_.num);
    return "(" + to_string(value_.num) + ")/(" + to_string(value_.den) + ")";
  }

  // Lets integer literals become field constants inside generic code
  // (partial derivatives of MPoly<FieldElement>); needs a tower to attach to.
  FieldElement(TowerPtr t, RatFunc v, bool already_normal = false);

 private:
  TowerPtr tower_;
  RatFunc value_;
};

namespace detail {

inline bool has_ancestor(const TowerPtr& t, const TowerPtr& candidate) {
  for (auto p = t; p; p = p->parent) {
    if (p == candidate) return true;
  }
  return false;
}

inline const TowerPtr& strip(const TowerPtr& t) { return t->real_form ? t->real_form : t; }

// Smallest tower containing both operands' towers, when one contains the other.
inline const TowerPtr& join_towers(const TowerPtr& a, const TowerPtr& b) {
  if (a == b) return a;
  const auto& ra = strip(a);
  const auto& rb = strip(b);
  bool complex_a = a->mode == ConstantsMode::Complexified;
  bool complex_b = b->mode == ConstantsMode::Complexified;
  if (has_ancestor(rb, ra) && (complex_b || !complex_a)) return b;
  if (has_ancestor(ra, rb) && (complex_a || !complex_b)) return a;
  throw ContextError("elements belong to unrelated towers");
}

inline RatFunc lift_value(const RatFunc& v, const ContextPtr& ctx) {
  return {v.num.lifted(ctx), v.den.lifted(ctx)};
}

inline bool is_real(const RatFunc& f) { return has_real_coefficients(f.num) && has_real_coefficients(f.den); }

// Rewrites a fraction fixed by conjugation with real coefficients:
// x = N/D = N*conj(D) / (D*conj(D)).
inline RatFunc realified(const RatFunc& f, const RewriteSystem& rs) {
  if (is_real(f)) return f;
  return normalize({f.num * conj(f.den), f.den * conj(f.den)}, rs);
}

}  // namespace detail

inline FieldElement::FieldElement(TowerPtr t, RatFunc v, bool already_normal) : tower_(std::move(t)) {
  v = detail::lift_value(v, tower_->ctx);
  value_ = already_normal ? std::move(v) : normalize(v, tower_->rewrite);
  if (tower_->mode == ConstantsMode::Real && !detail::is_real(value_)) {
    value_ = detail::realified(value_, tower_->rewrite);
    if (!detail::is_real(value_)) throw ModeError("non-real coefficient in a REAL tower: " + str());
  }
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  const auto& t = detail::join_towers(a.tower_, b.tower_);
  return FieldElement(t, rf_add(detail::lift_value(a.value_, t->ctx), detail::lift_value(b.value_, t->ctx), t->rewrite),
                      true);
}
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  const auto& t = detail::join_towers(a.tower_, b.tower_);
  return FieldElement(t, rf_sub(detail::lift_value(a.value_, t->ctx), detail::lift_value(b.value_, t->ctx), t->rewrite),
                      true);
}
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  const auto& t = detail::join_towers(a.tower_, b.tower_);
  return FieldElement(t, rf_mul(detail::lift_value(a.value_, t->ctx), detail::lift_value(b.value_, t->ctx), t->rewrite),
                      true);
}
inline FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  const auto& t = detail::join_towers(a.tower_, b.tower_);
  return FieldElement(t, rf_div(detail::lift_value(a.value_, t->ctx), detail::lift_value(b.value_, t->ctx), t->rewrite),
                      true);
}
inline bool operator==(const FieldElement& a, const FieldElement& b) {
  const auto& t = detail::join_towers(a.tower_, b.tower_);
  return rf_equals(detail::lift_value(a.value_, t->ctx), detail::lift_value(b.value_, t->ctx), t->rewrite);
}
inline FieldElement FieldElement::inverse() const {
  return FieldElement(tower_, rf_inv(value_, tower_->rewrite), true);
}
inline FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result(tower_, {poly_const(tower_->ctx, GaussRat(1)), poly_const(tower_->ctx, GaussRat(1))}, true);
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}
inline FieldElement FieldElement::scaled(const GaussRat& c) const {
  return FieldElement(tower_, {value_.num.scaled(c), value_.den});
}

using FPoly = MPoly<FieldElement>;

class DiffTower {
 public:
  DiffTower() = default;
  explicit DiffTower(TowerPtr d) : d_(std::move(d)) {}

  // Q(t) with t' = 1.
  static DiffTower rational_functions(const std::string& var = "t") {
    auto d = std::make_shared<TowerData>();
    d->ctx = VarContext::make({var}, std::vector<int>{0});
    d->base_variable = var;
    d->rewrite = RewriteSystem(d->ctx, {});
    return DiffTower(std::move(d));
  }

  // The constants Q with the zero derivation.
  static DiffTower constants() {
    auto d = std::make_shared<TowerData>();
    d->ctx = VarContext::make(std::vector<std::string>{}, std::vector<int>{});
    d->rewrite = RewriteSystem(d->ctx, {});
    return DiffTower(std::move(d));
  }

  const TowerPtr& data() const { return d_; }
  const ContextPtr& context() const { return d_->ctx; }
  const RewriteSystem& rewrite() const { return d_->rewrite; }
  ConstantsMode mode() const { return d_->mode; }
  bool is_complexified() const { return d_->mode == ConstantsMode::Complexified; }
  const std::vector<Generator>& generators() const { return d_->gens; }
  const std::optional<std::string>& base_variable() const { return d_->base_variable; }
  std::size_t budget() const { return d_->budget; }
  std::optional<DiffTower> parent() const {
    if (!d_->parent) return std::nullopt;
    return DiffTower(d_->parent);
  }

  // Variable index of generator k.
  std::size_t generator_index(std::size_t k) const { return (d_->base_variable ? 1 : 0) + k; }
  bool is_generator_variable(std::size_t v) const { return v >= (d_->base_variable ? 1u : 0u); }
  std::optional<std::size_t> generator_position(const std::string& name) const {
    for (std::size_t k = 0; k < d_->gens.size(); ++k) {
      if (d_->gens[k].name == name) return k;
    }
    return std::nullopt;
  }

  // Context new generators with these names would live in.
  ContextPtr extension_context(const std::vector<std::string>& names) const {
    return d_->ctx->extended(names, 1);
  }

  FieldElement element(const RatFunc& f) const { return FieldElement(d_, f); }
  FieldElement element(const Poly& num) const {
    return FieldElement(d_, {num, poly_const(d_->ctx, GaussRat(1))});
  }
  FieldElement constant(const GaussRat& c) const { return element(poly_const(d_->ctx, c)); }
  FieldElement zero() const { return constant(GaussRat(0)); }
  FieldElement one() const { return constant(GaussRat(1)); }
  FieldElement var(const std::string& name) const { return element(poly_var(d_->ctx, name)); }
  FieldElement imaginary_unit() const {
    if (!is_complexified()) throw ModeError("i is only available in a COMPLEXIFIED tower");
    return constant(GaussRat::i());
  }

  // Same element viewed in this tower (which must contain x's tower).
  FieldElement lift(const FieldElement& x) const {
    const auto& t = detail::join_towers(x.tower_data(), d_);
    if (t != d_) throw ContextError("element does not belong to a subtower of this tower");
    return FieldElement(d_, x.value());
  }

  // x lies in the subfield generated by the base variable only (no
  // generator occurs in the reduced representative).
  bool in_base_field(const FieldElement& x) const {
    auto base_only = [this](std::size_t v) { return !is_generator_variable(v); };
    return x.num().uses_only(base_only) && x.den().uses_only(base_only);
  }

  // x from an extension of this tower, rewritten here when it only uses
  // variables of this tower.
  std::optional<FieldElement> restrict_from(const FieldElement& x) const {
    std::size_t width = d_->ctx->size();
    auto here = [width](std::size_t v) { return v < width; };
    if (!x.num().uses_only(here) || !x.den().uses_only(here)) return std::nullopt;
    auto move = [this](const Poly& p) { return Poly::from_terms(d_->ctx, p.terms()); };
    return element(RatFunc{move(x.num()), move(x.den())});
  }

  // Whether a generator occurs in x's reduced representative.
  bool involves_generators(const FieldElement& x) const { return !in_base_field(lift(x)); }

  std::vector<std::string> describe() const;

  friend bool operator==(const DiffTower& a, const DiffTower& b) { return a.d_ == b.d_; }

 private:
  TowerPtr d_;
};

// ---------------------------------------------------------------------------
// Derivation

namespace detail {

inline RatFunc derive_poly(const Poly& p, const TowerData& t) {
  const auto& ctx = t.ctx;
  std::size_t first_gen = t.base_variable ? 1 : 0;
  Poly polynomial_part(ctx);
  std::vector<RatFunc> fractional;
  for (std::size_t v = 0; v < ctx->size(); ++v) {
    Poly dp = p.partial(v);
    if (dp.is_zero()) continue;
    if (v < first_gen) {
      polynomial_part += dp;
      continue;
    }
    const auto& d = t.gens[v - first_gen].derivative;
    if (d.den.is_constant()) {
      polynomial_part += (dp * d.num).scaled(d.den.leading().coeff.inverse());
    } else {
      fractional.push_back({dp * d.num, d.den});
    }
  }
  RatFunc total{polynomial_part, poly_const(ctx, GaussRat(1))};
  for (const auto& f : fractional) total = rf_add(total, f, t.rewrite);
  return normalize(total, t.rewrite);
}

}  // namespace detail

inline FieldElement derive(const FieldElement& x) {
  const auto& t = *x.tower_data();
  RatFunc dn = detail::derive_poly(x.num(), t);
  if (x.den().is_constant()) {
    return FieldElement(x.tower_data(), {dn.num, dn.den * x.den()});
  }
  RatFunc dd = detail::derive_poly(x.den(), t);
  // (n/d)' = (n' d - n d') / d^2
  RatFunc top = rf_sub(rf_mul(dn, {x.den(), poly_const(t.ctx, GaussRat(1))}, t.rewrite),
                       rf_mul({x.num(), poly_const(t.ctx, GaussRat(1))}, dd, t.rewrite), t.rewrite);
  return FieldElement(x.tower_data(), {top.num, top.den * x.den() * x.den()});
}

inline bool is_constant(const FieldElement& x) { return derive(x).is_zero(); }

inline FieldElement derive_n(FieldElement x, unsigned k) {
  for (unsigned i = 0; i < k; ++i) x = derive(x);
  return x;
}

// ---------------------------------------------------------------------------
// Extensions

struct NewGenerator {
  std::string name;
  GeneratorKind kind;
  RatFunc derivative;
  std::optional<Poly> relation;
};

// Adjoins a batch of generators at once (their derivatives may refer to each
// other). All relations of the tower are completed by Buchberger, and every
// relation must be compatible with the derivation.
inline DiffTower adjoin(const DiffTower& base, const std::vector<NewGenerator>& batch) {
  if (batch.empty()) throw EmptyInput("adjoin needs at least one generator");
  std::vector<std::string> names;
  for (const auto& g : batch) names.push_back(g.name);
  auto ctx = base.extension_context(names);
  auto d = std::make_shared<TowerData>(*base.data());
  d->ctx = ctx;
  d->parent = base.data();
  d->real_form = nullptr;
  if (base.is_complexified()) d->real_form = nullptr;  // complexified parents stay complexified
  std::vector<Poly> relations;
  for (auto& g : d->gens) {
    g.derivative = detail::lift_value(g.derivative, ctx);
    if (g.relation) {
      g.relation = g.relation->lifted(ctx);
      relations.push_back(*g.relation);
    }
  }
  for (const auto& g : batch) {
    if (!detail::is_real(g.derivative) || (g.relation && !has_real_coefficients(*g.relation))) {
      throw ModeError("generator '" + g.name + "' must have real derivative and relation data");
    }
    Generator gen{g.name, g.kind, detail::lift_value(g.derivative, ctx), std::nullopt};
    if (g.relation) {
      gen.relation = g.relation->lifted(ctx);
      relations.push_back(*gen.relation);
    }
    d->gens.push_back(std::move(gen));
  }
  d->rewrite = buchberger(relations, d->budget);
  if (!relations.empty() && d->rewrite.rules().size() == 1 && d->rewrite.rules()[0].is_constant()) {
    throw IncompatibleDerivation("relations generate the unit ideal");
  }
  for (auto& g : d->gens) g.derivative = normalize(g.derivative, d->rewrite);
  for (const auto& g : d->gens) {
    if (!g.relation) continue;
    RatFunc dr = detail::derive_poly(*g.relation, *d);
    if (!normal_form(dr.num, d->rewrite).is_zero()) {
      throw IncompatibleDerivation("derivative of relation " + to_string(*g.relation) +
                                   " does not reduce to zero");
    }
  }
  return DiffTower(std::move(d));
}

// New generator e with e' = f e.
inline DiffTower adjoin_exponential(const DiffTower& tower, const FieldElement& f, const std::string& name = "e") {
  auto ctx = tower.extension_context({name});
  FieldElement g = tower.lift(f);
  RatFunc der{g.num().lifted(ctx) * poly_var(ctx, name), g.den().lifted(ctx)};
  return adjoin(tower, {{name, GeneratorKind::Exponential, der, std::nullopt}});
}

// New generator with algebraic relation `minpoly` and the given derivative,
// both written in tower.extension_context({name}).
inline DiffTower adjoin_algebraic(const DiffTower& tower, const std::string& name, const Poly& minpoly,
                                  const RatFunc& derivative) {
  return adjoin(tower, {{name, GeneratorKind::Algebraic, derivative, minpoly}});
}

inline DiffTower set_budget(const DiffTower& tower, std::size_t budget) {
  auto d = std::make_shared<TowerData>(*tower.data());
  d->budget = budget;
  return DiffTower(std::move(d));
}

// ---------------------------------------------------------------------------
// Complexification

inline DiffTower complexify(const DiffTower& tower) {
  if (tower.is_complexified()) throw ModeError("tower is already COMPLEXIFIED");
  auto d = std::make_shared<TowerData>(*tower.data());
  d->mode = ConstantsMode::Complexified;
  d->real_form = tower.data();
  d->parent = tower.data()->parent;
  return DiffTower(std::move(d));
}

inline DiffTower real_part(const DiffTower& tower) {
  if (!tower.is_complexified()) throw ModeError("real_part needs a COMPLEXIFIED tower");
  return DiffTower(tower.data()->real_form);
}

// Conjugation c with c(i) = -i fixing every generator. On a REAL tower this
// is the identity.
inline FieldElement conj(const FieldElement& x) {
  return FieldElement(x.tower_data(), {conj(x.num()), conj(x.den())});
}

// Element of the real form of x's tower, when x is fixed by conjugation.
inline FieldElement to_real(const FieldElement& x) {
  const auto& t = x.tower_data();
  if (t->mode == ConstantsMode::Real) return x;
  if (!(conj(x) == x)) throw ModeError("element is not fixed by conjugation: " + x.str());
  return FieldElement(t->real_form, detail::realified(x.value(), t->rewrite));
}

inline std::vector<std::string> DiffTower::describe() const {
  std::vector<std::string> out;
  out.push_back(std::string("mode ") + to_string(mode()));
  if (d_->base_variable) out.push_back("base " + *d_->base_variable + "' = 1/1");
  for (const auto& g : d_->gens) {
    FieldElement der(d_, g.derivative, true);
    std::string line = std::string(to_string(g.kind)) + " " + g.name + "' = " + der.str();
    if (g.relation) line += "; relation " + to_string(*g.relation) + " = 0";
    out.push_back(line);
  }
  for (const auto& r : d_->rewrite.describe()) out.push_back("rule " + r);
  return out;
}

// ---------------------------------------------------------------------------
// Coordinates: elements over a common denominator, expanded on the standard
// monomials of the tower (a Q(i)-basis of the reduced representatives).

struct CommonDenominator {
  Poly denominator;
  std::vector<Poly> numerators;  // reduced; element k = numerators[k] / denominator
};

inline CommonDenominator over_common_denominator(const std::vector<FieldElement>& xs, const TowerData& t) {
  std::vector<Poly> dens;
  for (const auto& x : xs) {
    Poly d = x.den().lifted(t.ctx);
    if (std::find(dens.begin(), dens.end(), d) == dens.end()) dens.push_back(d);
  }
  CommonDenominator out;
  out.denominator = poly_const(t.ctx, GaussRat(1));
  for (const auto& d : dens) out.denominator = out.denominator * d;
  for (const auto& x : xs) {
    Poly n = x.num().lifted(t.ctx);
    Poly d = x.den().lifted(t.ctx);
    for (const auto& other : dens) {
      if (!(other == d)) n = n * other;
    }
    out.numerators.push_back(normal_form(n, t.rewrite));
  }
  return out;
}

// Columns = items, rows = distinct monomials (sorted structurally).
inline Matrix coordinate_matrix(const std::vector<Poly>& polys) {
  std::map<Monomial, std::size_t> rows;
  for (const auto& p : polys) {
    for (const auto& term : p.terms()) rows.emplace(term.mono, 0);
  }
  std::size_t r = 0;
  for (auto& [m, idx] : rows) idx = r++;
  Matrix a(rows.size(), polys.size());
  for (std::size_t c = 0; c < polys.size(); ++c) {
    for (const auto& term : polys[c].terms()) a(rows[term.mono], c) = term.coeff;
  }
  return a;
}

// Linear combination sum coeffs[k] * xs[k] inside `tower`.
inline FieldElement combine(const DiffTower& tower, const std::vector<FieldElement>& xs,
                            const std::vector<GaussRat>& coeffs) {
  FieldElement total = tower.zero();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!coeffs[k].is_zero()) total = total + xs[k].scaled(coeffs[k]);
  }
  return total;
}

// Monomials in the generator variables of total degree <= bound that are
// standard for the rewrite system, from low degree up.
inline std::vector<Monomial> standard_generator_monomials(const DiffTower& tower, unsigned bound) {
  std::vector<std::size_t> vars;
  for (std::size_t k = 0; k < tower.generators().size(); ++k) vars.push_back(tower.generator_index(k));
  std::vector<Monomial> out;
  std::function<void(std::size_t, unsigned, std::vector<std::uint32_t>&)> rec =
      [&](std::size_t pos, unsigned left, std::vector<std::uint32_t>& exps) {
        if (pos == vars.size()) {
          Monomial m(exps);
          if (tower.rewrite().is_standard(m)) out.push_back(m);
          return;
        }
        for (unsigned e = 0; e <= left; ++e) {
          exps[vars[pos]] = e;
          rec(pos + 1, left - e, exps);
        }
        exps[vars[pos]] = 0;
      };
  std::vector<std::uint32_t> exps(tower.context()->size(), 0);
  rec(0, bound, exps);
  std::stable_sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return b < a;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Bounded search for new constants

inline constexpr unsigned kDefaultScanDegree = 4;
inline constexpr unsigned kDefaultScanCoeffDegree = 3;

struct ConstantScan {
  unsigned degree_bound = 0;
  unsigned coeff_degree_bound = 0;
  std::size_t candidates = 0;
  std::size_t equations = 0;
  std::vector<FieldElement> constants;  // basis of new constants, trivial ones excluded
};

// Searches x = sum c_{k,m} t^k m over standard generator monomials m with
// deg m <= degree_bound and k <= coeff_degree_bound (x not a constant of Q)
// such that x' = 0, by an exact kernel computation.
inline ConstantScan constant_scan(const DiffTower& tower, unsigned degree_bound, unsigned coeff_degree_bound) {
  ConstantScan scan;
  scan.degree_bound = degree_bound;
  scan.coeff_degree_bound = coeff_degree_bound;
  const auto& ctx = tower.context();
  std::vector<FieldElement> candidates;
  unsigned t_max = tower.base_variable() ? coeff_degree_bound : 0;
  for (const auto& m : standard_generator_monomials(tower, degree_bound)) {
    for (unsigned k = 0; k <= t_max; ++k) {
      if (m.is_one() && k == 0) continue;
      Monomial full = k == 0 ? m : m * Monomial::var(0, k);
      candidates.push_back(tower.element(Poly::monomial(ctx, full, GaussRat(1))));
    }
  }
  scan.candidates = candidates.size();
  if (candidates.empty()) return scan;
  std::vector<FieldElement> derivs;
  derivs.reserve(candidates.size());
  for (const auto& c : candidates) derivs.push_back(derive(c));
  auto common = over_common_denominator(derivs, *tower.data());
  Matrix a = coordinate_matrix(common.numerators);
  scan.equations = a.rows();
  for (const auto& v : a.kernel()) scan.constants.push_back(combine(tower, candidates, v));
  return scan;
}

// Whether x is a Q(i)-linear combination of the given elements.
inline std::optional<std::vector<GaussRat>> linear_coordinates(const FieldElement& x,
                                                               const std::vector<FieldElement>& basis) {
  if (basis.empty()) {
    if (x.is_zero()) return std::vector<GaussRat>{};
    return std::nullopt;
  }
  auto t = x.tower_data();
  for (const auto& b : basis) t = detail::join_towers(t, b.tower_data());
  std::vector<FieldElement> all(basis);
  all.push_back(x);
  auto common = over_common_denominator(all, *t);
  std::vector<Poly> cols(common.numerators.begin(), common.numerators.end() - 1);
  Matrix a = coordinate_matrix(common.numerators);
  Matrix lhs(a.rows(), basis.size());
  std::vector<GaussRat> rhs(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) lhs(r, c) = a(r, c);
    rhs[r] = a(r, basis.size());
  }
  return lhs.solve(rhs);
}

}  // namespace rpv
