#pragma once

// Buchberger completion and normal forms over Q(i).
//
// A RewriteSystem is a reduced Groebner basis read as rewrite rules
// "leading monomial -> minus the tail". It is confluent, so normal_form does
// not depend on the order in which rules fire.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "rpv/poly.hpp"

namespace rpv {

inline constexpr std::size_t kDefaultBuchbergerBudget = 10000;

class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(ContextPtr ctx, std::vector<Poly> rules) : ctx_(std::move(ctx)), rules_(std::move(rules)) {}

  const ContextPtr& context() const { return ctx_; }
  // Monic reduced basis elements; rule k rewrites leading(k) to leading(k) - rules[k].
  const std::vector<Poly>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  // Number of S-polynomial reductions spent building this system.
  std::size_t steps() const { return steps_; }
  void set_steps(std::size_t s) { steps_ = s; }

  std::optional<std::size_t> reducer_for(const Monomial& m) const {
    for (std::size_t k = 0; k < rules_.size(); ++k) {
      if (rules_[k].leading().mono.divides(m)) return k;
    }
    return std::nullopt;
  }

  // Monomials not divisible by any rule head.
  bool is_standard(const Monomial& m) const { return !reducer_for(m).has_value(); }

  // Human-readable "lhs -> rhs" lines.
  std::vector<std::string> describe() const {
    std::vector<std::string> out;
    for (const auto& r : rules_) {
      Poly head = Poly::monomial(r.context(), r.leading().mono, GaussRat(1));
      out.push_back(to_string(head) + " -> " + to_string(head - r));
    }
    return out;
  }

  friend bool operator==(const RewriteSystem& a, const RewriteSystem& b) {
    if (a.rules_.size() != b.rules_.size()) return false;
    for (std::size_t i = 0; i < a.rules_.size(); ++i) {
      if (!(a.rules_[i] == b.rules_[i])) return false;
    }
    return true;
  }

 private:
  ContextPtr ctx_;
  std::vector<Poly> rules_;
  std::size_t steps_ = 0;
};

// Reduces every term of p as far as possible. With a Groebner basis this is
// the unique normal form of p modulo the ideal.
inline Poly reduce_fully(const Poly& p, const std::vector<Poly>& basis) {
  if (basis.empty() || p.is_zero()) return p;
  auto ctx = p.context();
  for (const auto& b : basis) ctx = common_context(ctx, b.context());
  Poly rest = p.lifted(ctx);
  std::vector<Poly::Term> done;
  while (!rest.is_zero()) {
    const auto& lead = rest.leading();
    const Poly* reducer = nullptr;
    for (const auto& b : basis) {
      if (b.leading().mono.divides(lead.mono)) {
        reducer = &b;
        break;
      }
    }
    if (reducer == nullptr) {
      done.push_back(lead);
      std::vector<Poly::Term> tail(rest.terms().begin() + 1, rest.terms().end());
      rest = Poly::from_terms(ctx, std::move(tail));
      continue;
    }
    GaussRat factor = lead.coeff / reducer->leading().coeff;
    rest = rest - reducer->mul_term(lead.mono / reducer->leading().mono, factor);
  }
  return Poly::from_terms(ctx, std::move(done));
}

inline Poly normal_form(const Poly& p, const RewriteSystem& rs) { return reduce_fully(p, rs.rules()); }

inline Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.leading().coeff.inverse());
}

inline Poly s_polynomial(const Poly& f, const Poly& g) {
  const auto& lf = f.leading();
  const auto& lg = g.leading();
  Monomial l = Monomial::lcm(lf.mono, lg.mono);
  return f.mul_term(l / lf.mono, lg.coeff) - g.mul_term(l / lg.mono, lf.coeff);
}

namespace detail {

// Interreduces a Groebner basis into the unique reduced one, sorted by
// leading monomial from the largest down.
inline std::vector<Poly> reduce_basis(std::vector<Poly> g) {
  // Drop elements whose head is divisible by another head.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = g[i].leading().mono;
      const auto& mj = g[j].leading().mono;
      if (mj.divides(mi) && (!(mi == mj) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(make_monic(g[i]));
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    const auto& lead = minimal[i].leading();
    Poly tail = minimal[i] - Poly::monomial(minimal[i].context(), lead.mono, lead.coeff);
    reduced.push_back(make_monic(Poly::monomial(minimal[i].context(), lead.mono, lead.coeff) +
                                 reduce_fully(tail, others)));
  }
  if (!reduced.empty()) {
    const auto& ctx = *reduced.front().context();
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
      return compare(ctx, a.leading().mono, b.leading().mono) > 0;
    });
  }
  return reduced;
}

}  // namespace detail

// Reduced Groebner basis of the ideal generated by `generators` in the
// context's block order. Zero generators are ignored. Each S-polynomial
// reduction counts against `budget`.
inline RewriteSystem buchberger(const std::vector<Poly>& generators,
                                std::size_t budget = kDefaultBuchbergerBudget) {
  ContextPtr ctx;
  std::vector<Poly> basis;
  for (const auto& p : generators) {
    if (p.is_zero()) continue;
    ctx = ctx ? common_context(ctx, p.context()) : p.context();
  }
  if (!ctx) {
    for (const auto& p : generators) {
      if (p.context()) ctx = ctx ? common_context(ctx, p.context()) : p.context();
    }
    return RewriteSystem(ctx, {});
  }
  for (const auto& p : generators) {
    if (p.is_zero()) continue;
    Poly r = reduce_fully(p.lifted(ctx), basis);
    if (!r.is_zero()) basis.push_back(make_monic(r));
  }

  // Pair queue ordered by lcm (normal selection strategy).
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  auto add_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      pairs.push_back({i, k, Monomial::lcm(basis[i].leading().mono, basis[k].leading().mono)});
    }
  };
  for (std::size_t k = 1; k < basis.size(); ++k) add_pairs_for(k);

  std::size_t steps = 0;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      auto c = compare(*ctx, a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    Pair pr = *best;
    pairs.erase(best);
    const auto& mi = basis[pr.i].leading().mono;
    const auto& mj = basis[pr.j].leading().mono;
    // Buchberger's first criterion.
    if (mi.coprime(mj)) continue;
    if (++steps > budget) {
      throw BudgetExceeded("Buchberger exceeded " + std::to_string(budget) + " S-polynomial reductions");
    }
    Poly r = reduce_fully(s_polynomial(basis[pr.i], basis[pr.j]), basis);
    if (r.is_zero()) continue;
    basis.push_back(make_monic(r));
    add_pairs_for(basis.size() - 1);
  }
  RewriteSystem rs(ctx, detail::reduce_basis(std::move(basis)));
  rs.set_steps(steps);
  return rs;
}

// Ideal membership modulo a Groebner basis.
inline bool in_ideal(const Poly& p, const RewriteSystem& rs) { return normal_form(p, rs).is_zero(); }

}  // namespace rpv
