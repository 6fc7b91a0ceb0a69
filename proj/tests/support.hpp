#pragma once

// Shared fixtures for the test suite: seeded random inputs, the standard
// towers, and oracles that do not go through the library's own reduction
// code (plain term-by-term evaluation, points on the circle, dense
// elimination over Q(i)).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rpv/picard_vessiot.hpp"

namespace rpv::testing {

class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}

  long between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin() { return between(0, 1) == 1; }

  Rat rat(long bound = 5) {
    long den = between(1, bound);
    return Rat(between(-bound, bound), den);
  }
  Rat nonzero_rat(long bound = 5) {
    Rat r;
    while (r.is_zero()) r = rat(bound);
    return r;
  }
  GaussRat gauss(bool complex, long bound = 5) {
    return complex ? GaussRat(rat(bound), rat(bound)) : GaussRat(rat(bound));
  }

  std::mt19937& engine() { return gen_; }

 private:
  std::mt19937 gen_;
};

// Up to max_terms terms, each of total degree <= max_degree in the listed
// variables.
inline Poly random_poly(Rng& rng, const ContextPtr& ctx, const std::vector<std::size_t>& vars,
                        std::size_t max_terms = 6, unsigned max_degree = 3, bool complex = false) {
  std::vector<Poly::Term> terms;
  std::size_t n = static_cast<std::size_t>(rng.between(0, static_cast<long>(max_terms)));
  for (std::size_t k = 0; k < n; ++k) {
    Monomial m;
    long budget = rng.between(0, max_degree);
    for (long d = 0; d < budget; ++d) {
      m = m * Monomial::var(vars[static_cast<std::size_t>(rng.between(0, static_cast<long>(vars.size()) - 1))]);
    }
    terms.push_back({m, rng.gauss(complex)});
  }
  return Poly::from_terms(ctx, std::move(terms));
}

inline std::vector<std::size_t> all_vars(const ContextPtr& ctx) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < ctx->size(); ++i) v.push_back(i);
  return v;
}

// Evaluates p at a point, term by term.
inline GaussRat eval_at(const Poly& p, const std::vector<GaussRat>& point) {
  GaussRat total(0);
  for (const auto& t : p.terms()) {
    GaussRat term = t.coeff;
    for (std::size_t v = 0; v < t.mono.width(); ++v) {
      if (t.mono[v] != 0) term = term * point.at(v).pow(t.mono[v]);
    }
    total = total + term;
  }
  return total;
}

// (t, s, c) on the unit circle: s = 2m/(1+m^2), c = (1-m^2)/(1+m^2).
inline std::vector<GaussRat> circle_point(const Rat& t, const Rat& m) {
  Rat d = Rat(1) + m * m;
  return {GaussRat(t), GaussRat(Rat(2) * m / d), GaussRat((Rat(1) - m * m) / d)};
}

// Q(t)(s, c) with s' = c, c' = -s, s^2 + c^2 = 1.
inline DiffTower circle_tower(const DiffTower& k = DiffTower::rational_functions()) {
  auto ctx = k.extension_context({"s", "c"});
  Poly s = poly_var(ctx, "s"), c = poly_var(ctx, "c"), one = poly_const(ctx, GaussRat(1));
  return adjoin(k, {{"s", GeneratorKind::Abstract, {c, one}, std::nullopt},
                    {"c", GeneratorKind::Abstract, {-s, one}, s * s + c * c - one}});
}

// Q(t)(e) with e' = e.
inline DiffTower exp_tower() {
  DiffTower k = DiffTower::rational_functions();
  return adjoin_exponential(k, k.one());
}

// Q(t)(g) with g^2 = t, g' = g/(2t).
inline DiffTower radical_tower() {
  DiffTower k = DiffTower::rational_functions();
  auto ctx = k.extension_context({"g"});
  Poly g = poly_var(ctx, "g"), t = poly_var(ctx, "t");
  return adjoin_algebraic(k, "g", g * g - t, {g, t.scaled(GaussRat(2))});
}

// A random element whose denominator is a nonzero polynomial in t alone (so
// it never vanishes in the quotient ring).
inline FieldElement random_element(Rng& rng, const DiffTower& tower, std::size_t max_terms = 4,
                                   unsigned max_degree = 2) {
  const auto& ctx = tower.context();
  bool complex = tower.is_complexified();
  Poly num = random_poly(rng, ctx, all_vars(ctx), max_terms, max_degree, complex);
  Poly den = poly_const(ctx, GaussRat(1));
  if (tower.base_variable() && rng.coin()) {
    Poly t = poly_var(ctx, *tower.base_variable());
    den = t + poly_const(ctx, GaussRat(rng.between(0, 3)));
    if (rng.coin()) den = den * t;
  }
  return tower.element(RatFunc{num, den});
}

// Rank of a matrix by fraction-based Gaussian elimination written out here,
// independent of Matrix::rref.
inline std::size_t dense_rank(std::vector<std::vector<GaussRat>> a) {
  std::size_t rank = 0;
  std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c].is_zero()) continue;
      GaussRat f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] - f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Determinant by permutation expansion over any commutative ring type.
template <class R>
R leibniz_det(const std::vector<std::vector<R>>& m, const R& zero) {
  std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  R total = zero;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    R term = m[0][perm[0]];
    for (std::size_t i = 1; i < n; ++i) term = term * m[i][perm[i]];
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace rpv::testing
