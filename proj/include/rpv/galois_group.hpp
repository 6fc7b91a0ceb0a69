#pragma once

// The differential Galois group of a PV extension as a matrix group cut out
// by a polynomial set S, with the action on the extension by substitution.
//
// Convention: a morphism sigma with matrix C acts by sigma(eta_j) =
// sum_i C_ij eta_i, so sigma(eta) = eta * C and composition is the matrix
// product.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "rpv/ideals.hpp"
#include "rpv/picard_vessiot.hpp"

namespace rpv {

// Differential polynomials over L in Z_j^(k), k = 0..order.
struct RelationIdeal {
  ContextPtr zctx;
  std::size_t n = 0;
  std::size_t max_order = 0;
  std::vector<FPoly> generators;
  std::vector<std::string> labels;

  std::size_t var_index(std::size_t j, std::size_t k) const { return k * n + j; }
};

inline std::string z_name(std::size_t j, std::size_t k) {
  return "Z" + std::to_string(j + 1) + (k == 0 ? "" : "_" + std::to_string(k));
}

inline ContextPtr z_context(std::size_t n, std::size_t max_order) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k <= max_order; ++k) {
    for (std::size_t j = 0; j < n; ++j) names.push_back(z_name(j, k));
  }
  return VarContext::make(names, 0);
}

// Text form of a differential polynomial: "(coeff)*Z1_1*Z2 + ...".
inline std::string to_string(const FPoly& p) {
  if (p.is_zero()) return "0/1";
  std::string s;
  for (const auto& t : p.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + t.coeff.str() + ")";
    if (!t.mono.is_one()) s += "*" + t.mono.str(*p.context());
  }
  return s;
}

namespace detail {

inline FPoly fpoly_var(const ContextPtr& zctx, std::size_t v, const FieldElement& one) {
  return FPoly::monomial(zctx, Monomial::var(v), one);
}

// Rewrites polynomials in the extension's variables as polynomials in the
// solution variables Z_j: base variables (t and base generators) stay in the
// coefficients, new generator k becomes prod_j Z_j^gen_exponents[k][j].
// Each part is multiplied by prod_j Z_j^shift[j] and the parts are added;
// negative total exponents are cleared by one common monomial factor.
struct ZPart {
  Poly p;
  std::vector<long> shift;
  GaussRat sign;
  std::optional<FieldElement> factor;  // extra coefficient, possibly outside the base
};

inline FPoly substitute_generators(const std::vector<ZPart>& parts, const PVExtension& pv, const ContextPtr& zctx) {
  const DiffTower& l = pv.extension;
  std::size_t first_new = l.generator_index(pv.first_new_generator);
  std::size_t n = pv.order();
  struct Raw {
    std::vector<long> z;
    FieldElement coeff;
  };
  std::vector<Raw> raw;
  std::vector<long> low(n, 0);
  for (const auto& part : parts) {
    for (const auto& term : part.p.terms()) {
      std::vector<std::uint32_t> base_exps(term.mono.width(), 0);
      std::vector<long> z = part.shift;
      z.resize(n, 0);
      for (std::size_t v = 0; v < term.mono.width(); ++v) {
        if (term.mono[v] == 0) continue;
        if (v < first_new) {
          base_exps[v] = term.mono[v];
          continue;
        }
        std::size_t k = v - first_new;
        if (k >= pv.gen_exponents.size()) throw Unsupported("generator without an expression in the solutions");
        for (std::size_t j = 0; j < n; ++j) z[j] += static_cast<long>(term.mono[v]) * pv.gen_exponents[k][j];
      }
      FieldElement c =
          pv.base.element(Poly::monomial(pv.base.context(), Monomial(base_exps), term.coeff * part.sign));
      if (part.factor) c = c * *part.factor;
      for (std::size_t j = 0; j < n; ++j) low[j] = std::min(low[j], z[j]);
      raw.push_back({z, c});
    }
  }
  std::vector<FPoly::Term> terms;
  for (auto& r : raw) {
    std::vector<std::uint32_t> e(zctx->size(), 0);
    for (std::size_t j = 0; j < n; ++j) e[j] = static_cast<std::uint32_t>(r.z[j] - low[j]);
    terms.push_back({Monomial(e), r.coeff});
  }
  return FPoly::from_terms(zctx, std::move(terms));
}

inline FPoly substitute_generators(const Poly& p, const PVExtension& pv, const ContextPtr& zctx) {
  return substitute_generators({{p, {}, GaussRat(1), std::nullopt}}, pv, zctx);
}

}  // namespace detail

// Value of a differential polynomial at Z_j^(k) = images[k][j].
inline FieldElement evaluate_at_solutions(const FPoly& p, const RelationIdeal& gamma,
                                          const std::vector<std::vector<FieldElement>>& images) {
  const FieldElement& one = images[0][0].tower_data() ? DiffTower(images[0][0].tower_data()).one() : images[0][0];
  return p.evaluate(
      one, [](const FieldElement& c) { return c; },
      [&](std::size_t v) { return images[v / gamma.n][v % gamma.n]; });
}

inline std::vector<std::vector<FieldElement>> prolonged(const std::vector<FieldElement>& eta, std::size_t max_order) {
  std::vector<std::vector<FieldElement>> out{eta};
  for (std::size_t k = 1; k <= max_order; ++k) {
    std::vector<FieldElement> row;
    for (const auto& y : out.back()) row.push_back(derive(y));
    out.push_back(row);
  }
  return out;
}

// Gamma: first-order system relations, the ODE itself, the tower relations of
// the new generators rewritten in Z, and the expressions of the solutions in
// the generators. Every generator is checked to vanish at eta.
inline RelationIdeal relations_ideal(const PVExtension& pv) {
  if (pv.system.empty()) throw Unsupported("extension has no first-order system data");
  RelationIdeal gamma;
  gamma.n = pv.order();
  gamma.max_order = pv.ode.order();
  gamma.zctx = z_context(gamma.n, gamma.max_order);
  const auto& zctx = gamma.zctx;
  FieldElement one = pv.base.one();
  auto zv = [&](std::size_t j, std::size_t k) { return detail::fpoly_var(zctx, gamma.var_index(j, k), one); };

  for (std::size_t j = 0; j < gamma.n; ++j) {
    FPoly r = zv(j, 1);
    for (std::size_t i = 0; i < gamma.n; ++i) {
      if (!pv.system[i][j].is_zero()) r = r - zv(i, 0).scaled(pv.system[i][j]);
    }
    gamma.generators.push_back(r);
    gamma.labels.push_back("system");
  }
  if (gamma.max_order > 1) {
    for (std::size_t j = 0; j < gamma.n; ++j) {
      FPoly r = zv(j, gamma.max_order);
      for (std::size_t k = 0; k < gamma.max_order; ++k) {
        if (!pv.ode.coeffs[k].is_zero()) r = r + zv(j, k).scaled(pv.ode.coeffs[k]);
      }
      gamma.generators.push_back(r);
      gamma.labels.push_back("ode");
    }
  }
  const auto& gens = pv.extension.generators();
  for (std::size_t k = pv.first_new_generator; k < gens.size(); ++k) {
    if (!gens[k].relation) continue;
    gamma.generators.push_back(detail::substitute_generators(*gens[k].relation, pv, zctx));
    gamma.labels.push_back("relation");
  }
  for (std::size_t j = 0; j < gamma.n; ++j) {
    // den(eta_j) * Z_j - num(eta_j), both sides rewritten in Z.
    const auto& y = pv.eta[j];
    std::vector<long> zj(gamma.n, 0);
    zj[j] = 1;
    FPoly r = detail::substitute_generators({{y.den(), zj, GaussRat(1), std::nullopt}, {y.num(), {}, GaussRat(-1), std::nullopt}}, pv, zctx);
    if (!r.is_zero()) {
      gamma.generators.push_back(r);
      gamma.labels.push_back("solution");
    }
  }
  auto images = prolonged(pv.eta, gamma.max_order);
  for (std::size_t k = 0; k < gamma.generators.size(); ++k) {
    if (!evaluate_at_solutions(gamma.generators[k], gamma, images).is_zero()) {
      throw BadIdeal("generator " + to_string(gamma.generators[k]) + " does not vanish at the solutions");
    }
  }
  return gamma;
}

// ---------------------------------------------------------------------------

struct DefiningSet {
  ContextPtr xctx;
  std::vector<Poly> polys;

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& p : polys) out.push_back(to_string(p));
    return out;
  }
};

namespace detail {

// Removes zeros and scalar multiples, makes every polynomial monic, and sorts
// by canonical text.
inline std::vector<Poly> tidy_polys(const std::vector<Poly>& in) {
  std::vector<std::pair<std::string, Poly>> keyed;
  std::set<std::string> seen;
  for (const auto& p : in) {
    if (p.is_zero()) continue;
    Poly m = make_monic(p);
    std::string key = to_string(m);
    if (seen.insert(key).second) keyed.emplace_back(key, m);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Poly> out;
  for (auto& [k, p] : keyed) out.push_back(p);
  return out;
}

}  // namespace detail

// S: substitute Z_j^(k) -> sum_i X_ij eta_i^(k) into each generator, bring
// the X-coefficients over a common denominator, and collect the coefficient
// of every tower monomial (real and imaginary parts separately).
inline DefiningSet defining_equations(const PVExtension& pv, const RelationIdeal& gamma) {
  DefiningSet s;
  s.xctx = matrix_context(gamma.n);
  DiffTower g = complexify(pv.extension);
  using XPoly = MPoly<FieldElement>;
  auto images_eta = prolonged(pv.eta, gamma.max_order);
  std::vector<XPoly> psi(gamma.zctx->size());
  for (std::size_t k = 0; k <= gamma.max_order; ++k) {
    for (std::size_t j = 0; j < gamma.n; ++j) {
      std::vector<XPoly::Term> terms;
      for (std::size_t i = 0; i < gamma.n; ++i) {
        auto idx = s.xctx->index_of("X" + std::to_string(i + 1) + std::to_string(j + 1));
        FieldElement c = g.lift(images_eta[k][i]);
        if (!c.is_zero()) terms.push_back({Monomial::var(*idx), c});
      }
      psi[gamma.var_index(j, k)] = XPoly::from_terms(s.xctx, std::move(terms));
    }
  }
  XPoly x_one = XPoly::constant(s.xctx, g.one());
  std::vector<Poly> collected;
  for (const auto& r : gamma.generators) {
    XPoly img = r.evaluate(
        x_one, [&](const FieldElement& c) { return XPoly::constant(s.xctx, g.lift(c)); },
        [&](std::size_t v) { return psi[v]; });
    if (img.is_zero()) continue;
    std::vector<FieldElement> coeffs;
    for (const auto& t : img.terms()) coeffs.push_back(t.coeff);
    auto common = over_common_denominator(coeffs, *g.data());
    std::map<Monomial, std::vector<Poly::Term>> by_tower_monomial;
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      for (const auto& tt : common.numerators[m].terms()) {
        by_tower_monomial[tt.mono].push_back({img.terms()[m].mono, tt.coeff});
      }
    }
    for (auto& [w, terms] : by_tower_monomial) {
      std::vector<Poly::Term> re, im;
      for (const auto& t : terms) {
        if (!t.coeff.re().is_zero()) re.push_back({t.mono, GaussRat(t.coeff.re())});
        if (!t.coeff.im().is_zero()) im.push_back({t.mono, GaussRat(t.coeff.im())});
      }
      collected.push_back(Poly::from_terms(s.xctx, std::move(re)));
      collected.push_back(Poly::from_terms(s.xctx, std::move(im)));
    }
  }
  s.polys = detail::tidy_polys(collected);
  return s;
}

inline bool is_member(const Matrix& m, const DefiningSet& s) {
  if (!m.is_square() || m.rows() != matrix_size(s.xctx)) return false;
  if (m.determinant().is_zero()) return false;
  for (const auto& p : s.polys) {
    if (!evaluate_at(p, m).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

class GaloisGroup {
 public:
  explicit GaloisGroup(PVExtension pv)
      : pv_(std::move(pv)), gamma_(relations_ideal(pv_)), s_(defining_equations(pv_, gamma_)),
        g_(complexify(pv_.extension)) {}

  const PVExtension& pv() const { return pv_; }
  const RelationIdeal& gamma() const { return gamma_; }
  const DefiningSet& defining() const { return s_; }
  const DiffTower& complexified() const { return g_; }
  std::size_t n() const { return gamma_.n; }

  bool is_member(const Matrix& m) const { return rpv::is_member(m, s_); }

  // Images sigma(eta_j) = sum_i C_ij eta_i in G.
  std::vector<FieldElement> solution_images(const Matrix& c) const {
    std::vector<FieldElement> out;
    for (std::size_t j = 0; j < n(); ++j) {
      FieldElement v = g_.zero();
      for (std::size_t i = 0; i < n(); ++i) {
        if (!c(i, j).is_zero()) v = v + g_.lift(pv_.eta[i]).scaled(c(i, j));
      }
      out.push_back(v);
    }
    return out;
  }

  // Substitution x -> sigma(x) without the membership check.
  FieldElement substitute(const Matrix& c, const FieldElement& x) const {
    FieldElement y = g_.lift(x);
    auto images = solution_images(c);
    const DiffTower& l = pv_.extension;
    std::size_t first_new = l.generator_index(pv_.first_new_generator);
    std::vector<FieldElement> gen_images;
    for (const auto& e : pv_.gen_exponents) {
      FieldElement v = g_.one();
      for (std::size_t j = 0; j < n(); ++j) {
        if (e[j] != 0) v = v * images[j].pow(e[j]);
      }
      gen_images.push_back(v);
    }
    auto image_of = [&](std::size_t var) {
      if (var < first_new) return g_.var(g_.context()->name(var));
      std::size_t k = var - first_new;
      if (k >= gen_images.size()) throw Unsupported("generator without an expression in the solutions");
      return gen_images[k];
    };
    auto eval = [&](const Poly& p) {
      return p.evaluate(
          g_.one(), [&](const GaussRat& c) { return g_.constant(c); }, image_of);
    };
    return eval(y.num()) / eval(y.den());
  }

  FieldElement apply(const Matrix& c, const FieldElement& x) const {
    if (!is_member(c)) throw NotInGroup("matrix " + c.str() + " is not in the group");
    return substitute(c, x);
  }

  Matrix compose(const Matrix& a, const Matrix& b) const {
    if (!is_member(a) || !is_member(b)) throw NotInGroup("compose needs group members");
    return a * b;
  }

  // Every Gamma generator vanishes after Z -> sigma(eta).
  bool annihilates_gamma(const Matrix& c) const {
    auto images = prolonged(solution_images(c), gamma_.max_order);
    for (const auto& r : gamma_.generators) {
      if (!evaluate_at_solutions(r, gamma_, images).is_zero()) return false;
    }
    return true;
  }

  // Members from a fixed pool of small rational and Gaussian matrices.
  std::vector<Matrix> sample_members() const { return sample_members_of(s_); }

  std::vector<Matrix> sample_members_of(const DefiningSet& s) const {
    std::vector<Matrix> out;
    for (const auto& m : candidate_pool(n())) {
      if (rpv::is_member(m, s) && std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    return out;
  }

  // A sampled member moving a, if any.
  Matrix moved_element_witness(const FieldElement& a) const {
    for (const auto& m : sample_members()) {
      if (m.is_identity()) continue;
      if (!(substitute(m, a) == g_.lift(a))) return m;
    }
    throw WitnessNotFound("no sampled group element moves " + a.str());
  }

  static std::vector<Matrix> candidate_pool(std::size_t n) {
    std::vector<Matrix> pool;
    GaussRat i = GaussRat::i();
    if (n == 1) {
      for (GaussRat v : {GaussRat(1), GaussRat(-1), GaussRat(2), GaussRat(Rat(1, 3)), i, -i, GaussRat(3),
                         GaussRat(Rat(1, 2)), GaussRat(Rat(-2)), GaussRat(Rat(3, 5), Rat(4, 5)), GaussRat(1, 1)}) {
        pool.push_back(Matrix{{v}});
      }
      return pool;
    }
    if (n == 2) {
      auto rot = [](Rat c, Rat s) { return Matrix{{GaussRat(c), GaussRat(-s)}, {GaussRat(s), GaussRat(c)}}; };
      pool.push_back(Matrix::identity(2));
      pool.push_back(Matrix::identity(2).scaled(GaussRat(-1)));
      pool.push_back(rot(Rat(3, 5), Rat(4, 5)));
      pool.push_back(rot(Rat(4, 5), Rat(3, 5)));
      pool.push_back(rot(Rat(5, 13), Rat(12, 13)));
      pool.push_back(rot(Rat(0), Rat(1)));
      pool.push_back(rot(Rat(-3, 5), Rat(4, 5)));
      pool.push_back(Matrix{{GaussRat(5, 0), GaussRat(Rat(0), Rat(-3))}, {GaussRat(Rat(0), Rat(3)), GaussRat(5)}}
                         .scaled(GaussRat(Rat(1, 4))));
      pool.push_back(Matrix::identity(2).scaled(GaussRat(2)));
      pool.push_back(Matrix::identity(2).scaled(i));
      pool.push_back(Matrix{{GaussRat(2), GaussRat(0)}, {GaussRat(0), GaussRat(1)}});
      pool.push_back(Matrix{{GaussRat(1), GaussRat(0)}, {GaussRat(0), GaussRat(2)}});
      pool.push_back(Matrix{{GaussRat(2), GaussRat(0)}, {GaussRat(0), GaussRat(4)}});
      pool.push_back(Matrix{{GaussRat(Rat(1, 2)), GaussRat(0)}, {GaussRat(0), GaussRat(2)}});
      pool.push_back(Matrix{{GaussRat(-1), GaussRat(0)}, {GaussRat(0), GaussRat(1)}});
      pool.push_back(Matrix{{GaussRat(1), GaussRat(0)}, {GaussRat(0), GaussRat(-1)}});
      pool.push_back(Matrix{{GaussRat(Rat(1, 4)), GaussRat(0)}, {GaussRat(0), GaussRat(8)}});
      pool.push_back(Matrix{{GaussRat(1), GaussRat(1)}, {GaussRat(0), GaussRat(1)}});
      pool.push_back(Matrix{{GaussRat(2), GaussRat(3)}, {GaussRat(0), GaussRat(2)}});
      pool.push_back(Matrix{{GaussRat(2), GaussRat(-1)}, {GaussRat(1), GaussRat(2)}});
      pool.push_back(Matrix{{GaussRat(1), GaussRat(-1)}, {GaussRat(1), GaussRat(1)}});
      pool.push_back(Matrix{{GaussRat(0), GaussRat(1)}, {GaussRat(1), GaussRat(0)}});
      return pool;
    }
    pool.push_back(Matrix::identity(n));
    pool.push_back(Matrix::identity(n).scaled(GaussRat(-1)));
    pool.push_back(Matrix::identity(n).scaled(GaussRat(2)));
    return pool;
  }

 private:
  PVExtension pv_;
  RelationIdeal gamma_;
  DefiningSet s_;
  DiffTower g_;
};

}  // namespace rpv
