#pragma once

// Fixed fields of subgroups, groups of intermediate fields, and the checks of
// the Galois correspondence on small lattices.

#include <optional>
#include <string>
#include <vector>

#include "rpv/galois_group.hpp"
#include "rpv/report.hpp"

namespace rpv {

enum class SubgroupKind { Full, Trivial, MuN, Diagonal, SO2, FiniteList, Defined };

struct Subgroup {
  SubgroupKind kind = SubgroupKind::Defined;
  long n = 0;                    // for MU_N
  std::vector<Matrix> elements;  // for FINITE_LIST
  std::vector<Poly> defining;    // ideal generators (parent S included)

  std::string descriptor() const {
    switch (kind) {
      case SubgroupKind::Full: return "FULL";
      case SubgroupKind::Trivial: return "TRIVIAL";
      case SubgroupKind::MuN: return "MU_N(" + std::to_string(n) + ")";
      case SubgroupKind::Diagonal: return "DIAGONAL";
      case SubgroupKind::SO2: return "SO2";
      case SubgroupKind::FiniteList: {
        std::vector<std::string> items;
        for (const auto& m : elements) items.push_back(m.str());
        return "FINITE_LIST[" + join(items) + "]";
      }
      case SubgroupKind::Defined: return "DEFINED";
    }
    return "?";
  }
};

struct IntermediateField {
  std::vector<FieldElement> generators;  // over K; empty means K itself

  std::string str() const {
    std::vector<std::string> items;
    for (const auto& g : generators) items.push_back(g.str());
    return "K(" + join(items) + ")";
  }
};

inline constexpr unsigned kDefaultInvariantWindow = 6;

// ---------------------------------------------------------------------------
// Subgroup construction

inline Subgroup make_subgroup(const GaloisGroup& g, SubgroupKind kind, long n = 0, std::vector<Matrix> elements = {}) {
  const auto& xctx = g.defining().xctx;
  std::size_t dim = g.n();
  Subgroup h;
  h.kind = kind;
  h.n = n;
  h.defining = g.defining().polys;
  auto x = [&](std::size_t i, std::size_t j) { return matrix_entry(xctx, i, j); };
  auto add_scalar_shape = [&]() {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        if (i != j) h.defining.push_back(x(i, j));
      }
      if (i > 0) h.defining.push_back(x(i, i) - x(0, 0));
    }
  };
  switch (kind) {
    case SubgroupKind::Full: break;
    case SubgroupKind::Trivial: h.defining = identity_ideal(xctx); break;
    case SubgroupKind::MuN:
      if (n <= 0) throw Unsupported("MU_N needs n > 0");
      add_scalar_shape();
      h.defining.push_back(x(0, 0).pow(static_cast<unsigned>(n)) - poly_const(xctx, GaussRat(1)));
      break;
    case SubgroupKind::Diagonal:
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          if (i != j) h.defining.push_back(x(i, j));
        }
      }
      break;
    case SubgroupKind::SO2:
      if (dim != 2) throw Unsupported("SO2 descriptor needs 2x2 matrices");
      h.defining.push_back(x(0, 0) - x(1, 1));
      h.defining.push_back(x(0, 1) + x(1, 0));
      h.defining.push_back(x(0, 0) * x(0, 0) + x(1, 0) * x(1, 0) - poly_const(xctx, GaussRat(1)));
      break;
    case SubgroupKind::FiniteList:
      if (elements.empty()) throw Unsupported("FINITE_LIST needs elements");
      for (const auto& m : elements) {
        if (!g.is_member(m)) throw NotInGroup("listed element " + m.str() + " is not in the group");
      }
      h.elements = elements;
      h.defining = points_ideal(elements, xctx);
      break;
    case SubgroupKind::Defined: throw Unsupported("DEFINED subgroups come from group_over");
  }
  h.defining = detail::tidy_polys(h.defining);
  return h;
}

inline bool subgroup_contained(const GaloisGroup& g, const Subgroup& a, const Subgroup& b) {
  return zero_set_contained(a.defining, b.defining, g.defining().xctx);
}

inline bool same_subgroup(const GaloisGroup& g, const Subgroup& a, const Subgroup& b) {
  return same_zero_set(a.defining, b.defining, g.defining().xctx);
}

// ---------------------------------------------------------------------------
// Generic action

namespace detail {

using XPoly = MPoly<FieldElement>;

// sigma_X applied to a polynomial in the extension variables, where sigma_X
// is the generic matrix. Needs nonnegative generator exponents.
inline XPoly generic_image(const GaloisGroup& g, const Poly& p, const ContextPtr& xctx) {
  const DiffTower& gt = g.complexified();
  const PVExtension& pv = g.pv();
  std::size_t first_new = pv.extension.generator_index(pv.first_new_generator);
  std::vector<XPoly> eta_images;
  for (std::size_t j = 0; j < g.n(); ++j) {
    std::vector<XPoly::Term> terms;
    for (std::size_t i = 0; i < g.n(); ++i) {
      terms.push_back({Monomial::var(*xctx->index_of("X" + std::to_string(i + 1) + std::to_string(j + 1))),
                       gt.lift(pv.eta[i])});
    }
    eta_images.push_back(XPoly::from_terms(xctx, std::move(terms)));
  }
  XPoly one = XPoly::constant(xctx, gt.one());
  std::vector<XPoly> gen_images;
  for (const auto& e : pv.gen_exponents) {
    XPoly v = one;
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (e[j] < 0) throw Unsupported("generic action needs generators polynomial in the solutions");
      for (long k = 0; k < e[j]; ++k) v = v * eta_images[j];
    }
    gen_images.push_back(v);
  }
  return p.evaluate(
      one, [&](const GaussRat& c) { return XPoly::constant(xctx, gt.constant(c)); },
      [&](std::size_t v) {
        if (v < first_new) return XPoly::constant(xctx, gt.var(gt.context()->name(v)));
        return gen_images.at(v - first_new);
      });
}

// Coordinates of polynomials in (tower variables, X) with G-coefficients,
// reduced modulo an ideal in X; one column per input.
inline Matrix coordinates_mod(const GaloisGroup& g, const std::vector<XPoly>& items, const std::vector<Poly>& ideal) {
  const DiffTower& gt = g.complexified();
  const auto& tctx = gt.context();
  const auto& xctx = g.defining().xctx;
  std::vector<std::string> xnames = xctx->names();
  auto cctx = tctx->extended(xnames, 2);
  std::size_t offset = tctx->size();
  auto shift_x = [&](const Monomial& m) {
    std::vector<std::uint32_t> e(offset + xctx->size(), 0);
    for (std::size_t v = 0; v < m.width(); ++v) e[offset + v] = m[v];
    return Monomial(e);
  };
  std::vector<Poly> basis;
  if (!ideal.empty()) {
    RewriteSystem gb = buchberger(ideal);
    for (const auto& r : gb.rules()) {
      std::vector<Poly::Term> terms;
      for (const auto& t : r.terms()) terms.push_back({shift_x(t.mono), t.coeff});
      basis.push_back(Poly::from_terms(cctx, std::move(terms)));
    }
  }
  std::vector<FieldElement> coeffs;
  for (const auto& it : items) {
    for (const auto& t : it.terms()) coeffs.push_back(t.coeff);
  }
  auto common = over_common_denominator(coeffs.empty() ? std::vector<FieldElement>{gt.one()} : coeffs, *gt.data());
  std::vector<Poly> combined;
  std::size_t pos = 0;
  for (const auto& it : items) {
    std::vector<Poly::Term> terms;
    for (const auto& t : it.terms()) {
      Monomial xm = shift_x(t.mono);
      for (const auto& tt : common.numerators[pos].terms()) terms.push_back({tt.mono * xm, tt.coeff});
      ++pos;
    }
    combined.push_back(reduce_fully(Poly::from_terms(cctx, std::move(terms)), basis));
  }
  return coordinate_matrix(combined);
}

inline Matrix stack(const std::vector<Matrix>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Matrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) out(r0 + r, c) = b(r, c);
    }
    r0 += b.rows();
  }
  return out;
}

// Window monomials in the new generators, lowest degree first, 1 excluded.
inline std::vector<FieldElement> window_monomials(const GaloisGroup& g, unsigned window) {
  const PVExtension& pv = g.pv();
  const DiffTower& l = pv.extension;
  std::size_t first_new = l.generator_index(pv.first_new_generator);
  std::vector<FieldElement> out;
  for (const auto& m : standard_generator_monomials(l, window)) {
    if (m.is_one()) continue;
    bool only_new = true;
    for (std::size_t v = 0; v < std::min(first_new, m.width()); ++v) {
      if (m[v] != 0) only_new = false;
    }
    if (only_new) out.push_back(l.element(Poly::monomial(l.context(), m, GaussRat(1))));
  }
  return out;
}

inline unsigned generator_degree(const PVExtension& pv, const FieldElement& x) {
  std::size_t first_new = pv.extension.generator_index(pv.first_new_generator);
  unsigned d = 0;
  for (const auto& t : x.num().terms()) {
    unsigned k = 0;
    for (std::size_t v = first_new; v < t.mono.width(); ++v) k += t.mono[v];
    d = std::max(d, k);
  }
  return std::max(d, 1u);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Field membership

// Whether x lies in K(gens), tested on the window of polynomial expressions
// t^j * prod g^alpha (generator degree <= window, j up to the t-degree of x)
// with constant coefficients, after clearing a denominator from K. A bounded
// test.
inline bool in_field(const PVExtension& pv, const FieldElement& x, const IntermediateField& e,
                     unsigned window = kDefaultInvariantWindow) {
  const DiffTower& l = pv.extension;
  FieldElement y = l.lift(x);
  if (l.in_base_field(y)) return true;
  // Clear a denominator from the base: y is in E iff q*y is.
  auto base_only = [&](std::size_t v) { return !l.is_generator_variable(v); };
  if (y.den().uses_only(base_only)) y = l.element(y.num());
  std::vector<FieldElement> products{l.one()};
  std::vector<unsigned> degrees{0};
  for (const auto& g : e.generators) {
    unsigned dg = detail::generator_degree(pv, g);
    std::size_t existing = products.size();
    for (std::size_t k = 0; k < existing; ++k) {
      FieldElement p = products[k];
      unsigned d = degrees[k];
      while (d + dg <= window) {
        p = p * l.lift(g);
        d += dg;
        products.push_back(p);
        degrees.push_back(d);
      }
    }
  }
  std::vector<FieldElement> span = products;
  if (l.base_variable()) {
    std::size_t tv = *l.context()->index_of(*l.base_variable());
    unsigned t_degree = 1;
    for (const auto& term : y.num().terms()) t_degree = std::max<unsigned>(t_degree, term.mono[tv]);
    FieldElement t = l.var(*l.base_variable());
    FieldElement tj = l.one();
    for (unsigned j = 1; j <= t_degree; ++j) {
      tj = tj * t;
      for (const auto& p : products) span.push_back(p * tj);
    }
  }
  return linear_coordinates(y, span).has_value();
}

inline bool field_contained(const PVExtension& pv, const IntermediateField& a, const IntermediateField& b) {
  for (const auto& x : a.generators) {
    if (!in_field(pv, x, b)) return false;
  }
  return true;
}

inline bool same_field(const PVExtension& pv, const IntermediateField& a, const IntermediateField& b) {
  return field_contained(pv, a, b) && field_contained(pv, b, a);
}

inline void validate_field(const PVExtension& pv, const IntermediateField& e) {
  for (const auto& x : e.generators) {
    FieldElement y = pv.extension.lift(x);
    if (y.tower_data()->mode != ConstantsMode::Real) throw BadField("generator " + x.str() + " is not real");
    if (!in_field(pv, derive(y), e)) throw BadField("derivative of " + x.str() + " is not in the field");
  }
}

// ---------------------------------------------------------------------------
// Fixed field

inline IntermediateField fixed_field(const GaloisGroup& g, const Subgroup& h,
                                     unsigned window = kDefaultInvariantWindow) {
  const PVExtension& pv = g.pv();
  auto candidates = detail::window_monomials(g, window);
  IntermediateField out;
  if (candidates.empty()) return out;
  std::vector<Matrix> blocks;
  if (h.kind == SubgroupKind::FiniteList) {
    for (const auto& sigma : h.elements) {
      std::vector<FieldElement> diffs;
      for (const auto& m : candidates) diffs.push_back(g.substitute(sigma, m) - g.complexified().lift(m));
      auto common = over_common_denominator(diffs, *g.complexified().data());
      blocks.push_back(coordinate_matrix(common.numerators));
    }
  } else {
    const auto& xctx = g.defining().xctx;
    std::vector<detail::XPoly> diffs;
    for (const auto& m : candidates) {
      detail::XPoly img = detail::generic_image(g, m.num(), xctx);
      diffs.push_back(img - detail::XPoly::constant(xctx, g.complexified().lift(m)));
    }
    blocks.push_back(detail::coordinates_mod(g, diffs, h.defining));
  }
  Matrix conditions = detail::stack(blocks, candidates.size());
  std::vector<FieldElement> invariants;
  for (const auto& v : conditions.kernel()) {
    std::vector<GaussRat> re(v.size()), im(v.size());
    bool has_im = false;
    for (std::size_t k = 0; k < v.size(); ++k) {
      re[k] = GaussRat(v[k].re());
      im[k] = GaussRat(v[k].im());
      if (!v[k].im().is_zero()) has_im = true;
    }
    invariants.push_back(combine(pv.extension, candidates, re));
    if (has_im) invariants.push_back(combine(pv.extension, candidates, im));
  }
  std::vector<FieldElement> nonzero;
  for (const auto& x : invariants) {
    if (!x.is_zero()) nonzero.push_back(x);
  }
  if (nonzero.empty()) return out;
  auto basis = detail::canonical_span_basis(pv.extension, nonzero);
  for (const auto& x : basis) {
    if (!in_field(pv, x, out, window)) out.generators.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group of an intermediate field

inline Subgroup classify_subgroup(const GaloisGroup& g, std::vector<Poly> defining) {
  const auto& xctx = g.defining().xctx;
  Subgroup h;
  for (const auto& p : g.defining().polys) defining.push_back(p);
  h.defining = detail::tidy_polys(defining);
  Subgroup full = make_subgroup(g, SubgroupKind::Full);
  Subgroup trivial = make_subgroup(g, SubgroupKind::Trivial);
  if (same_zero_set(h.defining, full.defining, xctx)) {
    h.kind = SubgroupKind::Full;
    return h;
  }
  if (same_zero_set(h.defining, trivial.defining, xctx)) {
    h.kind = SubgroupKind::Trivial;
    return h;
  }
  if (g.n() == 1) {
    UPoly gcd;
    for (const auto& p : h.defining) gcd = UPoly::gcd(gcd, to_upoly(p, 0));
    if (gcd.degree() > 0) {
      UPoly sf = gcd.squarefree_part();
      long n = sf.degree();
      UPoly target = UPoly::x();
      std::vector<GaussRat> c(static_cast<std::size_t>(n) + 1);
      c[0] = GaussRat(-1);
      c[static_cast<std::size_t>(n)] = GaussRat(1);
      if (sf == UPoly(c)) {
        h.kind = SubgroupKind::MuN;
        h.n = n;
        return h;
      }
    }
  }
  if (g.n() == 2) {
    std::vector<Matrix> pm{Matrix::identity(2), Matrix::identity(2).scaled(GaussRat(-1))};
    if (same_zero_set(h.defining, points_ideal(pm, xctx), xctx)) {
      h.kind = SubgroupKind::FiniteList;
      h.elements = pm;
      return h;
    }
  }
  Subgroup diag = make_subgroup(g, SubgroupKind::Diagonal);
  if (same_zero_set(h.defining, diag.defining, xctx)) {
    h.kind = SubgroupKind::Diagonal;
    return h;
  }
  h.kind = SubgroupKind::Defined;
  return h;
}

// DGal(L|E): Gamma extended by N_x(Z) - x*D_x(Z) for each generator x = N/D of E.
inline Subgroup group_over(const GaloisGroup& g, const IntermediateField& e) {
  const PVExtension& pv = g.pv();
  validate_field(pv, e);
  RelationIdeal gamma = g.gamma();
  for (const auto& x0 : e.generators) {
    FieldElement x = pv.extension.lift(x0);
    FPoly r = detail::substitute_generators(
        {{x.num(), {}, GaussRat(1), std::nullopt}, {x.den(), {}, GaussRat(-1), x}}, pv, gamma.zctx);
    gamma.generators.push_back(r);
    gamma.labels.push_back("field");
  }
  DefiningSet s = defining_equations(pv, gamma);
  return classify_subgroup(g, s.polys);
}

// ---------------------------------------------------------------------------
// Correspondence checks

struct LatticeEntry {
  Subgroup h;
  IntermediateField fixed;
  Subgroup regained;
};

inline std::vector<Check> check_correspondence(const GaloisGroup& g, const std::vector<Subgroup>& lattice,
                                               std::vector<LatticeEntry>* entries = nullptr) {
  const PVExtension& pv = g.pv();
  std::vector<Check> out;
  std::vector<LatticeEntry> local;
  for (const auto& h : lattice) {
    LatticeEntry entry{h, fixed_field(g, h), {}};
    entry.regained = group_over(g, entry.fixed);
    bool h_ok = same_subgroup(g, entry.regained, h);
    out.push_back(pass_if(h_ok, "group round trip " + h.descriptor(),
                          "fixed field " + entry.fixed.str() + ", group over it " + entry.regained.descriptor()));
    IntermediateField back = fixed_field(g, entry.regained);
    out.push_back(pass_if(same_field(pv, back, entry.fixed), "field round trip " + entry.fixed.str(),
                          "fixed field of " + entry.regained.descriptor() + " is " + back.str()));
    local.push_back(std::move(entry));
  }
  for (std::size_t a = 0; a < local.size(); ++a) {
    for (std::size_t b = 0; b < local.size(); ++b) {
      if (a == b || !subgroup_contained(g, local[a].h, local[b].h)) continue;
      bool reversed = field_contained(pv, local[b].fixed, local[a].fixed);
      out.push_back(pass_if(reversed,
                            "inclusion " + local[a].h.descriptor() + " <= " + local[b].h.descriptor(),
                            local[b].fixed.str() + " <= " + local[a].fixed.str()));
    }
  }
  if (entries) *entries = std::move(local);
  return out;
}

// ---------------------------------------------------------------------------
// Normality

namespace detail {

// X -> m X m^{-1}.
inline Poly conjugate_poly(const Poly& p, const Matrix& m, const ContextPtr& xctx) {
  Matrix inv = *m.inverse();
  std::size_t n = m.rows();
  std::vector<Poly> images(xctx->size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Poly v(xctx);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          GaussRat c = m(i, k) * inv(l, j);
          if (!c.is_zero()) v = v + matrix_entry(xctx, k, l).scaled(c);
        }
      }
      images[*xctx->index_of("X" + std::to_string(i + 1) + std::to_string(j + 1))] = v;
    }
  }
  return p.evaluate(
      poly_const(xctx, GaussRat(1)), [&](const GaussRat& c) { return poly_const(xctx, c); },
      [&](std::size_t v) { return images[v]; });
}

// Solves sum_k a_k w^(k) = -w^(m) for the monic ODE of the basis w by
// Cramer's rule on the wronskian matrix.
inline LinearODE ode_of_basis(const std::vector<FieldElement>& w) {
  std::size_t m = w.size();
  WrMatrix rows = wronskian_matrix(w);
  std::vector<FieldElement> top;
  for (const auto& x : rows.back()) top.push_back(derive(x));
  FieldElement det = determinant(rows);
  LinearODE ode;
  for (std::size_t k = 0; k < m; ++k) {
    WrMatrix replaced = rows;
    for (std::size_t i = 0; i < m; ++i) replaced[k][i] = -top[i];
    ode.coeffs.push_back(determinant(replaced) / det);
  }
  return ode;
}

}  // namespace detail

struct NormalityReport {
  bool normal = false;
  IntermediateField field;
  std::vector<FieldElement> solution_basis;  // W
  std::optional<LinearODE> ode;
  std::vector<Check> checks;
};

inline NormalityReport normality_check(const GaloisGroup& g, const Subgroup& h) {
  const PVExtension& pv = g.pv();
  const auto& xctx = g.defining().xctx;
  NormalityReport rep;
  auto samples = g.sample_members();
  bool stable = true;
  for (const auto& m : samples) {
    for (const auto& p : h.defining) {
      if (!in_radical_gl(detail::conjugate_poly(p, m, xctx), h.defining, xctx)) stable = false;
    }
  }
  rep.normal = stable;
  rep.checks.push_back(info("conjugation stability of " + h.descriptor(),
                            std::string(stable ? "stable" : "not stable") + " under " +
                                std::to_string(samples.size()) + " sampled group elements"));
  if (!stable) return rep;

  rep.field = fixed_field(g, h);
  const DiffTower& l = pv.extension;
  if (rep.field.generators.empty()) {
    rep.checks.push_back(pass_if(true, "fixed field is the base", "E = K is PV over K trivially"));
    return rep;
  }
  // Derivation closure of the span of the generators.
  std::vector<FieldElement> w = detail::canonical_span_basis(l, rep.field.generators);
  for (int round = 0; round < 6; ++round) {
    std::vector<FieldElement> next = w;
    for (const auto& x : w) next.push_back(derive(x));
    next = detail::canonical_span_basis(l, next);
    if (next.size() == w.size()) break;
    w = next;
  }
  if (linear_coordinates(l.one(), w)) {
    std::vector<FieldElement> d;
    for (const auto& x : w) d.push_back(derive(x));
    std::vector<FieldElement> nz;
    for (const auto& x : d) {
      if (!x.is_zero()) nz.push_back(x);
    }
    w = detail::canonical_span_basis(l, nz);
  }
  rep.solution_basis = w;
  IntermediateField generated{w};
  bool generates = same_field(pv, generated, rep.field);
  rep.checks.push_back(pass_if(generates, "solution space generates the fixed field",
                               "W = span(" + join([&] {
                                 std::vector<std::string> s;
                                 for (const auto& x : w) s.push_back(x.str());
                                 return s;
                               }()) + ")"));
  LinearODE ode = detail::ode_of_basis(w);
  bool over_base = true;
  for (auto& a : ode.coeffs) {
    auto b = pv.base.restrict_from(a);
    if (b) a = *b;
    else over_base = false;
  }
  bool solves = true;
  for (const auto& x : w) {
    if (!ode.apply(x).is_zero()) solves = false;
  }
  rep.checks.push_back(pass_if(over_base && solves, "fixed field is Picard-Vessiot", "equation " + ode.str()));
  if (over_base) rep.ode = ode;

  // Restriction of sampled elements to W.
  const DiffTower& gt = g.complexified();
  std::vector<FieldElement> wg;
  for (const auto& x : w) wg.push_back(gt.lift(x));
  auto restrict = [&](const Matrix& sigma) -> std::optional<Matrix> {
    Matrix r(w.size(), w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      auto c = linear_coordinates(g.substitute(sigma, w[j]), wg);
      if (!c) return std::nullopt;
      for (std::size_t i = 0; i < w.size(); ++i) r(i, j) = (*c)[i];
    }
    return r;
  };
  bool restricts = true, kernel_ok = true, homomorphism = true;
  std::vector<std::string> images;
  std::vector<std::optional<Matrix>> restricted;
  for (const auto& m : samples) {
    auto r = restrict(m);
    restricted.push_back(r);
    if (!r) {
      restricts = false;
      continue;
    }
    bool in_h = is_member(m, DefiningSet{xctx, h.defining});
    if (in_h != r->is_identity()) kernel_ok = false;
    images.push_back(m.str() + " -> " + r->str());
  }
  for (std::size_t a = 0; a < samples.size() && restricts; ++a) {
    for (std::size_t b = 0; b < samples.size(); ++b) {
      auto r = restrict(samples[a] * samples[b]);
      if (!r || !(*r == *restricted[a] * *restricted[b])) homomorphism = false;
    }
  }
  rep.checks.push_back(pass_if(restricts, "sampled elements restrict to the fixed field", join(images, "; ")));
  rep.checks.push_back(pass_if(kernel_ok, "restriction is trivial exactly on the subgroup samples"));
  rep.checks.push_back(pass_if(homomorphism, "restriction preserves composition"));

  // Quotient group: relations among W with constant coefficients up to
  // degree 2, the first-order system of W, and the equation.
  if (over_base && restricts) {
    PVExtension q = pv;
    q.eta = w;
    q.ode = ode;
    q.gen_exponents.clear();
    q.system = detail::zero_system(pv.base, w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      auto c = linear_coordinates(derive(w[j]), w);
      for (std::size_t i = 0; i < w.size(); ++i) q.system[i][j] = pv.base.constant((*c)[i]);
    }
    RelationIdeal gamma;
    gamma.n = w.size();
    gamma.max_order = ode.order();
    gamma.zctx = z_context(gamma.n, gamma.max_order);
    FieldElement one = pv.base.one();
    auto zv = [&](std::size_t j, std::size_t k) { return detail::fpoly_var(gamma.zctx, gamma.var_index(j, k), one); };
    for (std::size_t j = 0; j < gamma.n; ++j) {
      FPoly r = zv(j, 1);
      for (std::size_t i = 0; i < gamma.n; ++i) {
        if (!q.system[i][j].is_zero()) r = r - zv(i, 0).scaled(q.system[i][j]);
      }
      gamma.generators.push_back(r);
    }
    std::vector<FieldElement> quad;
    std::vector<FPoly> quad_z;
    quad.push_back(l.one());
    quad_z.push_back(FPoly::constant(gamma.zctx, one));
    for (std::size_t a = 0; a < w.size(); ++a) {
      for (std::size_t b = a; b < w.size(); ++b) {
        quad.push_back(w[a] * w[b]);
        quad_z.push_back(zv(a, 0) * zv(b, 0));
      }
    }
    auto common = over_common_denominator(quad, *l.data());
    for (const auto& v : coordinate_matrix(common.numerators).kernel()) {
      FPoly r(gamma.zctx);
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_zero()) r = r + quad_z[k].scaled(pv.base.constant(v[k]));
      }
      gamma.generators.push_back(r);
    }
    DefiningSet sq = defining_equations(q, gamma);
    bool lands = true;
    for (const auto& r : restricted) {
      if (r && !is_member(*r, sq)) lands = false;
    }
    rep.checks.push_back(pass_if(lands, "restricted elements lie in the group of the fixed field",
                                 "quotient defining set {" + join(sq.strings()) + "}"));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Weak normality (groups in GL(1))

struct WeakNormalityReport {
  Subgroup group;
  std::optional<std::size_t> complex_points;  // none when infinite
  std::optional<std::size_t> real_points;
  std::vector<Rat> rational_real_members;
  bool nonidentity_real_automorphism = false;
  std::vector<Check> checks;
};

inline WeakNormalityReport weak_normality_demo(const GaloisGroup& g, const IntermediateField& f) {
  if (g.n() != 1) throw Unsupported("weak normality demo is implemented for groups in GL(1)");
  WeakNormalityReport rep;
  rep.group = group_over(g, f);
  UPoly gcd;
  for (const auto& p : rep.group.defining) gcd = UPoly::gcd(gcd, to_upoly(p, 0));
  if (gcd.degree() <= 0) {
    for (const auto& m : g.sample_members_of(DefiningSet{g.defining().xctx, rep.group.defining})) {
      if (m.is_real() && !m.is_identity()) rep.rational_real_members.push_back(m(0, 0).re());
    }
    rep.nonidentity_real_automorphism = !rep.rational_real_members.empty();
  } else {
    UPoly sf = gcd.squarefree_part();
    rep.complex_points = static_cast<std::size_t>(sf.degree());
    rep.real_points = count_real_roots(sf);
    rep.rational_real_members = rational_roots(sf);
    rep.nonidentity_real_automorphism = *rep.real_points > 1;
  }
  std::vector<std::string> reals;
  for (const auto& r : rep.rational_real_members) reals.push_back(r.str());
  rep.checks.push_back(info("group over " + f.str(), rep.group.descriptor() + " {" + join([&] {
                                                        std::vector<std::string> s;
                                                        for (const auto& p : rep.group.defining) s.push_back(to_string(p));
                                                        return s;
                                                      }()) + "}"));
  rep.checks.push_back(info("complexified group elements",
                            rep.complex_points ? std::to_string(*rep.complex_points) : std::string("infinite")));
  rep.checks.push_back(info("real automorphisms",
                            (rep.real_points ? std::to_string(*rep.real_points) : std::string("infinite")) +
                                " (rational: " + join(reals) + ")"));
  rep.checks.push_back(info("weakly normal", rep.nonidentity_real_automorphism ? "yes" : "no"));
  return rep;
}

}  // namespace rpv
