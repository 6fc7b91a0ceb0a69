#pragma once

// Real forms of Picard-Vessiot extensions: cocycles for the conjugation
// action, twisting a presentation by a cocycle, sum-of-squares witnesses of
// non-reality, and small H^1 tables.

#include <optional>
#include <string>
#include <vector>

#include "rpv/galois_group.hpp"
#include "rpv/report.hpp"

namespace rpv {

struct Cocycle {
  Matrix a;
};

// A * conj(A) = I, A invertible, A in the zero set of S.
inline bool cocycle_check(const Matrix& a, const DefiningSet& s) {
  if (!a.is_square()) return false;
  if (!(a * a.conj()).is_identity()) return false;
  return is_member(a, s);
}

struct RealityWitness {
  std::vector<FieldElement> squares;  // sum of q_j^2 equals -1

  bool verify() const {
    if (squares.empty()) return false;
    FieldElement total = squares[0] * squares[0];
    for (std::size_t k = 1; k < squares.size(); ++k) total = total + squares[k] * squares[k];
    return (total + total.pow(0)).is_zero();
  }

  std::string str() const {
    std::vector<std::string> items;
    for (const auto& q : squares) items.push_back(q.str());
    return "(" + join(items) + ")";
  }
};

// Searches one or two terms c*m, m a standard generator monomial of degree 1
// or 2 and c in {1, 2, 1/2} (signs do not change squares), with
// sum (c*m)^2 + 1 = 0. Absence is not a proof of reality.
inline std::optional<RealityWitness> non_reality_witness(const DiffTower& tower) {
  std::vector<FieldElement> terms;
  for (const auto& m : standard_generator_monomials(tower, 2)) {
    if (m.is_one()) continue;
    FieldElement x = tower.element(Poly::monomial(tower.context(), m, GaussRat(1)));
    for (const auto& c : {GaussRat(1), GaussRat(2), GaussRat(Rat(1, 2))}) terms.push_back(x.scaled(c));
  }
  FieldElement one = tower.one();
  std::vector<FieldElement> sq;
  for (const auto& q : terms) sq.push_back(q * q);
  for (std::size_t a = 0; a < terms.size(); ++a) {
    if ((sq[a] + one).is_zero()) return RealityWitness{{terms[a]}};
  }
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if ((sq[a] + sq[b] + one).is_zero()) return RealityWitness{{terms[a], terms[b]}};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Twisting

namespace detail {

// b with b / conj(b) = lambda for |lambda| = 1 (Hilbert 90 for Q(i)|Q).
inline GaussRat hilbert90(const GaussRat& lambda) {
  if (!lambda.norm().is_one()) throw Unsupported("scalar " + lambda.str() + " is not a cocycle");
  GaussRat b = lambda == GaussRat(-1) ? GaussRat::i() : GaussRat(1) + lambda;
  return b;
}

inline std::optional<GaussRat> scalar_of(const Matrix& a) {
  if (!a.is_square()) return std::nullopt;
  GaussRat c = a(0, 0);
  if (!(a == Matrix::identity(a.rows()).scaled(c))) return std::nullopt;
  return c;
}

inline std::string twisted_name(ODEClass cls, const std::string& name) {
  if (cls == ODEClass::Circle && name == "s") return "u";
  if (cls == ODEClass::Circle && name == "c") return "v";
  if (cls == ODEClass::Radical && name == "g") return "h";
  return name + "_tw";
}

}  // namespace detail

// Element num/den of the tower, where the fraction may carry a common
// non-real scalar factor that cancels.
inline FieldElement realify_element(const DiffTower& t, const Poly& num, const Poly& den) {
  GaussRat lc = den.terms().back().coeff;
  Poly n = num.scaled(GaussRat(1) / lc), d = den.scaled(GaussRat(1) / lc);
  if (!has_real_coefficients(n) || !has_real_coefficients(d)) {
    throw Unsupported("twisted solution " + to_string(n) + " is not real");
  }
  return t.element(RatFunc{n, d});
}

struct TwistResult {
  PVExtension twisted;
  Matrix splitting;  // B with A = B * conj(B)^{-1}; twisted solutions eta * B
  bool unchanged = false;
  std::vector<Check> checks;
};

// Twists pv by a scalar cocycle A = a*I. The twisted form is generated by the
// solutions eta * B, B = b*I with b / conj(b) = a; each new generator x of
// eta-degree d becomes b^d * x and gets a real presentation of its own.
inline TwistResult twist(const PVExtension& pv, const Matrix& a) {
  if (pv.cls != ODEClass::Exp && pv.cls != ODEClass::Radical && pv.cls != ODEClass::Circle) {
    throw Unsupported(std::string("twisting is implemented for EXP, RADICAL and CIRCLE, not ") + to_string(pv.cls));
  }
  GaloisGroup group(pv);
  if (!cocycle_check(a, group.defining())) throw Unsupported(a.str() + " is not a cocycle with values in the group");
  TwistResult out;
  std::size_t n = pv.order();
  if (a.is_identity()) {
    out.twisted = pv;
    out.splitting = Matrix::identity(n);
    out.unchanged = true;
    out.checks.push_back(pass_if(true, "trivial cocycle", "presentation unchanged"));
    return out;
  }
  auto scalar = detail::scalar_of(a);
  if (!scalar) throw Unsupported("only scalar cocycles are twisted: " + a.str());
  GaussRat b = detail::hilbert90(*scalar);
  out.splitting = Matrix::identity(n).scaled(b);
  out.checks.push_back(pass_if(b / b.conj() == *scalar, "splitting B = " + out.splitting.str(),
                               "B * conj(B)^-1 = " + (out.splitting * *out.splitting.conj().inverse()).str()));
  if (pv.cls == ODEClass::Exp) {
    // H^1 of GL(1) is trivial: b*e has the same presentation as e.
    out.twisted = pv;
    out.unchanged = true;
    out.checks.push_back(pass_if(true, "twisted form", "b*e satisfies e's relations; presentation unchanged"));
    return out;
  }

  const DiffTower& l = pv.extension;
  const auto& lctx = l.context();
  std::size_t first_new = l.generator_index(pv.first_new_generator);
  std::vector<std::string> new_names;
  std::vector<GaussRat> scale;  // b^d per new generator
  for (std::size_t k = 0; k < pv.gen_exponents.size(); ++k) {
    long d = 0;
    for (long e : pv.gen_exponents[k]) d += e;
    GaussRat f(1);
    for (long j = 0; j < std::labs(d); ++j) f = f * b;
    if (d < 0) f = GaussRat(1) / f;
    scale.push_back(f);
    new_names.push_back(detail::twisted_name(pv.cls, lctx->name(first_new + k)));
  }
  auto nctx = pv.base.extension_context(new_names);
  // Old variable -> polynomial in the new context (x = x_new / b^d).
  auto substitute = [&](const Poly& p) {
    return p.evaluate(
        poly_const(nctx, GaussRat(1)), [&](const GaussRat& c) { return poly_const(nctx, c); },
        [&](std::size_t v) {
          if (v < first_new) return poly_var(nctx, lctx->name(v));
          std::size_t k = v - first_new;
          return poly_var(nctx, new_names[k]).scaled(GaussRat(1) / scale[k]);
        });
  };
  auto realify_poly = [&](const Poly& p) -> Poly {
    if (p.is_zero()) return p;
    Poly m = make_monic(p);
    if (!has_real_coefficients(m)) throw Unsupported("twisted relation " + to_string(m) + " is not real");
    return m;
  };
  std::vector<NewGenerator> batch;
  for (std::size_t k = 0; k < new_names.size(); ++k) {
    const Generator& old = l.generators()[pv.first_new_generator + k];
    Poly num = substitute(old.derivative.num).scaled(scale[k]);
    Poly den = substitute(old.derivative.den);
    // Normalize the fraction so the denominator is monic and real.
    GaussRat lc = den.terms().back().coeff;
    num = num.scaled(GaussRat(1) / lc);
    den = den.scaled(GaussRat(1) / lc);
    if (!has_real_coefficients(num) || !has_real_coefficients(den)) {
      throw Unsupported("twisted derivative of " + new_names[k] + " is not real");
    }
    std::optional<Poly> rel;
    if (old.relation) rel = realify_poly(substitute(*old.relation));
    batch.push_back({new_names[k], old.kind, RatFunc{num, den}, rel});
  }
  DiffTower tl = adjoin(pv.base, batch);

  PVExtension tw = pv;
  tw.extension = tl;
  tw.eta.clear();
  for (const auto& y : pv.eta) {
    FieldElement x = l.lift(y);
    Poly num = substitute(x.num()).scaled(b);
    Poly den = substitute(x.den());
    tw.eta.push_back(realify_element(tl, num, den));
  }
  tw.notes.push_back("twisted by the cocycle " + a.str());
  tw.certificates = certify(tw, {});
  out.twisted = tw;
  out.checks.push_back(pass_if(tw.certificates.solutions_ok, "twisted solutions satisfy " + pv.ode.str()));
  out.checks.push_back(pass_if(tw.certificates.all_ok(), "twisted form is Picard-Vessiot",
                               "wronskian " + tw.certificates.wronskian.str()));

  // Embedding certificate: new generator k -> scale[k] * x_k into L(i)
  // respects relations and the derivation.
  DiffTower gl = complexify(l);
  std::vector<FieldElement> images;
  for (std::size_t k = 0; k < new_names.size(); ++k) {
    images.push_back(gl.var(lctx->name(first_new + k)).scaled(scale[k]));
  }
  auto embed = [&](const Poly& p) {
    const auto& tctx = tl.context();
    return p.evaluate(
        gl.one(), [&](const GaussRat& c) { return gl.constant(c); },
        [&](std::size_t v) {
          if (v < first_new) return gl.var(tctx->name(v));
          return images[v - first_new];
        });
  };
  bool embeds = true;
  for (std::size_t k = 0; k < new_names.size(); ++k) {
    const Generator& ng = tl.generators()[pv.first_new_generator + k];
    if (ng.relation && !embed(*ng.relation).is_zero()) embeds = false;
    FieldElement lhs = derive(images[k]);
    FieldElement rhs = embed(ng.derivative.num) / embed(ng.derivative.den);
    if (!(lhs == rhs)) embeds = false;
  }
  std::vector<std::string> img_text;
  for (std::size_t k = 0; k < new_names.size(); ++k) img_text.push_back(new_names[k] + " -> " + images[k].str());
  out.checks.push_back(pass_if(embeds, "embedding into the complexification", join(img_text)));
  return out;
}

// ---------------------------------------------------------------------------
// H^1 tables

struct H1Table {
  std::string descriptor;
  DefiningSet group;
  std::vector<Matrix> representatives;
  std::vector<Check> checks;
};

namespace detail {

// SO(2) points ((1 - m^2)/(1 + m^2), 2m/(1 + m^2)) for Gaussian m on a grid.
inline std::vector<Matrix> so2_grid() {
  std::vector<Matrix> out;
  for (long x = -4; x <= 4; ++x) {
    for (long y = -4; y <= 4; ++y) {
      GaussRat m(Rat(x, 2), Rat(y, 2));
      GaussRat d = GaussRat(1) + m * m;
      if (d.is_zero()) continue;
      GaussRat c = (GaussRat(1) - m * m) / d, s = GaussRat(2) * m / d;
      out.push_back(Matrix{{c, -s}, {s, c}});
    }
  }
  return out;
}

inline std::vector<Matrix> gl1_grid() {
  std::vector<Matrix> out;
  for (long x = -3; x <= 3; ++x) {
    for (long y = -3; y <= 3; ++y) {
      if (x == 0 && y == 0) continue;
      out.push_back(Matrix{{GaussRat(Rat(x), Rat(y))}});
    }
  }
  return out;
}

// C with A2 = C * A1 * conj(C)^{-1}, searched in `family`.
inline std::optional<Matrix> cohomologous_by(const Matrix& a1, const Matrix& a2, const std::vector<Matrix>& family) {
  for (const auto& c : family) {
    auto inv = c.conj().inverse();
    if (inv && c * a1 * *inv == a2) return c;
  }
  return std::nullopt;
}

}  // namespace detail

inline H1Table h1_enumerate(const std::string& descriptor) {
  H1Table t;
  t.descriptor = descriptor;
  std::vector<Matrix> family;
  GaussRat one(1), zero(0);
  if (descriptor == "GL1") {
    t.group = {matrix_context(1), {}};
    t.representatives = {Matrix{{one}}};
    family = detail::gl1_grid();
  } else if (descriptor == "MU2") {
    t.group = {matrix_context(1), {}};
    t.group.polys = {matrix_entry(t.group.xctx, 0, 0) * matrix_entry(t.group.xctx, 0, 0) - poly_const(t.group.xctx, one)};
    t.representatives = {Matrix{{one}}, Matrix{{GaussRat(-1)}}};
    family = {Matrix{{one}}, Matrix{{GaussRat(-1)}}};
  } else if (descriptor == "SO2") {
    auto x = matrix_context(2);
    auto e = [&](std::size_t i, std::size_t j) { return matrix_entry(x, i, j); };
    t.group = {x, detail::tidy_polys({e(0, 0) - e(1, 1), e(0, 1) + e(1, 0),
                                      e(0, 0) * e(0, 0) + e(1, 0) * e(1, 0) - poly_const(x, one)})};
    t.representatives = {Matrix::identity(2), Matrix::identity(2).scaled(GaussRat(-1))};
    family = detail::so2_grid();
  } else {
    throw Unsupported("no H^1 table for " + descriptor);
  }
  for (const auto& a : t.representatives) {
    t.checks.push_back(pass_if(cocycle_check(a, t.group), "cocycle " + a.str(), "A * conj(A) = I and A in S"));
  }
  for (std::size_t p = 0; p < t.representatives.size(); ++p) {
    for (std::size_t q = p + 1; q < t.representatives.size(); ++q) {
      auto c = detail::cohomologous_by(t.representatives[p], t.representatives[q], family);
      t.checks.push_back(pass_if(!c, "classes " + t.representatives[p].str() + " and " + t.representatives[q].str() +
                                         " are distinct",
                                 c ? "cohomologous via " + c->str()
                                   : "no C among " + std::to_string(family.size()) + " sampled group elements"));
    }
  }
  if (descriptor == "GL1") {
    // Every sampled cocycle |lambda| = 1 is a coboundary b / conj(b).
    std::vector<GaussRat> samples{GaussRat(-1), GaussRat::i(), -GaussRat::i(), GaussRat(Rat(3, 5), Rat(4, 5)),
                                  GaussRat(Rat(-5, 13), Rat(12, 13)), GaussRat(Rat(-4, 5), Rat(3, 5))};
    bool covered = true;
    std::vector<std::string> found;
    for (const auto& lambda : samples) {
      auto c = detail::cohomologous_by(Matrix{{one}}, Matrix{{lambda}}, family);
      if (!c) covered = false;
      else found.push_back(lambda.str() + " = B/conj(B) for B = " + (*c)(0, 0).str());
    }
    t.checks.push_back(pass_if(covered, "sampled cocycles are coboundaries", join(found, "; ")));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Form reports for the worked examples

struct FormReport {
  std::vector<Check> checks;
  std::vector<std::string> notes;
};

// SO(2): the group, its two H^1 classes, the real and the non-real form.
inline FormReport so2_forms_report(const PVExtension& circle) {
  FormReport r;
  GaloisGroup g(circle);
  r.checks.push_back(info("defining set", "{" + join(g.defining().strings()) + "}"));
  H1Table table = h1_enumerate("SO2");
  for (auto& c : table.checks) r.checks.push_back(c);
  for (const auto& a : table.representatives) {
    TwistResult tw = twist(circle, a);
    for (auto& c : tw.checks) r.checks.push_back(c);
    std::vector<std::string> eta;
    for (const auto& y : tw.twisted.eta) eta.push_back(y.str());
    r.checks.push_back(info("form for " + a.str(), "eta = (" + join(eta) + "); " + join(tw.twisted.extension.describe(), "; ")));
    auto w = non_reality_witness(tw.twisted.extension);
    if (a.is_identity()) {
      r.checks.push_back(pass_if(!w, "untwisted form has no witness", w ? "found " + w->str() : "no witness found within bounds"));
    } else {
      r.checks.push_back(pass_if(w && w->verify(), "twisted form is not real",
                                 w ? "sum of squares of " + w->str() + " is -1" : "no witness found within bounds"));
    }
  }
  return r;
}

// Y' = Y/(2t): K(g), g^2 = t, and its mu_2 twist K(h), h^2 = -t.
inline FormReport radical_forms_report(const PVExtension& radical) {
  FormReport r;
  GaloisGroup g(radical);
  r.checks.push_back(info("defining set", "{" + join(g.defining().strings()) + "}"));
  H1Table table = h1_enumerate("MU2");
  for (auto& c : table.checks) r.checks.push_back(c);
  TwistResult tw = twist(radical, Matrix{{GaussRat(-1)}});
  for (auto& c : tw.checks) r.checks.push_back(c);
  const DiffTower& l1 = radical.extension;
  const DiffTower& l2 = tw.twisted.extension;
  auto relation_of = [](const DiffTower& t) { return to_string(*t.generators().back().relation); };
  std::string rel1 = relation_of(l1), rel2 = relation_of(l2);
  r.checks.push_back(info("presentation 1", rel1 + " = 0"));
  r.checks.push_back(info("presentation 2", rel2 + " = 0"));
  FieldElement g1 = l1.var(l1.generators().back().name), h2 = l2.var(l2.generators().back().name);
  FieldElement t1 = l1.var(*l1.base_variable()), t2 = l2.var(*l2.base_variable());
  bool sign1 = g1 * g1 == t1, sign2 = h2 * h2 == -t2;
  r.checks.push_back(pass_if(sign1, "t is a square in presentation 1", "t = g^2, so t > 0 in every ordering"));
  r.checks.push_back(pass_if(sign2, "-t is a square in presentation 2", "-t = h^2, so t < 0 in every ordering"));

  // A K-isomorphism would send g to y = p + q h with y^2 = t, i.e. pq = 0 and
  // p^2 - t q^2 = t. q = 0 needs t to be a square in K; p = 0 needs
  // q^2 = -1 in K.
  const DiffTower& k = radical.base;
  FieldElement t = k.var(*k.base_variable());
  bool t_square = false, minus_one_square = false;
  std::vector<FieldElement> pool;
  for (long c : {1L, 2L}) {
    for (long e = -2; e <= 2; ++e) pool.push_back(t.pow(e).scaled(GaussRat(Rat(1, c))));
  }
  for (const auto& p : pool) {
    if (p * p == t) t_square = true;
    if (p * p == -k.one()) minus_one_square = true;
  }
  // t has odd degree, so no element of Q(t) squares to it; -1 has no
  // rational square root.
  bool odd_degree = t.num().total_degree() % 2 == 1;
  r.checks.push_back(pass_if(odd_degree && !t_square, "t is not a square in the base", "deg t = 1 is odd"));
  r.checks.push_back(pass_if(!minus_one_square, "-1 is not a square in the base", "the base is real"));
  bool found = false;
  std::vector<FieldElement> grid;
  for (long c : {0L, 1L, -1L, 2L}) {
    for (long e = -1; e <= 1; ++e) grid.push_back(k.lift(t.pow(e)).scaled(GaussRat(c)));
  }
  for (const auto& p : grid) {
    for (const auto& q : grid) {
      FieldElement y = l2.lift(p) + l2.lift(q) * h2;
      if (y * y == t2) found = true;
    }
  }
  r.checks.push_back(pass_if(!found, "no base-fixing isomorphism between the presentations",
                             "images p + q*h of g: pq = 0 forces t or -1 to be a square in K; sampled " +
                                 std::to_string(grid.size() * grid.size()) + " pairs (p, q)"));
  r.notes.push_back("t -> -t carries " + rel1 + " to " + rel2 + " but does not fix the base");
  r.notes.push_back("whether the Picard-Vessiot extension is unique for a fixed ordering is left open");
  return r;
}

}  // namespace rpv
