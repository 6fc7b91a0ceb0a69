// Acceptance run: one PASS/FAIL line per criterion with its time limit.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include "rpv/correspondence.hpp"
#include "rpv/parse.hpp"
#include "rpv/real_forms.hpp"
#include "rpv/seidenberg.hpp"
#include "support.hpp"

namespace rpv {
namespace {

using testing::Rng;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> body;
};

LinearODE ode_of(std::vector<FieldElement> coeffs) { return LinearODE{std::move(coeffs)}; }

PVExtension circle_pv() {
  DiffTower k = DiffTower::rational_functions();
  return build_pv(k, ode_of({k.one(), k.zero()}), ODEClass::Circle);
}

PVExtension radical_pv() {
  DiffTower k = DiffTower::rational_functions();
  return build_pv(k, ode_of({-(k.var("t").scaled(GaussRat(2))).inverse()}), ODEClass::Radical);
}

PVExtension exp_pv() {
  DiffTower k = DiffTower::rational_functions();
  return build_pv(k, ode_of({-k.one()}), ODEClass::Exp);
}

bool same_ideal(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  RewriteSystem ga = buchberger(a), gb = buchberger(b);
  return std::all_of(a.begin(), a.end(), [&](const Poly& p) { return in_ideal(p, gb); }) &&
         std::all_of(b.begin(), b.end(), [&](const Poly& p) { return in_ideal(p, ga); });
}

std::vector<Poly> polys(const ContextPtr& xctx, std::initializer_list<const char*> texts) {
  std::vector<Poly> out;
  for (const char* t : texts) out.push_back(parse_poly(t, xctx));
  return out;
}

Outcome so2_group() {
  Outcome o;
  GaloisGroup g(circle_pv());
  const auto& s = g.defining();
  o.require(same_ideal(s.polys, polys(s.xctx, {"X11 - X22", "X12 + X21", "X11^2 + X21^2 - 1"})),
            "defining set differs from SO(2)");
  return o;
}

Outcome mu2_group() {
  Outcome o;
  GaloisGroup g(radical_pv());
  const auto& s = g.defining();
  o.require(same_ideal(s.polys, polys(s.xctx, {"X11^2 - 1"})), "defining set differs from {X^2 - 1}");
  Matrix id = Matrix::identity(1), minus{{GaussRat(-1)}};
  FieldElement x = g.pv().extension.var("g");
  o.require(g.apply(id, x) == g.complexified().lift(x), "identity moves g");
  o.require(g.apply(minus, x) == g.complexified().lift(-x), "-1 does not send g to -g");
  o.require(g.compose(minus, minus) == id, "(-1)(-1) != 1");
  o.require(g.compose(id, minus) == minus, "1(-1) != -1");
  o.require(g.substitute(minus, g.apply(minus, x)) == g.apply(id, x), "sigma^2 != identity on g");
  return o;
}

Outcome gl1_group() {
  Outcome o;
  GaloisGroup g(exp_pv());
  o.require(g.defining().polys.empty(), "defining set is not empty");
  FieldElement e = g.complexified().var("e");
  for (GaussRat lambda : {GaussRat(2), GaussRat(-1), GaussRat(Rat(1, 3)), GaussRat::i()}) {
    Matrix m{{lambda}};
    o.require(g.is_member(m), "not a member: " + lambda.str());
    o.require(g.annihilates_gamma(m), "Gamma not annihilated by " + lambda.str());
    o.require(g.apply(m, g.pv().extension.var("e")) == e.scaled(lambda), "e is not scaled by " + lambda.str());
  }
  return o;
}

Outcome exp_lattice() {
  Outcome o;
  GaloisGroup g(exp_pv());
  std::vector<Subgroup> lattice{make_subgroup(g, SubgroupKind::Full), make_subgroup(g, SubgroupKind::MuN, 6),
                                make_subgroup(g, SubgroupKind::MuN, 3), make_subgroup(g, SubgroupKind::MuN, 2),
                                make_subgroup(g, SubgroupKind::Trivial)};
  std::vector<LatticeEntry> entries;
  auto checks = check_correspondence(g, lattice, &entries);
  o.require(all_passed(checks), "correspondence checks failed");
  for (const auto& h : lattice) {
    IntermediateField f = fixed_field(g, h);
    o.require(same_subgroup(g, group_over(g, f), h), "H != DGal(L | L^H) for " + h.descriptor());
    o.require(same_field(g.pv(), fixed_field(g, group_over(g, f)), f), "E != L^DGal(L|E) for " + f.str());
  }
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    for (std::size_t b = 0; b < lattice.size(); ++b) {
      bool sub = subgroup_contained(g, lattice[a], lattice[b]);
      bool sup = field_contained(g.pv(), entries[b].fixed, entries[a].fixed);
      o.require(sub == sup, "inclusion " + std::to_string(a) + " <= " + std::to_string(b) + " does not reverse");
    }
  }
  return o;
}

Outcome weak_normality() {
  Outcome o;
  GaloisGroup g(exp_pv());
  WeakNormalityReport r = weak_normality_demo(g, IntermediateField{{g.pv().extension.var("e").pow(3)}});
  o.require(r.complex_points == std::optional<std::size_t>(3), "complexified group is not of order 3");
  o.require(r.real_points == std::optional<std::size_t>(1), "real points != 1");
  o.require(r.rational_real_members == std::vector<Rat>{Rat(1)}, "real automorphisms other than the identity");
  o.require(!r.nonidentity_real_automorphism, "a non-identity real automorphism was reported");
  return o;
}

Outcome so2_twist() {
  Outcome o;
  PVExtension pv = circle_pv();
  o.require(!non_reality_witness(pv.extension).has_value(), "untwisted form has a witness");
  TwistResult tw = twist(pv, Matrix::identity(2).scaled(GaussRat(-1)));
  o.require(all_passed(tw.checks), "twist checks failed");
  auto w = non_reality_witness(tw.twisted.extension);
  o.require(w.has_value(), "no witness on the twisted form");
  if (w) {
    FieldElement sum = tw.twisted.extension.one();
    for (const auto& q : w->squares) sum = sum + q * q;
    o.require(sum.is_zero() && sum.value().num.is_zero(), "sum of squares + 1 is not the zero polynomial");
    o.require(w->verify(), "witness does not verify");
  }
  return o;
}

Outcome radical_pair() {
  Outcome o;
  PVExtension pv = radical_pv();
  TwistResult tw = twist(pv, Matrix{{GaussRat(-1)}});
  const DiffTower& l1 = pv.extension;
  const DiffTower& l2 = tw.twisted.extension;
  o.require(l1.var("g") * l1.var("g") == l1.var("t"), "g^2 != t");
  o.require(l2.var("h") * l2.var("h") == -l2.var("t"), "h^2 != -t");
  FormReport r = radical_forms_report(pv);
  o.require(all_passed(r.checks), "radical forms report failed");
  bool iso = false;
  for (const auto& c : r.checks) iso = iso || c.name == "no base-fixing isomorphism between the presentations";
  o.require(iso, "isomorphism check missing");
  return o;
}

Outcome seidenberg() {
  Outcome o;
  SeidenbergField f = build_seidenberg();
  FieldElement a = f.tower.var("a"), b = f.tower.var("b");
  o.require(b == derive(a), "a' != b");
  FieldElement sum = a.scaled(GaussRat(2)) * a.scaled(GaussRat(2)) + b * b + f.tower.one();
  o.require(sum.is_zero(), "(2a)^2 + (a')^2 + 1 != 0");
  auto w = non_reality_witness(f.tower);
  o.require(w.has_value() && w->verify(), "no verified witness");
  SeidenbergReport r = new_constant_demo();
  o.require(all_passed(r.checks), "new constant demo failed");
  if (r.constants.empty()) {
    o.require(false, "no constants found");
    return o;
  }
  const DiffTower l(r.constants.front().tower_data());
  FieldElement y1 = l.var("y1"), z1 = l.var("z1"), y2 = l.var("y2"), z2 = l.var("z2");
  for (const FieldElement& x : {y1 * y1 + z1 * z1, y2 * y2 + z2 * z2, y1 * z2 - y2 * z1}) {
    o.require(derive(x).is_zero(), "nonzero derivative of " + x.str());
    o.require(linear_coordinates(x, r.constants).has_value(), "scan missed " + x.str());
  }
  return o;
}

Outcome wronskian_suite() {
  Outcome o;
  DiffTower c = testing::circle_tower();
  o.require(wronskian_det({c.var("s"), c.var("c")}) == c.constant(GaussRat(-1)), "Wr(s, c) != -1");
  DiffTower l = adjoin_exponential(c, c.one());
  Rng rng(18);
  for (int k = 0; k < 60 && o.ok; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(1, 2));
    std::vector<FieldElement> ys;
    for (std::size_t j = 0; j < n; ++j) ys.push_back(testing::random_element(rng, l, 3, 2));
    FieldElement dependent = l.zero();
    for (const auto& y : ys) dependent = dependent + y.scaled(GaussRat(rng.rat(4)));
    ys.insert(ys.begin() + rng.between(0, static_cast<long>(n)), dependent);
    o.require(wronskian_det(ys).is_zero(), "dependent family with nonzero Wronskian");
  }
  std::vector<FieldElement> pool{l.var("s"), l.var("c"), l.var("e"), l.var("t"), l.var("s") * l.var("e")};
  for (int k = 0; k < 200 && o.ok; ++k) {
    std::vector<FieldElement> ys;
    std::size_t n = static_cast<std::size_t>(rng.between(2, 3));
    for (std::size_t j = 0; j < n; ++j) ys.push_back(pool[static_cast<std::size_t>(rng.between(0, 4))]);
    std::size_t a = static_cast<std::size_t>(rng.between(0, static_cast<long>(n) - 1));
    std::size_t b = (a + static_cast<std::size_t>(rng.between(1, static_cast<long>(n) - 1))) % n;
    FieldElement before = wronskian_det(ys);
    std::swap(ys[a], ys[b]);
    o.require(wronskian_det(ys) == -before, "swap did not negate the Wronskian");
  }
  return o;
}

Outcome algebra_properties() {
  Outcome o;
  constexpr int kCases = 500;
  Rng rng(2024);
  std::vector<DiffTower> towers{testing::circle_tower(), testing::exp_tower(), testing::radical_tower(),
                                complexify(testing::circle_tower())};
  for (int k = 0; k < kCases && o.ok; ++k) {
    const DiffTower& tw = towers[static_cast<std::size_t>(k) % towers.size()];
    FieldElement x = testing::random_element(rng, tw), y = testing::random_element(rng, tw);
    o.require(derive(x * y) == derive(x) * y + x * derive(y), "Leibniz rule: " + x.str() + ", " + y.str());
  }
  auto stc = VarContext::make({"t", "s", "c"}, std::vector<int>{0, 1, 1});
  Poly s = poly_var(stc, "s"), c = poly_var(stc, "c");
  RewriteSystem circle = buchberger({s * s + c * c - poly_const(stc, GaussRat(1))});
  auto xyz = VarContext::make({"x", "y", "z"});
  Poly x = poly_var(xyz, "x"), y = poly_var(xyz, "y"), z = poly_var(xyz, "z");
  RewriteSystem cubic = buchberger({x * x - y * z, y * y - x * z - poly_const(xyz, GaussRat(1)), x * y - z});
  for (int k = 0; k < kCases && o.ok; ++k) {
    Poly p = testing::random_poly(rng, stc, testing::all_vars(stc), 6, 4);
    Poly nf = normal_form(p, circle);
    o.require(normal_form(nf, circle) == nf, "normal form not idempotent: " + to_string(p));
    Poly q = testing::random_poly(rng, xyz, testing::all_vars(xyz), 6, 4);
    std::vector<Poly> rules = cubic.rules();
    Poly reference = reduce_fully(q, rules);
    std::shuffle(rules.begin(), rules.end(), rng.engine());
    o.require(reduce_fully(q, rules) == reference, "reduction depends on rule order: " + to_string(q));
  }
  for (int k = 0; k < kCases && o.ok; ++k) {
    GaussRat a = rng.gauss(true);
    o.require(a.conj().conj() == a, "conj not involutive on " + a.str());
  }
  std::vector<DiffTower> complex_towers{complexify(testing::circle_tower()), complexify(testing::exp_tower()),
                                        complexify(testing::radical_tower())};
  for (int k = 0; k < kCases && o.ok; ++k) {
    const DiffTower& tw = complex_towers[static_cast<std::size_t>(k) % complex_towers.size()];
    FieldElement e = testing::random_element(rng, tw);
    o.require(conj(conj(e)) == e, "conj not involutive on " + e.str());
    o.require(derive(conj(e)) == conj(derive(e)), "derive and conj do not commute on " + e.str());
  }
  return o;
}

Outcome realification() {
  Outcome o;
  PVExtension pv = circle_pv();
  PVExtension cpv = complexify(pv);
  const DiffTower& g = cpv.extension;
  FieldElement s = g.var("s"), c = g.var("c"), i = g.imaginary_unit();
  Realification r = realify(cpv, {c + i * s, c - i * s});
  o.require(r.real.eta.size() == 2 && r.real.certificates.all_ok(), "real form is not certified");
  o.require(linear_coordinates(s, r.fixed_basis).has_value() && linear_coordinates(c, r.fixed_basis).has_value(),
            "fixed space is not span{s, c}");
  for (const PVExtension& p : {pv, radical_pv(), exp_pv()}) {
    Realification back = realify(complexify(p));
    o.require(back.real.extension == p.extension, "round trip changed the tower");
    for (std::size_t j = 0; j < p.eta.size() && j < back.real.eta.size(); ++j) {
      o.require(back.real.eta[j].str() == p.eta[j].str(), "round trip changed " + p.eta[j].str());
    }
  }
  return o;
}

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = "cd '" RPV_SOURCE_DIR "' && '" RPV_BINARY "' " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  Outcome o;
  auto first = run_cli("all scenarios --json");
  auto second = run_cli("all scenarios --json");
  o.require(first.first == 0, "all exited with " + std::to_string(first.first));
  o.require(!first.second.empty(), "empty report");
  o.require(first.second == second.second, "reports differ between runs");
  return o;
}

}  // namespace
}  // namespace rpv

int main() {
  using namespace rpv;
  const std::vector<Criterion> criteria{
      {1, "SO(2) group recovery", 5.0, so2_group},
      {2, "mu_2 group recovery", 1.0, mu2_group},
      {3, "GL(1) group", 1.0, gl1_group},
      {4, "Galois correspondence round trips", 5.0, exp_lattice},
      {5, "weak-normality failure", 1.0, weak_normality},
      {6, "SO(2) real forms", 2.0, so2_twist},
      {7, "radical pair", 1.0, radical_pair},
      {8, "Seidenberg", 2.0, seidenberg},
      {9, "Wronskian suite", 5.0, wronskian_suite},
      {10, "algebra property suite", 30.0, algebra_properties},
      {11, "realification", 1.0, realification},
      {12, "determinism of all --json", 60.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_seconds) {
      o.ok = false;
      o.detail = "time limit exceeded";
    }
    failed += !o.ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs / %.0fs", secs, c.limit_seconds);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << "  (" << timing << ")";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed;
}
