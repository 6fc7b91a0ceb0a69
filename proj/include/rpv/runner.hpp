#pragma once

// The commands behind the command-line tool: each turns a scenario (or a
// built-in example) into a Report of checks plus structured data.

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "rpv/correspondence.hpp"
#include "rpv/real_forms.hpp"
#include "rpv/scenario.hpp"
#include "rpv/seidenberg.hpp"

namespace rpv {

struct Report {
  std::string command;
  std::string name;
  Json scenario;  // null for built-in demos
  std::vector<Check> checks;
  Json data = Json::object();
  std::vector<std::string> notes;

  bool ok() const { return all_passed(checks); }

  void add(Check c) { checks.push_back(std::move(c)); }
  void add(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["name"] = name;
    j["scenario"] = scenario;
    j["status"] = ok() ? "PASS" : "FAIL";
    Json cs = Json::array();
    for (const auto& c : checks) {
      Json e{{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}};
      for (const auto& [k, v] : c.fields) e[k] = v;
      cs.push_back(e);
    }
    j["checks"] = cs;
    j["data"] = data;
    j["notes"] = notes;
    return j;
  }

  std::string to_text() const {
    std::string s = "== " + command + " " + name + " ==\n";
    for (const auto& c : checks) {
      s += std::string(to_string(c.status)) + " " + c.name;
      if (!c.detail.empty()) s += ": " + c.detail;
      s += "\n";
    }
    for (const auto& n : notes) s += "note: " + n + "\n";
    s += std::string("result: ") + (ok() ? "PASS" : "FAIL") + "\n";
    return s;
  }
};

struct RunOptions {
  std::optional<unsigned> scan_degree;
  std::optional<unsigned> scan_coeff_degree;
  std::optional<std::size_t> budget;
};

inline Scenario with_overrides(Scenario s, const RunOptions& o) {
  if (o.scan_degree) s.scan.degree = *o.scan_degree;
  if (o.scan_coeff_degree) s.scan.coeff_degree = *o.scan_coeff_degree;
  if (o.budget) s.budget = *o.budget;
  return s;
}

namespace detail {

inline std::vector<std::string> element_strings(const std::vector<FieldElement>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

inline Report start_report(const std::string& command, const Scenario& s) {
  Report r;
  r.command = command;
  r.name = s.name;
  r.scenario = s.echo;
  return r;
}

// Runs body, turning library errors into a failing check.
template <class Body>
void guarded(Report& r, Body body) {
  try {
    body();
  } catch (const Error& e) {
    r.add(pass_if(false, "error", e.what()));
  }
}

inline void build_checks(Report& r, const PVExtension& pv) {
  for (const auto& line : verify_pv(pv)) {
    bool ok = line.rfind("PASS", 0) == 0;
    r.add(pass_if(ok, line.substr(5)));
  }
  r.data["tower"] = pv.extension.describe();
  r.data["solutions"] = element_strings(pv.eta);
  r.data["ode"] = pv.ode.str();
  r.data["class"] = to_string(pv.cls);
  for (const auto& n : pv.notes) r.notes.push_back(n);
  // Realification round trip on the complexified solution space.
  if (!pv.system.empty()) {
    Realification re = realify(complexify(pv));
    bool same = re.real.eta.size() == pv.eta.size();
    for (std::size_t j = 0; same && j < pv.eta.size(); ++j) same = re.real.eta[j] == pv.eta[j];
    r.add(pass_if(same, "realification of the complexified solutions",
                  "V^c basis (" + join(element_strings(re.real.eta)) + ")"));
  }
}

inline std::vector<Poly> parse_x_polys(const std::vector<std::string>& texts, const ContextPtr& xctx) {
  std::vector<Poly> out;
  for (std::size_t k = 0; k < texts.size(); ++k) {
    try {
      out.push_back(parse_poly(texts[k], xctx));
    } catch (const ParseError& e) {
      throw ParseError("field 'expect.group[" + std::to_string(k) + "]': " + bare_message(e));
    }
  }
  return out;
}

// Mutual reduction: every polynomial of each set reduces to 0 modulo a
// Groebner basis of the other.
inline bool same_ideal(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  auto reduces = [](const std::vector<Poly>& xs, const std::vector<Poly>& gens) {
    if (gens.empty()) {
      return std::all_of(xs.begin(), xs.end(), [](const Poly& p) { return p.is_zero(); });
    }
    RewriteSystem gb = buchberger(gens);
    return std::all_of(xs.begin(), xs.end(), [&](const Poly& p) { return normal_form(p, gb).is_zero(); });
  };
  return reduces(a, b) && reduces(b, a);
}

}  // namespace detail

inline Report run_build(const Scenario& s) {
  Report r = detail::start_report("build", s);
  detail::guarded(r, [&] { detail::build_checks(r, scenario_pv(s)); });
  return r;
}

inline Report run_group(const Scenario& s) {
  Report r = detail::start_report("group", s);
  detail::guarded(r, [&] {
    PVExtension pv = scenario_pv(s);
    r.add(pass_if(pv.certificates.all_ok(), "extension is Picard-Vessiot"));
    GaloisGroup g(pv);
    Json gamma = Json::array();
    for (std::size_t k = 0; k < g.gamma().generators.size(); ++k) {
      gamma.push_back(g.gamma().labels[k] + ": " + to_string(g.gamma().generators[k]));
    }
    r.data["gamma"] = gamma;
    r.data["defining_set"] = g.defining().strings();
    r.add(info("defining set", "{" + join(g.defining().strings()) + "}"));
    if (s.expected_group) {
      auto expected = detail::parse_x_polys(*s.expected_group, g.defining().xctx);
      r.add(pass_if(detail::same_ideal(expected, g.defining().polys), "defining set matches the expected ideal",
                    "mutual reduction against {" + join(*s.expected_group) + "}"));
      r.add(pass_if(same_zero_set(expected, g.defining().polys, g.defining().xctx),
                    "defining set has the expected zero set"));
    }
    auto samples = g.sample_members();
    std::vector<std::string> members;
    bool morphisms = true;
    for (const auto& m : samples) {
      members.push_back(m.str());
      if (!g.annihilates_gamma(m)) morphisms = false;
    }
    r.data["sampled_members"] = members;
    r.add(pass_if(morphisms && !samples.empty(), "sampled members annihilate Gamma",
                  std::to_string(samples.size()) + " members"));
    bool closed = true, composes = true;
    const auto& gens = pv.extension.generators();
    for (const auto& a : samples) {
      for (const auto& b : samples) {
        Matrix ab = g.compose(a, b);
        if (!g.is_member(ab)) closed = false;
        for (std::size_t k = pv.first_new_generator; k < gens.size(); ++k) {
          FieldElement x = pv.extension.var(gens[k].name);
          if (!(g.apply(ab, x) == g.substitute(a, g.apply(b, x)))) composes = false;
        }
      }
      auto inv = a.inverse();
      if (!inv || !g.is_member(*inv)) closed = false;
    }
    r.add(pass_if(closed, "sampled members are closed under products and inverses"));
    r.add(pass_if(composes, "apply(a*b, x) = apply(a, apply(b, x)) on the generators"));
    // A nonidentity member moves some generator (the fixed field of the full
    // group is the base).
    bool moves = true;
    for (const auto& m : samples) {
      if (m.is_identity()) continue;
      bool moved = false;
      for (std::size_t k = pv.first_new_generator; k < gens.size(); ++k) {
        FieldElement x = pv.extension.var(gens[k].name);
        if (!(g.apply(m, x) == g.complexified().lift(x))) moved = true;
      }
      if (!moved) moves = false;
    }
    r.add(pass_if(moves, "every sampled nonidentity member moves a generator"));
  });
  return r;
}

inline Report run_correspond(const Scenario& s) {
  Report r = detail::start_report("correspond", s);
  detail::guarded(r, [&] {
    PVExtension pv = scenario_pv(s);
    GaloisGroup g(pv);
    std::vector<Subgroup> lattice;
    for (const auto& spec : s.lattice) lattice.push_back(scenario_subgroup(g, spec));
    if (!lattice.empty()) {
      std::vector<LatticeEntry> entries;
      r.add(check_correspondence(g, lattice, &entries));
      Json fixed = Json::array();
      for (const auto& e : entries) {
        fixed.push_back({{"subgroup", e.h.descriptor()}, {"fixed_field", e.fixed.str()},
                         {"group_over_fixed_field", e.regained.descriptor()}});
      }
      r.data["lattice"] = fixed;
    }
    Json normal = Json::array();
    for (const auto& spec : s.normality) {
      Subgroup h = scenario_subgroup(g, spec);
      NormalityReport n = normality_check(g, h);
      r.add(n.checks);
      Json e{{"subgroup", h.descriptor()}, {"normal", n.normal}, {"fixed_field", n.field.str()}};
      if (n.ode) e["equation"] = n.ode->str();
      normal.push_back(e);
    }
    if (!s.normality.empty()) r.data["normality"] = normal;
    Json weak = Json::array();
    for (std::size_t k = 0; k < s.weak_normality.size(); ++k) {
      IntermediateField f;
      for (std::size_t m = 0; m < s.weak_normality[k].size(); ++m) {
        f.generators.push_back(parse_element(pv.extension, s.weak_normality[k][m],
                                             "weak_normality[" + std::to_string(k) + "][" + std::to_string(m) + "]"));
      }
      WeakNormalityReport w = weak_normality_demo(g, f);
      r.add(w.checks);
      Json e{{"field", f.str()}, {"group", w.group.descriptor()}, {"weakly_normal", w.nonidentity_real_automorphism}};
      e["complex_points"] = w.complex_points ? Json(*w.complex_points) : Json("infinite");
      e["real_points"] = w.real_points ? Json(*w.real_points) : Json("infinite");
      weak.push_back(e);
    }
    if (!s.weak_normality.empty()) r.data["weak_normality"] = weak;
  });
  return r;
}

inline Report run_twist(const Scenario& s) {
  Report r = detail::start_report("twist", s);
  detail::guarded(r, [&] {
    PVExtension pv = scenario_pv(s);
    GaloisGroup g(pv);
    auto base_witness = non_reality_witness(pv.extension);
    r.add(info("witness for the given form", base_witness ? base_witness->str() : "no witness found within bounds"));
    Json forms = Json::array();
    for (const auto& a : s.cocycles) {
      bool valid = cocycle_check(a, g.defining());
      r.add(pass_if(valid, "cocycle " + a.str(), "A * conj(A) = I and A in S"));
      if (!valid) continue;
      TwistResult tw = twist(pv, a);
      r.add(tw.checks);
      auto w = non_reality_witness(tw.twisted.extension);
      if (w) r.add(pass_if(w->verify(), "witness " + w->str(), "sum of squares is -1: the twisted form is not real"));
      else r.add(info("no witness found within bounds for the twist by " + a.str()));
      forms.push_back({{"cocycle", a.str()}, {"splitting", tw.splitting.str()},
                       {"tower", tw.twisted.extension.describe()},
                       {"solutions", detail::element_strings(tw.twisted.eta)},
                       {"witness", w ? Json(w->str()) : Json(nullptr)}});
    }
    r.data["forms"] = forms;
  });
  return r;
}

// ---------------------------------------------------------------------------
// Built-in examples

inline const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"radical-forms", "seidenberg", "so2-forms", "weak-normality"};
  return names;
}

inline Report run_demo(const std::string& name) {
  Report r;
  r.command = "demo";
  r.name = name;
  DiffTower k = DiffTower::rational_functions();
  FieldElement t = k.var("t");
  detail::guarded(r, [&] {
    if (name == "weak-normality") {
      PVExtension pv = build_pv(k, LinearODE{{-k.one()}}, ODEClass::Exp);
      GaloisGroup g(pv);
      FieldElement e = pv.extension.var("e");
      WeakNormalityReport over_f = weak_normality_demo(g, IntermediateField{{e * e * e}});
      r.add(over_f.checks);
      r.add(pass_if(over_f.real_points == std::optional<std::size_t>(1), "exactly one real automorphism fixes K(e^3)"));
      r.add(pass_if(over_f.complex_points == std::optional<std::size_t>(3), "three complexified group elements"));
      r.add(pass_if(!over_f.nonidentity_real_automorphism, "L is not weakly normal over K(e^3)"));
      WeakNormalityReport over_k = weak_normality_demo(g, IntermediateField{});
      r.add(over_k.checks);
      r.add(pass_if(over_k.nonidentity_real_automorphism, "L is weakly normal over K"));
      WeakNormalityReport over_l = weak_normality_demo(g, IntermediateField{{e}});
      r.add(pass_if(over_l.complex_points == std::optional<std::size_t>(1), "only the identity fixes L"));
      r.data["complex_points"] = *over_f.complex_points;
      r.data["real_points"] = *over_f.real_points;
    } else if (name == "so2-forms") {
      PVExtension pv = build_pv(k, LinearODE{{k.one(), k.zero()}}, ODEClass::Circle);
      FormReport f = so2_forms_report(pv);
      r.add(f.checks);
      r.notes = f.notes;
      r.data["defining_set"] = GaloisGroup(pv).defining().strings();
    } else if (name == "radical-forms") {
      PVExtension pv = build_pv(k, LinearODE{{-(k.one() / (t * k.constant(2)))}}, ODEClass::Radical);
      FormReport f = radical_forms_report(pv);
      r.add(f.checks);
      r.notes = f.notes;
    } else if (name == "seidenberg") {
      SeidenbergReport s = new_constant_demo();
      r.add(s.checks);
      r.notes = s.notes;
      r.data["constants"] = detail::element_strings(s.constants);
    } else {
      throw Unsupported("unknown demo '" + name + "'");
    }
  });
  return r;
}

// Every scenario in `dir` (sorted by file name) through each applicable
// command, then every demo.
inline std::vector<Report> run_all(const std::string& dir, const RunOptions& options = {}) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Scenario> scenarios;
  for (const auto& f : files) scenarios.push_back(with_overrides(load_scenario(f.string()), options));
  std::vector<Report> out;
  for (const auto& s : scenarios) {
    out.push_back(run_build(s));
    out.push_back(run_group(s));
    if (!s.lattice.empty() || !s.normality.empty() || !s.weak_normality.empty()) out.push_back(run_correspond(s));
    if (!s.cocycles.empty()) out.push_back(run_twist(s));
  }
  for (const auto& d : demo_names()) out.push_back(run_demo(d));
  return out;
}

}  // namespace rpv
