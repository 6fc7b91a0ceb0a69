#pragma once

// JSON scenario files. A scenario names a base field, a linear ODE with its
// class, and optionally subgroup lattices, cocycles and expected results.
// Parsing validates everything (unknown keys included) before any
// computation; errors name the offending field.
//
// {
//   "name": "so2",
//   "base": {"kind": "rational_functions", "variable": "t"},
//   "ode": {"order": 2, "coefficients": ["1", "0"]},     // a0, ..., a_{n-1}
//   "class": "CIRCLE",
//   "radical": {"f": "t", "exponent": "1/2"},
//   "scan": {"degree": 4, "coeff_degree": 3},
//   "budget": 10000,
//   "expect": {"group": ["X11 - X22", ...]},
//   "lattice": [{"kind": "FULL"}, {"kind": "MU_N", "n": 3},
//               {"kind": "FINITE_LIST", "elements": [[["1", "0"], ["0", "1"]]]}],
//   "normality": [{"kind": "MU_N", "n": 3}],
//   "weak_normality": [["e^3"]],
//   "cocycles": [[["-1", "0"], ["0", "-1"]]]
// }

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "rpv/correspondence.hpp"
#include "rpv/parse.hpp"
#include "rpv/picard_vessiot.hpp"

namespace rpv {

using Json = nlohmann::json;

enum class BaseKind { RationalFunctions, Constants };

struct SubgroupSpec {
  SubgroupKind kind = SubgroupKind::Full;
  long n = 0;
  std::vector<Matrix> elements;
};

struct Scenario {
  std::string name;
  BaseKind base = BaseKind::RationalFunctions;
  std::string variable = "t";
  std::size_t order = 0;
  std::vector<std::string> coefficients;
  ODEClass cls = ODEClass::Exp;
  std::optional<std::pair<std::string, Rat>> radical;
  ScanBounds scan;
  std::size_t budget = kDefaultBuchbergerBudget;
  std::optional<std::vector<std::string>> expected_group;
  std::vector<SubgroupSpec> lattice;
  std::vector<SubgroupSpec> normality;
  std::vector<std::vector<std::string>> weak_normality;
  std::vector<Matrix> cocycles;
  Json echo;
};

namespace detail {

// Message of a library error without its type prefix.
inline std::string bare_message(const std::exception& e) {
  std::string m = e.what();
  auto pos = m.find(": ");
  return pos == std::string::npos ? m : m.substr(pos + 2);
}

inline std::string field_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

inline void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ParseError("field '" + where + "' must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) throw ParseError("unknown field '" + field_path(where, k) + "'");
  }
}

inline const Json& required(const Json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing field '" + field_path(where, key) + "'");
  return j.at(key);
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  throw ParseError("field '" + where + "' must be a string or an integer");
}

inline long as_long(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError("field '" + where + "' must be an integer");
  return j.get<long>();
}

inline GaussRat parse_constant(const std::string& text, const std::string& where) {
  auto ctx = VarContext::make(std::vector<std::string>{}, std::vector<int>{});
  try {
    RatFunc f = parse_ratfunc(text, ctx);
    if (!f.num.is_constant() || !f.den.is_constant() || f.den.is_zero()) throw ParseError("not a constant");
    GaussRat n = f.num.is_zero() ? GaussRat(0) : f.num.terms()[0].coeff;
    return n / f.den.terms()[0].coeff;
  } catch (const ParseError& e) {
    throw ParseError("field '" + where + "': " + detail::bare_message(e));
  }
}

inline Matrix parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError("field '" + where + "' must be a non-empty array of rows");
  std::size_t n = j.size();
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = j[r];
    std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != n) throw ParseError("field '" + rw + "' must be a row of length " + std::to_string(n));
    for (std::size_t c = 0; c < n; ++c) {
      std::string cw = rw + "[" + std::to_string(c) + "]";
      m(r, c) = parse_constant(as_string(row[c], cw), cw);
    }
  }
  return m;
}

inline SubgroupKind parse_subgroup_kind(const std::string& s, const std::string& where) {
  if (s == "FULL") return SubgroupKind::Full;
  if (s == "TRIVIAL") return SubgroupKind::Trivial;
  if (s == "MU_N") return SubgroupKind::MuN;
  if (s == "DIAGONAL") return SubgroupKind::Diagonal;
  if (s == "SO2") return SubgroupKind::SO2;
  if (s == "FINITE_LIST") return SubgroupKind::FiniteList;
  throw ParseError("field '" + where + "': unknown subgroup kind '" + s + "'");
}

inline SubgroupSpec parse_subgroup(const Json& j, const std::string& where) {
  only_keys(j, where, {"kind", "n", "elements"});
  SubgroupSpec s;
  s.kind = parse_subgroup_kind(as_string(required(j, where, "kind"), where + ".kind"), where + ".kind");
  if (s.kind == SubgroupKind::MuN) {
    s.n = as_long(required(j, where, "n"), where + ".n");
    if (s.n <= 0) throw ParseError("field '" + where + ".n' must be positive");
  }
  if (s.kind == SubgroupKind::FiniteList) {
    const Json& el = required(j, where, "elements");
    if (!el.is_array() || el.empty()) throw ParseError("field '" + where + ".elements' must be a non-empty array");
    for (std::size_t k = 0; k < el.size(); ++k) {
      s.elements.push_back(parse_matrix(el[k], where + ".elements[" + std::to_string(k) + "]"));
    }
  }
  return s;
}

inline std::vector<SubgroupSpec> parse_subgroups(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError("field '" + where + "' must be an array");
  std::vector<SubgroupSpec> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(parse_subgroup(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace detail

inline void validate_expressions(const Scenario& s);

inline Scenario parse_scenario(const Json& j) {
  using namespace detail;
  only_keys(j, "", {"name", "base", "ode", "class", "radical", "scan", "budget", "expect", "lattice", "normality",
                    "weak_normality", "cocycles"});
  Scenario s;
  s.echo = j;
  s.name = as_string(required(j, "", "name"), "name");
  if (j.contains("base")) {
    const Json& b = j.at("base");
    only_keys(b, "base", {"kind", "variable"});
    std::string kind = as_string(required(b, "base", "kind"), "base.kind");
    if (kind == "rational_functions") {
      s.base = BaseKind::RationalFunctions;
      if (b.contains("variable")) s.variable = as_string(b.at("variable"), "base.variable");
    } else if (kind == "constants") {
      s.base = BaseKind::Constants;
      if (b.contains("variable")) throw ParseError("field 'base.variable' is not allowed for constants");
    } else {
      throw ParseError("field 'base.kind': unknown base '" + kind + "'");
    }
  }
  const Json& ode = required(j, "", "ode");
  only_keys(ode, "ode", {"order", "coefficients"});
  long order = as_long(required(ode, "ode", "order"), "ode.order");
  if (order <= 0) throw ParseError("field 'ode.order' must be positive");
  s.order = static_cast<std::size_t>(order);
  const Json& coeffs = required(ode, "ode", "coefficients");
  if (!coeffs.is_array() || coeffs.size() != s.order) {
    throw ParseError("field 'ode.coefficients' must list " + std::to_string(order) + " coefficients a0..a" +
                     std::to_string(order - 1));
  }
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    s.coefficients.push_back(as_string(coeffs[k], "ode.coefficients[" + std::to_string(k) + "]"));
  }
  std::string cls = as_string(required(j, "", "class"), "class");
  try {
    s.cls = parse_ode_class(cls);
  } catch (const Error& e) {
    throw ParseError("field 'class': " + bare_message(e));
  }
  if (j.contains("radical")) {
    const Json& r = j.at("radical");
    only_keys(r, "radical", {"f", "exponent"});
    GaussRat e = parse_constant(as_string(required(r, "radical", "exponent"), "radical.exponent"), "radical.exponent");
    if (!e.is_real()) throw ParseError("field 'radical.exponent' must be rational");
    s.radical = std::make_pair(as_string(required(r, "radical", "f"), "radical.f"), e.re());
  }
  if (j.contains("scan")) {
    const Json& sc = j.at("scan");
    only_keys(sc, "scan", {"degree", "coeff_degree"});
    if (sc.contains("degree")) s.scan.degree = static_cast<unsigned>(as_long(sc.at("degree"), "scan.degree"));
    if (sc.contains("coeff_degree")) {
      s.scan.coeff_degree = static_cast<unsigned>(as_long(sc.at("coeff_degree"), "scan.coeff_degree"));
    }
  }
  if (j.contains("budget")) {
    long b = as_long(j.at("budget"), "budget");
    if (b <= 0) throw ParseError("field 'budget' must be positive");
    s.budget = static_cast<std::size_t>(b);
  }
  if (j.contains("expect")) {
    const Json& ex = j.at("expect");
    only_keys(ex, "expect", {"group"});
    if (ex.contains("group")) {
      const Json& g = ex.at("group");
      if (!g.is_array()) throw ParseError("field 'expect.group' must be an array");
      std::vector<std::string> polys;
      for (std::size_t k = 0; k < g.size(); ++k) polys.push_back(as_string(g[k], "expect.group[" + std::to_string(k) + "]"));
      s.expected_group = polys;
    }
  }
  if (j.contains("lattice")) s.lattice = parse_subgroups(j.at("lattice"), "lattice");
  if (j.contains("normality")) s.normality = parse_subgroups(j.at("normality"), "normality");
  if (j.contains("weak_normality")) {
    const Json& w = j.at("weak_normality");
    if (!w.is_array()) throw ParseError("field 'weak_normality' must be an array of generator lists");
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::string where = "weak_normality[" + std::to_string(k) + "]";
      if (!w[k].is_array()) throw ParseError("field '" + where + "' must be an array of expressions");
      std::vector<std::string> gens;
      for (std::size_t m = 0; m < w[k].size(); ++m) gens.push_back(as_string(w[k][m], where + "[" + std::to_string(m) + "]"));
      s.weak_normality.push_back(gens);
    }
  }
  if (j.contains("cocycles")) {
    const Json& c = j.at("cocycles");
    if (!c.is_array()) throw ParseError("field 'cocycles' must be an array of matrices");
    for (std::size_t k = 0; k < c.size(); ++k) s.cocycles.push_back(parse_matrix(c[k], "cocycles[" + std::to_string(k) + "]"));
  }
  validate_expressions(s);
  return s;
}

inline Scenario parse_scenario_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(j);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

// ---------------------------------------------------------------------------
// From a parsed scenario to the algebraic objects

inline DiffTower scenario_base(const Scenario& s) {
  DiffTower k = s.base == BaseKind::Constants ? DiffTower::constants() : DiffTower::rational_functions(s.variable);
  return set_budget(k, s.budget);
}

inline FieldElement parse_element(const DiffTower& t, const std::string& text, const std::string& where) {
  try {
    return t.element(parse_ratfunc(text, t.context()));
  } catch (const ParseError& e) {
    throw ParseError("field '" + where + "': " + detail::bare_message(e));
  }
}

// Parses every expression that lives in the base field or in the matrix
// indeterminates, so malformed text is reported before any computation.
inline void validate_expressions(const Scenario& s) {
  DiffTower k = scenario_base(s);
  for (std::size_t j = 0; j < s.coefficients.size(); ++j) {
    parse_element(k, s.coefficients[j], "ode.coefficients[" + std::to_string(j) + "]");
  }
  if (s.radical) parse_element(k, s.radical->first, "radical.f");
  if (s.expected_group) {
    auto xctx = matrix_context(s.order);
    for (std::size_t j = 0; j < s.expected_group->size(); ++j) {
      try {
        parse_poly((*s.expected_group)[j], xctx);
      } catch (const ParseError& e) {
        throw ParseError("field 'expect.group[" + std::to_string(j) + "]': " + detail::bare_message(e));
      }
    }
  }
}

inline PVExtension scenario_pv(const Scenario& s) {
  DiffTower k = scenario_base(s);
  LinearODE ode;
  for (std::size_t j = 0; j < s.coefficients.size(); ++j) {
    ode.coeffs.push_back(parse_element(k, s.coefficients[j], "ode.coefficients[" + std::to_string(j) + "]"));
  }
  BuildOptions options;
  options.scan = s.scan;
  if (s.radical) options.radical = RadicalParams{parse_element(k, s.radical->first, "radical.f"), s.radical->second};
  return construct_pv(k, ode, s.cls, options);
}

inline Subgroup scenario_subgroup(const GaloisGroup& g, const SubgroupSpec& spec) {
  return make_subgroup(g, spec.kind, spec.n, spec.elements);
}

}  // namespace rpv
