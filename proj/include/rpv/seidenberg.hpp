#pragma once

// Seidenberg's field: constants Q with a, b adjoined, a' = b, b' = -4a and
// 4a^2 + b^2 + 1 = 0. It is not real, and adjoining solutions of Y'' + Y = 0
// over it produces new constants.

#include <string>
#include <vector>

#include "rpv/picard_vessiot.hpp"
#include "rpv/real_forms.hpp"
#include "rpv/report.hpp"

namespace rpv {

struct SeidenbergField {
  DiffTower tower;
  FieldElement compatibility;  // derivative of 4a^2 + b^2, reduced
};

inline SeidenbergField build_seidenberg() {
  DiffTower k = DiffTower::constants();
  auto ctx = k.extension_context({"a", "b"});
  Poly a = poly_var(ctx, "a"), b = poly_var(ctx, "b"), one = poly_const(ctx, GaussRat(1));
  DiffTower s = adjoin(k, {{"a", GeneratorKind::Abstract, {b, one}, std::nullopt},
                           {"b", GeneratorKind::Abstract, {a.scaled(GaussRat(-4)), one},
                            a * a * poly_const(ctx, GaussRat(4)) + b * b + one}});
  FieldElement ae = s.var("a"), be = s.var("b");
  FieldElement lhs = ae * ae * s.constant(GaussRat(4)) + be * be;
  return {s, derive(lhs)};
}

struct SeidenbergReport {
  std::vector<Check> checks;
  std::vector<FieldElement> constants;
  std::vector<std::string> notes;
};

inline SeidenbergReport new_constant_demo(unsigned degree_bound = 2, unsigned contrast_degree_bound = 3) {
  SeidenbergReport r;
  SeidenbergField f = build_seidenberg();
  const DiffTower& k = f.tower;
  FieldElement a = k.var("a"), b = k.var("b");
  r.checks.push_back(pass_if(f.compatibility.is_zero(), "relation is compatible with the derivation",
                             "(4a^2 + b^2)' = 8ab - 8ab = " + f.compatibility.str()));
  r.checks.push_back(pass_if(!is_constant(a), "a is not a constant", "a' = " + derive(a).str()));
  auto w = non_reality_witness(k);
  r.checks.push_back(pass_if(w && w->verify(), "-1 is a sum of squares in the base",
                             w ? "(" + join([&] {
                                   std::vector<std::string> s;
                                   for (const auto& q : w->squares) s.push_back(q.str() + ")^2");
                                   return s;
                                 }(), " + (") + " = -1"
                               : "no witness found within bounds"));

  // Two abstract solutions of Y'' + Y = 0, with no relation.
  auto ctx = k.extension_context({"y1", "z1", "y2", "z2"});
  Poly one = poly_const(ctx, GaussRat(1));
  std::vector<NewGenerator> batch;
  for (const char* idx : {"1", "2"}) {
    Poly y = poly_var(ctx, std::string("y") + idx), z = poly_var(ctx, std::string("z") + idx);
    batch.push_back({std::string("y") + idx, GeneratorKind::Abstract, {z, one}, std::nullopt});
    batch.push_back({std::string("z") + idx, GeneratorKind::Abstract, {-y, one}, std::nullopt});
  }
  DiffTower l = adjoin(k, batch);
  ConstantScan scan = constant_scan(l, degree_bound, 0);
  r.constants = detail::canonical_span_basis(l, scan.constants);
  bool all_zero = true, all_new = true;
  std::vector<std::string> text;
  for (const auto& c : r.constants) {
    if (!derive(c).is_zero()) all_zero = false;
    if (!l.involves_generators(c) || l.in_base_field(c)) all_new = false;
    text.push_back(c.str());
  }
  r.checks.push_back(info("constant scan", std::to_string(scan.candidates) + " candidates up to degree " +
                                               std::to_string(degree_bound) + ", " +
                                               std::to_string(r.constants.size()) + " constants: " + join(text, "; ")));
  r.checks.push_back(pass_if(all_zero && !r.constants.empty(), "scanned constants have zero derivative"));
  auto y1 = l.var("y1"), z1 = l.var("z1"), y2 = l.var("y2"), z2 = l.var("z2");
  std::vector<std::pair<std::string, FieldElement>> expected{{"y1^2 + z1^2", y1 * y1 + z1 * z1},
                                                             {"y2^2 + z2^2", y2 * y2 + z2 * z2},
                                                             {"y1*z2 - y2*z1", y1 * z2 - y2 * z1}};
  for (const auto& [name, x] : expected) {
    bool found = linear_coordinates(x, r.constants).has_value();
    r.checks.push_back(pass_if(found && derive(x).is_zero(), "constant " + name, "derivative " + derive(x).str()));
  }
  r.checks.push_back(pass_if(all_new, "constants are not in the base",
                             "each involves the adjoined solutions; the base constants are Q"));
  r.notes.push_back("evidence for the obstruction: adjoining solutions of Y'' + Y = 0 creates new constants; "
                    "this does not prove that no Picard-Vessiot extension exists");

  // Contrast: y^2 + z^2 = 1 gives the sin/cos presentation over this base.
  auto cctx = k.extension_context({"y", "z"});
  Poly y = poly_var(cctx, "y"), z = poly_var(cctx, "z"), cone = poly_const(cctx, GaussRat(1));
  DiffTower circle = adjoin(k, {{"y", GeneratorKind::Abstract, {z, cone}, std::nullopt},
                                {"z", GeneratorKind::Abstract, {-y, cone}, y * y + z * z - cone}});
  ConstantScan cscan = constant_scan(circle, contrast_degree_bound, 0);
  std::vector<std::string> ctext;
  for (const auto& c : detail::canonical_span_basis(circle, cscan.constants)) ctext.push_back(c.str());
  r.checks.push_back(info("contrast: y^2 + z^2 = 1 over the base",
                          std::to_string(cscan.constants.size()) + " constants up to degree " +
                              std::to_string(contrast_degree_bound) + (ctext.empty() ? "" : ": " + join(ctext, "; "))));
  return r;
}

}  // namespace rpv
