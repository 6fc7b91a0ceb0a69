#include <gtest/gtest.h>

#include "rpv/picard_vessiot.hpp"
#include "support.hpp"

namespace rpv {
namespace {

DiffTower base() { return DiffTower::rational_functions(); }

LinearODE ode_of(std::vector<FieldElement> coeffs) { return LinearODE{std::move(coeffs)}; }

PVExtension circle_pv() {
  DiffTower k = base();
  return build_pv(k, ode_of({k.one(), k.zero()}), ODEClass::Circle);
}

PVExtension exp_pv() {
  DiffTower k = base();
  return build_pv(k, ode_of({-k.one()}), ODEClass::Exp);
}

PVExtension radical_pv() {
  DiffTower k = base();
  FieldElement t = k.var("t");
  return build_pv(k, ode_of({-(t.scaled(GaussRat(2))).inverse()}), ODEClass::Radical);
}

// Independent certificate: the ODE residual computed from the Wronskian
// matrix rows, and the Wronskian by permutation expansion.
void expect_fundamental_system(const PVExtension& pv) {
  WrMatrix w;
  std::vector<FieldElement> row = pv.eta;
  for (std::size_t k = 0; k <= pv.order(); ++k) {
    w.push_back(row);
    for (auto& y : row) y = derive(y);
  }
  for (std::size_t j = 0; j < pv.order(); ++j) {
    FieldElement residual = w[pv.order()][j];
    for (std::size_t k = 0; k < pv.order(); ++k) residual = residual + pv.extension.lift(pv.ode.coeffs[k]) * w[k][j];
    EXPECT_TRUE(residual.is_zero()) << pv.eta[j].str();
  }
  w.pop_back();
  EXPECT_FALSE(testing::leibniz_det(w, pv.extension.zero()).is_zero());
}

TEST(BuildPV, Circle) {
  PVExtension pv = circle_pv();
  ASSERT_EQ(pv.extension.generators().size(), 2u);
  EXPECT_FALSE(pv.extension.describe().empty());
  FieldElement s = pv.extension.var("s"), c = pv.extension.var("c");
  EXPECT_EQ(s * s + c * c, pv.extension.one());
  EXPECT_TRUE(pv.certificates.all_ok());
  EXPECT_EQ(pv.certificates.wronskian, pv.extension.constant(GaussRat(-1)));
  expect_fundamental_system(pv);
  for (const auto& line : verify_pv(pv)) EXPECT_EQ(line.rfind("PASS", 0), 0u) << line;
}

TEST(BuildPV, RadicalAndExp) {
  PVExtension r = radical_pv();
  FieldElement g = r.extension.var("g");
  EXPECT_EQ(g * g, r.extension.var("t"));
  expect_fundamental_system(r);
  PVExtension e = exp_pv();
  EXPECT_EQ(derive(e.eta[0]), e.eta[0]);
  expect_fundamental_system(e);
}

TEST(BuildPV, ConstantCoefficientClasses) {
  DiffTower k = base();
  for (auto [a0, a1] : {std::pair{2L, -3L}, std::pair{1L, -2L}, std::pair{5L, -2L}}) {
    PVExtension pv = build_pv(k, ode_of({k.constant(GaussRat(a0)), k.constant(GaussRat(a1))}),
                              ODEClass::ConstCoeff2);
    EXPECT_TRUE(pv.certificates.all_ok()) << a0 << " " << a1;
    expect_fundamental_system(pv);
  }
}

TEST(BuildPV, Errors) {
  DiffTower k = base();
  EXPECT_THROW(build_pv(k, ode_of({k.one(), k.zero()}), ODEClass::Exp), UnsupportedEquation);
  EXPECT_THROW(build_pv(k, ode_of({-k.var("t")}), ODEClass::Radical), UnsupportedEquation);
  EXPECT_THROW(build_pv(complexify(k), ode_of({-k.one()}), ODEClass::Exp), ModeError);
  DiffTower q = DiffTower::constants();
  EXPECT_THROW(build_pv(q, ode_of({q.zero()}), ODEClass::Exp), NotPV);
}

TEST(Certify, FreeSolutionsHaveNewConstants) {
  DiffTower k = base();
  auto ctx = k.extension_context({"y1", "y2"});
  Poly y1 = poly_var(ctx, "y1"), y2 = poly_var(ctx, "y2"), one = poly_const(ctx, GaussRat(1));
  PVExtension pv;
  pv.base = k;
  pv.extension = adjoin(k, {{"y1", GeneratorKind::Abstract, {y2, one}, std::nullopt},
                            {"y2", GeneratorKind::Abstract, {-y1, one}, std::nullopt}});
  pv.ode = ode_of({k.one(), k.zero()});
  pv.eta = {pv.extension.var("y1"), pv.extension.var("y2")};
  pv.certificates = certify(pv, {2, 0});
  EXPECT_TRUE(pv.certificates.solutions_ok);
  EXPECT_TRUE(pv.certificates.wronskian_ok);
  ASSERT_FALSE(pv.certificates.scan_ok);
  FieldElement q = pv.eta[0] * pv.eta[0] + pv.eta[1] * pv.eta[1];
  EXPECT_TRUE(linear_coordinates(q, pv.certificates.scan.constants).has_value());
  EXPECT_EQ(verify_pv(pv)[2].rfind("FAIL", 0), 0u);
}

TEST(Realify, CircleFromExponentialBasis) {
  PVExtension pv = circle_pv();
  PVExtension cpv = complexify(pv);
  const DiffTower& g = cpv.extension;
  FieldElement s = g.var("s"), c = g.var("c"), i = g.imaginary_unit();
  Realification r = realify(cpv, {c + i * s, c - i * s});
  ASSERT_EQ(r.real.eta.size(), 2u);
  EXPECT_FALSE(r.needed_stabilization);
  for (const auto& y : r.fixed_basis) EXPECT_EQ(conj(y), y);
  EXPECT_TRUE(linear_coordinates(s, r.fixed_basis).has_value());
  EXPECT_TRUE(linear_coordinates(c, r.fixed_basis).has_value());
  EXPECT_TRUE(r.real.certificates.all_ok());
  EXPECT_FALSE(r.real.extension.is_complexified());
}

TEST(Realify, RoundTripIsGeneratorIdentical) {
  for (const PVExtension& pv : {circle_pv(), radical_pv(), exp_pv()}) {
    Realification r = realify(complexify(pv));
    ASSERT_EQ(r.real.eta.size(), pv.eta.size());
    for (std::size_t j = 0; j < pv.eta.size(); ++j) EXPECT_EQ(r.real.eta[j].str(), pv.eta[j].str());
    EXPECT_EQ(r.real.extension, pv.extension);
    EXPECT_EQ(r.real.extension.describe(), pv.extension.describe());
    EXPECT_TRUE(r.real.notes.empty());
  }
}

TEST(Realify, TwistedPresentationOfTheCircle) {
  PVExtension cpv = complexify(circle_pv());
  const DiffTower& g = cpv.extension;
  FieldElement i = g.imaginary_unit();
  Realification r = realify(cpv, {i * g.var("s"), i * g.var("c")});
  EXPECT_EQ(r.fixed_basis.size(), 2u);
  EXPECT_TRUE(linear_coordinates(g.var("s"), r.fixed_basis).has_value());
  EXPECT_THROW(realify(circle_pv()), ModeError);
}

}  // namespace
}  // namespace rpv
