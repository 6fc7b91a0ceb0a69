#include <gtest/gtest.h>

#include "rpv/seidenberg.hpp"
#include "support.hpp"

namespace rpv {
namespace {

using testing::Rng;

constexpr int kCases = 500;

// a + b*eps with eps^2 = 0. Evaluating a polynomial at P + eps*D(P) puts the
// derivation of the polynomial at P in the eps part.
struct Dual {
  GaussRat a, b;
  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
};

Dual eval_dual(const Poly& p, const std::vector<Dual>& point) {
  Dual total{GaussRat(0), GaussRat(0)};
  for (const auto& t : p.terms()) {
    Dual term{t.coeff, GaussRat(0)};
    for (std::size_t v = 0; v < t.mono.width(); ++v) {
      for (std::uint32_t e = 0; e < t.mono[v]; ++e) term = term * point.at(v);
    }
    total = total + term;
  }
  return total;
}

// Derivative of num/den at the point, or nothing when den vanishes there.
std::optional<GaussRat> oracle_derivative(const FieldElement& x, const std::vector<Dual>& point) {
  Dual n = eval_dual(x.num(), point), d = eval_dual(x.den(), point);
  if (d.a.is_zero()) return std::nullopt;
  return (n.b * d.a - n.a * d.b) / (d.a * d.a);
}

std::optional<GaussRat> value_at(const FieldElement& x, const std::vector<GaussRat>& point) {
  GaussRat d = testing::eval_at(x.den(), point);
  if (d.is_zero()) return std::nullopt;
  return testing::eval_at(x.num(), point) / d;
}

TEST(Derive, StandardExamples) {
  DiffTower k = DiffTower::rational_functions();
  EXPECT_EQ(derive(k.var("t")), k.one());
  DiffTower l = testing::circle_tower();
  FieldElement s = l.var("s"), c = l.var("c");
  EXPECT_EQ(derive(s), c);
  EXPECT_EQ(derive(c), -s);
  EXPECT_TRUE(derive(s * s + c * c).is_zero());
  EXPECT_TRUE(is_constant(s * s + c * c));
  EXPECT_FALSE(is_constant(l.var("t")));
  EXPECT_EQ(derive_n(s, 4), s);

  SeidenbergField f = build_seidenberg();
  FieldElement a = f.tower.var("a"), b = f.tower.var("b");
  EXPECT_TRUE(is_constant(a * a * f.tower.constant(GaussRat(4)) + b * b));
  EXPECT_FALSE(is_constant(a));
  EXPECT_TRUE(f.compatibility.is_zero());
}

TEST(Derive, QuotientRule) {
  DiffTower r = testing::radical_tower();
  FieldElement g = r.var("g"), t = r.var("t");
  EXPECT_EQ(derive(g), g / t.scaled(GaussRat(2)));
  // (1/g)' = -g'/g^2 = -1/(2 t g)
  EXPECT_EQ(derive(g.inverse()), (t * g).scaled(GaussRat(-2)).inverse());
  EXPECT_EQ(derive(g * g), r.one());
}

TEST(Derive, MatchesDualNumberOracle) {
  Rng rng(42);
  DiffTower circle = testing::circle_tower();
  DiffTower exp = testing::exp_tower();
  DiffTower radical = testing::radical_tower();
  int checked = 0;
  for (int k = 0; k < kCases; ++k) {
    Rat t0 = rng.nonzero_rat(), m = rng.nonzero_rat();
    {
      auto p = testing::circle_point(t0, m);
      std::vector<Dual> dp{{p[0], GaussRat(1)}, {p[1], p[2]}, {p[2], -p[1]}};
      FieldElement x = testing::random_element(rng, circle);
      auto want = oracle_derivative(x, dp);
      auto got = value_at(derive(x), p);
      if (want && got) {
        ASSERT_EQ(*got, *want) << x.str();
        ++checked;
      }
    }
    {
      GaussRat e0(rng.nonzero_rat());
      std::vector<GaussRat> p{GaussRat(t0), e0};
      std::vector<Dual> dp{{p[0], GaussRat(1)}, {e0, e0}};
      FieldElement x = testing::random_element(rng, exp);
      auto want = oracle_derivative(x, dp);
      auto got = value_at(derive(x), p);
      if (want && got) {
        ASSERT_EQ(*got, *want) << x.str();
      }
    }
    {
      GaussRat g0(m), tt = g0 * g0;
      std::vector<GaussRat> p{tt, g0};
      std::vector<Dual> dp{{tt, GaussRat(1)}, {g0, g0 / (tt * GaussRat(2))}};
      FieldElement x = testing::random_element(rng, radical);
      auto want = oracle_derivative(x, dp);
      auto got = value_at(derive(x), p);
      if (want && got) {
        ASSERT_EQ(*got, *want) << x.str();
      }
    }
  }
  EXPECT_GT(checked, kCases / 2);
}

TEST(Derive, LeibnizRule) {
  Rng rng(7);
  std::vector<DiffTower> towers{testing::circle_tower(), testing::exp_tower(), testing::radical_tower(),
                                complexify(testing::circle_tower())};
  for (int k = 0; k < kCases; ++k) {
    const DiffTower& tw = towers[static_cast<std::size_t>(k) % towers.size()];
    FieldElement x = testing::random_element(rng, tw), y = testing::random_element(rng, tw);
    ASSERT_EQ(derive(x * y), derive(x) * y + x * derive(y));
    ASSERT_EQ(derive(x + y), derive(x) + derive(y));
  }
}

TEST(Derive, CommutesWithConjugation) {
  Rng rng(8);
  std::vector<DiffTower> towers{complexify(testing::circle_tower()), complexify(testing::exp_tower()),
                                complexify(testing::radical_tower())};
  for (int k = 0; k < kCases; ++k) {
    const DiffTower& tw = towers[static_cast<std::size_t>(k) % towers.size()];
    FieldElement x = testing::random_element(rng, tw);
    ASSERT_EQ(conj(conj(x)), x);
    ASSERT_EQ(derive(conj(x)), conj(derive(x)));
    FieldElement y = testing::random_element(rng, tw);
    ASSERT_EQ(conj(x * y), conj(x) * conj(y));
  }
}

TEST(Adjoin, ExponentialAndAlgebraic) {
  DiffTower k = DiffTower::rational_functions();
  DiffTower l = adjoin_exponential(k, k.one());
  EXPECT_EQ(derive(l.var("e")), l.var("e"));
  DiffTower f = adjoin_exponential(k, k.constant(GaussRat(3)), "E");
  EXPECT_EQ(derive(f.var("E")), f.var("E").scaled(GaussRat(3)));

  DiffTower q = DiffTower::constants();
  DiffTower z = adjoin_exponential(q, q.zero());
  EXPECT_TRUE(is_constant(z.var("e")));

  EXPECT_NO_THROW(testing::radical_tower());
  EXPECT_NO_THROW(testing::circle_tower());
  auto ctx = k.extension_context({"g"});
  Poly g = poly_var(ctx, "g"), t = poly_var(ctx, "t");
  EXPECT_THROW(adjoin_algebraic(k, "g", g * g - t, {poly_const(ctx, GaussRat(1)), poly_const(ctx, GaussRat(1))}),
               IncompatibleDerivation);
  EXPECT_THROW(adjoin(k, {}), EmptyInput);
  EXPECT_THROW(adjoin_exponential(k, testing::exp_tower().var("e")), ContextError);
}

TEST(Adjoin, RejectsComplexData) {
  DiffTower k = DiffTower::rational_functions();
  auto ctx = k.extension_context({"y"});
  Poly y = poly_var(ctx, "y");
  EXPECT_THROW(adjoin(k, {{"y", GeneratorKind::Abstract, {y.scaled(GaussRat::i()), poly_const(ctx, GaussRat(1))},
                           std::nullopt}}),
               ModeError);
}

TEST(ConstantScan, Examples) {
  DiffTower circle = testing::circle_tower();
  EXPECT_TRUE(constant_scan(circle, 2, 0).constants.empty());
  EXPECT_TRUE(constant_scan(DiffTower::rational_functions(), 3, 3).constants.empty());

  DiffTower k = DiffTower::rational_functions();
  auto ctx = k.extension_context({"y1", "y2"});
  Poly y1 = poly_var(ctx, "y1"), y2 = poly_var(ctx, "y2"), one = poly_const(ctx, GaussRat(1));
  DiffTower free = adjoin(k, {{"y1", GeneratorKind::Abstract, {y2, one}, std::nullopt},
                              {"y2", GeneratorKind::Abstract, {-y1, one}, std::nullopt}});
  auto scan = constant_scan(free, 2, 0);
  ASSERT_EQ(scan.constants.size(), 1u);
  FieldElement expected = free.var("y1") * free.var("y1") + free.var("y2") * free.var("y2");
  EXPECT_TRUE(linear_coordinates(expected, scan.constants).has_value());
  for (const auto& c : scan.constants) EXPECT_TRUE(is_constant(c));
}

// The scan's kernel is cross-checked by brute force: every candidate
// combination with small coefficients that is constant must lie in the span.
TEST(ConstantScan, AgreesWithDirectSearch) {
  DiffTower k = DiffTower::constants();
  auto ctx = k.extension_context({"y", "z"});
  Poly y = poly_var(ctx, "y"), z = poly_var(ctx, "z"), one = poly_const(ctx, GaussRat(1));
  DiffTower free = adjoin(k, {{"y", GeneratorKind::Abstract, {z, one}, std::nullopt},
                              {"z", GeneratorKind::Abstract, {-y, one}, std::nullopt}});
  auto scan = constant_scan(free, 2, 0);
  FieldElement fy = free.var("y"), fz = free.var("z");
  std::vector<FieldElement> quad{fy * fy, fy * fz, fz * fz};
  int hits = 0;
  for (long a = -2; a <= 2; ++a) {
    for (long b = -2; b <= 2; ++b) {
      for (long c = -2; c <= 2; ++c) {
        FieldElement x = quad[0].scaled(GaussRat(a)) + quad[1].scaled(GaussRat(b)) + quad[2].scaled(GaussRat(c));
        if (x.is_zero() || !is_constant(x)) continue;
        ++hits;
        EXPECT_TRUE(linear_coordinates(x, scan.constants).has_value()) << x.str();
      }
    }
  }
  EXPECT_EQ(hits, 4);  // a = c in {-2, -1, 1, 2}, b = 0
}

TEST(Complexify, RoundTripAndConjugation) {
  DiffTower k = DiffTower::rational_functions();
  DiffTower f = complexify(k);
  EXPECT_TRUE(f.is_complexified());
  FieldElement it = f.imaginary_unit() * f.var("t");
  EXPECT_EQ(conj(it), -it);
  EXPECT_EQ(real_part(f), k);
  EXPECT_THROW(k.imaginary_unit(), ModeError);
  EXPECT_THROW(complexify(f), ModeError);
  EXPECT_THROW(real_part(k), ModeError);
  FieldElement x = f.var("t") * f.var("t") + f.one();
  EXPECT_EQ(to_real(x).str(), (k.var("t") * k.var("t") + k.one()).str());
  EXPECT_THROW(to_real(it), ModeError);
}

}  // namespace
}  // namespace rpv
