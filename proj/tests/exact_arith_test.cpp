#include <gtest/gtest.h>

#include <algorithm>

#include "rpv/parse.hpp"
#include "support.hpp"

namespace rpv {
namespace {

using testing::Rng;

constexpr int kCases = 500;

ContextPtr stc() { return VarContext::make({"t", "s", "c"}, std::vector<int>{0, 1, 1}); }

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rat(6, -4).str(), "-3/2");
  EXPECT_EQ(Rat(0, 7).str(), "0/1");
  EXPECT_EQ(Rat::parse("-10/4"), Rat(-5, 2));
  EXPECT_THROW(Rat(1, 0), DivisionByZero);
  EXPECT_THROW(Rat(1) / Rat(0), DivisionByZero);
  EXPECT_THROW(Rat::parse("x"), ParseError);
  EXPECT_EQ(*Rat(9, 4).sqrt(), Rat(3, 2));
  EXPECT_FALSE(Rat(2).sqrt().has_value());
}

TEST(Rational, GaussianText) {
  GaussRat z(Rat(1, 2), Rat(-3, 4));
  EXPECT_EQ(z.str(), "(1/2-3/4*i)");
  EXPECT_EQ(GaussRat(Rat(2)).str(), "2/1");
  EXPECT_EQ(GaussRat::i() * GaussRat::i(), GaussRat(-1));
  EXPECT_EQ(*GaussRat(-4).sqrt(), GaussRat(Rat(0), Rat(2)));
  EXPECT_EQ(z * z.inverse(), GaussRat(1));
}

TEST(Rational, ConjIsInvolutiveRingHomomorphism) {
  Rng rng(11);
  for (int k = 0; k < kCases; ++k) {
    GaussRat a = rng.gauss(true), b = rng.gauss(true);
    ASSERT_EQ(a.conj().conj(), a);
    ASSERT_EQ((a + b).conj(), a.conj() + b.conj());
    ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
    ASSERT_EQ((a * a.conj()).im(), Rat(0));
  }
}

TEST(Poly, SmallIdentities) {
  auto ctx = stc();
  Poly s = poly_var(ctx, "s"), c = poly_var(ctx, "c");
  EXPECT_EQ((s + c) + (s - c), s.scaled(GaussRat(2)));
  EXPECT_EQ((s + c) * (s - c), s * s - c * c);
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    Poly p = testing::random_poly(rng, ctx, testing::all_vars(ctx));
    EXPECT_TRUE((Poly(ctx) * p).is_zero());
  }
}

TEST(Poly, RingAxiomsAgainstPointEvaluation) {
  auto ctx = stc();
  auto vars = testing::all_vars(ctx);
  Rng rng(1234);
  for (int k = 0; k < kCases; ++k) {
    bool complex = k % 2 == 1;
    Poly p = testing::random_poly(rng, ctx, vars, 6, 3, complex);
    Poly q = testing::random_poly(rng, ctx, vars, 6, 3, complex);
    Poly r = testing::random_poly(rng, ctx, vars, 6, 3, complex);
    ASSERT_EQ((p * q) * r, p * (q * r));
    ASSERT_EQ((p + q) + r, p + (q + r));
    ASSERT_EQ(p * (q + r), p * q + p * r);
    ASSERT_EQ(p * q, q * p);
    ASSERT_EQ(p + q, q + p);
    ASSERT_TRUE((p - p).is_zero());
    std::vector<GaussRat> x{rng.gauss(complex), rng.gauss(complex), rng.gauss(complex)};
    using testing::eval_at;
    ASSERT_EQ(eval_at(p * q, x), eval_at(p, x) * eval_at(q, x));
    ASSERT_EQ(eval_at(p + q, x), eval_at(p, x) + eval_at(q, x));
    ASSERT_EQ(conj(conj(p)), p);
    ASSERT_EQ(conj(p * q), conj(p) * conj(q));
  }
}

TEST(Poly, CanonicalTextRoundTrip) {
  auto ctx = stc();
  Rng rng(77);
  for (int k = 0; k < kCases; ++k) {
    Poly p = testing::random_poly(rng, ctx, testing::all_vars(ctx), 6, 3, k % 3 == 0);
    std::string text = to_string(p);
    ASSERT_EQ(parse_poly(text, ctx), p) << text;
    ASSERT_EQ(to_string(parse_poly(text, ctx)), text);
  }
}

TEST(Groebner, KnownBases) {
  // c before s, so s is the larger variable.
  auto ctx = VarContext::make({"t", "c", "s"}, std::vector<int>{0, 1, 1});
  Poly s = poly_var(ctx, "s"), c = poly_var(ctx, "c"), t = poly_var(ctx, "t");
  Poly one = poly_const(ctx, GaussRat(1));
  RewriteSystem circle = buchberger({s * s + c * c - one});
  ASSERT_EQ(circle.rules().size(), 1u);
  EXPECT_EQ(circle.describe().front(), "1/1*s^2 -> -1/1*c^2 + 1/1");
  EXPECT_EQ(normal_form(s * s, circle), one - c * c);
  EXPECT_EQ(normal_form(s * s * s, circle), s - s * c * c);
  EXPECT_EQ(normal_form(c * c, circle), c * c);

  auto gctx = VarContext::make({"t", "g"}, std::vector<int>{0, 1});
  Poly g = poly_var(gctx, "g"), tg = poly_var(gctx, "t");
  RewriteSystem radical = buchberger({g * g - tg});
  ASSERT_EQ(radical.rules().size(), 1u);
  EXPECT_EQ(normal_form(g * g, radical), tg);

  auto xyz = VarContext::make({"x", "y", "z"});
  Poly x = poly_var(xyz, "x"), y = poly_var(xyz, "y"), z = poly_var(xyz, "z");
  RewriteSystem lin = buchberger({x - y, y - z});
  EXPECT_EQ(lin.rules().size(), 2u);
  EXPECT_TRUE(normal_form(x - z, lin).is_zero());
  EXPECT_EQ(normal_form(x, lin), normal_form(y, lin));
  (void)t;
}

TEST(Groebner, BudgetIsEnforced) {
  auto ctx = VarContext::make({"x", "y", "z"});
  Poly x = poly_var(ctx, "x"), y = poly_var(ctx, "y"), z = poly_var(ctx, "z");
  std::vector<Poly> gens{x * x - y * z, x * y - z * z, y * y - x * z + z};
  RewriteSystem full = buchberger(gens);
  ASSERT_GE(full.steps(), 1u);
  EXPECT_THROW(buchberger(gens, full.steps() - 1), BudgetExceeded);
  EXPECT_EQ(buchberger(gens, full.steps()), full);
}

// Normal forms agree with the input on points of the variety, are fixed by a
// second reduction, and do not depend on the order the rules are tried in.
TEST(Groebner, NormalFormProperties) {
  auto ctx = stc();
  Poly s = poly_var(ctx, "s"), c = poly_var(ctx, "c"), t = poly_var(ctx, "t");
  Poly one = poly_const(ctx, GaussRat(1));
  RewriteSystem circle = buchberger({s * s + c * c - one});
  auto xyz = VarContext::make({"x", "y", "z"});
  Poly x = poly_var(xyz, "x"), y = poly_var(xyz, "y"), z = poly_var(xyz, "z");
  RewriteSystem cubic = buchberger({x * x - y * z, y * y - x * z - poly_const(xyz, GaussRat(1)), x * y - z});
  ASSERT_GE(cubic.rules().size(), 2u);
  Rng rng(99);
  for (int k = 0; k < kCases; ++k) {
    Poly p = testing::random_poly(rng, ctx, testing::all_vars(ctx), 6, 4);
    Poly nf = normal_form(p, circle);
    ASSERT_EQ(normal_form(nf, circle), nf);
    auto point = testing::circle_point(rng.rat(), rng.rat());
    ASSERT_EQ(testing::eval_at(nf, point), testing::eval_at(p, point));
    for (const auto& term : nf.terms()) ASSERT_TRUE(circle.is_standard(term.mono));

    Poly q = testing::random_poly(rng, xyz, testing::all_vars(xyz), 6, 4);
    std::vector<Poly> rules = cubic.rules();
    Poly reference = reduce_fully(q, rules);
    ASSERT_EQ(normal_form(reference, cubic), reference);
    std::shuffle(rules.begin(), rules.end(), rng.engine());
    ASSERT_EQ(reduce_fully(q, rules), reference);
  }
  (void)t;
}

TEST(Groebner, IdealMembershipOfCombinations) {
  auto xyz = VarContext::make({"x", "y", "z"});
  auto vars = testing::all_vars(xyz);
  Poly x = poly_var(xyz, "x"), y = poly_var(xyz, "y"), z = poly_var(xyz, "z");
  std::vector<Poly> gens{x * x - y, x * y - z};
  RewriteSystem gb = buchberger(gens);
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Poly a = testing::random_poly(rng, xyz, vars, 4, 2), b = testing::random_poly(rng, xyz, vars, 4, 2);
    ASSERT_TRUE(in_ideal(a * gens[0] + b * gens[1], gb));
  }
  EXPECT_FALSE(in_ideal(x, gb));
}

TEST(RatFunc, EqualityAndInverse) {
  DiffTower l = testing::circle_tower();
  FieldElement s = l.var("s"), c = l.var("c");
  EXPECT_EQ((l.one() - c * c) / s, s);
  DiffTower r = testing::radical_tower();
  FieldElement g = r.var("g"), t = r.var("t");
  EXPECT_EQ((g / t).inverse(), t / g);
  EXPECT_EQ((g / t).inverse(), g.inverse() * t);
  EXPECT_THROW((s * s + c * c - l.one()).inverse(), DivisionByZero);
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    FieldElement p = testing::random_element(rng, l), q = testing::random_element(rng, l);
    if (q.is_zero()) continue;
    ASSERT_EQ(p / q, p / q);
    ASSERT_EQ((p / q) * q, p);
  }
}

TEST(Parse, ErrorsCarryLocation) {
  auto ctx = stc();
  try {
    parse_poly("s + q", ctx);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("offset 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_poly("s/t", ctx), ParseError);
  EXPECT_THROW(parse_poly("(s", ctx), ParseError);
}

TEST(Linalg, RankMatchesIndependentElimination) {
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    std::size_t rows = static_cast<std::size_t>(rng.between(1, 4)), cols = static_cast<std::size_t>(rng.between(1, 4));
    Matrix m(rows, cols);
    std::vector<std::vector<GaussRat>> dense(rows, std::vector<GaussRat>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        GaussRat v = rng.between(0, 2) == 0 ? GaussRat(0) : rng.gauss(k % 2 == 1, 3);
        m(i, j) = v;
        dense[i][j] = v;
      }
    }
    ASSERT_EQ(m.rank(), testing::dense_rank(dense));
    for (const auto& v : m.kernel()) {
      for (std::size_t i = 0; i < rows; ++i) {
        GaussRat sum(0);
        for (std::size_t j = 0; j < cols; ++j) sum = sum + m(i, j) * v[j];
        ASSERT_TRUE(sum.is_zero());
      }
    }
    ASSERT_EQ(m.kernel().size() + m.rank(), cols);
    if (rows == cols) {
      ASSERT_EQ(m.determinant(), testing::leibniz_det(dense, GaussRat(0)));
    }
  }
}

}  // namespace
}  // namespace rpv
