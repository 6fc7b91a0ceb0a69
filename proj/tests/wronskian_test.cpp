#include <gtest/gtest.h>

#include <utility>

#include "rpv/wronskian.hpp"
#include "support.hpp"

namespace rpv {
namespace {

using testing::Rng;

TEST(Wronskian, MatrixShape) {
  DiffTower l = testing::circle_tower();
  FieldElement s = l.var("s"), c = l.var("c");
  WrMatrix w = wronskian_matrix({s, c});
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0][0], s);
  EXPECT_EQ(w[0][1], c);
  EXPECT_EQ(w[1][0], c);
  EXPECT_EQ(w[1][1], -s);

  DiffTower e = testing::exp_tower();
  WrMatrix we = wronskian_matrix({e.var("e")});
  ASSERT_EQ(we.size(), 1u);
  EXPECT_EQ(we[0][0], e.var("e"));

  DiffTower k = DiffTower::rational_functions();
  FieldElement t = k.var("t");
  WrMatrix wt = wronskian_matrix({t, t * t});
  EXPECT_EQ(wt[1][0], k.one());
  EXPECT_EQ(wt[1][1], t.scaled(GaussRat(2)));
  EXPECT_THROW(wronskian_matrix({}), EmptyInput);
}

TEST(Wronskian, Determinants) {
  DiffTower l = testing::circle_tower();
  EXPECT_EQ(wronskian_det({l.var("s"), l.var("c")}), l.constant(GaussRat(-1)));
  DiffTower e = testing::exp_tower();
  EXPECT_TRUE(wronskian_det({e.var("e"), e.var("e").scaled(GaussRat(2))}).is_zero());
  DiffTower k = DiffTower::rational_functions();
  FieldElement t = k.var("t");
  EXPECT_EQ(wronskian_det({t, t * t}), t * t);
}

TEST(Wronskian, Independence) {
  DiffTower l = testing::circle_tower();
  EXPECT_TRUE(independent_over_constants({l.var("s"), l.var("c")}));
  DiffTower e = testing::exp_tower();
  EXPECT_FALSE(independent_over_constants({e.var("e"), e.var("e").scaled(GaussRat(2))}));
  DiffTower k = DiffTower::rational_functions();
  FieldElement t = k.var("t");
  EXPECT_TRUE(independent_over_constants({k.one(), t, t * t}));
}

// Elements built from both the circle and exponential generators.
DiffTower mixed_tower() {
  DiffTower l = testing::circle_tower();
  return adjoin_exponential(l, l.one());
}

TEST(Wronskian, BareissAgreesWithPermutationExpansion) {
  DiffTower l = mixed_tower();
  Rng rng(17);
  for (int k = 0; k < 60; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(1, 3));
    std::vector<FieldElement> ys;
    for (std::size_t j = 0; j < n; ++j) ys.push_back(testing::random_element(rng, l, 3, 2));
    WrMatrix w = wronskian_matrix(ys);
    ASSERT_EQ(determinant(w), testing::leibniz_det(w, l.zero()));
  }
}

TEST(Wronskian, ConstantDependentFamiliesVanish) {
  DiffTower l = mixed_tower();
  Rng rng(18);
  for (int k = 0; k < 60; ++k) {
    std::size_t n = static_cast<std::size_t>(rng.between(1, 2));
    std::vector<FieldElement> ys;
    for (std::size_t j = 0; j < n; ++j) ys.push_back(testing::random_element(rng, l, 3, 2));
    FieldElement dependent = l.zero();
    for (const auto& y : ys) dependent = dependent + y.scaled(GaussRat(rng.rat(4)));
    ys.insert(ys.begin() + rng.between(0, static_cast<long>(n)), dependent);
    ASSERT_TRUE(wronskian_det(ys).is_zero());
  }
}

TEST(Wronskian, AlternatingUnderSwaps) {
  DiffTower l = mixed_tower();
  std::vector<FieldElement> pool{l.var("s"), l.var("c"), l.var("e"), l.var("t"), l.var("s") * l.var("e")};
  Rng rng(19);
  for (int k = 0; k < 200; ++k) {
    std::vector<FieldElement> ys;
    std::size_t n = static_cast<std::size_t>(rng.between(2, 3));
    for (std::size_t j = 0; j < n; ++j) ys.push_back(pool[static_cast<std::size_t>(rng.between(0, 4))]);
    std::size_t a = static_cast<std::size_t>(rng.between(0, static_cast<long>(n) - 1));
    std::size_t b = (a + static_cast<std::size_t>(rng.between(1, static_cast<long>(n) - 1))) % n;
    FieldElement before = wronskian_det(ys);
    std::swap(ys[a], ys[b]);
    ASSERT_EQ(wronskian_det(ys), -before);
  }
}

}  // namespace
}  // namespace rpv
