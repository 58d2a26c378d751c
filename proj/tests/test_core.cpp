#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gadam/core.hpp"
#include "random_inputs.hpp"

using namespace gadam;
using gadam::testing::random_point;
using gadam::testing::random_state;

TEST(Point, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Point(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW((Point{1.0, std::numeric_limits<double>::quiet_NaN()}), std::domain_error);
  EXPECT_THROW((Point{std::numeric_limits<double>::infinity()}), std::domain_error);
  EXPECT_EQ(Point::zeros(3), (Point{0.0, 0.0, 0.0}));
}

TEST(NonnegPoint, RejectsNegativeCoordinate) {
  EXPECT_THROW((NonnegPoint{0.0, -1e-300}), std::domain_error);
  EXPECT_NO_THROW((NonnegPoint{0.0, 2.0}));
}

TEST(AdamState, DimensionsMustAgree) {
  EXPECT_THROW(AdamState(Point{1.0}, NonnegPoint{1.0, 2.0}, Point{0.0}), std::invalid_argument);
  const auto x = AdamState::at_rest(Point{1.0, 2.0});
  EXPECT_EQ(x.m, Point::zeros(2));
  EXPECT_EQ(x.v.point(), Point::zeros(2));
}

TEST(Arithmetic, MismatchedDimensionsThrow) {
  EXPECT_THROW(Point{1.0} + (Point{1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(dot(Point{1.0}, Point{1.0, 2.0}), std::invalid_argument);
}

TEST(CwSquare, Examples) {
  EXPECT_EQ(cw_square(Point{0.0, 0.0}).point(), (Point{0.0, 0.0}));
  EXPECT_EQ(cw_square(Point{3.0, -2.0}).point(), (Point{9.0, 4.0}));
  EXPECT_EQ(cw_square(Point{1.5}).point(), (Point{2.25}));
}

TEST(CwDivSqrtShift, Examples) {
  EXPECT_EQ(cw_div_sqrt_shift(Point{0.0, 0.0}, NonnegPoint{5.0, 7.0}, 1.0), (Point{0.0, 0.0}));
  EXPECT_EQ(cw_div_sqrt_shift(Point{2.0}, NonnegPoint{3.0}, 1.0), (Point{1.0}));
  EXPECT_NEAR(cw_div_sqrt_shift(Point{0.9}, NonnegPoint{0.5}, 1.0)[0], 0.9 / std::sqrt(1.5), 1e-15);
  EXPECT_NEAR(cw_div_sqrt_shift(Point{0.9}, NonnegPoint{0.5}, 1.0)[0], 0.734847, 1e-6);
  EXPECT_THROW(cw_div_sqrt_shift(Point{1.0}, NonnegPoint{1.0}, 0.0), std::invalid_argument);
}

TEST(EuclidNorm, Examples) {
  EXPECT_EQ(euclid_norm(Point{0.0, 0.0, 0.0}), 0.0);
  EXPECT_EQ(euclid_norm(Point{3.0, 4.0}), 5.0);
  EXPECT_NEAR(euclid_norm(Point{1.0, 1.0}), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(euclid_norm(Point{1e200, 1e200}), std::sqrt(2.0) * 1e200, 1e185);
  EXPECT_NEAR(euclid_norm(Point{3e-200, 4e-200}), 5e-200, 1e-214);
}

TEST(StateInfNorm, Examples) {
  EXPECT_EQ(state_inf_norm(AdamState::at_rest(Point{0.0, 0.0})), 0.0);
  EXPECT_EQ(state_inf_norm(AdamState(Point{3.0, 4.0}, NonnegPoint{0.0, 0.0}, Point{1.0, 0.0})), 5.0);
  EXPECT_EQ(state_inf_norm(AdamState(Point{1.0}, NonnegPoint{2.0}, Point{1.5})), 2.0);
}

TEST(TripleNorm, Examples) {
  EXPECT_EQ(triple_norm(AdamState(Point{1.0}, NonnegPoint{1.0}, Point{1.0}), 2.0), 2.0);
  EXPECT_EQ(triple_norm(AdamState(Point{0.0}, NonnegPoint{3.0}, Point{1.0}), 2.0), 3.0);
  EXPECT_THROW(triple_norm(AdamState::at_rest(Point{1.0}), 0.5), std::invalid_argument);
}

TEST(TripleNorm, WithUnitWeightEqualsStateInfNorm) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const auto x = random_state(rng, 1 + k % 6, 10.0);
    EXPECT_EQ(triple_norm(x, 1.0), state_inf_norm(x));
    EXPECT_GE(triple_norm(x, 1.0 + (k % 5)), state_inf_norm(x));
  }
}

TEST(OffsetFrom, SubtractsMinimizerFromWeightsOnly) {
  const AdamState x(Point{1.0, 2.0}, NonnegPoint{3.0, 4.0}, Point{5.0, 6.0});
  const AdamState d = offset_from(x, Point{1.0, 1.0});
  EXPECT_EQ(d.m, x.m);
  EXPECT_EQ(d.v, x.v);
  EXPECT_EQ(d.w, (Point{4.0, 5.0}));
}

TEST(CoreProperties, ComponentwiseOpsCommuteWithPermutation) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 7;
    const Point a = random_point(rng, n, 5.0);
    const NonnegPoint d = gadam::testing::random_nonneg(rng, n, 5.0);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto permute = [&](std::span<const double> c) {
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = c[perm[i]];
      return out;
    };
    const Point pa(permute(a.coords()));
    const NonnegPoint pd(permute(d.coords()));
    EXPECT_EQ(cw_square(pa).point(), Point(permute(cw_square(a).coords())));
    EXPECT_EQ(cw_div_sqrt_shift(pa, pd, 0.5), Point(permute(cw_div_sqrt_shift(a, d, 0.5).coords())));
  }
}

TEST(CoreProperties, NormsAreHomogeneousAndSubadditive) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(-10.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + k % 8;
    const Point a = random_point(rng, n, 3.0);
    const Point b = random_point(rng, n, 3.0);
    const double s = scale(rng);
    EXPECT_NEAR(euclid_norm(s * a), std::abs(s) * euclid_norm(a), 1e-12 * (1 + std::abs(s)));
    EXPECT_LE(euclid_norm(a + b), euclid_norm(a) + euclid_norm(b) + 1e-12);
    const auto x = random_state(rng, n);
    const auto y = random_state(rng, n);
    const AdamState sum(x.m + y.m, NonnegPoint((x.v.point() + y.v.point()).values()), x.w + y.w);
    EXPECT_LE(triple_norm(sum, 2.0), triple_norm(x, 2.0) + triple_norm(y, 2.0) + 1e-12);
  }
}

TEST(CoreProperties, SquareIsNonnegative) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 500; ++k) {
    for (double c : cw_square(random_point(rng, 4, 1e3)).coords()) EXPECT_GE(c, 0.0);
  }
}
