#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gadam/minnorm.hpp"
#include "grid_oracle.hpp"
#include "random_inputs.hpp"

using namespace gadam;
using gadam::testing::grid_min_norm;
using gadam::testing::random_point;

TEST(MinNorm, SingleVertex) {
  const auto r = min_norm_point(HullSpec({Point{3.0, -4.0}}));
  EXPECT_EQ(r.point, (Point{3.0, -4.0}));
  ASSERT_EQ(r.coefficients.size(), 1u);
  EXPECT_EQ(r.coefficients[0], 1.0);
}

TEST(MinNorm, SymmetricPairContainsOrigin) {
  const HullSpec hull({Point{1.0, 0.0}, Point{-1.0, 0.0}});
  EXPECT_LT(euclid_norm(min_norm_point(hull).point), 1e-12);
  EXPECT_TRUE(hull_contains_origin(hull));
  EXPECT_FALSE(hull_contains_origin(HullSpec({Point{1.0, 0.0}})));
}

TEST(MinNorm, DiagonalOfAxisPair) {
  const HullSpec hull({Point{2.0, 0.0}, Point{0.0, 2.0}});
  const auto r = min_norm_point(hull);
  EXPECT_NEAR(r.point[0], 1.0, 1e-12);
  EXPECT_NEAR(r.point[1], 1.0, 1e-12);
  EXPECT_NEAR(euclid_norm(r.point), grid_min_norm(hull.vertices(), 1e-3), 1e-3);
  EXPECT_FALSE(hull_contains_origin(hull));
}

TEST(MinNorm, RejectsEmptyOrRaggedHull) {
  EXPECT_THROW(HullSpec({}), std::invalid_argument);
  EXPECT_THROW(HullSpec({Point{1.0}, Point{1.0, 2.0}}), std::invalid_argument);
}

TEST(MinNorm, AgreesWithSimplexGridSearchInPlane) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 100; ++k) {
    std::vector<Point> v;
    const int count = 1 + k % 3;
    for (int i = 0; i < count; ++i) v.push_back(random_point(rng, 2, 3.0));
    const auto r = min_norm_point(HullSpec(v));
    EXPECT_NEAR(euclid_norm(r.point), grid_min_norm(v, 1e-3), 1e-3) << "hull " << k;
  }
}

TEST(MinNormProperties, CertificateCoefficientsAndVertexBound) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 300; ++k) {
    const std::size_t dim = 1 + k % 6;
    std::vector<Point> v;
    const int count = 1 + k % 8;
    for (int i = 0; i < count; ++i) v.push_back(random_point(rng, dim, 2.0));
    const HullSpec hull(v);
    const auto r = min_norm_point(hull);
    EXPECT_LE(certificate_residual(hull, r.point, 1e-10), 0.0);
    double total = 0.0;
    for (double c : r.coefficients) {
      EXPECT_GE(c, 0.0);
      total += c;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (const auto& q : v) EXPECT_LE(euclid_norm(r.point), euclid_norm(q) + 1e-12);
  }
}

TEST(MinNormProperties, IndependentOfVertexOrder) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 300; ++k) {
    const std::size_t dim = 2 + k % 4;
    std::vector<Point> v;
    for (int i = 0; i < 2 + k % 6; ++i) v.push_back(random_point(rng, dim, 2.0));
    const auto a = min_norm_point(HullSpec(v)).point;
    std::shuffle(v.begin(), v.end(), rng);
    const auto b = min_norm_point(HullSpec(v)).point;
    EXPECT_LT(euclid_norm(a - b), 1e-8);
  }
}

TEST(MinNormProperties, AddingTheAnswerAsVertexChangesNothing) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 200; ++k) {
    std::vector<Point> v;
    for (int i = 0; i < 3; ++i) v.push_back(random_point(rng, 3, 1.0));
    const auto a = min_norm_point(HullSpec(v)).point;
    v.push_back(a);
    const auto b = min_norm_point(HullSpec(v)).point;
    EXPECT_LT(euclid_norm(a - b), 1e-10);
  }
}

TEST(MinNorm, AxisHullsOfTiedMaxCoordinates) {
  for (std::size_t n = 2; n <= 8; ++n) {
    std::vector<Point> v;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> c(n, 0.0);
      c[i] = 2.0;
      v.emplace_back(c);
    }
    const auto r = min_norm_point(HullSpec(v));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(r.point[i], 2.0 / n, 1e-12);
  }
}
