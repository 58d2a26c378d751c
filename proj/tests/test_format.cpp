#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "gadam/format.hpp"

using namespace gadam;

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(parse_double(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Format, RandomBitPatternsRoundTripExactly) {
  std::mt19937_64 rng(1);
  int checked = 0;
  while (checked < 20000) {
    const double x = std::bit_cast<double>(rng());
    if (!std::isfinite(x)) continue;
    ++checked;
    EXPECT_EQ(std::bit_cast<std::uint64_t>(parse_double(format_double(x))),
              std::bit_cast<std::uint64_t>(x));
  }
}

TEST(Format, ParseRejectsGarbage) {
  EXPECT_THROW(parse_double(""), std::invalid_argument);
  EXPECT_THROW(parse_double("1.5x"), std::invalid_argument);
  EXPECT_THROW(parse_double("abc"), std::invalid_argument);
  EXPECT_EQ(parse_double(" +2.5 "), 2.5);
}

TEST(Format, NanRoundTrips) {
  EXPECT_TRUE(std::isnan(parse_double(format_double(std::numeric_limits<double>::quiet_NaN()))));
}

TEST(Format, Vectors) {
  EXPECT_EQ(format_vector({3.0, 0.0, -0.5}), "[3,0,-0.5]");
  EXPECT_EQ(parse_vector("[3, 0, -0.5]"), (std::vector<double>{3.0, 0.0, -0.5}));
  EXPECT_EQ(parse_vector("1,2"), (std::vector<double>{1.0, 2.0}));
  EXPECT_THROW(parse_vector("[1,2"), std::invalid_argument);
}
