#include <gtest/gtest.h>

#include "skelpot/error.hpp"
#include "skelpot/rational.hpp"

using namespace skelpot;

TEST(Rational, ParsesCanonically) {
  EXPECT_EQ(parse_rational("6/10"), Rational(3, 5));
  EXPECT_EQ(to_string(parse_rational("6/10")), "3/5");
  EXPECT_EQ(to_string(parse_rational("-4/2")), "-2");
  EXPECT_EQ(to_string(parse_rational("7")), "7");
  EXPECT_EQ(parse_rational("0/5"), 0);
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(parse_rational("+1"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
  EXPECT_THROW(parse_rational("1/2/3"), InputError);
  EXPECT_THROW(parse_rational("abc"), InputError);
}

TEST(Rational, DecimalsAreExact) {
  EXPECT_EQ(parse_decimal("-0.5000001"), Rational(-5000001, 10000000));
  EXPECT_EQ(parse_decimal("1.25e-3"), Rational(1, 800));
  EXPECT_EQ(parse_decimal("2E2"), 200);
  EXPECT_EQ(parse_number("0.75"), Rational(3, 4));
  EXPECT_EQ(parse_number("3/4"), Rational(3, 4));
}

TEST(Rational, DoubleRoundTrip) {
  EXPECT_EQ(from_double(0.1), Rational(3602879701896397, Integer("36028797018963968")));
  EXPECT_EQ(to_double(Rational(1, 4)), 0.25);
}

TEST(Rational, BestRationalBoundedDenominator) {
  const Rational pi = parse_decimal("3.14159265358979");
  EXPECT_EQ(best_rational(pi, 7), Rational(22, 7));
  EXPECT_EQ(best_rational(pi, 1), 3);
  EXPECT_EQ(best_rational(pi, 113), Rational(355, 113));
  EXPECT_EQ(best_rational(Rational(1, 3), 1000), Rational(1, 3));
  EXPECT_EQ(best_rational(Rational(-7, 10), 2), Rational(-1, 2));
}

TEST(Rational, GridNeighboursAreStrict) {
  EXPECT_EQ(grid_below(Rational(1, 2), 4), Rational(1, 4));
  EXPECT_EQ(grid_above(Rational(1, 2), 4), Rational(3, 4));
  EXPECT_EQ(grid_below(Rational(3, 10), 4), Rational(1, 4));
  EXPECT_EQ(grid_above(Rational(3, 10), 4), Rational(1, 2));
  EXPECT_EQ(grid_below(Rational(-1, 10), 1), -1);
}
