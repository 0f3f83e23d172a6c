#include <gtest/gtest.h>

#include <numeric>

#include "fibl/fib.hpp"
#include "oracles/oracle_values.hpp"

using namespace fibl;

TEST(Fib, MatchesOracleTable) {
  for (std::size_t i = 0; i < oracle::kFib0To30.size(); ++i)
    EXPECT_EQ(fib_i64(static_cast<std::int64_t>(i)), oracle::kFib0To30[i]) << i;
}

TEST(Fib, NegativeOneIsOne) { EXPECT_EQ(fib(-1), 1); }

TEST(Fib, LargeIndexStaysExact) {
  // F_100 = 354224848179261915075
  EXPECT_EQ(to_string(fib(100)), "354224848179261915075");
  EXPECT_THROW(fib(-2), DomainError);
}

TEST(Fib, GcdProperty) {
  EXPECT_TRUE(fib_gcd_check(6, 9));
  EXPECT_TRUE(fib_gcd_check(4, 6));
  for (int m = 1; m <= 30; ++m)
    for (int n = 1; n <= 30; ++n) {
      ASSERT_TRUE(fib_gcd_check(m, n));
      const auto g = std::gcd(oracle::kFib0To30[m], oracle::kFib0To30[n]);
      ASSERT_EQ(g, oracle::kFib0To30[std::gcd(m, n)]);
    }
}

TEST(Fib, SpiralExponent) {
  EXPECT_EQ(spiral_exponent(3, 2), 0);
  EXPECT_EQ(spiral_exponent(1, 2), 3);
  EXPECT_EQ(spiral_exponent(2, 4), 10);
  EXPECT_THROW(spiral_exponent(5, 2), DomainError);
}

TEST(Fib, AdditionFormula) {
  EXPECT_TRUE(fib_addition_check(1, 1));
  EXPECT_TRUE(fib_addition_check(3, 4));
  EXPECT_TRUE(fib_addition_check(10, 10));
  for (int m = 1; m <= 60; ++m)
    for (int n = 1; n <= 60; ++n) ASSERT_TRUE(fib_addition_check(m, n));
}

TEST(Fib, Fibonomial) {
  EXPECT_EQ(fibonomial(2, 2), 6);
  EXPECT_EQ(fibonomial(4, 4), 1820);
  EXPECT_EQ(fibonomial(5, 5), 136136);
  EXPECT_EQ(fibonomial(7, 0), 1);
  EXPECT_EQ(fib_factorial(0), 1);
  EXPECT_EQ(fib_factorial(5), 30);
}
