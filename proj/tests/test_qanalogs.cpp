#include <gtest/gtest.h>

#include "fibl/qanalogs.hpp"
#include "oracles/naive.hpp"
#include "oracles/oracle_values.hpp"

using namespace fibl;

namespace {

IntPoly from(const std::vector<std::int64_t>& cs) {
  std::vector<BigInt> v;
  for (auto c : cs) v.push_back(make_bigint(c));
  return IntPoly(std::move(v));
}

}  // namespace

TEST(QAnalogs, FibFactorial) {
  EXPECT_EQ(q_fib_factorial(0), IntPoly::constant(1));
  EXPECT_EQ(q_fib_factorial(3), from({1, 1}));
  EXPECT_EQ(q_fib_factorial(4), from({1, 2, 2, 1}));
  EXPECT_THROW(q_fib_factorial(-1), DomainError);
}

TEST(QAnalogs, FibonomialSmallValues) {
  EXPECT_EQ(q_fibonomial(2, 2), from({1, 2, 2, 1}));
  for (int m = 0; m <= 5; ++m) EXPECT_EQ(q_fibonomial(m, 0), IntPoly::constant(1));
  EXPECT_EQ(q_fibonomial(3, 3), from(oracle::kQFibonomial_3_3));
  EXPECT_EQ(q_fibonomial(2, 4), from(oracle::kQFibonomial_2_4));
  EXPECT_EQ(q_fibonomial(4, 3), from(oracle::kQFibonomial_4_3));
  EXPECT_EQ(q_fibonomial(3, 2), from(oracle::kBruteRect_3_2));
}

TEST(QAnalogs, RecurrenceBoundaryRows) {
  for (int m = 0; m <= 9; ++m) {
    EXPECT_EQ(q_fibonomial_recurrence(m, 1), q_fib_number(m + 1));
    EXPECT_EQ(q_fibonomial_recurrence(1, m), q_fib_number(m + 1));
  }
  EXPECT_EQ(q_fibonomial_recurrence(2, 2), from({1, 2, 2, 1}));
}

TEST(QAnalogs, NumberIdentities) {
  for (int m = 1; m <= 20; ++m)
    for (int n = 1; n <= 20; ++n) {
      ASSERT_TRUE(q_number_sum_check(m, n).passed);
      ASSERT_TRUE(q_number_product_check(m, n).passed);
    }
  for (int m = 1; m <= 12; ++m)
    for (int n = 1; n <= 12; ++n) ASSERT_TRUE(q_fib_addition_check(m, n).passed) << m << "," << n;
}

TEST(QAnalogs, RoutesSymmetryAndValueAtOne) {
  for (int m = 0; m <= 7; ++m)
    for (int n = 0; n <= 7; ++n) {
      EXPECT_TRUE(q_fibonomial_routes_check(m, n).passed);
      EXPECT_TRUE(q_fibonomial_symmetry_check(m, n).passed);
      EXPECT_TRUE(q_fibonomial_at_one_check(m, n).passed);
      EXPECT_TRUE(q_fibonomial(m, n).all_coeffs_nonnegative());
    }
}

TEST(QAnalogs, LargestFibonomialMatchesIntegerValue) {
  const IntPoly g = q_fibonomial(10, 10);
  EXPECT_EQ(g.eval_at_one(), fibonomial(10, 10));
  EXPECT_EQ(g, q_fibonomial_recurrence(10, 10));
  EXPECT_EQ(g.degree(), 17424);
}

TEST(QAnalogs, Unimodality) {
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) EXPECT_TRUE(unimodality_check(m, n).passed);
}

TEST(QAnalogs, SpiralIdentity) {
  const auto r1 = spiral_identity_check(1);
  EXPECT_TRUE(r1.passed);
  EXPECT_EQ(poly_from_json(r1.lhs), from({1, 1}));
  EXPECT_EQ(poly_from_json(r1.rhs), from({1, 1}));
  const auto r2 = spiral_identity_check(2);
  EXPECT_EQ(poly_from_json(r2.rhs), from({1, 2, 2, 1}));
  for (int m = 1; m <= 12; ++m) EXPECT_TRUE(spiral_identity_check(m).passed) << m;
  for (int m = 1; m <= 40; ++m) EXPECT_TRUE(spiral_identity_check_integer(m).passed) << m;
}

TEST(QAnalogs, ConvolutionIdentity) {
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) EXPECT_TRUE(convolution_identity_check_q(m, n).passed) << m << "," << n;
}
