#include <gtest/gtest.h>

#include "fibl/catalan.hpp"
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

TEST(RationalCatalan, SmallCases) {
  const auto a = q_fibo_catalan_rational(3, 2);
  EXPECT_TRUE(a.is_polynomial);
  EXPECT_TRUE(q_fibo_catalan_rational(4, 2).is_polynomial);
  const auto one = q_fibo_catalan_rational(1, 1);
  ASSERT_TRUE(one.quotient);
  EXPECT_EQ(*one.quotient, IntPoly::constant(1));
  const auto v = q_fibo_catalan_rational(5, 3);
  ASSERT_TRUE(v.quotient);
  EXPECT_EQ(*v.quotient, from(oracle::kRationalCatalan_5_3));
  EXPECT_THROW(q_fibo_catalan_rational(0, 2), DomainError);
}

TEST(RationalCatalan, MatchesNaiveDivision) {
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) {
      const auto v = q_fibo_catalan_rational(m, n);
      const auto ref = naive::exact_div(naive::fib_factorial(m + n - 1),
                                        naive::mul(naive::fib_factorial(m), naive::fib_factorial(n)));
      EXPECT_EQ(v.is_polynomial, ref.has_value()) << m << "," << n;
      if (ref) {
        EXPECT_EQ(naive::from_lib(*v.quotient), *ref);
      }
    }
  }
}

TEST(RationalCatalan, SweepAndCsv) {
  const auto rows = q_fibo_catalan_positivity_sweep(8);
  for (const auto& v : rows) {
    EXPECT_TRUE(v.is_polynomial) << v.to_json().dump();
    EXPECT_TRUE(v.all_coeffs_nonnegative.value_or(false));
    EXPECT_LE(v.inputs["gcd"].get<int>(), 2);
  }
  const std::string csv = sweep_to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,n,gcd,is_polynomial,degree,min_coeff,max_coeff");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(rows.size() + 1));
  // gcd 3 pairs are reported, not assumed
  const auto all = q_fibo_catalan_positivity_sweep(3, true);
  EXPECT_EQ(all.size(), 9u);
  EXPECT_NO_THROW(q_fibo_catalan_rational(3, 3));
}

TEST(RationalCatalan, Divisibility) {
  EXPECT_TRUE(q_fibo_catalan_divisibility_check(2, 2).passed);
  EXPECT_TRUE(q_fibo_catalan_divisibility_check(5, 3).passed);
  for (int n = 1; n <= 6; ++n) EXPECT_TRUE(q_fibo_catalan_divisibility_check(1, n).passed);
}

TEST(OrdinaryCatalan, Values) {
  EXPECT_EQ(*q_fibo_catalan_ordinary(1).quotient, IntPoly::constant(1));
  EXPECT_EQ(*q_fibo_catalan_ordinary(3).quotient, from(oracle::kFCat3));
  EXPECT_TRUE(q_fibo_catalan_ordinary(5).is_polynomial);
}

TEST(Coxeter, Types) {
  EXPECT_EQ(coxeter_type("A", 3).coxeter_number(), 4);
  EXPECT_EQ(coxeter_type("B", 3).coxeter_number(), 6);
  EXPECT_EQ(coxeter_type("D", 4).coxeter_number(), 6);
  EXPECT_EQ(coxeter_type("E6").coxeter_number(), 12);
  EXPECT_EQ(coxeter_type("E7").coxeter_number(), 18);
  EXPECT_EQ(coxeter_type("E8").coxeter_number(), 30);
  EXPECT_EQ(coxeter_type("F4").coxeter_number(), 12);
  EXPECT_EQ(coxeter_type("G2").coxeter_number(), 6);
  EXPECT_EQ(parse_coxeter_type("d5").name(), "D5");
  EXPECT_THROW(parse_coxeter_type("H3"), DomainError);
  EXPECT_THROW(coxeter_type("D", 3), DomainError);
}

TEST(Coxeter, F4AtTwoIsNotPolynomial) {
  const auto v = coxeter_q_fibo_catalan(coxeter_type("F4"), 2);
  EXPECT_FALSE(v.is_polynomial);
  ASSERT_TRUE(v.remainder_degree);
  EXPECT_EQ(*v.remainder_degree, oracle::kF4Remainder_Degree);
  EXPECT_FALSE(coxeter_q_fibo_catalan_cyclotomic(coxeter_type("F4"), 2).is_polynomial);
}

TEST(Coxeter, G2AtSeven) {
  const auto v = coxeter_q_fibo_catalan(coxeter_type("G2"), 7);
  ASSERT_TRUE(v.is_polynomial);
  EXPECT_EQ(v.quotient->degree(), oracle::kG2_7_Degree);
  EXPECT_EQ(v.quotient->eval_at_one(), oracle::kG2_7_AtOne);
  EXPECT_EQ(v.quotient->coeff_range().first, oracle::kG2_7_MinCoeff);
}

TEST(Coxeter, CyclotomicRouteAgreesWithDivision) {
  for (const char* name : {"A1", "A2", "A3", "B2", "B3", "D4", "G2", "F4", "E6"}) {
    const CoxeterType w = parse_coxeter_type(name);
    for (int a = 1; a <= 6; ++a) {
      if (coxeter_degree(w, a) > 200000) continue;
      EXPECT_EQ(coxeter_q_fibo_catalan(w, a).is_polynomial, coxeter_q_fibo_catalan_cyclotomic(w, a).is_polynomial)
          << name << " a=" << a;
    }
  }
}

TEST(Coxeter, TypeAAgainstNaive) {
  for (int n = 1; n <= 3; ++n) {
    const CoxeterType w = coxeter_type("A", n);
    for (int a = 1; a <= 7; ++a) {
      if (std::gcd(a, n + 1) != 1) continue;
      naive::Poly num{1}, den{1};
      for (int e : w.exponents) {
        num = naive::mul(num, naive::qnum(naive::fib(a + e)));
        den = naive::mul(den, naive::qnum(naive::fib(e + 1)));
      }
      const auto ref = naive::exact_div(num, den);
      const auto v = coxeter_q_fibo_catalan(w, a);
      ASSERT_EQ(v.is_polynomial, ref.has_value());
      if (ref) {
        EXPECT_EQ(naive::from_lib(*v.quotient), *ref);
      }
    }
  }
}

TEST(Cyclotomic, Multiplicities) {
  // [4]/([2][2]) is not a polynomial; [6]/([2][3]) is.
  EXPECT_FALSE(cyclotomic_ratio_is_polynomial({4}, {2, 2}));
  EXPECT_TRUE(cyclotomic_ratio_is_polynomial({6}, {2, 3}));
  EXPECT_TRUE(cyclotomic_ratio_is_polynomial({6, 1}, {3, 1}));
  EXPECT_TRUE(cyclotomic_ratio_is_polynomial({4, 6}, {2, 3}));
}
