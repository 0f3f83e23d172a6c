#include <gtest/gtest.h>

#include <complex>

#include "fibl/elliptic.hpp"
#include "oracles/oracle_values.hpp"

using namespace fibl;
using Cd = std::complex<double>;
using C128 = ExtComplex<128>;

namespace {

EllipticParams<Cd> fixed_params() {
  EllipticParams<Cd> p;
  p.a = {0.7, 0.2};
  p.b = {0.5, -0.6};
  p.q = {0.6, 0.3};
  p.p = {0.2, 0.1};
  return p;
}

void expect_close(const Cd& got, const Cd& want, double tol = 1e-10) {
  EXPECT_LE(std::abs(got - want) / std::max(std::abs(want), 1e-300), tol) << got << " vs " << want;
}

SamplingConfig small_cfg(int samples = 4) {
  SamplingConfig c;
  c.seed = 99;
  c.samples = samples;
  return c;
}

bool all_ok(const std::vector<VerificationReport>& rs) {
  for (const auto& r : rs)
    if (!r.passed) {
      ADD_FAILURE() << r.to_json().dump();
      return false;
    }
  return true;
}

}  // namespace

TEST(Theta, OracleValueAndBasics) {
  const auto prm = fixed_params();
  expect_close(theta(Cd(0.5, 0.1), prm.p, 1e-17), oracle::kTheta_05_01);
  const Cd x(0.3, -0.8);
  expect_close(theta(x, Cd(0), 1e-17), Cd(1) - x, 1e-15);
  EXPECT_LT(std::abs(theta(Cd(1), prm.p, 1e-17)), 1e-15);
  EXPECT_THROW(theta(Cd(0), prm.p, 1e-17), DomainError);
  EXPECT_THROW(theta(x, Cd(1.0, 0), 1e-17), DomainError);
}

TEST(Theta, PropertySuiteBothPrecisions) {
  EXPECT_TRUE(all_ok(theta_property_suite<Cd>(small_cfg(10))));
  EXPECT_TRUE(all_ok(theta_property_suite<C128>(small_cfg(3))));
}

TEST(Elliptic, OracleValues) {
  const auto prm = fixed_params();
  expect_close(elliptic_number(BigInt(5), prm), oracle::kElliptic5);
  expect_close(elliptic_number_base(BigInt(3), BigInt(2), prm), oracle::kElliptic3Base2);
  expect_close(weight_v(BigInt(2), BigInt(3), prm), oracle::kWeightV_2_3);
  expect_close(omega1(3, 2, prm), oracle::kOmega1_3_2);
  expect_close(omega2(3, 2, prm), oracle::kOmega2_3_2);
  expect_close(elliptic_fibonomial(2, 3, prm), oracle::kEllipticFibonomial_2_3);
}

TEST(Elliptic, ExtendedPrecisionAgreesWithDouble) {
  const auto d = fixed_params();
  EllipticParams<C128> e;
  e.a = make_complex<C128>(0.7, 0.2);
  e.b = make_complex<C128>(0.5, -0.6);
  e.q = make_complex<C128>(0.6, 0.3);
  e.p = make_complex<C128>(0.2, 0.1);
  const C128 v = elliptic_fibonomial(2, 3, e);
  const Cd vd(static_cast<double>(real(v)), static_cast<double>(imag(v)));
  expect_close(vd, elliptic_fibonomial(2, 3, d), 1e-12);
}

TEST(Elliptic, SmallCases) {
  const auto prm = fixed_params();
  expect_close(elliptic_number(BigInt(1), prm), Cd(1), 1e-14);
  EXPECT_EQ(std::abs(elliptic_number(BigInt(0), prm)), 0.0);
  for (int m = 0; m <= 5; ++m) expect_close(omega2(m, 0, prm), Cd(1), 1e-13);
  for (int j = 1; j <= 5; ++j) expect_close(omega2(1, j, prm), omega1(j, 1, prm), 1e-12);
  expect_close(weight_v(BigInt(0), BigInt(3), prm), Cd(1), 1e-13);
}

TEST(Elliptic, SymbolicQuotientCancels) {
  const ThetaQuotient one = tq_number(BigInt(1));
  EXPECT_TRUE(one.num.empty());
  EXPECT_TRUE(one.den.empty());
  const ThetaQuotient t = tq_fibonomial(3, 2);
  EXPECT_TRUE((t / t).num.empty());
  EXPECT_THROW(tq_omega1(0, 3), DomainError);
  EXPECT_THROW(tq_omega2(-1, 3), DomainError);
}

TEST(Elliptic, SampledIdentities) {
  const auto cfg = small_cfg();
  EXPECT_TRUE(all_ok(sampled_suite<Cd>("theorem", {}, [](const EllipticParams<Cd>& p) {
    return elliptic_theorem_sides(3, 2, p);
  }, cfg)));
  EXPECT_TRUE(all_ok(sampled_suite<Cd>("recurrence", {}, [](const EllipticParams<Cd>& p) {
    return elliptic_recurrence_sides<Cd>(5, 4, p);
  }, cfg)));
  EXPECT_TRUE(all_ok(sampled_suite<Cd>("strip", {}, [](const EllipticParams<Cd>& p) {
    return elliptic_strip_sides(6, p);
  }, cfg)));
  EXPECT_TRUE(all_ok(sampled_suite<Cd>("spiral", {}, [](const EllipticParams<Cd>& p) {
    return elliptic_spiral_sides(4, p);
  }, cfg)));
  EXPECT_TRUE(all_ok(sampled_suite<Cd>("convolution", {}, [](const EllipticParams<Cd>& p) {
    return elliptic_convolution_sides(3, 3, p);
  }, cfg)));
  EXPECT_TRUE(all_ok(sampled_suite<Cd>("staircase", {}, [](const EllipticParams<Cd>& p) {
    return elliptic_staircase_sides(5, 2, p);
  }, cfg)));
  EXPECT_TRUE(all_ok(sampled_suite<Cd>("binomial", {}, [](const EllipticParams<Cd>& p) {
    return elliptic_binomial_sides(5, 2, p);
  }, cfg)));
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n) {
      EXPECT_TRUE(all_ok(sampled_suite<Cd>("add", {}, [m, n](const EllipticParams<Cd>& p) {
        return elliptic_addition_sides(m, n, p);
      }, small_cfg(2))));
      EXPECT_TRUE(all_ok(sampled_suite<Cd>("fib_add", {}, [m, n](const EllipticParams<Cd>& p) {
        return elliptic_fib_addition_sides(m, n, p);
      }, small_cfg(2))));
    }
}

TEST(Elliptic, ExtendedPrecisionSampledTheorem) {
  SamplingConfig cfg = small_cfg(2);
  EXPECT_TRUE(all_ok(sampled_suite<C128>("theorem", {}, [](const EllipticParams<C128>& p) {
    return elliptic_theorem_sides(2, 2, p);
  }, cfg)));
}

TEST(Elliptic, StaircaseSpecialWeightOrientation) {
  // Swapping the two arguments of the special-domino weight breaks the
  // staircase tiling identity.
  const auto prm = fixed_params();
  Cd swapped(0);
  enumerate_staircase_tilings(5, 2, [&](const StaircaseTiling& t) {
    swapped += evaluate(detail::tq_weight_staircase(t, true), prm);
  });
  const Cd want = elliptic_fibonomial(3, 2, prm);
  EXPECT_GT(std::abs(swapped - want) / std::abs(want), 1e-3);
  EXPECT_TRUE(elliptic_staircase_check(5, 2, prm).passed);
}

TEST(Elliptic, SinglePointChecks) {
  const auto prm = fixed_params();
  EXPECT_TRUE(elliptic_theorem_check(2, 3, prm).passed);
  EXPECT_TRUE(elliptic_strip_check(5, prm).passed);
  EXPECT_TRUE(elliptic_spiral_check(3, prm).passed);
  EXPECT_TRUE(elliptic_convolution_check(2, 3, prm).passed);
}

TEST(Limit, Degenerations) {
  for (int n = 0; n <= 30; ++n) EXPECT_TRUE(limit_number_check(n).passed) << n;
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) EXPECT_TRUE(limit_weight_v_check(m, n).passed);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) EXPECT_TRUE(limit_rect_tilings_check(m, n).passed);
  for (int n = 0; n <= 5; ++n)
    for (int k = 0; k <= n; ++k) EXPECT_TRUE(limit_staircase_tilings_check(n, k).passed);
  EXPECT_EQ(limit_chain(tq_fibonomial(3, 3)).as_polynomial(), q_fibonomial(3, 3));
  EXPECT_EQ(limit_chain(tq_omega2(3, 2)).as_polynomial(), IntPoly::monomial(BigInt(1), 3));
}

TEST(Limit, SmallPApproachesQValue) {
  auto prm = fixed_params();
  prm.p = {1e-20, 0};
  prm.a = {1e-12, 0};
  prm.b = {1e-6, 0};
  prm.min_denom = 1e-30;
  const Cd lim = limit_chain_value(tq_fibonomial(2, 3), prm.q);
  expect_close(elliptic_fibonomial(2, 3, prm), lim, 1e-4);
  expect_close(lim, q_fibonomial(2, 3).evaluate(prm.q), 1e-12);
}

TEST(Numeric, DegenerateParametersDetected) {
  auto prm = fixed_params();
  prm.q = std::polar(1.0, 2 * M_PI / 3);  // q^3 = 1 makes theta(q^3) vanish
  EXPECT_THROW(evaluate(ThetaQuotient{{}, {{0, 0, 3}}, 0}, prm), DegenerateParameters);
  auto bad = fixed_params();
  bad.p = {1.2, 0};
  EXPECT_THROW(elliptic_number(BigInt(2), bad), DomainError);
}

TEST(Numeric, TruncationDoublingIsStable) {
  SamplingConfig cfg = small_cfg(3);
  cfg.check_truncation = true;
  EXPECT_TRUE(all_ok(sampled_suite<Cd>("fibonomial", {}, [](const EllipticParams<Cd>& p) {
    return elliptic_recurrence_sides<Cd>(4, 3, p);
  }, cfg)));
}

TEST(Numeric, SamplingIsDeterministic) {
  const auto a = sample_params<Cd>(42, 3, 0);
  const auto b = sample_params<Cd>(42, 3, 0);
  EXPECT_EQ(a.a, b.a);
  EXPECT_EQ(a.p, b.p);
  const auto c = sample_params<Cd>(42, 4, 0);
  EXPECT_NE(a.q, c.q);
  for (int i = 0; i < 50; ++i) {
    const auto s = sample_params<Cd>(7, static_cast<std::uint64_t>(i), 0);
    EXPECT_GE(std::abs(s.q), 0.4);
    EXPECT_LE(std::abs(s.q), 0.9);
    EXPECT_GE(std::abs(s.p), 0.05);
    EXPECT_LE(std::abs(s.p), 0.35);
  }
  const auto r1 = theta_property_suite<Cd>(small_cfg(2));
  const auto r2 = theta_property_suite<Cd>(small_cfg(2));
  EXPECT_EQ(reports_to_json(r1).dump(), reports_to_json(r2).dump());
}

TEST(Numeric, PowIntNegativeExponents) {
  const Cd z(0.3, 0.4);
  expect_close(pow_int(z, 5), std::pow(z, 5), 1e-14);
  expect_close(pow_int(z, -3), std::pow(z, -3), 1e-14);
  expect_close(pow_int(z, 0), Cd(1), 0);
}

TEST(Numeric, IllConditionedRecurrenceIsReEvaluated) {
  // At this sample the recurrence cancels by many orders of magnitude, so
  // the plain double result is wrong while the identity itself holds.
  const auto prm = sample_params<Cd>(7, 12, 0);
  const Cd ratio = elliptic_fibonomial(5, 6, prm);
  const Cd plain = elliptic_fibonomial_recurrence<Cd>(5, 6, prm);
  EXPECT_GT(std::abs(plain - ratio) / std::abs(ratio), 1e-3);
  const auto s = elliptic_recurrence_sides<Cd>(5, 6, prm);
  EXPECT_NE(s.note.find("re-evaluated"), std::string::npos);
  EXPECT_TRUE(sides_report("recurrence", {}, s, 1e-7).passed);
  // a well-conditioned point stays in double
  EXPECT_TRUE(elliptic_recurrence_sides<Cd>(2, 2, prm).note.empty());
}
