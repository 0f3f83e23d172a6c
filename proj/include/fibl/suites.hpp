#pragma once

// Named verification suites shared by the CLI and the acceptance runner.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "fibl/catalan.hpp"
#include "fibl/elliptic.hpp"
#include "fibl/qanalogs.hpp"
#include "fibl/tilings.hpp"

namespace fibl {

struct SuiteConfig {
  /// Size bound; 0 selects the suite's default.
  int max = 0;
  SamplingConfig sampling;
  std::int64_t cap = kDefaultEnumerationCap;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"q-all",  "elliptic-all", "catalan-all", "theta",
                                              "spiral", "convolution",  "bijection",   "counterexample"};
  return names;
}

namespace detail {

inline void append(std::vector<VerificationReport>& out, std::vector<VerificationReport> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

inline int bound(const SuiteConfig& cfg, int fallback) { return cfg.max > 0 ? cfg.max : fallback; }

inline VerificationReport verdict_report(const PolynomialityVerdict& v, bool expect_polynomial) {
  VerificationReport r;
  r.identity = v.label + (expect_polynomial ? "_is_polynomial" : "_not_polynomial");
  r.inputs = v.inputs;
  r.lhs = v.is_polynomial;
  r.rhs = expect_polynomial;
  r.expect_equal = true;
  r.passed = v.is_polynomial == expect_polynomial;
  r.abs_diff = r.passed ? 0.0 : 1.0;
  r.rel_diff = r.abs_diff;
  r.note = "route " + v.route;
  if (v.remainder_degree) r.note += ", remainder degree " + std::to_string(*v.remainder_degree);
  return r;
}

// Coefficient signs are a theorem-free experiment; outside the asserted
// range a negative coefficient is reported in the note, not as a failure.
inline VerificationReport positivity_report(const PolynomialityVerdict& v, bool asserted) {
  VerificationReport r;
  r.identity = v.label + "_nonnegative";
  r.inputs = v.inputs;
  const bool nonneg = v.all_coeffs_nonnegative.value_or(false);
  r.lhs = nonneg;
  r.rhs = true;
  r.passed = nonneg || !asserted;
  r.abs_diff = nonneg ? 0.0 : 1.0;
  r.rel_diff = r.abs_diff;
  if (v.quotient) {
    auto [lo, hi] = v.quotient->coeff_range();
    r.note = "degree " + std::to_string(v.quotient->degree()) + ", min coeff " + to_string(lo);
  }
  if (!nonneg && !asserted) r.note += "; finding: negative coefficient";
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact suites

inline std::vector<VerificationReport> suite_spiral_q(const SuiteConfig& cfg) {
  std::vector<VerificationReport> out;
  const int mq = detail::bound(cfg, 12);
  for (int m = 1; m <= mq; ++m) out.push_back(spiral_identity_check(m));
  for (int m = 1; m <= std::max(mq, 40); ++m) out.push_back(spiral_identity_check_integer(m));
  return out;
}

inline std::vector<VerificationReport> suite_convolution_q(const SuiteConfig& cfg) {
  std::vector<VerificationReport> out;
  const int b = detail::bound(cfg, 6);
  for (int m = 1; m <= b; ++m)
    for (int n = 1; n <= b; ++n) out.push_back(convolution_identity_check_q(m, n));
  return out;
}

inline std::vector<VerificationReport> suite_bijection(const SuiteConfig& cfg) {
  std::vector<VerificationReport> out;
  const int b = detail::bound(cfg, 8);
  for (int m = 0; m <= b; ++m)
    for (int n = 0; m + n <= b; ++n) out.push_back(model_bijection_check(m, n, cfg.cap));
  return out;
}

inline std::vector<VerificationReport> suite_counterexample(const SuiteConfig&) {
  return {catalan_partial_tiling_counterexample(3)};
}

/// Every exact q-level identity. max bounds m + n for enumeration and n for
/// the staircase model.
inline std::vector<VerificationReport> suite_q_all(const SuiteConfig& cfg) {
  std::vector<VerificationReport> out;
  const int b = detail::bound(cfg, 8);
  for (int m = 1; m <= 12; ++m) {
    for (int n = 1; n <= 12; ++n) {
      out.push_back(q_number_sum_check(m, n));
      out.push_back(q_number_product_check(m, n));
    }
  }
  for (int m = 1; m <= 10; ++m)
    for (int n = 1; n <= 10; ++n) out.push_back(q_fib_addition_check(m, n));
  for (int len = 0; len <= 12; ++len) out.push_back(strip_sum_check(len));
  for (int m = 0; m <= b; ++m) {
    for (int n = 0; m + n <= b; ++n) {
      out.push_back(rect_theorem_check(m, n, cfg.cap));
      out.push_back(q_fibonomial_routes_check(m, n));
      out.push_back(q_fibonomial_at_one_check(m, n));
      out.push_back(q_fibonomial_symmetry_check(m, n));
    }
  }
  for (int n = 0; n <= b; ++n)
    for (int k = 0; k <= n; ++k) out.push_back(staircase_theorem_check(n, k, cfg.cap));
  detail::append(out, suite_bijection(cfg));
  const int u = std::min(b, 10);
  for (int m = 0; m <= u; ++m)
    for (int n = 0; n <= u; ++n) out.push_back(unimodality_check(m, n));
  detail::append(out, suite_spiral_q(SuiteConfig{}));
  detail::append(out, suite_convolution_q(SuiteConfig{}));
  return out;
}

inline std::vector<VerificationReport> suite_catalan_all(const SuiteConfig& cfg) {
  std::vector<VerificationReport> out;
  const int b = detail::bound(cfg, 15);
  for (const auto& v : q_fibo_catalan_positivity_sweep(b)) {
    out.push_back(detail::verdict_report(v, true));
    const bool asserted = v.inputs.value("m", 0) <= 15 && v.inputs.value("n", 0) <= 15;
    out.push_back(detail::positivity_report(v, asserted));
  }
  for (int m = 1; m <= 10; ++m)
    for (int n = 1; n <= 10; ++n) out.push_back(q_fibo_catalan_divisibility_check(m, n));
  for (int m = 1; m <= 20; ++m) {
    for (int n = 1; n <= 20; ++n) {
      VerificationReport r;
      r.identity = "fib_gcd";
      r.inputs = mn_inputs(m, n);
      r.passed = fib_gcd_check(m, n);
      r.lhs = r.passed;
      r.rhs = true;
      out.push_back(r);
    }
  }
  out.push_back(detail::verdict_report(coxeter_q_fibo_catalan(coxeter_type("F4"), 2), false));
  out.push_back(detail::verdict_report(coxeter_q_fibo_catalan_cyclotomic(coxeter_type("F4"), 2), false));
  for (const auto& v : coxeter_table()) {
    out.push_back(detail::verdict_report(v, true));
    if (v.quotient) out.push_back(detail::positivity_report(v, true));
  }
  for (int n = 1; n <= 6; ++n) {
    const auto v = q_fibo_catalan_ordinary(n);
    out.push_back(detail::verdict_report(v, true));
    out.push_back(detail::positivity_report(v, true));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Numeric suites

template <class C>
std::vector<VerificationReport> suite_theta(const SuiteConfig& cfg) {
  SamplingConfig s = cfg.sampling;
  return theta_property_suite<C>(s);
}

template <class C>
std::vector<VerificationReport> suite_spiral_elliptic(const SuiteConfig& cfg) {
  std::vector<VerificationReport> out;
  for (int m = 1; m <= 5; ++m) {
    detail::append(out, sampled_suite<C>("elliptic_spiral", Json{{"m", m}},
                                         [m](const EllipticParams<C>& p) { return elliptic_spiral_sides(m, p); },
                                         cfg.sampling));
  }
  return out;
}

template <class C>
std::vector<VerificationReport> suite_convolution_elliptic(const SuiteConfig& cfg) {
  std::vector<VerificationReport> out;
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      detail::append(out, sampled_suite<C>(
                              "elliptic_convolution", mn_inputs(m, n),
                              [m, n](const EllipticParams<C>& p) { return elliptic_convolution_sides(m, n, p); },
                              cfg.sampling));
    }
  }
  return out;
}

/// Theorem (enumeration m,n <= 3, recurrence m,n <= 6), strips n <= 8,
/// spiral m <= 5, convolution m,n <= 4, staircase n <= 6, number identities
/// and the closed-form degenerations.
template <class C>
std::vector<VerificationReport> suite_elliptic_all(const SuiteConfig& cfg) {
  std::vector<VerificationReport> out;
  const SamplingConfig& s = cfg.sampling;
  detail::append(out, suite_theta<C>(cfg));
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      detail::append(out, sampled_suite<C>(
                              "elliptic_tiling_sum", mn_inputs(m, n),
                              [m, n, &cfg](const EllipticParams<C>& p) { return elliptic_theorem_sides(m, n, p, cfg.cap); },
                              s));
    }
  }
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) {
      detail::append(out, sampled_suite<C>(
                              "elliptic_recurrence", mn_inputs(m, n),
                              [m, n](const EllipticParams<C>& p) { return elliptic_recurrence_sides<C>(m, n, p); }, s));
    }
  }
  for (int n = 1; n <= 8; ++n) {
    detail::append(out, sampled_suite<C>("elliptic_strip", Json{{"n", n}},
                                         [n](const EllipticParams<C>& p) { return elliptic_strip_sides(n, p); }, s));
  }
  detail::append(out, suite_spiral_elliptic<C>(cfg));
  detail::append(out, suite_convolution_elliptic<C>(cfg));
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      detail::append(out, sampled_suite<C>(
                              "elliptic_staircase_sum", Json{{"n", n}, {"k", k}},
                              [n, k, &cfg](const EllipticParams<C>& p) { return elliptic_staircase_sides(n, k, p, cfg.cap); },
                              s));
    }
  }
  SamplingConfig few = s;
  few.samples = std::min(s.samples, 3);
  for (int m = 1; m <= 10; ++m) {
    for (int n = 1; n <= 10; ++n) {
      detail::append(out, sampled_suite<C>(
                              "elliptic_number_addition", mn_inputs(m, n),
                              [m, n](const EllipticParams<C>& p) { return elliptic_addition_sides(m, n, p); }, few));
      if (m <= 8 && n <= 8) {
        detail::append(out, sampled_suite<C>(
                                "elliptic_number_product", mn_inputs(m, n),
                                [m, n](const EllipticParams<C>& p) { return elliptic_product_sides(m, n, p); }, few));
      }
      if (m <= 6 && n <= 6) {
        detail::append(out, sampled_suite<C>(
                                "elliptic_fib_addition", mn_inputs(m, n),
                                [m, n](const EllipticParams<C>& p) { return elliptic_fib_addition_sides(m, n, p); }, few));
      }
    }
  }
  for (int n = 1; n <= 7; ++n) {
    for (int k = 0; k <= n; ++k) {
      detail::append(out, sampled_suite<C>(
                              "elliptic_binomial_theta_form", Json{{"n", n}, {"k", k}},
                              [n, k](const EllipticParams<C>& p) { return elliptic_binomial_sides(n, k, p); }, few));
    }
  }
  for (int n = 0; n <= 30; ++n) out.push_back(limit_number_check(n));
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) out.push_back(limit_weight_v_check(m, n));
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) out.push_back(limit_rect_tilings_check(m, n, cfg.cap));
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) out.push_back(limit_staircase_tilings_check(n, k, cfg.cap));
  return out;
}

/// Runs a suite by name. Numeric suites use the complex type C.
template <class C>
std::vector<VerificationReport> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "q-all") return suite_q_all(cfg);
  if (name == "elliptic-all") return suite_elliptic_all<C>(cfg);
  if (name == "catalan-all") return suite_catalan_all(cfg);
  if (name == "theta") return suite_theta<C>(cfg);
  if (name == "spiral") {
    auto out = suite_spiral_q(cfg);
    detail::append(out, suite_spiral_elliptic<C>(cfg));
    return out;
  }
  if (name == "convolution") {
    auto out = suite_convolution_q(cfg);
    detail::append(out, suite_convolution_elliptic<C>(cfg));
    return out;
  }
  if (name == "bijection") return suite_bijection(cfg);
  if (name == "counterexample") return suite_counterexample(cfg);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace fibl
