#pragma once

// q-numbers, q-Fibonacci factorials, q-Fibonomials (ratio and recurrence
// routes) and the exact identity checks built on them.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibl/fib.hpp"
#include "fibl/qpoly.hpp"
#include "fibl/report.hpp"

namespace fibl {

/// [n]_q = 1 + q + ... + q^(n-1); [0]_q = 0.
inline IntPoly q_number(const BigInt& n) {
  if (sgn(n) < 0) throw DomainError("q_number: n < 0");
  if (sgn(n) == 0) return IntPoly();
  if (n - 1 > make_bigint(degree_cap())) check_degree(degree_cap() + 1, "q_number");
  const std::int64_t len = to_int64(n);
  return IntPoly(std::vector<BigInt>(static_cast<std::size_t>(len), BigInt(1)));
}

inline IntPoly q_number(std::int64_t n) { return q_number(make_bigint(n)); }

/// [F_k]_q for k >= -1.
inline IntPoly q_fib_number(std::int64_t k) { return q_number(fib(k)); }

/// [F_k]_{q^base}.
inline IntPoly q_fib_number(std::int64_t k, const BigInt& base) { return substitute_power(q_fib_number(k), base); }

/// prod_{k=1}^{n} [F_k]_q; the empty product is 1.
inline IntPoly q_fib_factorial(std::int64_t n) {
  if (n < 0) throw DomainError("q_fib_factorial: n < 0");
  IntPoly acc = IntPoly::constant(1);
  for (std::int64_t k = 3; k <= n; ++k) acc = mul(acc, q_fib_number(k));  // [F_1] = [F_2] = 1
  return acc;
}

/// q-Fibonomial by the ratio route: [F]!_{m+n} / ([F]!_m [F]!_n).
inline IntPoly q_fibonomial(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw DomainError("q_fibonomial: m, n must be >= 0");
  const IntPoly num = q_fib_factorial(m + n);
  std::vector<IntPoly> den;
  for (std::int64_t k = 3; k <= m; ++k) den.push_back(q_fib_number(k));
  for (std::int64_t k = 3; k <= n; ++k) den.push_back(q_fib_number(k));
  IntPoly out;
  try {
    out = exact_div_by_factors(num, den);
  } catch (const NotPolynomial& e) {
    throw std::logic_error("q_fibonomial(" + std::to_string(m) + "," + std::to_string(n) +
                           ") is not a polynomial: " + e.what());
  }
  if (!out.all_coeffs_nonnegative()) {
    throw std::logic_error("q_fibonomial(" + std::to_string(m) + "," + std::to_string(n) +
                           ") has a negative coefficient");
  }
  return out;
}

/// q-Fibonomial by the two-term recurrence
///   G(m,n) = [F_{m+1}]_{q^{F_n}} G(m,n-1) + q^{F_n F_{m+1}} [F_{n-1}]_{q^{F_m}} G(m-1,n)
/// with G(m,0) = G(0,n) = 1, filled row by row over the (m,n) grid.
inline IntPoly q_fibonomial_recurrence(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw DomainError("q_fibonomial_recurrence: m, n must be >= 0");
  std::vector<IntPoly> prev(static_cast<std::size_t>(n + 1), IntPoly::constant(1));  // row i-1
  for (std::int64_t i = 1; i <= m; ++i) {
    std::vector<IntPoly> row(static_cast<std::size_t>(n + 1));
    row[0] = IntPoly::constant(1);
    for (std::int64_t j = 1; j <= n; ++j) {
      const IntPoly north = mul(q_fib_number(i + 1, fib(j)), row[static_cast<std::size_t>(j - 1)]);
      const IntPoly east = shift(mul(q_fib_number(j - 1, fib(i)), prev[static_cast<std::size_t>(j)]),
                                 fib(j) * fib(i + 1));
      row[static_cast<std::size_t>(j)] = add(north, east);
    }
    prev = std::move(row);
  }
  return prev[static_cast<std::size_t>(n)];
}

inline Json mn_inputs(std::int64_t m, std::int64_t n) { return Json{{"m", m}, {"n", n}}; }

/// [m+n] = [m] + q^m [n].
inline VerificationReport q_number_sum_check(std::int64_t m, std::int64_t n) {
  return exact_report("q_number_sum", mn_inputs(m, n), q_number(m + n), add(q_number(m), shift(q_number(n), m)));
}

/// [m n] = [m]_q [n]_{q^m}.
inline VerificationReport q_number_product_check(std::int64_t m, std::int64_t n) {
  return exact_report("q_number_product", mn_inputs(m, n), q_number(m * n),
                      mul(q_number(m), substitute_power(q_number(n), m)));
}

/// [F_{m+n}] = [F_n][F_{m+1}]_{q^{F_n}} + q^{F_n F_{m+1}} [F_m][F_{n-1}]_{q^{F_m}}.
inline VerificationReport q_fib_addition_check(std::int64_t m, std::int64_t n) {
  const IntPoly rhs = add(mul(q_fib_number(n), q_fib_number(m + 1, fib(n))),
                          shift(mul(q_fib_number(m), q_fib_number(n - 1, fib(m))), fib(n) * fib(m + 1)));
  return exact_report("q_fib_addition", mn_inputs(m, n), q_fib_number(m + n), rhs);
}

inline VerificationReport q_fibonomial_routes_check(std::int64_t m, std::int64_t n) {
  return exact_report("q_fibonomial_ratio_vs_recurrence", mn_inputs(m, n), q_fibonomial(m, n),
                      q_fibonomial_recurrence(m, n));
}

inline VerificationReport q_fibonomial_at_one_check(std::int64_t m, std::int64_t n) {
  return exact_report("q_fibonomial_at_q1", mn_inputs(m, n), q_fibonomial(m, n).eval_at_one(), fibonomial(m, n));
}

inline VerificationReport q_fibonomial_symmetry_check(std::int64_t m, std::int64_t n) {
  return exact_report("q_fibonomial_symmetry", mn_inputs(m, n), q_fibonomial(m, n), q_fibonomial(n, m));
}

/// Unimodality is reported, not assumed: lhs is the observed verdict.
inline VerificationReport unimodality_check(std::int64_t m, std::int64_t n) {
  const IntPoly g = q_fibonomial(m, n);
  VerificationReport r;
  r.identity = "q_fibonomial_unimodal";
  r.inputs = mn_inputs(m, n);
  const bool uni = is_unimodal(g);
  r.lhs = uni;
  r.rhs = true;
  r.passed = uni;
  r.abs_diff = uni ? 0.0 : 1.0;
  r.rel_diff = r.abs_diff;
  r.note = "degree " + std::to_string(g.degree());
  return r;
}

/// [F_{m+2}][F_{m+1}] = sum_{k=1}^{m+1} q^{c_k^m} [F_k]^2.
inline VerificationReport spiral_identity_check(std::int64_t m) {
  if (m < 1) throw DomainError("spiral_identity_check: m < 1");
  const IntPoly lhs = mul(q_fib_number(m + 2), q_fib_number(m + 1));
  IntPoly rhs;
  for (std::int64_t k = 1; k <= m + 1; ++k) {
    const IntPoly fk = q_fib_number(k);
    rhs = add(rhs, shift(mul(fk, substitute_power(fk, fib(2))), spiral_exponent(k, m)));
  }
  return exact_report("spiral_q", Json{{"m", m}}, lhs, rhs);
}

/// q = 1 shadow: F_{m+2} F_{m+1} = sum_{k=1}^{m+1} F_k^2.
inline VerificationReport spiral_identity_check_integer(std::int64_t m) {
  if (m < 1) throw DomainError("spiral_identity_check_integer: m < 1");
  BigInt rhs = 0;
  for (std::int64_t k = 1; k <= m + 1; ++k) rhs += fib(k) * fib(k);
  return exact_report("spiral_q1", Json{{"m", m}}, BigInt(fib(m + 2) * fib(m + 1)), rhs);
}

/// Convolution formula, q-degeneration:
///   G(m,n) = sum_{j=0}^{n} (prod_{i<j} [F_{m+1}]_{q^{F_{n-i}}}) [F_{n-1-j}]_{q^{F_m}}
///            q^{F_{m+1} F_{n-j}} G(m-1,n-j).
/// The j = n term uses [F_{-1}] = 1 and q^{F_{m+1} F_0} = 1.
inline VerificationReport convolution_identity_check_q(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw DomainError("convolution_identity_check_q: m, n must be >= 1");
  IntPoly rhs;
  IntPoly rows = IntPoly::constant(1);
  for (std::int64_t j = 0; j <= n; ++j) {
    if (j > 0) rows = mul(rows, q_fib_number(m + 1, fib(n - (j - 1))));
    const IntPoly column = q_fib_number(n - 1 - j, fib(m));
    if (column.is_zero()) continue;  // j = n - 1: [F_0] = 0
    const IntPoly term = shift(mul(mul(rows, column), q_fibonomial_recurrence(m - 1, n - j)), fib(m + 1) * fib(n - j));
    rhs = add(rhs, term);
  }
  return exact_report("convolution_q", mn_inputs(m, n), q_fibonomial(m, n), rhs);
}

}  // namespace fibl
