#pragma once

// Rational q-Fibo-Catalan numbers, the Coxeter q-Fibonacci Catalan products
// and polynomiality verdicts for both.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fibl/fib.hpp"
#include "fibl/qanalogs.hpp"
#include "fibl/qpoly.hpp"
#include "fibl/report.hpp"
#include "fibl/tilings.hpp"

namespace fibl {

struct PolynomialityVerdict {
  std::string label;
  Json inputs = Json::object();
  bool is_polynomial = false;
  std::optional<IntPoly> quotient;
  std::optional<std::int64_t> remainder_degree;
  std::optional<bool> all_coeffs_nonnegative;
  /// "division" when the quotient was expanded, "cyclotomic" when only the
  /// multiplicity count was run.
  std::string route = "division";

  Json to_json(bool include_quotient = false) const {
    Json j{{"label", label}, {"inputs", inputs}, {"is_polynomial", is_polynomial}, {"route", route}};
    if (quotient) {
      j["degree"] = quotient->degree();
      auto [lo, hi] = quotient->coeff_range();
      j["min_coeff"] = to_string(lo);
      j["max_coeff"] = to_string(hi);
      j["value_at_q1"] = to_string(quotient->eval_at_one());
      if (include_quotient) j["quotient"] = poly_to_json(*quotient);
    }
    if (remainder_degree) j["remainder_degree"] = *remainder_degree;
    if (all_coeffs_nonnegative) j["all_coeffs_nonnegative"] = *all_coeffs_nonnegative;
    return j;
  }
};

namespace detail {

inline PolynomialityVerdict divide_verdict(std::string label, Json inputs, const IntPoly& num,
                                           const std::vector<IntPoly>& den) {
  PolynomialityVerdict v;
  v.label = std::move(label);
  v.inputs = std::move(inputs);
  try {
    IntPoly q = exact_div_by_factors(num, den);
    v.is_polynomial = true;
    v.all_coeffs_nonnegative = q.all_coeffs_nonnegative();
    v.quotient = std::move(q);
  } catch (const NotPolynomial& e) {
    v.is_polynomial = false;
    v.remainder_degree = e.remainder().degree();
  }
  return v;
}

inline std::vector<std::int64_t> divisors_above_one(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    if (d > 1) out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  return out;
}

}  // namespace detail

/// prod [num_i]_q / prod [den_j]_q is a polynomial iff every cyclotomic
/// factor Phi_d (d > 1) divides at least as many numerator entries as
/// denominator entries, since [N]_q = prod_{d | N, d > 1} Phi_d.
inline bool cyclotomic_ratio_is_polynomial(const std::vector<std::int64_t>& num, const std::vector<std::int64_t>& den) {
  std::map<std::int64_t, std::int64_t> need;
  for (auto n : den) {
    if (n < 1) throw DomainError("cyclotomic_ratio_is_polynomial: entries must be >= 1");
    for (auto d : detail::divisors_above_one(n)) ++need[d];
  }
  for (auto [d, count] : need) {
    std::int64_t have = 0;
    for (auto n : num) have += (n % d == 0);
    if (have < count) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rational q-Fibo-Catalan

/// [F]!_{m+n-1} / ([F]!_m [F]!_n). The shared prefix [F]!_{max(m,n)} is
/// cancelled before dividing.
inline PolynomialityVerdict q_fibo_catalan_rational(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw DomainError("q_fibo_catalan_rational: m, n must be >= 1");
  const std::int64_t hi = std::max(m, n);
  const std::int64_t lo = std::min(m, n);
  IntPoly num = IntPoly::constant(1);
  for (std::int64_t k = hi + 1; k <= m + n - 1; ++k) num = mul(num, q_fib_number(k));
  std::vector<IntPoly> den;
  for (std::int64_t k = 3; k <= lo; ++k) den.push_back(q_fib_number(k));
  return detail::divide_verdict("q_fibo_catalan_rational", mn_inputs(m, n), num, den);
}

/// All 1 <= m, n <= max with gcd(m,n) in {1,2}, or every pair when all_gcd.
inline std::vector<PolynomialityVerdict> q_fibo_catalan_positivity_sweep(int max, bool all_gcd = false) {
  if (max < 1) throw DomainError("q_fibo_catalan_positivity_sweep: max < 1");
  std::vector<PolynomialityVerdict> out;
  for (int m = 1; m <= max; ++m) {
    for (int n = 1; n <= max; ++n) {
      const int g = std::gcd(m, n);
      if (!all_gcd && g > 2) continue;
      PolynomialityVerdict v = q_fibo_catalan_rational(m, n);
      v.inputs["gcd"] = g;
      out.push_back(std::move(v));
    }
  }
  return out;
}

/// CSV: m,n,gcd,is_polynomial,degree,min_coeff,max_coeff.
inline std::string sweep_to_csv(const std::vector<PolynomialityVerdict>& rows) {
  std::ostringstream os;
  os << "m,n,gcd,is_polynomial,degree,min_coeff,max_coeff\n";
  for (const auto& v : rows) {
    os << v.inputs.value("m", 0) << ',' << v.inputs.value("n", 0) << ',' << v.inputs.value("gcd", 0) << ','
       << (v.is_polynomial ? "true" : "false") << ',';
    if (v.quotient) {
      auto [lo, hi] = v.quotient->coeff_range();
      os << v.quotient->degree() << ',' << to_string(lo) << ',' << to_string(hi);
    } else {
      os << ",,";
    }
    os << '\n';
  }
  return os.str();
}

/// [F_n] G(m,n) = [F_{m+n}] G(m,n-1).
inline VerificationReport q_fibo_catalan_divisibility_check(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw DomainError("q_fibo_catalan_divisibility_check: m, n must be >= 1");
  return exact_report("fibonomial_divisibility", mn_inputs(m, n), mul(q_fib_number(n), q_fibonomial(m, n)),
                      mul(q_fib_number(m + n), q_fibonomial(m, n - 1)));
}

/// [FCat n] = [F]!_{2n} / ([F]!_{n+1} [F]!_n).
inline PolynomialityVerdict q_fibo_catalan_ordinary(std::int64_t n) {
  if (n < 1) throw DomainError("q_fibo_catalan_ordinary: n < 1");
  IntPoly num = IntPoly::constant(1);
  for (std::int64_t k = n + 2; k <= 2 * n; ++k) num = mul(num, q_fib_number(k));
  std::vector<IntPoly> den;
  for (std::int64_t k = 3; k <= n; ++k) den.push_back(q_fib_number(k));
  return detail::divide_verdict("q_fibo_catalan_ordinary", Json{{"n", n}}, num, den);
}

// ---------------------------------------------------------------------------
// Coxeter types

struct CoxeterType {
  std::string family;  // A, B, D, E6, E7, E8, F4, G2
  int rank = 0;
  std::vector<int> exponents;

  std::string name() const {
    if (family == "A" || family == "B" || family == "D") return family + std::to_string(rank);
    return family;
  }

  int coxeter_number() const { return *std::max_element(exponents.begin(), exponents.end()) + 1; }
};

inline CoxeterType coxeter_type(std::string_view family, int rank = 0) {
  CoxeterType t;
  t.family = std::string(family);
  if (family == "A") {
    if (rank < 1) throw DomainError("A_n needs n >= 1");
    for (int i = 1; i <= rank; ++i) t.exponents.push_back(i);
  } else if (family == "B") {
    if (rank < 2) throw DomainError("B_n needs n >= 2");
    for (int i = 1; i <= rank; ++i) t.exponents.push_back(2 * i - 1);
  } else if (family == "D") {
    if (rank < 4) throw DomainError("D_n needs n >= 4");
    t.exponents.push_back(rank - 1);
    for (int i = 1; i <= rank - 1; ++i) t.exponents.push_back(2 * i - 1);
  } else if (family == "E6") {
    t.exponents = {1, 4, 5, 7, 8, 11};
  } else if (family == "E7") {
    t.exponents = {1, 5, 7, 9, 11, 13, 17};
  } else if (family == "E8") {
    t.exponents = {1, 7, 11, 13, 17, 19, 23, 29};
  } else if (family == "F4") {
    t.exponents = {1, 5, 7, 11};
  } else if (family == "G2") {
    t.exponents = {1, 5};
  } else {
    throw DomainError("unknown Coxeter family: " + std::string(family));
  }
  t.rank = static_cast<int>(t.exponents.size());
  return t;
}

/// Parses "A3", "B4", "D5", "E6", "E7", "E8", "F4", "G2" (case-insensitive).
inline CoxeterType parse_coxeter_type(std::string_view s) {
  std::string up(s);
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "E6" || up == "E7" || up == "E8" || up == "F4" || up == "G2") return coxeter_type(up);
  if (up.size() >= 2 && (up[0] == 'A' || up[0] == 'B' || up[0] == 'D') &&
      std::all_of(up.begin() + 1, up.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return coxeter_type(up.substr(0, 1), std::stoi(up.substr(1)));
  }
  throw DomainError("cannot parse Coxeter type '" + std::string(s) + "'");
}

namespace detail {

inline std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> coxeter_q_numbers(const CoxeterType& w,
                                                                                       std::int64_t a) {
  std::vector<std::int64_t> num, den;
  for (int e : w.exponents) {
    num.push_back(to_int64(fib(a + e)));
    den.push_back(to_int64(fib(e + 1)));
  }
  return {num, den};
}

}  // namespace detail

/// Degree of prod [F_{a+e_i}] / [F_{e_i+1}].
inline BigInt coxeter_degree(const CoxeterType& w, std::int64_t a) {
  BigInt d = 0;
  for (int e : w.exponents) d += fib(a + e) - fib(e + 1);
  return d;
}

/// prod_i [F_{a+e_i}] / [F_{e_i+1}] by exact division.
inline PolynomialityVerdict coxeter_q_fibo_catalan(const CoxeterType& w, std::int64_t a) {
  if (a < 1) throw DomainError("coxeter_q_fibo_catalan: a >= 1 required");
  auto [num_ns, den_ns] = detail::coxeter_q_numbers(w, a);
  IntPoly num = IntPoly::constant(1);
  for (auto n : num_ns) num = mul(num, q_number(n));
  std::vector<IntPoly> den;
  for (auto n : den_ns) den.push_back(q_number(n));
  PolynomialityVerdict v =
      detail::divide_verdict("coxeter_q_fibo_catalan", Json{{"type", w.name()}, {"a", a}}, num, den);
  return v;
}

/// Polynomiality by cyclotomic multiplicities only; nothing is expanded, so
/// it also covers products whose degree is beyond the cap.
inline PolynomialityVerdict coxeter_q_fibo_catalan_cyclotomic(const CoxeterType& w, std::int64_t a) {
  if (a < 1) throw DomainError("coxeter_q_fibo_catalan: a >= 1 required");
  auto [num_ns, den_ns] = detail::coxeter_q_numbers(w, a);
  PolynomialityVerdict v;
  v.label = "coxeter_q_fibo_catalan";
  v.inputs = Json{{"type", w.name()}, {"a", a}, {"degree", to_string(coxeter_degree(w, a))}};
  v.route = "cyclotomic";
  v.is_polynomial = cyclotomic_ratio_is_polynomial(num_ns, den_ns);
  return v;
}

/// The sampled table: every family, 1 <= a <= max_a with gcd(a, h) = 1.
/// Pairs whose degree exceeds the cap get the cyclotomic verdict only.
inline std::vector<PolynomialityVerdict> coxeter_table(int max_a = 12) {
  std::vector<CoxeterType> types;
  for (int n = 1; n <= 4; ++n) types.push_back(coxeter_type("A", n));
  for (int n = 2; n <= 4; ++n) types.push_back(coxeter_type("B", n));
  for (int n = 4; n <= 5; ++n) types.push_back(coxeter_type("D", n));
  for (const char* f : {"E6", "E7", "E8", "F4", "G2"}) types.push_back(coxeter_type(f));
  std::vector<PolynomialityVerdict> out;
  for (const auto& w : types) {
    for (int a = 1; a <= max_a; ++a) {
      if (std::gcd(a, w.coxeter_number()) != 1) continue;
      if (coxeter_degree(w, a) > make_bigint(degree_cap())) {
        out.push_back(coxeter_q_fibo_catalan_cyclotomic(w, a));
      } else {
        out.push_back(coxeter_q_fibo_catalan(w, a));
      }
    }
  }
  return out;
}

}  // namespace fibl
