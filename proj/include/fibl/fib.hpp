#pragma once

// Fibonacci numbers on the index domain n >= -1 (F(-1) = 1, F(0) = 0, F(1) = 1)
// and the integer identities the q- and elliptic layers rely on.

#include <cstdint>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "fibl/bigint.hpp"
#include "fibl/errors.hpp"

namespace fibl {

namespace detail {

// Growable memo table. Entry i holds F(i - 1), so the table starts at F(-1).
class FibTable {
 public:
  BigInt get(std::int64_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto idx = static_cast<std::size_t>(n + 1);
    while (values_.size() <= idx) {
      const std::size_t s = values_.size();
      values_.push_back(values_[s - 1] + values_[s - 2]);
    }
    return values_[idx];
  }

  static FibTable& instance() {
    static FibTable table;
    return table;
  }

 private:
  FibTable() : values_{BigInt(1), BigInt(0)} {}

  std::mutex mu_;
  std::vector<BigInt> values_;
};

}  // namespace detail

/// F(n) for n >= -1.
inline BigInt fib(std::int64_t n) {
  if (n < -1) {
    throw DomainError("fib: index " + std::to_string(n) + " < -1");
  }
  return detail::FibTable::instance().get(n);
}

/// F(n) as a machine integer; F(92) is the largest value that fits.
inline std::int64_t fib_i64(std::int64_t n) {
  if (n > 92) {
    throw ResourceError("fib_i64: F(" + std::to_string(n) + ") exceeds 64 bits");
  }
  return to_int64(fib(n));
}

/// gcd(F_m, F_n) == F_gcd(m,n). Always true; used as a self-test.
inline bool fib_gcd_check(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw DomainError("fib_gcd_check: m, n must be >= 1");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), fib(m).get_mpz_t(), fib(n).get_mpz_t());
  return g == fib(std::gcd(m, n));
}

/// F_{m+n} == F_n F_{m+1} + F_m F_{n-1}.
inline bool fib_addition_check(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw DomainError("fib_addition_check: m, n must be >= 1");
  return fib(m + n) == fib(n) * fib(m + 1) + fib(m) * fib(n - 1);
}

/// c_k^m = sum_{i=k}^{m} F_{i+1}; the empty sum (k = m + 1) is 0.
inline BigInt spiral_exponent(std::int64_t k, std::int64_t m) {
  if (k < 1 || k > m + 1) {
    throw DomainError("spiral_exponent: need 1 <= k <= m + 1, got k=" + std::to_string(k) +
                      ", m=" + std::to_string(m));
  }
  BigInt sum = 0;
  for (std::int64_t i = k; i <= m; ++i) sum += fib(i + 1);
  return sum;
}

/// F_1 F_2 ... F_n (the Fibonacci analog of n!).
inline BigInt fib_factorial(std::int64_t n) {
  if (n < 0) throw DomainError("fib_factorial: n < 0");
  BigInt acc = 1;
  for (std::int64_t k = 1; k <= n; ++k) acc *= fib(k);
  return acc;
}

/// Integer Fibonomial F!(m+n) / (F!(m) F!(n)).
inline BigInt fibonomial(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw DomainError("fibonomial: m, n must be >= 0");
  BigInt num = fib_factorial(m + n);
  BigInt den = fib_factorial(m) * fib_factorial(n);
  BigInt q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace fibl
