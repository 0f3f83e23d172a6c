#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "fibl/errors.hpp"

namespace fibl {

/// Exact signed integer. All Fibonacci values and polynomial coefficients use it.
using BigInt = mpz_class;

inline BigInt make_bigint(std::int64_t v) {
  // mpz_class has no int64 constructor on every platform; go through the string
  // path only when the value does not fit a long.
  if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) {
    return BigInt(static_cast<long>(v));
  }
  return BigInt(std::to_string(v));
}

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline BigInt parse_bigint(std::string_view s) {
  BigInt out;
  if (out.set_str(std::string(s), 10) != 0) {
    throw DomainError("not a decimal integer: '" + std::string(s) + "'");
  }
  return out;
}

/// Narrowing conversion used for polynomial exponents.
inline std::int64_t to_int64(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  throw ResourceError("integer " + to_string(v) + " does not fit a machine exponent");
}

inline double to_double(const BigInt& v) { return v.get_d(); }

}  // namespace fibl
