#pragma once

// Exact univariate polynomials in q with arbitrary-precision integer
// coefficients.
//
// Storage is dense between the lowest and the highest nonzero exponent, so
// monomials like q^51 cost one coefficient and q-Fibonomial supports (dense
// intervals starting at 0) carry no index overhead. Both ends are trimmed,
// which makes the representation canonical and operator== structural.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fibl/bigint.hpp"
#include "fibl/errors.hpp"

namespace fibl {

// ---------------------------------------------------------------------------
// Degree cap

inline constexpr std::int64_t kDefaultDegreeCap = 10'000'000;

namespace detail {
inline std::atomic<std::int64_t>& degree_cap_storage() {
  static std::atomic<std::int64_t> cap{kDefaultDegreeCap};
  return cap;
}
}  // namespace detail

inline std::int64_t degree_cap() { return detail::degree_cap_storage().load(); }
inline void set_degree_cap(std::int64_t cap) { detail::degree_cap_storage().store(cap); }

/// Restores the previous cap on scope exit.
class ScopedDegreeCap {
 public:
  explicit ScopedDegreeCap(std::int64_t cap) : saved_(degree_cap()) { set_degree_cap(cap); }
  ~ScopedDegreeCap() { set_degree_cap(saved_); }
  ScopedDegreeCap(const ScopedDegreeCap&) = delete;
  ScopedDegreeCap& operator=(const ScopedDegreeCap&) = delete;

 private:
  std::int64_t saved_;
};

inline void check_degree(std::int64_t degree, const char* what) {
  if (degree > degree_cap()) {
    throw ResourceError(std::string(what) + ": degree " + std::to_string(degree) +
                        " exceeds the degree cap " + std::to_string(degree_cap()));
  }
}

// ---------------------------------------------------------------------------
// IntPoly

class IntPoly {
 public:
  /// The zero polynomial.
  IntPoly() = default;

  /// Takes coefficients of q^low, q^(low+1), ... and normalizes.
  explicit IntPoly(std::vector<BigInt> coeffs, std::int64_t low = 0)
      : low_(low), c_(std::move(coeffs)) {
    normalize();
  }

  static IntPoly constant(BigInt c) { return IntPoly({std::move(c)}, 0); }
  static IntPoly monomial(BigInt c, std::int64_t exponent) {
    if (exponent < 0) throw DomainError("monomial: negative exponent");
    check_degree(exponent, "monomial");
    return IntPoly({std::move(c)}, exponent);
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return c_.empty() ? -1 : low_ + static_cast<std::int64_t>(c_.size()) - 1; }
  /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
  std::int64_t low_degree() const { return c_.empty() ? 0 : low_; }

  /// Coefficients between low_degree() and degree(), inclusive.
  std::span<const BigInt> window() const { return c_; }

  BigInt coeff(std::int64_t e) const {
    if (c_.empty() || e < low_ || e > degree()) return BigInt(0);
    return c_[static_cast<std::size_t>(e - low_)];
  }

  /// Coefficients of q^0 .. q^degree(), interior and leading zeros included.
  std::vector<BigInt> dense() const {
    std::vector<BigInt> out;
    if (c_.empty()) return out;
    out.assign(static_cast<std::size_t>(degree() + 1), BigInt(0));
    std::copy(c_.begin(), c_.end(), out.begin() + low_);
    return out;
  }

  std::size_t term_count() const {
    return static_cast<std::size_t>(
        std::count_if(c_.begin(), c_.end(), [](const BigInt& v) { return sgn(v) != 0; }));
  }

  /// Value at q = 1.
  BigInt eval_at_one() const {
    BigInt s = 0;
    for (const auto& v : c_) s += v;
    return s;
  }

  /// Horner evaluation in any field that accepts double coefficients.
  template <class T>
  T evaluate(const T& x) const {
    T acc = T(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(to_double(*it));
    return acc * pow_int(x, low_);
  }

  bool all_coeffs_nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& v) { return sgn(v) >= 0; });
  }

  /// Smallest and largest coefficient between low_degree() and degree().
  std::pair<BigInt, BigInt> coeff_range() const {
    if (c_.empty()) return {BigInt(0), BigInt(0)};
    auto [lo, hi] = std::minmax_element(c_.begin(), c_.end());
    return {*lo, *hi};
  }

  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.low_degree() == b.low_degree() && a.c_ == b.c_;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const BigInt& v = c_[i];
      if (sgn(v) == 0) continue;
      const std::int64_t e = low_ + static_cast<std::int64_t>(i);
      BigInt mag = abs(v);
      if (first) {
        if (sgn(v) < 0) os << "-";
      } else {
        os << (sgn(v) < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0 || mag != 1) os << mag.get_str();
      if (e > 0) {
        if (mag != 1) os << "*";
        os << "q";
        if (e > 1) os << "^" << e;
      }
    }
    return os.str();
  }

 private:
  template <class T>
  static T pow_int(T x, std::int64_t e) {
    T r = T(1);
    while (e > 0) {
      if (e & 1) r = r * x;
      x = x * x;
      e >>= 1;
    }
    return r;
  }

  void normalize() {
    std::size_t hi = c_.size();
    while (hi > 0 && sgn(c_[hi - 1]) == 0) --hi;
    c_.resize(hi);
    std::size_t lo = 0;
    while (lo < c_.size() && sgn(c_[lo]) == 0) ++lo;
    if (lo > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lo));
      low_ += static_cast<std::int64_t>(lo);
    }
    if (c_.empty()) low_ = 0;
  }

  std::int64_t low_ = 0;
  std::vector<BigInt> c_;
};

/// Raised by exact_div when the long-division remainder is nonzero. For
/// polynomiality tests this is a result, not a crash.
class NotPolynomial : public std::runtime_error {
 public:
  explicit NotPolynomial(IntPoly remainder)
      : std::runtime_error("division leaves nonzero remainder of degree " +
                           std::to_string(remainder.degree())),
        remainder_(std::move(remainder)) {}

  const IntPoly& remainder() const { return remainder_; }

 private:
  IntPoly remainder_;
};

struct DivisionResult {
  IntPoly quotient;
  IntPoly remainder;
};

// ---------------------------------------------------------------------------
// Ring operations

inline IntPoly add(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t lo = std::min(a.low_degree(), b.low_degree());
  const std::int64_t hi = std::max(a.degree(), b.degree());
  std::vector<BigInt> c(static_cast<std::size_t>(hi - lo + 1), BigInt(0));
  auto accumulate = [&](const IntPoly& p) {
    auto w = p.window();
    for (std::size_t i = 0; i < w.size(); ++i) c[static_cast<std::size_t>(p.low_degree() - lo) + i] += w[i];
  };
  accumulate(a);
  accumulate(b);
  return IntPoly(std::move(c), lo);
}

inline IntPoly negate(const IntPoly& a) {
  std::vector<BigInt> c(a.window().begin(), a.window().end());
  for (auto& v : c) v = -v;
  return IntPoly(std::move(c), a.low_degree());
}

inline IntPoly sub(const IntPoly& a, const IntPoly& b) { return add(a, negate(b)); }

/// Multiplies by q^e.
inline IntPoly shift(const IntPoly& a, std::int64_t e) {
  if (e < 0) throw DomainError("shift: negative exponent");
  if (a.is_zero()) return a;
  check_degree(a.degree() + e, "shift");
  return IntPoly(std::vector<BigInt>(a.window().begin(), a.window().end()), a.low_degree() + e);
}

inline IntPoly shift(const IntPoly& a, const BigInt& e) { return shift(a, to_int64(e)); }

/// Replaces q by q^m.
inline IntPoly substitute_power(const IntPoly& p, std::int64_t m) {
  if (m < 1) throw DomainError("substitute_power: m must be >= 1");
  if (p.is_zero() || m == 1) return p;
  if (p.degree() > degree_cap() / m) check_degree(degree_cap() + 1, "substitute_power");
  check_degree(p.degree() * m, "substitute_power");
  auto w = p.window();
  std::vector<BigInt> c(static_cast<std::size_t>((static_cast<std::int64_t>(w.size()) - 1) * m + 1), BigInt(0));
  for (std::size_t i = 0; i < w.size(); ++i) c[i * static_cast<std::size_t>(m)] = w[i];
  return IntPoly(std::move(c), p.low_degree() * m);
}

inline IntPoly substitute_power(const IntPoly& p, const BigInt& m) { return substitute_power(p, to_int64(m)); }

namespace detail {

// q^start (1 + q^step + ... + q^((len-1) step)), every coefficient exactly 1.
struct StridedOnes {
  std::int64_t start;
  std::int64_t step;
  std::int64_t len;
};

inline std::optional<StridedOnes> as_strided_ones(const IntPoly& p) {
  auto w = p.window();
  if (w.empty()) return std::nullopt;
  if (w.size() == 1) {
    if (w[0] != 1) return std::nullopt;
    return StridedOnes{p.low_degree(), 1, 1};
  }
  std::size_t step = 1;
  while (step < w.size() && sgn(w[step]) == 0) ++step;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool on_grid = (i % step) == 0;
    if (on_grid ? (w[i] != 1) : (sgn(w[i]) != 0)) return std::nullopt;
  }
  return StridedOnes{p.low_degree(), static_cast<std::int64_t>(step),
                     static_cast<std::int64_t>((w.size() - 1) / step + 1)};
}

// a * q^s (1 + q^d + ... + q^((L-1)d)) in O(deg): r_t = r_{t-d} + a_t - a_{t-Ld}.
inline IntPoly mul_strided_ones(const IntPoly& a, const StridedOnes& s) {
  auto w = a.window();
  const auto na = static_cast<std::int64_t>(w.size());
  const std::int64_t nr = na + (s.len - 1) * s.step;
  std::vector<BigInt> r(static_cast<std::size_t>(nr), BigInt(0));
  for (std::int64_t t = 0; t < nr; ++t) {
    BigInt& rt = r[static_cast<std::size_t>(t)];
    if (t >= s.step) rt = r[static_cast<std::size_t>(t - s.step)];
    if (t < na) rt += w[static_cast<std::size_t>(t)];
    const std::int64_t drop = t - s.len * s.step;
    if (drop >= 0 && drop < na) rt -= w[static_cast<std::size_t>(drop)];
  }
  return IntPoly(std::move(r), a.low_degree() + s.start);
}

}  // namespace detail

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  check_degree(a.degree() + b.degree(), "mul");
  if (auto s = detail::as_strided_ones(b)) return detail::mul_strided_ones(a, *s);
  if (auto s = detail::as_strided_ones(a)) return detail::mul_strided_ones(b, *s);
  auto wa = a.window();
  auto wb = b.window();
  std::vector<BigInt> c(wa.size() + wb.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (sgn(wa[i]) == 0) continue;
    for (std::size_t j = 0; j < wb.size(); ++j) {
      if (sgn(wb[j]) == 0) continue;
      mpz_addmul(c[i + j].get_mpz_t(), wa[i].get_mpz_t(), wb[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(c), a.low_degree() + b.low_degree());
}

inline std::ostream& operator<<(std::ostream& os, const IntPoly& p) { return os << p.to_string(); }

inline IntPoly operator+(const IntPoly& a, const IntPoly& b) { return add(a, b); }
inline IntPoly operator-(const IntPoly& a, const IntPoly& b) { return sub(a, b); }
inline IntPoly operator*(const IntPoly& a, const IntPoly& b) { return mul(a, b); }

// ---------------------------------------------------------------------------
// Division

namespace detail {

// Schoolbook long division over Z. If a leading quotient coefficient is not
// integral the division stops there and the partial remainder is returned;
// it is nonzero, which is all polynomiality tests need.
inline DivisionResult divmod_schoolbook(const IntPoly& num, const IntPoly& den) {
  std::vector<BigInt> r = num.dense();
  std::vector<BigInt> d = den.dense();
  const auto dn = static_cast<std::int64_t>(d.size()) - 1;
  const auto nn = static_cast<std::int64_t>(r.size()) - 1;
  if (nn < dn) return {IntPoly(), num};
  const BigInt& lc = d.back();
  std::vector<BigInt> q(static_cast<std::size_t>(nn - dn + 1), BigInt(0));
  BigInt factor;
  for (std::int64_t t = nn; t >= dn; --t) {
    BigInt& top = r[static_cast<std::size_t>(t)];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) {
      return {IntPoly(std::move(q)), IntPoly(std::move(r))};
    }
    mpz_divexact(factor.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    const std::int64_t base = t - dn;
    for (std::int64_t j = 0; j <= dn; ++j) {
      const BigInt& dj = d[static_cast<std::size_t>(j)];
      if (sgn(dj) == 0) continue;
      mpz_submul(r[static_cast<std::size_t>(base + j)].get_mpz_t(), factor.get_mpz_t(), dj.get_mpz_t());
    }
    q[static_cast<std::size_t>(base)] = factor;
  }
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

// Long division by D = 1 + q^d + ... + q^((L-1)d) in O(deg). With
// W(t) = sum_{i=0}^{L-2} c_{t-id}, quotient and remainder coefficients are
// both N_t - W(t), and W(t) = W(t+d) - c_{t+d} + c_{t-(L-2)d}.
inline DivisionResult divmod_strided_ones(const IntPoly& num, std::int64_t step, std::int64_t len) {
  const std::vector<BigInt> n = num.dense();
  const std::int64_t r = (len - 1) * step;
  const auto nn = static_cast<std::int64_t>(n.size()) - 1;
  if (nn < r) return {IntPoly(), num};
  const std::int64_t nq = nn - r;
  std::vector<BigInt> c(static_cast<std::size_t>(nq + 1), BigInt(0));
  std::vector<BigInt> rem(static_cast<std::size_t>(r), BigInt(0));
  std::vector<BigInt> ring(static_cast<std::size_t>(step), BigInt(0));  // W(t + d) per residue
  auto c_at = [&](std::int64_t k) -> const BigInt* {
    return (k >= 0 && k <= nq) ? &c[static_cast<std::size_t>(k)] : nullptr;
  };
  for (std::int64_t t = nn; t >= 0; --t) {
    BigInt& w = ring[static_cast<std::size_t>(t % step)];
    if (const BigInt* out = c_at(t + step)) w -= *out;
    if (const BigInt* in = c_at(t - (len - 2) * step)) w += *in;
    if (t >= r) {
      c[static_cast<std::size_t>(t - r)] = n[static_cast<std::size_t>(t)] - w;
      // c_{t-r} enters W at t' = t - r + (L-2)d = t - d, which is handled by
      // the "in" term on the next visit of this residue class.
    } else {
      rem[static_cast<std::size_t>(t)] = n[static_cast<std::size_t>(t)] - w;
    }
  }
  return {IntPoly(std::move(c)), IntPoly(std::move(rem))};
}

}  // namespace detail

/// num = den * quotient + remainder with deg(remainder) < deg(den).
inline DivisionResult divmod(const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) throw DomainError("divmod: division by the zero polynomial");
  if (num.is_zero()) return {IntPoly(), IntPoly()};
  if (auto s = detail::as_strided_ones(den); s && s->start == 0 && s->len >= 2) {
    return detail::divmod_strided_ones(num, s->step, s->len);
  }
  return detail::divmod_schoolbook(num, den);
}

/// Exact quotient; throws NotPolynomial carrying the remainder otherwise.
inline IntPoly exact_div(const IntPoly& num, const IntPoly& den) {
  DivisionResult dr = divmod(num, den);
  if (!dr.remainder.is_zero()) throw NotPolynomial(std::move(dr.remainder));
  return std::move(dr.quotient);
}

inline IntPoly product(std::span<const IntPoly> factors) {
  IntPoly acc = IntPoly::constant(1);
  for (const auto& f : factors) acc = mul(acc, f);
  return acc;
}

/// Exact division by the product of `factors`, one factor at a time. Over
/// Z[q] with monic factors this succeeds iff division by the whole product
/// does; on failure the reported remainder is the one for the full product.
inline IntPoly exact_div_by_factors(const IntPoly& num, std::span<const IntPoly> factors) {
  IntPoly acc = num;
  for (const auto& f : factors) {
    DivisionResult dr = divmod(acc, f);
    if (!dr.remainder.is_zero()) {
      DivisionResult full = divmod(num, product(factors));
      throw NotPolynomial(full.remainder.is_zero() ? std::move(dr.remainder) : std::move(full.remainder));
    }
    acc = std::move(dr.quotient);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Shape predicates

/// True iff the dense coefficient sequence q^0..q^deg (interior zeros
/// included) is weakly increasing and then weakly decreasing.
inline bool is_unimodal(const IntPoly& p) {
  const std::vector<BigInt> c = p.dense();
  std::size_t i = 1;
  while (i < c.size() && c[i] >= c[i - 1]) ++i;
  while (i < c.size() && c[i] <= c[i - 1]) ++i;
  return i >= c.size();
}

}  // namespace fibl
