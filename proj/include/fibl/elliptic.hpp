#pragma once

// Elliptic numbers, the weights v, omega1, omega2, elliptic Fibonomials, and
// the elliptic tiling identities checked numerically at sampled parameters.
//
//   [n]_{a,b;q,p} = theta(q^n, a q^n, b q, (a/b) q) / theta(q, a q, b q^n, (a/b) q^n)
//   v(m,n)        = theta(a q^{2m+n}, b, b q^n, (a/b) q^n, a/b)
//                   / theta(a q^n, b q^m, b q^{m+n}, (a/b) q^m, (a/b) q^{m+n}) * q^m
//   omega1(i,j)   = v_{q^{F_j}}(F_i, F_{i-1})
//   omega2(i,j)   = v_q(F_{i+1} F_j, F_i F_{j-1})
//
// Every quantity is first built as a ThetaQuotient, so the same expression
// feeds numeric evaluation and the closed-form degeneration.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "fibl/fib.hpp"
#include "fibl/qanalogs.hpp"
#include "fibl/theta.hpp"
#include "fibl/tilings.hpp"

namespace fibl {

// ---------------------------------------------------------------------------
// Symbolic builders

/// [n]_{a,b;q^base,p}.
inline ThetaQuotient tq_number(const BigInt& n, const BigInt& base = 1) {
  if (sgn(n) < 0 || sgn(base) <= 0) throw DomainError("elliptic number: need n >= 0, base >= 1");
  const std::int64_t nn = to_int64(BigInt(n * base));
  const std::int64_t b = to_int64(base);
  ThetaQuotient t{{{0, 0, nn}, {1, 0, nn}, {0, 1, b}, {1, -1, b}}, {{0, 0, b}, {1, 0, b}, {0, 1, nn}, {1, -1, nn}}, 0};
  return t.cancel();
}

/// v_{a,b;q^base,p}(m, n).
inline ThetaQuotient tq_weight_v(const BigInt& m, const BigInt& n, const BigInt& base = 1) {
  if (sgn(m) < 0 || sgn(n) < 0 || sgn(base) <= 0) throw DomainError("weight_v: need m, n >= 0, base >= 1");
  const std::int64_t M = to_int64(BigInt(m * base));
  const std::int64_t N = to_int64(BigInt(n * base));
  ThetaQuotient t{{{1, 0, 2 * M + N}, {0, 1, 0}, {0, 1, N}, {1, -1, N}, {1, -1, 0}},
                  {{1, 0, N}, {0, 1, M}, {0, 1, M + N}, {1, -1, M}, {1, -1, M + N}},
                  M};
  return t.cancel();
}

inline ThetaQuotient tq_omega1(std::int64_t i, std::int64_t j) {
  if (i < 1 || j < 1) throw DomainError("omega1: need i, j >= 1");
  return tq_weight_v(fib(i), fib(i - 1), fib(j));
}

inline ThetaQuotient tq_omega2(std::int64_t i, std::int64_t j) {
  if (i < 0 || j < 0) throw DomainError("omega2: need i, j >= 0");
  return tq_weight_v(BigInt(fib(i + 1) * fib(j)), BigInt(fib(i) * fib(j - 1)));
}

/// prod_{k=1}^{n} [F_k].
inline ThetaQuotient tq_fib_factorial(std::int64_t n) {
  ThetaQuotient t;
  for (std::int64_t k = 1; k <= n; ++k) t = t * tq_number(fib(k));
  return t;
}

inline ThetaQuotient tq_fibonomial(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw DomainError("elliptic_fibonomial: m, n must be >= 0");
  return tq_fib_factorial(m + n) / (tq_fib_factorial(m) * tq_fib_factorial(n));
}

/// Horizontal domino omega1(i,j), vertical domino omega1(j,i), special omega2(i,j).
inline ThetaQuotient tq_weight_rect(const PathDominoTiling& t) {
  ThetaQuotient w;
  for (const auto& tile : rect_tiles(t)) {
    switch (tile.kind) {
      case TileKind::HorizontalDomino: w = w * tq_omega1(tile.i, tile.j); break;
      case TileKind::VerticalDomino: w = w * tq_omega1(tile.j, tile.i); break;
      case TileKind::SpecialDomino: w = w * tq_omega2(tile.i, tile.j); break;
    }
  }
  return w;
}

namespace detail {

// Staircase weights: a domino weighs omega1(floor, height). A special domino
// weighs omega2(height, floor); with the arguments as (floor, height) the
// degeneration no longer matches F_floor F_{height+1} and the tiling sum
// misses the elliptic Fibonomial.
inline ThetaQuotient tq_weight_staircase(const StaircaseTiling& t, bool special_floor_first) {
  ThetaQuotient w;
  for (const auto& tile : staircase_tiles(t)) {
    if (tile.kind == TileKind::SpecialDomino) {
      w = w * (special_floor_first ? tq_omega2(tile.floor, tile.height) : tq_omega2(tile.height, tile.floor));
    } else {
      w = w * tq_omega1(tile.floor, tile.height);
    }
  }
  return w;
}

}  // namespace detail

inline ThetaQuotient tq_weight_staircase(const StaircaseTiling& t) { return detail::tq_weight_staircase(t, false); }

// ---------------------------------------------------------------------------
// Numeric values

template <class C>
C elliptic_number(const BigInt& n, const EllipticParams<C>& prm) {
  return evaluate(tq_number(n), prm);
}

template <class C>
C elliptic_number_base(const BigInt& n, const BigInt& base_exp, const EllipticParams<C>& prm) {
  return evaluate(tq_number(n, base_exp), prm);
}

template <class C>
C weight_v(const BigInt& m, const BigInt& n, const EllipticParams<C>& prm) {
  return evaluate(tq_weight_v(m, n), prm);
}

template <class C>
C omega1(std::int64_t i, std::int64_t j, const EllipticParams<C>& prm) {
  return evaluate(tq_omega1(i, j), prm);
}

template <class C>
C omega2(std::int64_t i, std::int64_t j, const EllipticParams<C>& prm) {
  return evaluate(tq_omega2(i, j), prm);
}

template <class C>
C elliptic_fibonomial(std::int64_t m, std::int64_t n, const EllipticParams<C>& prm) {
  return evaluate(tq_fibonomial(m, n), prm);
}

template <class C>
C elliptic_weight_rect(const PathDominoTiling& t, const EllipticParams<C>& prm) {
  return evaluate(tq_weight_rect(t), prm);
}

template <class C>
C elliptic_weight_staircase(const StaircaseTiling& t, const EllipticParams<C>& prm) {
  return evaluate(tq_weight_staircase(t), prm);
}

/// Elliptic Fibonomial through the two-term recurrence
///   E(m,n) = [F_{m+1}]_{q^{F_n}} E(m,n-1) + omega2(m,n) [F_{n-1}]_{q^{F_m}} E(m-1,n).
namespace detail {

// The recurrence value and the same recurrence run on magnitudes. Their ratio
// bounds how much rounding in the factors is amplified by cancellation.
template <class C>
std::pair<C, double> recurrence_with_bound(std::int64_t m, std::int64_t n, const EllipticParams<C>& prm) {
  if (m < 0 || n < 0) throw DomainError("elliptic_fibonomial_recurrence: m, n must be >= 0");
  std::vector<C> prev(static_cast<std::size_t>(n + 1), C(1));
  std::vector<double> prev_abs(static_cast<std::size_t>(n + 1), 1.0);
  for (std::int64_t i = 1; i <= m; ++i) {
    std::vector<C> row(static_cast<std::size_t>(n + 1), C(1));
    std::vector<double> row_abs(static_cast<std::size_t>(n + 1), 1.0);
    for (std::int64_t j = 1; j <= n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const C x = elliptic_number_base(fib(i + 1), fib(j), prm);
      const C y = omega2(i, j, prm) * elliptic_number_base(fib(j - 1), fib(i), prm);
      row[uj] = x * row[uj - 1] + y * prev[uj];
      row_abs[uj] = magnitude(x) * row_abs[uj - 1] + magnitude(y) * prev_abs[uj];
    }
    prev = std::move(row);
    prev_abs = std::move(row_abs);
  }
  return {prev[static_cast<std::size_t>(n)], prev_abs[static_cast<std::size_t>(n)]};
}

template <class C>
struct Wider {
  using type = void;
};
template <>
struct Wider<std::complex<double>> {
  using type = ExtComplex<128>;
};
template <>
struct Wider<ExtComplex<128>> {
  using type = ExtComplex<256>;
};

template <class W, class C>
W widen(const C& z) {
  using R = RealOf<W>;
  return W(R(real(z)), R(imag(z)));
}

template <class W, class C>
EllipticParams<W> widen(const EllipticParams<C>& prm) {
  EllipticParams<W> out;
  out.a = widen<W>(prm.a);
  out.b = widen<W>(prm.b);
  out.q = widen<W>(prm.q);
  out.p = widen<W>(prm.p);
  out.eq_tol = prm.eq_tol;
  out.min_denom = prm.min_denom;
  out.depth_factor = prm.depth_factor;
  return out;
}

}  // namespace detail

///   E(m,n) = [F_{m+1}]_{q^{F_n}} E(m,n-1) + omega2(m,n) [F_{n-1}]_{q^{F_m}} E(m-1,n).
template <class C>
C elliptic_fibonomial_recurrence(std::int64_t m, std::int64_t n, const EllipticParams<C>& prm) {
  return detail::recurrence_with_bound(m, n, prm).first;
}

// ---------------------------------------------------------------------------
// Identity sides

namespace detail {

template <class C>
void track(Sides<C>& s, const C& term) {
  s.scale = std::max(s.scale, magnitude(term));
}

}  // namespace detail

/// [m+n] = [m] + v(m,n) [n].
template <class C>
Sides<C> elliptic_addition_sides(std::int64_t m, std::int64_t n, const EllipticParams<C>& prm) {
  Sides<C> s;
  s.lhs = elliptic_number(make_bigint(m + n), prm);
  const C t1 = elliptic_number(make_bigint(m), prm);
  const C t2 = weight_v(make_bigint(m), make_bigint(n), prm) * elliptic_number(make_bigint(n), prm);
  s.rhs = t1 + t2;
  detail::track(s, t1);
  detail::track(s, t2);
  return s;
}

/// [m n] = [m] [n]_{q^m}.
template <class C>
Sides<C> elliptic_product_sides(std::int64_t m, std::int64_t n, const EllipticParams<C>& prm) {
  return {elliptic_number(make_bigint(m * n), prm),
          elliptic_number(make_bigint(m), prm) * elliptic_number_base(make_bigint(n), make_bigint(m), prm)};
}

/// [F_{m+n}] = [F_n][F_{m+1}]_{q^{F_n}} + omega2(m,n) [F_m][F_{n-1}]_{q^{F_m}}.
template <class C>
Sides<C> elliptic_fib_addition_sides(std::int64_t m, std::int64_t n, const EllipticParams<C>& prm) {
  Sides<C> s;
  s.lhs = elliptic_number(fib(m + n), prm);
  const C t1 = elliptic_number(fib(n), prm) * elliptic_number_base(fib(m + 1), fib(n), prm);
  const C t2 = omega2(m, n, prm) * elliptic_number(fib(m), prm) * elliptic_number_base(fib(n - 1), fib(m), prm);
  s.rhs = t1 + t2;
  detail::track(s, t1);
  detail::track(s, t2);
  return s;
}

/// Factorial ratio against the sum of elliptic weights over all tilings.
template <class C>
Sides<C> elliptic_theorem_sides(int m, int n, const EllipticParams<C>& prm,
                                std::int64_t cap = kDefaultEnumerationCap) {
  Sides<C> s;
  s.lhs = elliptic_fibonomial(m, n, prm);
  s.rhs = C(0);
  enumerate_rect_tilings(
      m, n,
      [&](const PathDominoTiling& t) {
        const C w = elliptic_weight_rect(t, prm);
        s.rhs += w;
        detail::track(s, w);
      },
      cap);
  return s;
}

/// Factorial ratio against the recurrence.
/// When cancellation in the recurrence could exceed the tolerance at the
/// working precision, the recurrence is re-run in the next wider type.
template <class C>
Sides<C> elliptic_recurrence_sides(int m, int n, const EllipticParams<C>& prm) {
  Sides<C> s;
  s.lhs = elliptic_fibonomial(m, n, prm);
  auto [value, bound] = detail::recurrence_with_bound(m, n, prm);
  s.rhs = value;
  using W = typename detail::Wider<C>::type;
  if constexpr (!std::is_void_v<W>) {
    const double eps = std::ldexp(1.0, -std::numeric_limits<RealOf<C>>::digits);
    const double cond = bound / std::max(magnitude(value), 1e-300);
    if (cond * eps * 64 > prm.eq_tol) {
      const W wide = detail::recurrence_with_bound(m, n, detail::widen<W>(prm)).first;
      s.rhs = detail::widen<C>(wide);
      char buf[96];
      std::snprintf(buf, sizeof buf, "recurrence condition %.1e, re-evaluated at %d bits", cond,
                    std::numeric_limits<RealOf<W>>::digits);
      s.note = buf;
    }
  }
  return s;
}

/// Sum over (n-1)-strip tilings of prod omega1(i,1) against [F_n].
template <class C>
Sides<C> elliptic_strip_sides(int n, const EllipticParams<C>& prm) {
  if (n < 1) throw DomainError("elliptic_strip_check: n < 1");
  Sides<C> s;
  s.lhs = C(0);
  for (const auto& strip : detail::strip_list(n - 1)) {
    ThetaQuotient w;
    int pos = 0;
    for (char t : strip) {
      if (t == 'D') w = w * tq_omega1(pos + 2, 1);
      pos += (t == 'M') ? 1 : 2;
    }
    const C v = evaluate(w, prm);
    s.lhs += v;
    detail::track(s, v);
  }
  s.rhs = elliptic_number(fib(n), prm);
  return s;
}

/// [F_{m+2}][F_{m+1}] against sum_{k=1}^{m+1} Omega_k^m [F_k] [F_k]_{q^{F_2}},
/// Omega_k^m = prod_{i=k}^{m} omega2(i,2).
template <class C>
Sides<C> elliptic_spiral_sides(int m, const EllipticParams<C>& prm) {
  if (m < 1) throw DomainError("elliptic_spiral_check: m < 1");
  Sides<C> s;
  s.lhs = elliptic_number(fib(m + 2), prm) * elliptic_number(fib(m + 1), prm);
  s.rhs = C(0);
  for (int k = 1; k <= m + 1; ++k) {
    ThetaQuotient omega;
    for (int i = k; i <= m; ++i) omega = omega * tq_omega2(i, 2);
    const C term = evaluate(omega * tq_number(fib(k)) * tq_number(fib(k), fib(2)), prm);
    s.rhs += term;
    detail::track(s, term);
  }
  return s;
}

/// E(m,n) = sum_{j=0}^{n} (prod_{i<j} [F_{m+1}]_{q^{F_{n-i}}}) [F_{n-1-j}]_{q^{F_m}}
///          omega2(m,n-j) E(m-1,n-j).
/// The j = n-1 term carries [F_0] = 0; the j = n term uses omega2(m,0) = 1
/// and [F_{-1}] = 1.
template <class C>
Sides<C> elliptic_convolution_sides(int m, int n, const EllipticParams<C>& prm) {
  if (m < 1 || n < 1) throw DomainError("elliptic_convolution_check: m, n must be >= 1");
  Sides<C> s;
  s.lhs = elliptic_fibonomial(m, n, prm);
  s.rhs = C(0);
  ThetaQuotient rows;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) rows = rows * tq_number(fib(m + 1), fib(n - (j - 1)));
    const ThetaQuotient column = tq_number(fib(n - 1 - j), fib(m));
    const C term = evaluate(rows * column * tq_omega2(m, n - j) * tq_fibonomial(m - 1, n - j), prm);
    s.rhs += term;
    detail::track(s, term);
  }
  return s;
}

/// Sum of elliptic staircase weights over (n,k)-tilings against E(n-k, k).
template <class C>
Sides<C> elliptic_staircase_sides(int n, int k, const EllipticParams<C>& prm,
                                  std::int64_t cap = kDefaultEnumerationCap) {
  Sides<C> s;
  s.lhs = C(0);
  enumerate_staircase_tilings(
      n, k,
      [&](const StaircaseTiling& t) {
        const C w = elliptic_weight_staircase(t, prm);
        s.lhs += w;
        detail::track(s, w);
      },
      cap);
  s.rhs = elliptic_fibonomial(n - k, k, prm);
  return s;
}

/// Regular elliptic binomial coefficient: factorial ratio against the theta
/// shifted factorial form
///   (q^{n-k+1}, a q^{n-k+1}, b q, (a/b) q; q,p)_k / (q, a q, b q^{n-k+1}, (a/b) q^{n-k+1}; q,p)_k.
template <class C>
Sides<C> elliptic_binomial_sides(int n, int k, const EllipticParams<C>& prm) {
  if (k < 0 || n < k) throw DomainError("elliptic_binomial_check: need 0 <= k <= n");
  auto fact = [](int top) {
    ThetaQuotient t;
    for (int i = 1; i <= top; ++i) t = t * tq_number(make_bigint(i));
    return t;
  };
  const ThetaQuotient ratio = fact(n) / (fact(k) * fact(n - k));
  ThetaQuotient shifted;
  const std::int64_t s0 = n - k + 1;
  for (std::int64_t i = 0; i < k; ++i) {
    ThetaQuotient f{{{0, 0, s0 + i}, {1, 0, s0 + i}, {0, 1, 1 + i}, {1, -1, 1 + i}},
                    {{0, 0, 1 + i}, {1, 0, 1 + i}, {0, 1, s0 + i}, {1, -1, s0 + i}},
                    0};
    shifted = shifted * f.cancel();
  }
  return {evaluate(ratio, prm), evaluate(shifted, prm)};
}

// ---------------------------------------------------------------------------
// Single-point reports

template <class C>
VerificationReport elliptic_theorem_check(int m, int n, const EllipticParams<C>& prm) {
  return sides_report("elliptic_tiling_sum", mn_inputs(m, n), elliptic_theorem_sides(m, n, prm), prm.eq_tol);
}

template <class C>
VerificationReport elliptic_strip_check(int n, const EllipticParams<C>& prm) {
  return sides_report("elliptic_strip", Json{{"n", n}}, elliptic_strip_sides(n, prm), prm.eq_tol);
}

template <class C>
VerificationReport elliptic_spiral_check(int m, const EllipticParams<C>& prm) {
  return sides_report("elliptic_spiral", Json{{"m", m}}, elliptic_spiral_sides(m, prm), prm.eq_tol);
}

template <class C>
VerificationReport elliptic_convolution_check(int m, int n, const EllipticParams<C>& prm) {
  return sides_report("elliptic_convolution", mn_inputs(m, n), elliptic_convolution_sides(m, n, prm), prm.eq_tol);
}

template <class C>
VerificationReport elliptic_staircase_check(int n, int k, const EllipticParams<C>& prm) {
  return sides_report("elliptic_staircase_sum", Json{{"n", n}, {"k", k}}, elliptic_staircase_sides(n, k, prm),
                      prm.eq_tol);
}

// ---------------------------------------------------------------------------
// Degeneration checks

/// limit_chain([n]) == [n]_q exactly.
inline VerificationReport limit_number_check(std::int64_t n) {
  return exact_report("limit_elliptic_number", Json{{"n", n}}, limit_chain(tq_number(make_bigint(n))).as_polynomial(),
                      q_number(n));
}

/// limit_chain(v(m,n)) == q^m exactly.
inline VerificationReport limit_weight_v_check(std::int64_t m, std::int64_t n) {
  return exact_report("limit_weight_v", mn_inputs(m, n),
                      limit_chain(tq_weight_v(make_bigint(m), make_bigint(n))).as_polynomial(),
                      IntPoly::monomial(BigInt(1), m));
}

/// The degenerate elliptic generating function of all m x n tilings equals
/// the q-Fibonomial.
inline VerificationReport limit_rect_tilings_check(int m, int n, std::int64_t cap = kDefaultEnumerationCap) {
  IntPoly sum;
  bool weights_match = true;
  enumerate_rect_tilings(
      m, n,
      [&](const PathDominoTiling& t) {
        const IntPoly w = limit_chain(tq_weight_rect(t)).as_polynomial();
        weights_match = weights_match && w == q_weight_rect(t);
        sum = add(sum, w);
      },
      cap);
  VerificationReport r = exact_report("limit_rect_tiling_weights", mn_inputs(m, n), sum, q_fibonomial(m, n));
  if (!weights_match) {
    r.passed = false;
    r.note = "a tiling weight degenerates to a monomial other than its q-weight";
  }
  return r;
}

inline VerificationReport limit_staircase_tilings_check(int n, int k, std::int64_t cap = kDefaultEnumerationCap) {
  IntPoly sum;
  bool weights_match = true;
  enumerate_staircase_tilings(
      n, k,
      [&](const StaircaseTiling& t) {
        const IntPoly w = limit_chain(tq_weight_staircase(t)).as_polynomial();
        weights_match = weights_match && w == q_weight_staircase(t);
        sum = add(sum, w);
      },
      cap);
  VerificationReport r =
      exact_report("limit_staircase_tiling_weights", Json{{"n", n}, {"k", k}}, sum, q_fibonomial(n - k, k));
  if (!weights_match) {
    r.passed = false;
    r.note = "a tiling weight degenerates to a monomial other than its q-weight";
  }
  return r;
}

}  // namespace fibl
