#pragma once

// Test-only oracles: dense schoolbook polynomial arithmetic and cell-grid
// checkers for both tiling models. Deliberately share no code with the library
// beyond the tiling structs being checked.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibl/tilings.hpp"

namespace naive {

using Poly = std::vector<mpz_class>;  // coefficient of q^i at index i

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// Long division; nullopt when some step is not exact over Z or the remainder is nonzero.
inline std::optional<Poly> exact_div(Poly num, const Poly& den) {
  trim(num);
  if (den.empty()) return std::nullopt;
  if (num.size() < den.size()) {
    if (num.empty()) return Poly{};
    return std::nullopt;
  }
  Poly quo(num.size() - den.size() + 1, 0);
  for (std::size_t k = quo.size(); k-- > 0;) {
    const mpz_class& top = num[k + den.size() - 1];
    if (top % den.back() != 0) return std::nullopt;
    quo[k] = top / den.back();
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= quo[k] * den[j];
  }
  trim(num);
  if (!num.empty()) return std::nullopt;
  trim(quo);
  return quo;
}

inline Poly qnum(std::int64_t n) { return Poly(static_cast<std::size_t>(n), mpz_class(1)); }

inline std::int64_t fib(std::int64_t n) {
  if (n == -1) return 1;
  std::int64_t a = 0, b = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t t = a + b;
    a = b;
    b = t;
  }
  return a;
}

inline Poly fib_factorial(int n) {
  Poly acc{1};
  for (int k = 1; k <= n; ++k) acc = mul(acc, qnum(fib(k)));
  return acc;
}

inline Poly q_fibonomial(int m, int n) {
  return *exact_div(fib_factorial(m + n), mul(fib_factorial(m), fib_factorial(n)));
}

inline Poly from_ints(const std::vector<std::int64_t>& v) {
  Poly p;
  for (auto c : v) p.emplace_back(static_cast<long>(c));
  trim(p);
  return p;
}

/// Dense coefficients of a library polynomial with no negative exponents.
inline Poly from_lib(const fibl::IntPoly& p) {
  if (p.is_zero()) return {};
  Poly out(static_cast<std::size_t>(p.degree() + 1), 0);
  for (std::int64_t e = p.low_degree(); e <= p.degree(); ++e) out[static_cast<std::size_t>(e)] = p.coeff(e);
  return out;
}

// ---------------------------------------------------------------------------
// Rectangle grid checker

struct CheckResult {
  bool valid = false;
  std::string why;
  std::int64_t exponent = 0;
};

/// Paints every tile onto the m x n grid, checks the path-domino rules cell by
/// cell and sums the q-weight exponent from top-right corners.
inline CheckResult check_rect(const fibl::PathDominoTiling& t) {
  CheckResult res;
  const int m = t.m, n = t.n;
  if (static_cast<int>(t.path.size()) != m + n) return {false, "path length", 0};
  // below[c][r]: cell (c,r) lies below the path. Walk the path from (0,0).
  std::vector<std::vector<int>> below(m + 2, std::vector<int>(n + 2, 0));
  std::vector<int> top_of_column(m + 2, 0);
  int x = 0, y = 0, east = 0, north = 0;
  for (char s : t.path) {
    if (s == 'E') {
      ++x;
      ++east;
      for (int r = 1; r <= y; ++r) below[x][r] = 1;
      top_of_column[x] = y;
    } else if (s == 'N') {
      ++y;
      ++north;
    } else {
      return {false, "bad step", 0};
    }
  }
  if (east != m || north != n) return {false, "path endpoints", 0};
  std::vector<std::vector<int>> paint(m + 2, std::vector<int>(n + 2, 0));
  auto put = [&](int c, int r) {
    if (c < 1 || c > m || r < 1 || r > n) return false;
    return ++paint[c][r] == 1;
  };
  std::int64_t e = 0;
  if (static_cast<int>(t.rows.size()) != n || static_cast<int>(t.cols.size()) != m) return {false, "strip count", 0};
  for (int r = 1; r <= n; ++r) {
    int c = 1;
    for (char s : t.rows[r - 1]) {
      if (s == 'M') {
        if (!put(c, r) || below[c][r]) return {false, "row monomino off region", 0};
        c += 1;
      } else if (s == 'D') {
        if (!put(c, r) || !put(c + 1, r) || below[c][r] || below[c + 1][r]) return {false, "row domino off region", 0};
        e += fib(c + 1) * fib(r);
        c += 2;
      } else {
        return {false, "bad row tile", 0};
      }
    }
  }
  for (int c = 1; c <= m; ++c) {
    int r = top_of_column[c];
    const std::string& strip = t.cols[c - 1];
    for (std::size_t k = 0; k < strip.size(); ++k) {
      const char s = strip[k];
      if (s == 'M') {
        if (!put(c, r) || !below[c][r]) return {false, "column monomino off region", 0};
        if (r == top_of_column[c]) return {false, "monomino touches the path from below", 0};
        r -= 1;
      } else if (s == 'D' || s == 'S') {
        if (!put(c, r) || !put(c, r - 1) || !below[c][r] || !below[c][r - 1]) {
          return {false, "column domino off region", 0};
        }
        const bool touches = r == top_of_column[c];
        if (touches != (s == 'S')) return {false, "special marker mismatch", 0};
        e += (touches ? fib(c + 1) : fib(c)) * fib(r);
        r -= 2;
      } else {
        return {false, "bad column tile", 0};
      }
    }
  }
  for (int c = 1; c <= m; ++c)
    for (int r = 1; r <= n; ++r)
      if (paint[c][r] != 1) return {false, "cell not covered exactly once", 0};
  res.valid = true;
  res.exponent = e;
  return res;
}

// ---------------------------------------------------------------------------
// Staircase checker

/// Checks a staircase tiling against the diagram geometry and returns the
/// exponent from floor/height statistics read off cell coordinates.
inline CheckResult check_staircase(const fibl::StaircaseTiling& t) {
  const int n = t.n;
  int x = t.k, row = 0;
  bool pending = false;
  std::int64_t e = 0;
  for (char s : t.path) {
    if (s == 'W') {
      if (pending) return {false, "WW", 0};
      pending = true;
      --x;
      continue;
    }
    ++row;
    const int len = n - row;
    if (x < 0 || x > len) return {false, "north step outside the diagram", 0};
    const std::string& strip = t.rows[row - 1];
    std::vector<int> cover(len + 2, 0);
    int cell = pending ? x + 1 : 1;
    const int last = pending ? len : x;
    for (std::size_t k = 0; k < strip.size(); ++k) {
      const char c = strip[k];
      const int w = (c == 'M') ? 1 : 2;
      if (cell + w - 1 > last) return {false, "strip overruns its segment", 0};
      for (int i = 0; i < w; ++i) ++cover[cell + i];
      if (c == 'S' && !(pending && k == 0)) return {false, "special domino away from a forced step", 0};
      if (pending && k == 0 && c != 'S') return {false, "forced row must start with a special domino", 0};
      if (c == 'D' || c == 'S') {
        std::int64_t floor = 0, height = 0;
        if (!pending) {
          floor = cell + 1;        // eastern edge of the tile
          height = 1 + (len - x);  // 1 + boxes between the step and the eastern border
        } else {
          floor = len - (cell - 1);  // from the eastern border to the western edge
          height = 1 + x;
        }
        e += fib(floor) * fib(c == 'S' ? height + 1 : height);
      }
      cell += w;
    }
    const int first = pending ? x + 1 : 1;
    if (!(pending && len - x == 0)) {
      for (int i = first; i <= last; ++i)
        if (cover[i] != 1) return {false, "segment not covered", 0};
    } else if (!strip.empty()) {
      return {false, "empty forced segment carries tiles", 0};
    }
    pending = false;
  }
  if (pending || row != n || x != 0) return {false, "path endpoints", 0};
  return {true, "", e};
}

}  // namespace naive
