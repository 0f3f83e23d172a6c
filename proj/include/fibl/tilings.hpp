#pragma once

// The two weighted tiling models of the q-Fibonomial:
//
//  * path-domino tilings of an m x n rectangle (m columns, n rows). Rows are
//    numbered 1..n bottom to top, columns 1..m left to right. The lattice path
//    runs from (0,0) to (m,n) with steps E and N. Row j is tiled left of its
//    north step with monominos and horizontal dominos; column i is tiled below
//    its east step with a special vertical domino on top (touching the path)
//    followed by monominos and vertical dominos. A column of below-height 1
//    admits no tiling.
//
//  * (n,k)-tilings of the staircase Young diagram (n-1, ..., 1). The path runs
//    from (k,0) to (0,n) with steps W and N; every W is followed by an N. The
//    north step in row r sits at abscissa x. If it is not preceded by a W the
//    x boxes to its left are tiled; otherwise the n-r-x boxes to its right are
//    tiled, starting with a special domino touching the step.
//
// Strips are strings over 'M' (monomino), 'D' (domino), 'S' (special domino).
// Rectangle rows list tiles left to right, rectangle columns top to bottom,
// staircase rows left to right.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "fibl/fib.hpp"
#include "fibl/qanalogs.hpp"
#include "fibl/qpoly.hpp"
#include "fibl/report.hpp"

namespace fibl {

inline constexpr std::int64_t kDefaultEnumerationCap = 100'000'000;

struct PathDominoTiling {
  int m = 0;
  int n = 0;
  std::string path;               // m 'E' and n 'N'
  std::vector<std::string> rows;  // rows[j-1]: row j, left to right
  std::vector<std::string> cols;  // cols[i-1]: column i, top to bottom

  friend bool operator==(const PathDominoTiling&, const PathDominoTiling&) = default;
};

struct StaircaseTiling {
  int n = 0;
  int k = 0;
  std::string path;               // k 'W' and n 'N'
  std::vector<std::string> rows;  // rows[r-1]: tiles attached to the north step in row r

  friend bool operator==(const StaircaseTiling&, const StaircaseTiling&) = default;
};

enum class TileKind { HorizontalDomino, VerticalDomino, SpecialDomino };

/// A weighted rectangle tile, located by its top-right corner (i, j).
struct RectTile {
  TileKind kind;
  int i;
  int j;
};

/// A weighted staircase tile with its floor and height statistics. Regular
/// staircase dominos are reported as HorizontalDomino.
struct StaircaseTile {
  TileKind kind;
  int floor;
  int height;
};

// ---------------------------------------------------------------------------
// Strips

namespace detail {

inline void strips_rec(int remaining, std::string& cur, const std::function<void(const std::string&)>& sink) {
  if (remaining == 0) {
    sink(cur);
    return;
  }
  cur.push_back('M');
  strips_rec(remaining - 1, cur, sink);
  cur.pop_back();
  if (remaining >= 2) {
    cur.push_back('D');
    strips_rec(remaining - 2, cur, sink);
    cur.pop_back();
  }
}

// All strip tilings of a given length, cached; lexicographic with M < D.
inline const std::vector<std::string>& strip_list(int len) {
  static std::mutex mu;
  static std::map<int, std::vector<std::string>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(len);
  if (it != cache.end()) return it->second;
  std::vector<std::string> out;
  std::string cur;
  strips_rec(len, cur, [&](const std::string& s) { out.push_back(s); });
  return cache.emplace(len, std::move(out)).first->second;
}

}  // namespace detail

/// Emits every monomino/domino tiling of a 1 x len strip; returns the count,
/// which equals F_{len+1}.
inline BigInt enumerate_strips(int len, const std::function<void(const std::string&)>& sink) {
  if (len < 0) throw DomainError("enumerate_strips: len < 0");
  BigInt count = 0;
  std::string cur;
  detail::strips_rec(len, cur, [&](const std::string& s) {
    ++count;
    sink(s);
  });
  return count;
}

/// Sum over strip tilings of prod q^{F_i}, i the right end of each domino.
inline IntPoly q_strip_sum(int len) {
  if (len < 0) throw DomainError("q_strip_sum: len < 0");
  std::map<std::int64_t, std::int64_t> hist;
  for (const auto& s : detail::strip_list(len)) {
    std::int64_t e = 0;
    int pos = 0;
    for (char t : s) {
      if (t == 'D') e += fib_i64(pos + 2);
      pos += (t == 'M') ? 1 : 2;
    }
    ++hist[e];
  }
  IntPoly out;
  for (auto [e, c] : hist) out = add(out, IntPoly::monomial(make_bigint(c), e));
  return out;
}

// ---------------------------------------------------------------------------
// Rectangle geometry and weights

/// x_j: number of east steps before the j-th north step.
inline std::vector<int> rect_row_lengths(const std::string& path) {
  std::vector<int> out;
  int east = 0;
  for (char s : path) {
    if (s == 'E') ++east;
    else out.push_back(east);
  }
  return out;
}

/// h_i: number of north steps before the i-th east step.
inline std::vector<int> rect_column_heights(const std::string& path) {
  std::vector<int> out;
  int north = 0;
  for (char s : path) {
    if (s == 'N') ++north;
    else out.push_back(north);
  }
  return out;
}

/// Dominos of a rectangle tiling with their top-right corners.
inline std::vector<RectTile> rect_tiles(const PathDominoTiling& t) {
  std::vector<RectTile> out;
  for (int j = 1; j <= static_cast<int>(t.rows.size()); ++j) {
    int col = 0;
    for (char s : t.rows[static_cast<std::size_t>(j - 1)]) {
      if (s == 'D') out.push_back({TileKind::HorizontalDomino, col + 2, j});
      col += (s == 'M') ? 1 : 2;
    }
  }
  const std::vector<int> heights = rect_column_heights(t.path);
  for (int i = 1; i <= static_cast<int>(t.cols.size()); ++i) {
    int top = heights[static_cast<std::size_t>(i - 1)];
    for (char s : t.cols[static_cast<std::size_t>(i - 1)]) {
      if (s == 'S') out.push_back({TileKind::SpecialDomino, i, top});
      if (s == 'D') out.push_back({TileKind::VerticalDomino, i, top});
      top -= (s == 'M') ? 1 : 2;
    }
  }
  return out;
}

/// Exponent of the q-weight: F_i F_j per domino, F_{i+1} F_j per special domino.
inline BigInt q_weight_rect_exponent(const PathDominoTiling& t) {
  BigInt e = 0;
  for (const auto& tile : rect_tiles(t)) {
    e += (tile.kind == TileKind::SpecialDomino ? fib(tile.i + 1) : fib(tile.i)) * fib(tile.j);
  }
  return e;
}

inline IntPoly q_weight_rect(const PathDominoTiling& t) {
  return IntPoly::monomial(BigInt(1), to_int64(q_weight_rect_exponent(t)));
}

// ---------------------------------------------------------------------------
// Rectangle enumeration

namespace detail {

inline void check_cap(const BigInt& count, std::int64_t cap) {
  if (count > make_bigint(cap)) {
    throw ResourceError("tiling enumeration exceeds the enumeration cap of " + std::to_string(cap));
  }
}

// Odometer over the cartesian product of strip choices, last strip fastest.
inline void for_each_product(const std::vector<const std::vector<std::string>*>& choices,
                             const std::function<void(const std::vector<std::size_t>&)>& visit) {
  for (const auto* c : choices) {
    if (c->empty()) return;
  }
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    visit(idx);
    std::size_t k = idx.size();
    while (k > 0) {
      --k;
      if (++idx[k] < choices[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (idx.empty()) return;
  }
}

inline const std::vector<std::string>& column_choices(int height) {
  static std::mutex mu;
  static std::map<int, std::vector<std::string>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(height);
  if (it != cache.end()) return it->second;
  std::vector<std::string> out;
  if (height == 0) {
    out.emplace_back();
  } else if (height >= 2) {
    // strip_list takes its own lock; no re-entrancy on this mutex.
    for (const auto& s : strip_list(height - 2)) out.push_back("S" + s);
  }
  return cache.emplace(height, std::move(out)).first->second;
}

}  // namespace detail

/// Emits every path-domino tiling of the m x n rectangle once. Paths come in
/// lexicographic order (E < N), strip choices in lexicographic order (M < D).
inline BigInt enumerate_rect_tilings(int m, int n, const std::function<void(const PathDominoTiling&)>& sink,
                                     std::int64_t cap = kDefaultEnumerationCap) {
  if (m < 0 || n < 0) throw DomainError("enumerate_rect_tilings: m, n must be >= 0");
  std::string path = std::string(static_cast<std::size_t>(m), 'E') + std::string(static_cast<std::size_t>(n), 'N');
  BigInt count = 0;
  do {
    const auto xs = rect_row_lengths(path);
    const auto hs = rect_column_heights(path);
    if (std::find(hs.begin(), hs.end(), 1) != hs.end()) continue;
    std::vector<const std::vector<std::string>*> choices;
    for (int x : xs) choices.push_back(&detail::strip_list(x));
    for (int h : hs) choices.push_back(&detail::column_choices(h));
    PathDominoTiling t{m, n, path, std::vector<std::string>(static_cast<std::size_t>(n)),
                       std::vector<std::string>(static_cast<std::size_t>(m))};
    detail::for_each_product(choices, [&](const std::vector<std::size_t>& idx) {
      ++count;
      detail::check_cap(count, cap);
      for (std::size_t j = 0; j < xs.size(); ++j) t.rows[j] = (*choices[j])[idx[j]];
      for (std::size_t i = 0; i < hs.size(); ++i) t.cols[i] = (*choices[xs.size() + i])[idx[xs.size() + i]];
      sink(t);
    });
  } while (std::next_permutation(path.begin(), path.end()));
  return count;
}

/// Sum of q-weights over all path-domino tilings.
inline IntPoly rect_generating_function(int m, int n, std::int64_t cap = kDefaultEnumerationCap) {
  std::map<std::int64_t, std::int64_t> hist;
  enumerate_rect_tilings(
      m, n, [&](const PathDominoTiling& t) { ++hist[to_int64(q_weight_rect_exponent(t))]; }, cap);
  IntPoly out;
  for (auto [e, c] : hist) out = add(out, IntPoly::monomial(make_bigint(c), e));
  return out;
}

// ---------------------------------------------------------------------------
// Staircase geometry and weights

struct StaircaseRow {
  int x;        // abscissa of the north step
  bool forced;  // preceded by a west step
};

/// Rows of a staircase path from (k, 0); throws on malformed paths.
inline std::vector<StaircaseRow> staircase_rows(int n, int k, const std::string& path) {
  std::vector<StaircaseRow> rows;
  int x = k;
  bool pending = false;
  for (char s : path) {
    if (s == 'W') {
      if (pending) throw DomainError("staircase path: west step not followed by a north step");
      --x;
      pending = true;
    } else if (s == 'N') {
      rows.push_back({x, pending});
      pending = false;
    } else {
      throw DomainError("staircase path: unknown step");
    }
  }
  if (pending || x != 0 || static_cast<int>(rows.size()) != n) {
    throw DomainError("staircase path does not end at (0, n) with a north step");
  }
  return rows;
}

/// True iff every north step lies inside the diagram (x <= n - r in row r).
inline bool staircase_path_inside(int n, const std::vector<StaircaseRow>& rows) {
  for (int r = 1; r <= static_cast<int>(rows.size()); ++r) {
    if (rows[static_cast<std::size_t>(r - 1)].x > n - r) return false;
  }
  return true;
}

/// Dominos of a staircase tiling with floor/height statistics.
///
/// Left of the path (row r, north step at x, row length n - r): floor is the
/// box count from the western border to the tile's eastern border, height is
/// 1 + (n - r - x). Right of the path the statistics are mirrored: floor is
/// the box count from the eastern border to the tile's western border, height
/// is 1 + x.
inline std::vector<StaircaseTile> staircase_tiles(const StaircaseTiling& t) {
  std::vector<StaircaseTile> out;
  const auto rows = staircase_rows(t.n, t.k, t.path);
  for (int r = 1; r <= t.n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r - 1)];
    const int len = t.n - r;
    const std::string& strip = t.rows[static_cast<std::size_t>(r - 1)];
    if (!row.forced) {
      int col = 0;
      for (char s : strip) {
        if (s == 'D') out.push_back({TileKind::HorizontalDomino, col + 2, 1 + len - row.x});
        col += (s == 'M') ? 1 : 2;
      }
    } else {
      int west = row.x;
      for (char s : strip) {
        if (s == 'S') out.push_back({TileKind::SpecialDomino, len - west, 1 + row.x});
        if (s == 'D') out.push_back({TileKind::HorizontalDomino, len - west, 1 + row.x});
        west += (s == 'M') ? 1 : 2;
      }
    }
  }
  return out;
}

/// F_floor F_height per domino, F_floor F_{height+1} per special domino.
inline BigInt q_weight_staircase_exponent(const StaircaseTiling& t) {
  BigInt e = 0;
  for (const auto& tile : staircase_tiles(t)) {
    e += fib(tile.floor) * (tile.kind == TileKind::SpecialDomino ? fib(tile.height + 1) : fib(tile.height));
  }
  return e;
}

inline IntPoly q_weight_staircase(const StaircaseTiling& t) {
  return IntPoly::monomial(BigInt(1), to_int64(q_weight_staircase_exponent(t)));
}

// ---------------------------------------------------------------------------
// Staircase enumeration

struct StaircaseOptions {
  /// Catalan partial tilings: row 1 stays blank except for the special
  /// domino forced by an initial west step.
  bool blank_first_row = false;
};

/// Emits every (n,k)-tiling once. Paths come in lexicographic order (N < W).
inline BigInt enumerate_staircase_tilings(int n, int k, const std::function<void(const StaircaseTiling&)>& sink,
                                          std::int64_t cap = kDefaultEnumerationCap,
                                          StaircaseOptions opts = {}) {
  if (k < 0 || n < k) throw DomainError("enumerate_staircase_tilings: need n >= k >= 0");
  // Tokens: 'N' is a free north step, 'X' a west step glued to its north step.
  std::string tokens = std::string(static_cast<std::size_t>(n - k), 'N') + std::string(static_cast<std::size_t>(k), 'X');
  static const std::vector<std::string> kBlank{std::string()};
  static const std::vector<std::string> kSpecialOnly{std::string("S")};
  BigInt count = 0;
  do {
    std::string path;
    for (char c : tokens) path += (c == 'N') ? "N" : "WN";
    const auto rows = staircase_rows(n, k, path);
    if (!staircase_path_inside(n, rows)) continue;
    std::vector<const std::vector<std::string>*> choices;
    for (int r = 1; r <= n; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r - 1)];
      const int right = n - r - row.x;
      if (opts.blank_first_row && r == 1) {
        choices.push_back(row.forced ? (right >= 2 ? &kSpecialOnly : &detail::column_choices(1)) : &kBlank);
      } else {
        choices.push_back(row.forced ? &detail::column_choices(right) : &detail::strip_list(row.x));
      }
    }
    StaircaseTiling t{n, k, path, std::vector<std::string>(static_cast<std::size_t>(n))};
    detail::for_each_product(choices, [&](const std::vector<std::size_t>& idx) {
      ++count;
      detail::check_cap(count, cap);
      for (std::size_t r = 0; r < idx.size(); ++r) t.rows[r] = (*choices[r])[idx[r]];
      sink(t);
    });
  } while (std::next_permutation(tokens.begin(), tokens.end()));
  return count;
}

inline IntPoly staircase_generating_function(int n, int k, std::int64_t cap = kDefaultEnumerationCap,
                                             StaircaseOptions opts = {}) {
  std::map<std::int64_t, std::int64_t> hist;
  enumerate_staircase_tilings(
      n, k, [&](const StaircaseTiling& t) { ++hist[to_int64(q_weight_staircase_exponent(t))]; }, cap, opts);
  IntPoly out;
  for (auto [e, c] : hist) out = add(out, IntPoly::monomial(make_bigint(c), e));
  return out;
}

// ---------------------------------------------------------------------------
// Checks

inline VerificationReport strip_sum_check(int len) {
  return exact_report("strip_sum_q", Json{{"len", len}}, q_strip_sum(len), q_fib_number(len + 1));
}

inline VerificationReport rect_theorem_check(int m, int n, std::int64_t cap = kDefaultEnumerationCap) {
  return exact_report("rect_tiling_sum_q", mn_inputs(m, n), rect_generating_function(m, n, cap), q_fibonomial(m, n));
}

inline VerificationReport staircase_theorem_check(int n, int k, std::int64_t cap = kDefaultEnumerationCap) {
  return exact_report("staircase_tiling_sum_q", Json{{"n", n}, {"k", k}}, staircase_generating_function(n, k, cap),
                      q_fibonomial(n - k, k));
}

/// The multiset of q-weights of m x n rectangle tilings equals that of the
/// (m+n, n) staircase tilings. Multisets are compared as exponent histograms,
/// i.e. as generating functions.
inline VerificationReport model_bijection_check(int m, int n, std::int64_t cap = kDefaultEnumerationCap) {
  VerificationReport r = exact_report("model_bijection", mn_inputs(m, n), rect_generating_function(m, n, cap),
                                      staircase_generating_function(m + n, n, cap));
  r.note = "rectangle " + std::to_string(m) + "x" + std::to_string(n) + " vs staircase (" + std::to_string(m + n) +
           "," + std::to_string(n) + ")";
  return r;
}

/// Catalan partial tilings of size 2n: (2n, n-1)-tilings whose first row is
/// blank except for the forced special domino.
inline IntPoly catalan_partial_generating_function(int n, std::int64_t cap = kDefaultEnumerationCap) {
  if (n < 1) throw DomainError("catalan partial tilings: n < 1");
  return staircase_generating_function(2 * n, n - 1, cap, StaircaseOptions{true});
}

/// [FCat n] = [F]!_{2n} / ([F]!_{n+1} [F]!_n).
inline IntPoly q_fibo_catalan_ordinary_value(int n) {
  if (n < 1) throw DomainError("q_fibo_catalan_ordinary: n < 1");
  std::vector<IntPoly> den;
  for (int k = 3; k <= n + 1; ++k) den.push_back(q_fib_number(k));
  for (int k = 3; k <= n; ++k) den.push_back(q_fib_number(k));
  return exact_div_by_factors(q_fib_factorial(2 * n), den);
}

/// Negative result: the Catalan partial tiling sum does not reproduce the
/// q-Fibo-Catalan number. Passes when the two polynomials differ.
inline VerificationReport catalan_partial_tiling_counterexample(int n = 3) {
  const IntPoly tiling_sum = catalan_partial_generating_function(n);
  const IntPoly value = q_fibo_catalan_ordinary_value(n);
  VerificationReport r = exact_report("catalan_partial_tiling_counterexample", Json{{"n", n}, {"size", 2 * n}},
                                      tiling_sum, value, /*expect_equal=*/false);
  r.note = "q=1: tiling count " + to_string(tiling_sum.eval_at_one()) + ", Fibo-Catalan " +
           to_string(value.eval_at_one()) + (r.passed ? "; polynomials differ" : "; polynomials coincide");
  return r;
}

}  // namespace fibl

// ---------------------------------------------------------------------------
// JSON

namespace fibl {

inline Json tiling_to_json(const PathDominoTiling& t) {
  return Json{{"model", "rectangle"}, {"m", t.m}, {"n", t.n}, {"path", t.path}, {"rows", t.rows}, {"cols", t.cols}};
}

inline Json tiling_to_json(const StaircaseTiling& t) {
  return Json{{"model", "staircase"}, {"n", t.n}, {"k", t.k}, {"path", t.path}, {"rows", t.rows}};
}

inline PathDominoTiling rect_tiling_from_json(const Json& j) {
  PathDominoTiling t;
  t.m = j.at("m").get<int>();
  t.n = j.at("n").get<int>();
  t.path = j.at("path").get<std::string>();
  t.rows = j.at("rows").get<std::vector<std::string>>();
  t.cols = j.at("cols").get<std::vector<std::string>>();
  if (static_cast<int>(t.rows.size()) != t.n || static_cast<int>(t.cols.size()) != t.m ||
      static_cast<int>(t.path.size()) != t.m + t.n) {
    throw DomainError("rect_tiling_from_json: size mismatch");
  }
  return t;
}

inline StaircaseTiling staircase_tiling_from_json(const Json& j) {
  StaircaseTiling t;
  t.n = j.at("n").get<int>();
  t.k = j.at("k").get<int>();
  t.path = j.at("path").get<std::string>();
  t.rows = j.at("rows").get<std::vector<std::string>>();
  if (static_cast<int>(t.rows.size()) != t.n) throw DomainError("staircase_tiling_from_json: size mismatch");
  staircase_rows(t.n, t.k, t.path);
  return t;
}

}  // namespace fibl
