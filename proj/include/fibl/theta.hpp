#pragma once

// Modified Jacobi theta functions theta(x;p) = prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x),
// symbolic theta quotients in the monomials a^i b^j q^k, their numeric
// evaluation, and the ordered degeneration p -> 0, a -> 0, b -> 0.
//
// Numeric code is templated on the complex type: std::complex<double> or a
// Boost.Multiprecision cpp_complex.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "fibl/errors.hpp"
#include "fibl/qpoly.hpp"
#include "fibl/report.hpp"

namespace fibl {

namespace mp = boost::multiprecision;

template <unsigned Bits>
using ExtComplex = mp::cpp_complex<Bits, mp::backends::digit_base_2>;

template <class C>
struct ComplexTraits {
  using Real = typename C::value_type;
};

template <class B, mp::expression_template_option E>
struct ComplexTraits<mp::number<B, E>> {
  using Real = typename mp::component_type<mp::number<B, E>>::type;
};

template <class C>
using RealOf = typename ComplexTraits<C>::Real;

template <class C>
double magnitude(const C& z) {
  using std::abs;
  return static_cast<double>(abs(z));
}

template <class C>
C make_complex(double re, double im) {
  using R = RealOf<C>;
  return C(R(re), R(im));
}

template <class C>
bool is_finite(const C& z) {
  using std::isfinite;
  return std::isfinite(static_cast<double>(real(z))) && std::isfinite(static_cast<double>(imag(z)));
}

/// z^e by binary exponentiation; negative e inverts.
template <class C>
C pow_int(C z, std::int64_t e) {
  const bool inv = e < 0;
  std::uint64_t k = inv ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  C acc(1);
  while (k) {
    if (k & 1U) acc *= z;
    z *= z;
    k >>= 1U;
  }
  return inv ? C(1) / acc : acc;
}

/// Default tolerances per numeric type.
template <class C>
struct NumericDefaults {
  static double eq_tol() { return 1e-20; }
  static double trunc_eps() { return std::ldexp(1.0, -std::numeric_limits<RealOf<C>>::digits); }
  static double min_denom() { return 1e-12; }
};

template <>
struct NumericDefaults<std::complex<double>> {
  static double eq_tol() { return 1e-7; }
  static double trunc_eps() { return 1e-17; }
  static double min_denom() { return 1e-9; }
};

template <class C>
struct EllipticParams {
  C a{};
  C b{};
  C q{};
  C p{};
  double trunc_eps = NumericDefaults<C>::trunc_eps();
  double eq_tol = NumericDefaults<C>::eq_tol();
  double min_denom = NumericDefaults<C>::min_denom();
  /// Multiplies the truncation depth; 2 doubles it for soundness checks.
  int depth_factor = 1;

  void validate() const {
    if (!(magnitude(p) < 1.0)) throw DomainError("elliptic parameters: |p| must be < 1");
    if (magnitude(a) == 0.0 || magnitude(b) == 0.0 || magnitude(q) == 0.0) {
      throw DomainError("elliptic parameters: a, b, q must be nonzero");
    }
    if (!(trunc_eps > 0 && eq_tol > 0 && min_denom > 0)) {
      throw DomainError("elliptic parameters: tolerances must be positive");
    }
  }

  Json to_json() const {
    return Json{{"a", complex_to_json(a)}, {"b", complex_to_json(b)}, {"q", complex_to_json(q)},
                {"p", complex_to_json(p)}, {"trunc_eps", trunc_eps}, {"eq_tol", eq_tol},
                {"min_denom", min_denom}};
  }
};

// ---------------------------------------------------------------------------
// Direct evaluation

namespace detail {

// Number of product terms: smallest J >= 1 with |p|^J max(|x|, 1/|x|) < eps.
inline int theta_terms(double abs_x, double abs_p, double eps, int depth_factor) {
  if (abs_p == 0.0) return 1;
  const double big = std::max(abs_x, 1.0 / abs_x);
  const double j = std::ceil((std::log(big) - std::log(eps)) / -std::log(abs_p));
  const int terms = std::max(1, static_cast<int>(std::min(j + 1.0, 1e6)));
  return terms * std::max(1, depth_factor);
}

}  // namespace detail

template <class C>
C theta(const C& x, const C& p, double eps) {
  const double ax = magnitude(x);
  const double ap = magnitude(p);
  if (ax == 0.0) throw DomainError("theta: x = 0");
  if (!(ap < 1.0)) throw DomainError("theta: |p| >= 1");
  const int terms = detail::theta_terms(ax, ap, eps, 1);
  C acc(1);
  C pj(1);
  const C inv = C(1) / x;
  for (int j = 0; j < terms; ++j) {
    acc *= (C(1) - pj * x) * (C(1) - pj * p * inv);
    pj *= p;
  }
  return acc;
}

template <class C>
C theta_multi(const std::vector<C>& xs, const C& p, double eps) {
  C acc(1);
  for (const auto& x : xs) acc *= theta(x, p, eps);
  return acc;
}

namespace detail {

// A complex value held as mantissa * 2^exp2. Products of many theta factors
// overflow double, and summing logarithms instead costs |log| * eps of
// relative accuracy; rescaling by exact powers of two avoids both.
template <class C>
struct Scaled {
  C mantissa = C(1);
  std::int64_t exp2 = 0;

  void normalize() {
    const double m = magnitude(mantissa);
    if (m == 0.0 || !std::isfinite(m)) return;
    int e = 0;
    std::frexp(m, &e);
    if (e > 64 || e < -64) {
      mantissa *= C(RealOf<C>(std::ldexp(1.0, -e)));
      exp2 += e;
    }
  }

  void mul(const C& z) {
    mantissa *= z;
    normalize();
  }

  void mul(const Scaled& o) {
    mantissa *= o.mantissa;
    exp2 += o.exp2;
    normalize();
  }

  void div(const Scaled& o) {
    mantissa /= o.mantissa;
    exp2 -= o.exp2;
    normalize();
  }

  C value() const {
    C out = mantissa;
    std::int64_t e = exp2;
    while (e != 0) {
      const int step = static_cast<int>(std::clamp<std::int64_t>(e, -512, 512));
      out *= C(RealOf<C>(std::ldexp(1.0, step)));
      e -= step;
    }
    return out;
  }
};

// theta(x;p) as a scaled product, plus the smallest factor magnitude seen.
template <class C>
std::pair<Scaled<C>, double> scaled_theta(const C& x, const EllipticParams<C>& prm) {
  const double ax = magnitude(x);
  const int terms = theta_terms(ax, magnitude(prm.p), prm.trunc_eps, prm.depth_factor);
  Scaled<C> acc;
  C pj(1);
  const C inv = C(1) / x;
  double min_factor = std::numeric_limits<double>::infinity();
  for (int j = 0; j < terms; ++j) {
    const C f1 = C(1) - pj * x;
    const C f2 = C(1) - pj * prm.p * inv;
    min_factor = std::min({min_factor, magnitude(f1), magnitude(f2)});
    if (min_factor == 0.0) return {Scaled<C>{C(0), 0}, 0.0};
    acc.mul(f1);
    acc.mul(f2);
    pj *= prm.p;
  }
  return {acc, min_factor};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Symbolic theta quotients

/// The theta argument a^a_pow b^b_pow q^q_pow.
struct ThetaArg {
  int a_pow = 0;
  int b_pow = 0;
  std::int64_t q_pow = 0;

  auto operator<=>(const ThetaArg&) const = default;

  bool is_one() const { return a_pow == 0 && b_pow == 0 && q_pow == 0; }

  std::string to_string() const {
    std::string s;
    auto put = [&](const char* v, std::int64_t e) {
      if (e == 0) return;
      if (!s.empty()) s += "*";
      s += v;
      if (e != 1) s += "^" + std::to_string(e);
    };
    put("a", a_pow);
    put("b", b_pow);
    put("q", q_pow);
    return s.empty() ? "1" : s;
  }
};

/// q^q_prefactor * theta(num...; p) / theta(den...; p).
struct ThetaQuotient {
  std::vector<ThetaArg> num;
  std::vector<ThetaArg> den;
  std::int64_t q_prefactor = 0;

  /// Removes arguments common to numerator and denominator.
  ThetaQuotient& cancel() {
    std::sort(num.begin(), num.end());
    std::sort(den.begin(), den.end());
    std::vector<ThetaArg> n2, d2;
    std::set_difference(num.begin(), num.end(), den.begin(), den.end(), std::back_inserter(n2));
    std::set_difference(den.begin(), den.end(), num.begin(), num.end(), std::back_inserter(d2));
    num = std::move(n2);
    den = std::move(d2);
    return *this;
  }

  bool is_one() const { return num.empty() && den.empty() && q_prefactor == 0; }

  friend ThetaQuotient operator*(ThetaQuotient x, const ThetaQuotient& y) {
    x.num.insert(x.num.end(), y.num.begin(), y.num.end());
    x.den.insert(x.den.end(), y.den.begin(), y.den.end());
    x.q_prefactor += y.q_prefactor;
    return x.cancel();
  }

  ThetaQuotient inverse() const {
    ThetaQuotient r{den, num, -q_prefactor};
    return r;
  }

  friend ThetaQuotient operator/(const ThetaQuotient& x, const ThetaQuotient& y) { return x * y.inverse(); }

  std::string to_string() const {
    auto list = [](const std::vector<ThetaArg>& v) {
      std::string s = "theta(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
      return s + ")";
    };
    std::string s = q_prefactor ? "q^" + std::to_string(q_prefactor) + " * " : "";
    return s + list(num) + " / " + list(den);
  }
};

template <class C>
C theta_arg_value(const ThetaArg& t, const EllipticParams<C>& prm) {
  return pow_int(prm.a, t.a_pow) * pow_int(prm.b, t.b_pow) * pow_int(prm.q, t.q_pow);
}

/// Numeric value of a theta quotient. Throws DegenerateParameters when a
/// denominator factor (1 - p^j x) or (1 - p^{j+1}/x) has magnitude below
/// min_denom, or when the result is not finite.
template <class C>
C evaluate(const ThetaQuotient& tq, const EllipticParams<C>& prm) {
  prm.validate();
  detail::Scaled<C> den;
  for (const auto& t : tq.den) {
    auto [v, min_factor] = detail::scaled_theta(theta_arg_value(t, prm), prm);
    if (min_factor < prm.min_denom) {
      throw DegenerateParameters("theta denominator factor below min_denom at argument " + t.to_string());
    }
    den.mul(v);
  }
  detail::Scaled<C> num;
  for (const auto& t : tq.num) {
    if (t.is_one()) return C(0);
    auto [v, min_factor] = detail::scaled_theta(theta_arg_value(t, prm), prm);
    if (min_factor == 0.0) return C(0);
    num.mul(v);
  }
  num.div(den);
  num.mul(pow_int(prm.q, tq.q_prefactor));
  const C out = num.value();
  if (!is_finite(out)) throw DegenerateParameters("non-finite theta quotient");
  return out;
}

// ---------------------------------------------------------------------------
// Ordered degeneration p -> 0, a -> 0, b -> 0

/// An exact rational function numerator / denominator in q.
struct RationalQ {
  IntPoly numerator = IntPoly::constant(1);
  IntPoly denominator = IntPoly::constant(1);

  /// The quotient as a polynomial; throws NotPolynomial otherwise.
  IntPoly as_polynomial() const { return exact_div(numerator, denominator); }

  template <class C>
  C evaluate_at(const C& q) const {
    const C d = denominator.evaluate(q);
    if (magnitude(d) == 0.0) throw DegenerateParameters("limit_chain: denominator vanishes at q");
    return numerator.evaluate(q) / d;
  }
};

namespace detail {

// Limit of theta(a^i b^j q^k; 0) = 1 - a^i b^j q^k as a -> 0 then b -> 0.
// Returns {numerator factor, denominator factor}.
inline std::pair<IntPoly, IntPoly> degenerate_factor(const ThetaArg& t) {
  if (t.a_pow > 0) return {IntPoly::constant(1), IntPoly::constant(1)};
  if (t.a_pow < 0) throw DomainError("limit_chain: factor diverges as a -> 0: " + t.to_string());
  if (t.b_pow > 0) return {IntPoly::constant(1), IntPoly::constant(1)};
  if (t.b_pow < 0) throw DomainError("limit_chain: factor diverges as b -> 0: " + t.to_string());
  if (t.q_pow >= 0) return {sub(IntPoly::constant(1), IntPoly::monomial(BigInt(1), t.q_pow)), IntPoly::constant(1)};
  // 1 - q^{-k} = (q^k - 1) / q^k
  return {sub(IntPoly::monomial(BigInt(1), -t.q_pow), IntPoly::constant(1)),
          IntPoly::monomial(BigInt(1), -t.q_pow)};
}

}  // namespace detail

/// Closed-form limit p -> 0, then a -> 0, then b -> 0, taken in that order.
/// Throws DegenerateParameters if a denominator factor degenerates to 0.
inline RationalQ limit_chain(const ThetaQuotient& tq) {
  RationalQ r;
  for (const auto& t : tq.den) {
    auto [n, d] = detail::degenerate_factor(t);
    if (n.is_zero()) throw DegenerateParameters("limit_chain: denominator factor vanishes: " + t.to_string());
    r.denominator = mul(r.denominator, n);
    r.numerator = mul(r.numerator, d);
  }
  for (const auto& t : tq.num) {
    auto [n, d] = detail::degenerate_factor(t);
    r.numerator = mul(r.numerator, n);
    r.denominator = mul(r.denominator, d);
  }
  if (tq.q_prefactor >= 0) {
    r.numerator = shift(r.numerator, tq.q_prefactor);
  } else {
    r.denominator = shift(r.denominator, -tq.q_prefactor);
  }
  return r;
}

/// limit_chain evaluated at a numeric q.
template <class C>
C limit_chain_value(const ThetaQuotient& tq, const C& q_val) {
  return limit_chain(tq).evaluate_at(q_val);
}

// ---------------------------------------------------------------------------
// Seeded sampling

struct SamplingConfig {
  std::uint64_t seed = 1;
  int samples = 20;
  int max_resamples = 100;
  /// Override the per-type defaults when positive.
  double tol = 0.0;
  double trunc_eps = 0.0;
  double min_denom = 0.0;
  /// Also evaluate at doubled truncation depth and record the change.
  bool check_truncation = false;
};

/// Deterministic stream for (seed, sample index, attempt).
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32U),
                      static_cast<std::uint32_t>(attempt)};
    eng_.seed(seq);
  }

  /// Uniform in [lo, hi), built from the top 53 bits so it is portable.
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11U) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  template <class C>
  C polar(double rlo, double rhi) {
    const double r = uniform(rlo, rhi);
    const double phi = uniform(0.0, 2.0 * M_PI);
    return make_complex<C>(r * std::cos(phi), r * std::sin(phi));
  }

 private:
  std::mt19937_64 eng_;
};

/// |q| in [0.4, 0.9], |a|, |b| in [0.3, 1.5], |p| in [0.05, 0.35], uniform phases.
template <class C>
EllipticParams<C> sample_params(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
  SampleRng rng(seed, index, attempt);
  EllipticParams<C> prm;
  prm.a = rng.polar<C>(0.3, 1.5);
  prm.b = rng.polar<C>(0.3, 1.5);
  prm.q = rng.polar<C>(0.4, 0.9);
  prm.p = rng.polar<C>(0.05, 0.35);
  return prm;
}

/// Two sides of a numeric identity; scale is the largest summand magnitude.
template <class C>
struct Sides {
  C lhs;
  C rhs;
  double scale = 0.0;
  std::string note = {};
};

template <class C>
VerificationReport sides_report(std::string identity, Json inputs, const Sides<C>& s, double tol) {
  VerificationReport r = numeric_report(std::move(identity), std::move(inputs), s.lhs, s.rhs, tol, s.scale);
  r.note = s.note;
  return r;
}

namespace detail {

template <class C>
double rel_change(const C& x, const C& y) {
  const double m = std::max({magnitude(x), magnitude(y), 1e-300});
  return magnitude(C(x - y)) / m;
}

}  // namespace detail

/// Runs fn at sample `index`, resampling on degenerate parameters up to
/// cfg.max_resamples times. The report records seed, index and parameters.
template <class C>
VerificationReport sampled_check(const std::string& identity, const Json& inputs,
                                 const std::function<Sides<C>(const EllipticParams<C>&)>& fn,
                                 const SamplingConfig& cfg, std::uint64_t index) {
  std::string last_error;
  for (int attempt = 0; attempt <= cfg.max_resamples; ++attempt) {
    EllipticParams<C> prm = sample_params<C>(cfg.seed, index, static_cast<std::uint64_t>(attempt));
    if (cfg.tol > 0) prm.eq_tol = cfg.tol;
    if (cfg.trunc_eps > 0) prm.trunc_eps = cfg.trunc_eps;
    if (cfg.min_denom > 0) prm.min_denom = cfg.min_denom;
    try {
      const Sides<C> s = fn(prm);
      Json in = inputs;
      in["seed"] = cfg.seed;
      in["sample"] = index;
      in["params"] = prm.to_json();
      VerificationReport r = sides_report(identity, std::move(in), s, prm.eq_tol);
      r.resamples = attempt;
      if (cfg.check_truncation) {
        EllipticParams<C> deep = prm;
        deep.depth_factor = 2;
        const Sides<C> s2 = fn(deep);
        const double change = std::max(detail::rel_change(s.lhs, s2.lhs), detail::rel_change(s.rhs, s2.rhs));
        r.note += (r.note.empty() ? "" : "; ") + std::string("truncation doubling change ") + std::to_string(change);
        if (!(change <= prm.eq_tol / 10)) r.passed = false;
      }
      return r;
    } catch (const DegenerateParameters& e) {
      last_error = e.what();
    }
  }
  throw DegenerateParameters(identity + ": resample cap of " + std::to_string(cfg.max_resamples) +
                             " exhausted (" + last_error + ")");
}

template <class C>
std::vector<VerificationReport> sampled_suite(const std::string& identity, const Json& inputs,
                                              const std::function<Sides<C>(const EllipticParams<C>&)>& fn,
                                              const SamplingConfig& cfg) {
  std::vector<VerificationReport> out;
  out.reserve(static_cast<std::size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i) out.push_back(sampled_check<C>(identity, inputs, fn, cfg, static_cast<std::uint64_t>(i)));
  return out;
}

// ---------------------------------------------------------------------------
// Theta properties

/// Four reports per sample: p = 0 reduction, inversion, quasi-periodicity and
/// the addition formula
///   theta(xy, x/y, uz, u/z) = theta(uy, u/y, xz, x/z) + (x/z) theta(zy, z/y, ux, u/x).
template <class C>
std::vector<VerificationReport> theta_property_suite(const SamplingConfig& cfg) {
  std::vector<VerificationReport> out;
  const double tol = cfg.tol > 0 ? cfg.tol : NumericDefaults<C>::eq_tol();
  const double eps = cfg.trunc_eps > 0 ? cfg.trunc_eps : NumericDefaults<C>::trunc_eps();
  for (int i = 0; i < cfg.samples; ++i) {
    SampleRng rng(cfg.seed, static_cast<std::uint64_t>(i), 0);
    const C x = rng.polar<C>(0.3, 1.5);
    const C y = rng.polar<C>(0.3, 1.5);
    const C z = rng.polar<C>(0.3, 1.5);
    const C u = rng.polar<C>(0.3, 1.5);
    const C p = rng.polar<C>(0.05, 0.35);
    Json in{{"seed", cfg.seed}, {"sample", i}, {"x", complex_to_json(x)}, {"p", complex_to_json(p)}};

    out.push_back(numeric_report("theta_p0", in, theta(x, C(0), eps), C(C(1) - x), tol));

    const C tx = theta(x, p, eps);
    out.push_back(numeric_report("theta_inversion", in, theta(C(C(1) / x), p, eps), C(-tx / x), tol));
    out.push_back(numeric_report("theta_quasi_periodicity", in, theta(C(p * x), p, eps), C(-tx / x), tol));

    Json in4 = in;
    in4["y"] = complex_to_json(y);
    in4["z"] = complex_to_json(z);
    in4["u"] = complex_to_json(u);
    const C lhs = theta_multi<C>({x * y, x / y, u * z, u / z}, p, eps);
    const C t1 = theta_multi<C>({u * y, u / y, x * z, x / z}, p, eps);
    const C t2 = (x / z) * theta_multi<C>({z * y, z / y, u * x, u / x}, p, eps);
    const double scale = std::max({magnitude(lhs), magnitude(t1), magnitude(t2)});
    out.push_back(numeric_report("theta_addition", std::move(in4), lhs, C(t1 + t2), tol, scale));
  }
  return out;
}

}  // namespace fibl
