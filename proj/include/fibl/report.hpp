#pragma once

// Pass/fail records for identity checks and their JSON form.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fibl/bigint.hpp"
#include "fibl/qpoly.hpp"

namespace fibl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "fibl-report/1";

/// {"var":"q","coeffs":[[exp,"coeff"],...]}, exponents ascending, zero terms omitted.
inline Json poly_to_json(const IntPoly& p) {
  Json coeffs = Json::array();
  auto w = p.window();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sgn(w[i]) == 0) continue;
    coeffs.push_back(Json::array({p.low_degree() + static_cast<std::int64_t>(i), to_string(w[i])}));
  }
  return Json{{"var", "q"}, {"coeffs", std::move(coeffs)}};
}

inline IntPoly poly_from_json(const Json& j) {
  if (!j.is_object() || j.value("var", "") != "q" || !j.contains("coeffs") || !j["coeffs"].is_array()) {
    throw DomainError("poly_from_json: expected {\"var\":\"q\",\"coeffs\":[...]}");
  }
  IntPoly acc;
  std::int64_t last = -1;
  for (const auto& term : j["coeffs"]) {
    if (!term.is_array() || term.size() != 2) throw DomainError("poly_from_json: malformed term");
    const std::int64_t e = term[0].is_string() ? std::stoll(term[0].get<std::string>()) : term[0].get<std::int64_t>();
    if (e <= last) throw DomainError("poly_from_json: exponents must be strictly ascending");
    last = e;
    const BigInt c = term[1].is_string() ? parse_bigint(term[1].get<std::string>()) : make_bigint(term[1].get<std::int64_t>());
    acc = add(acc, IntPoly::monomial(c, e));
  }
  return acc;
}

template <class C>
Json complex_to_json(const C& z) {
  using std::real;
  using std::imag;
  return Json{{"re", static_cast<double>(real(z))}, {"im", static_cast<double>(imag(z))}};
}

struct VerificationReport {
  std::string identity;
  Json inputs = Json::object();
  Json lhs;
  Json rhs;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// false for negative-result checks, which pass when the sides differ.
  bool expect_equal = true;
  int resamples = 0;
  std::string note;

  Json to_json() const {
    Json j{{"identity", identity},
           {"inputs", inputs},
           {"lhs", lhs},
           {"rhs", rhs},
           {"abs_diff", abs_diff},
           {"rel_diff", rel_diff},
           {"tolerance", tolerance},
           {"expected", expect_equal ? "equal" : "unequal"},
           {"passed", passed},
           {"resamples", resamples}};
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

/// Exact comparison of two polynomials. abs_diff is the largest coefficient
/// difference, rel_diff that divided by the largest coefficient magnitude.
inline VerificationReport exact_report(std::string identity, Json inputs, const IntPoly& lhs, const IntPoly& rhs,
                                       bool expect_equal = true) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.inputs = std::move(inputs);
  r.lhs = poly_to_json(lhs);
  r.rhs = poly_to_json(rhs);
  const bool equal = lhs == rhs;
  if (!equal) {
    const IntPoly d = sub(lhs, rhs);
    auto [dlo, dhi] = d.coeff_range();
    auto [llo, lhi] = lhs.coeff_range();
    auto [rlo, rhi] = rhs.coeff_range();
    const double diff = std::max(std::fabs(to_double(dlo)), std::fabs(to_double(dhi)));
    const double scale = std::max({std::fabs(to_double(llo)), std::fabs(to_double(lhi)), std::fabs(to_double(rlo)),
                                   std::fabs(to_double(rhi)), 1.0});
    r.abs_diff = diff;
    r.rel_diff = diff / scale;
  }
  r.expect_equal = expect_equal;
  r.passed = expect_equal ? equal : !equal;
  return r;
}

/// Exact comparison of two integers.
inline VerificationReport exact_report(std::string identity, Json inputs, const BigInt& lhs, const BigInt& rhs) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.inputs = std::move(inputs);
  r.lhs = to_string(lhs);
  r.rhs = to_string(rhs);
  const BigInt d = abs(BigInt(lhs - rhs));
  r.abs_diff = to_double(d);
  r.rel_diff = r.abs_diff / std::max({std::fabs(to_double(lhs)), std::fabs(to_double(rhs)), 1.0});
  r.passed = lhs == rhs;
  return r;
}

/// Numeric comparison: rel_diff = |lhs - rhs| / max(|lhs|, |rhs|, scale).
/// `scale` is the magnitude of the largest summand for sum identities, so
/// cancellation on one side does not inflate the relative error.
template <class C>
VerificationReport numeric_report(std::string identity, Json inputs, const C& lhs, const C& rhs, double tolerance,
                                  double scale = 0.0) {
  using std::abs;
  VerificationReport r;
  r.identity = std::move(identity);
  r.inputs = std::move(inputs);
  r.lhs = complex_to_json(lhs);
  r.rhs = complex_to_json(rhs);
  const auto diff = abs(C(lhs - rhs));
  const double mag = std::max({static_cast<double>(abs(lhs)), static_cast<double>(abs(rhs)), scale});
  r.abs_diff = static_cast<double>(diff);
  r.rel_diff = mag > 0.0 ? static_cast<double>(diff / mag) : r.abs_diff;
  r.tolerance = tolerance;
  r.passed = std::isfinite(r.rel_diff) && r.rel_diff <= tolerance;
  return r;
}

inline bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

inline Json reports_to_json(const std::vector<VerificationReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  return arr;
}

}  // namespace fibl
