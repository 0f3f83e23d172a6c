#pragma once

// Command-line front end. run() is callable in-process so tests can drive it.
//
// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 resource cap,
// 4 degenerate parameters.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fibl/fibl.hpp"

namespace fibl::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kResource = 3, kDegenerate = 4 };

struct RunConfig {
  std::uint64_t seed = 0x5EED;
  int samples = 20;
  double eq_tol = 0.0;
  double trunc_eps = 0.0;
  double min_denom = 0.0;
  std::int64_t enumeration_cap = kDefaultEnumerationCap;
  std::int64_t degree_cap = kDefaultDegreeCap;
  std::string format = "text";
  std::string out_path;
  std::string precision = "double";
  bool count_only = false;
  bool eval_q1 = false;
  int max = 0;

  Json to_json() const {
    return Json{{"seed", seed},           {"samples", samples},         {"tol", eq_tol},
                {"trunc_eps", trunc_eps}, {"min_denom", min_denom},     {"cap", enumeration_cap},
                {"degree_cap", degree_cap}, {"precision", precision},   {"max", max}};
  }

  SamplingConfig sampling() const {
    SamplingConfig s;
    s.seed = seed;
    s.samples = samples;
    s.tol = eq_tol;
    s.trunc_eps = trunc_eps;
    s.min_denom = min_denom;
    return s;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calls f.template operator()<C>() with C picked by the precision mode.
template <class F>
decltype(auto) with_precision(const std::string& mode, F&& f) {
  if (mode == "double") return f.template operator()<std::complex<double>>();
  if (mode == "ext:128") return f.template operator()<ExtComplex<128>>();
  if (mode == "ext:256") return f.template operator()<ExtComplex<256>>();
  throw UsageError("unsupported precision '" + mode + "' (double, ext:128, ext:256)");
}

namespace detail {

inline std::string inputs_text(const Json& j) {
  std::string s;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "params") continue;
    if (!s.empty()) s += " ";
    s += it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump());
  }
  return s;
}

inline std::string reports_text(const std::vector<VerificationReport>& rs) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : rs) {
    passed += r.passed;
    os << (r.passed ? "PASS " : "FAIL ") << r.identity << " " << inputs_text(r.inputs);
    if (r.tolerance > 0) os << " rel_diff=" << r.rel_diff;
    if (!r.expect_equal) os << " expected=unequal";
    if (!r.note.empty()) os << " (" << r.note << ")";
    os << "\n";
  }
  os << passed << "/" << rs.size() << " passed\n";
  return os.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string reports_csv(const std::vector<VerificationReport>& rs) {
  std::ostringstream os;
  os << "identity,inputs,expected,passed,abs_diff,rel_diff,tolerance,resamples\n";
  for (const auto& r : rs) {
    Json in = r.inputs;
    in.erase("params");
    os << csv_field(r.identity) << ',' << csv_field(in.dump()) << ',' << (r.expect_equal ? "equal" : "unequal") << ','
       << (r.passed ? "true" : "false") << ',' << r.abs_diff << ',' << r.rel_diff << ',' << r.tolerance << ','
       << r.resamples << '\n';
  }
  return os.str();
}

}  // namespace detail

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Fibonomial q-analogs, elliptic analogs and tiling models", "fibl"};
    app.require_subcommand(1);
    app.fallthrough();
    add_global_options(app);

    std::int64_t m = 0, n = 0;
    std::string model, suite, mode, what;
    std::vector<std::string> args;

    auto* fibo = app.add_subcommand("fibonomial", "q-Fibonomial polynomial G(m,n)");
    fibo->add_option("m", m)->required()->check(CLI::NonNegativeNumber);
    fibo->add_option("n", n)->required()->check(CLI::NonNegativeNumber);

    auto* en = app.add_subcommand("enumerate", "Stream tilings of the rectangle or staircase model");
    en->add_option("model", model, "rect (m n) or staircase (n k)")->required()->check(CLI::IsMember({"rect", "staircase"}));
    en->add_option("a", m)->required()->check(CLI::NonNegativeNumber);
    en->add_option("b", n)->required()->check(CLI::NonNegativeNumber);

    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));

    auto* cat = app.add_subcommand("catalan", "q-Fibo-Catalan computations");
    cat->add_option("mode", mode, "rational M N | coxeter TYPE A | sweep")->required()->check(
        CLI::IsMember({"rational", "coxeter", "sweep"}));
    cat->add_option("args", args);

    auto* ell = app.add_subcommand("elliptic", "Evaluate elliptic quantities at given or sampled parameters");
    ell->add_option("what", what, "number N [BASE] | fibonomial M N | v M N | omega1 I J | omega2 I J")
        ->required()
        ->check(CLI::IsMember({"number", "fibonomial", "v", "omega1", "omega2"}));
    ell->add_option("args", args);
    for (const char* name : {"a", "b", "q", "p"}) {
      ell->add_option(std::string("--") + name, param_text_[name], std::string("parameter ") + name + " as re,im");
    }

    auto* spi = app.add_subcommand("spiral", "Spiral identity checks for one m");
    spi->add_option("m", m)->required()->check(CLI::PositiveNumber);

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kPass : kUsage;
    }

    try {
      if (cfg_.format != "json" && cfg_.format != "csv" && cfg_.format != "text") {
        throw UsageError("--format must be json, csv or text");
      }
      if (cfg_.samples < 1) throw UsageError("--samples must be >= 1");
      if (cfg_.eq_tol < 0 || cfg_.trunc_eps < 0 || cfg_.min_denom < 0) throw UsageError("tolerances must be positive");
      ScopedDegreeCap cap_guard(cfg_.degree_cap);
      if (fibo->parsed()) return cmd_fibonomial(m, n);
      if (en->parsed()) return cmd_enumerate(model, static_cast<int>(m), static_cast<int>(n));
      if (ver->parsed()) return cmd_verify(suite);
      if (cat->parsed()) return cmd_catalan(mode, args);
      if (ell->parsed()) return cmd_elliptic(what, args);
      if (spi->parsed()) return cmd_spiral(static_cast<int>(m));
      return kUsage;
    } catch (const UsageError& e) {
      err_ << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const DomainError& e) {
      err_ << "error: " << e.what() << "\n";
      return kUsage;
    } catch (const ResourceError& e) {
      err_ << "resource limit: " << e.what() << "\n";
      return kResource;
    } catch (const DegenerateParameters& e) {
      err_ << "degenerate parameters: " << e.what() << "\n";
      return kDegenerate;
    }
  }

 private:
  void add_global_options(CLI::App& app) {
    app.add_option("--seed", cfg_.seed, "master seed")->envname("FIBL_SEED");
    app.add_option("--samples", cfg_.samples, "sample points per numeric check")->envname("FIBL_SAMPLES");
    app.add_option("--tol", cfg_.eq_tol, "relative equality tolerance (default per precision)")->envname("FIBL_TOL");
    app.add_option("--trunc-eps", cfg_.trunc_eps, "theta truncation threshold")->envname("FIBL_TRUNC_EPS");
    app.add_option("--min-denom", cfg_.min_denom, "degeneracy guard")->envname("FIBL_MIN_DENOM");
    app.add_option("--cap", cfg_.enumeration_cap, "tiling enumeration cap")->envname("FIBL_CAP");
    app.add_option("--degree-cap", cfg_.degree_cap, "polynomial degree cap")->envname("FIBL_DEGREE_CAP");
    app.add_option("--format", cfg_.format, "json, csv or text")->envname("FIBL_FORMAT");
    app.add_option("--out", cfg_.out_path, "write output to PATH")->envname("FIBL_OUT");
    app.add_option("--precision", cfg_.precision, "double, ext:128 or ext:256")->envname("FIBL_PRECISION");
    app.add_option("--max", cfg_.max, "size bound for suites and sweeps")->envname("FIBL_MAX");
    app.add_flag("--count-only", cfg_.count_only, "print only the tiling count");
    app.add_flag("--eval-q1", cfg_.eval_q1, "print the value at q = 1");
  }

  void emit(const std::string& text) {
    if (cfg_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(cfg_.out_path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + cfg_.out_path);
    f << text;
  }

  Json document(const std::string& command) const {
    return Json{{"schema", kReportSchema}, {"command", command}, {"config", cfg_.to_json()}};
  }

  int emit_reports(const std::string& command, const std::vector<VerificationReport>& rs) {
    std::size_t passed = 0;
    for (const auto& r : rs) passed += r.passed;
    if (cfg_.format == "json") {
      Json doc = document(command);
      doc["summary"] = Json{{"total", rs.size()}, {"passed", passed}, {"failed", rs.size() - passed}};
      doc["reports"] = reports_to_json(rs);
      emit(doc.dump(2) + "\n");
    } else if (cfg_.format == "csv") {
      emit(detail::reports_csv(rs));
    } else {
      emit(detail::reports_text(rs));
    }
    if (!cfg_.out_path.empty()) out_ << passed << "/" << rs.size() << " passed; wrote " << cfg_.out_path << "\n";
    return passed == rs.size() ? kPass : kFail;
  }

  int emit_poly(const std::string& command, Json inputs, const IntPoly& p) {
    if (cfg_.eval_q1) {
      const std::string v = to_string(p.eval_at_one());
      if (cfg_.format == "json") {
        Json doc = document(command);
        doc["inputs"] = std::move(inputs);
        doc["value_at_q1"] = v;
        emit(doc.dump(2) + "\n");
      } else {
        emit(v + "\n");
      }
      return kPass;
    }
    if (cfg_.format == "json") {
      Json doc = document(command);
      doc["inputs"] = std::move(inputs);
      doc["polynomial"] = poly_to_json(p);
      emit(doc.dump(2) + "\n");
    } else if (cfg_.format == "csv") {
      std::ostringstream os;
      os << "exponent,coeff\n";
      for (std::int64_t e = p.low_degree(); e <= p.degree(); ++e) {
        if (sgn(p.coeff(e)) != 0) os << e << ',' << to_string(p.coeff(e)) << '\n';
      }
      emit(os.str());
    } else {
      std::ostringstream os;
      os << '[';
      const auto dense = p.dense();
      for (std::size_t i = 0; i < dense.size(); ++i) os << (i ? "," : "") << to_string(dense[i]);
      os << "]\n";
      emit(os.str());
    }
    return kPass;
  }

  int cmd_fibonomial(std::int64_t m, std::int64_t n) {
    return emit_poly("fibonomial", mn_inputs(m, n), q_fibonomial(m, n));
  }

  int cmd_enumerate(const std::string& model, int a, int b) {
    if (model == "staircase" && b > a) throw UsageError("staircase needs n >= k");
    std::ostringstream os;
    const bool json = cfg_.format == "json";
    bool first = true;
    auto item = [&](const Json& t) {
      if (cfg_.count_only) return;
      if (json) {
        os << (first ? "\n    " : ",\n    ") << t.dump();
      } else if (cfg_.format == "csv") {
        os << csv_field_tiling(t) << '\n';
      } else {
        os << t.dump() << '\n';
      }
      first = false;
    };
    if (!cfg_.count_only) {
      if (json) os << "{\"schema\":\"" << kReportSchema << "\",\"model\":\"" << model << "\",\"tilings\":[";
      if (cfg_.format == "csv") os << (model == "rect" ? "path,rows,cols,weight_exponent\n" : "path,rows,weight_exponent\n");
    }
    BigInt count;
    if (model == "rect") {
      count = enumerate_rect_tilings(
          a, b,
          [&](const PathDominoTiling& t) {
            Json j = tiling_to_json(t);
            j["weight_exponent"] = to_string(q_weight_rect_exponent(t));
            item(j);
          },
          cfg_.enumeration_cap);
    } else {
      count = enumerate_staircase_tilings(
          a, b,
          [&](const StaircaseTiling& t) {
            Json j = tiling_to_json(t);
            j["weight_exponent"] = to_string(q_weight_staircase_exponent(t));
            item(j);
          },
          cfg_.enumeration_cap);
    }
    if (cfg_.count_only) {
      if (json) {
        Json doc = document("enumerate");
        doc["model"] = model;
        doc["count"] = to_string(count);
        os << doc.dump(2) << "\n";
      } else {
        os << to_string(count) << "\n";
      }
    } else if (json) {
      os << "\n  ],\"count\":\"" << to_string(count) << "\"}\n";
    }
    emit(os.str());
    return kPass;
  }

  static std::string csv_field_tiling(const Json& t) {
    auto join = [](const Json& arr) {
      std::string s;
      for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? "|" : "") + arr[i].get<std::string>();
      return s;
    };
    std::string s = t["path"].get<std::string>() + "," + join(t["rows"]);
    if (t.contains("cols")) s += "," + join(t["cols"]);
    return s + "," + t["weight_exponent"].get<std::string>();
  }

  SuiteConfig suite_config() const {
    SuiteConfig sc;
    sc.max = cfg_.max;
    sc.sampling = cfg_.sampling();
    sc.cap = cfg_.enumeration_cap;
    return sc;
  }

  int cmd_verify(const std::string& suite) {
    const SuiteConfig sc = suite_config();
    const auto reports = with_precision(cfg_.precision, [&]<class C>() { return run_suite<C>(suite, sc); });
    return emit_reports("verify " + suite, reports);
  }

  int cmd_spiral(int m) {
    std::vector<VerificationReport> rs{spiral_identity_check(m), spiral_identity_check_integer(m)};
    const SamplingConfig s = cfg_.sampling();
    auto ell = with_precision(cfg_.precision, [&]<class C>() {
      return sampled_suite<C>("elliptic_spiral", Json{{"m", m}},
                              [m](const EllipticParams<C>& p) { return elliptic_spiral_sides(m, p); }, s);
    });
    rs.insert(rs.end(), ell.begin(), ell.end());
    return emit_reports("spiral", rs);
  }

  static std::int64_t int_arg(const std::vector<std::string>& args, std::size_t i, const char* what) {
    if (i >= args.size()) throw UsageError(std::string("missing argument ") + what);
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(args[i], &pos);
      if (pos != args[i].size()) throw std::invalid_argument(args[i]);
      return v;
    } catch (const std::logic_error&) {
      throw UsageError(std::string("argument ") + what + " must be an integer, got '" + args[i] + "'");
    }
  }

  int cmd_catalan(const std::string& mode, const std::vector<std::string>& args) {
    if (mode == "sweep") {
      if (!args.empty()) throw UsageError("catalan sweep takes no positional arguments; use --max");
      const int max = cfg_.max > 0 ? cfg_.max : 15;
      const auto rows = q_fibo_catalan_positivity_sweep(max);
      bool ok = true;
      for (const auto& v : rows) ok = ok && v.is_polynomial;
      if (cfg_.format == "csv") {
        emit(sweep_to_csv(rows));
      } else if (cfg_.format == "json") {
        Json doc = document("catalan sweep");
        Json arr = Json::array();
        for (const auto& v : rows) arr.push_back(v.to_json());
        doc["verdicts"] = std::move(arr);
        emit(doc.dump(2) + "\n");
      } else {
        std::size_t poly = 0, nonneg = 0;
        for (const auto& v : rows) {
          poly += v.is_polynomial;
          nonneg += v.all_coeffs_nonnegative.value_or(false);
        }
        std::ostringstream os;
        os << rows.size() << " pairs with gcd in {1,2} up to " << max << ": " << poly << " polynomial, " << nonneg
           << " with all coefficients non-negative\n";
        emit(os.str());
      }
      return ok ? kPass : kFail;
    }
    if (args.size() != 2) throw UsageError("catalan " + mode + " takes two arguments");
    PolynomialityVerdict v;
    if (mode == "rational") {
      const auto m = int_arg(args, 0, "M");
      const auto n = int_arg(args, 1, "N");
      if (m < 1 || n < 1) throw UsageError("catalan rational needs M, N >= 1");
      v = q_fibo_catalan_rational(m, n);
    } else {
      const CoxeterType w = parse_coxeter_type(args[0]);
      const auto a = int_arg(args, 1, "A");
      if (a < 1) throw UsageError("catalan coxeter needs A >= 1");
      v = coxeter_degree(w, a) > make_bigint(degree_cap()) ? coxeter_q_fibo_catalan_cyclotomic(w, a)
                                                            : coxeter_q_fibo_catalan(w, a);
    }
    if (cfg_.format == "json") {
      Json doc = document("catalan " + mode);
      doc["verdict"] = v.to_json(!cfg_.eval_q1);
      emit(doc.dump(2) + "\n");
    } else if (cfg_.format == "csv") {
      std::ostringstream os;
      os << "is_polynomial,degree,min_coeff,max_coeff,value_at_q1\n" << (v.is_polynomial ? "true" : "false") << ',';
      if (v.quotient) {
        auto [lo, hi] = v.quotient->coeff_range();
        os << v.quotient->degree() << ',' << to_string(lo) << ',' << to_string(hi) << ','
           << to_string(v.quotient->eval_at_one());
      } else {
        os << ",,,";
      }
      emit(os.str() + "\n");
    } else if (!v.is_polynomial) {
      std::string s = "not a polynomial";
      if (v.remainder_degree) s += " (remainder degree " + std::to_string(*v.remainder_degree) + ")";
      emit(s + "\n");
    } else if (!v.quotient) {
      emit("polynomial (cyclotomic count; degree " + v.inputs.value("degree", std::string("?")) + ", not expanded)\n");
    } else if (cfg_.eval_q1) {
      emit(to_string(v.quotient->eval_at_one()) + "\n");
    } else {
      emit(v.quotient->to_string() + "\n");
    }
    return kPass;
  }

  template <class C>
  static C parse_complex(const std::string& s) {
    std::istringstream is(s);
    double re = 0, im = 0;
    char comma = 0;
    if (!(is >> re)) throw UsageError("cannot parse complex '" + s + "' (expected re,im)");
    if (is >> comma) {
      if (comma != ',' || !(is >> im)) throw UsageError("cannot parse complex '" + s + "' (expected re,im)");
    }
    return make_complex<C>(re, im);
  }

  int cmd_elliptic(const std::string& what, const std::vector<std::string>& args) {
    return with_precision(cfg_.precision, [&]<class C>() -> int {
      EllipticParams<C> prm = sample_params<C>(cfg_.seed, 0, 0);
      if (!param_text_["a"].empty()) prm.a = parse_complex<C>(param_text_["a"]);
      if (!param_text_["b"].empty()) prm.b = parse_complex<C>(param_text_["b"]);
      if (!param_text_["q"].empty()) prm.q = parse_complex<C>(param_text_["q"]);
      if (!param_text_["p"].empty()) prm.p = parse_complex<C>(param_text_["p"]);
      if (cfg_.eq_tol > 0) prm.eq_tol = cfg_.eq_tol;
      if (cfg_.trunc_eps > 0) prm.trunc_eps = cfg_.trunc_eps;
      if (cfg_.min_denom > 0) prm.min_denom = cfg_.min_denom;

      ThetaQuotient tq;
      Json inputs;
      if (what == "number") {
        const auto n = int_arg(args, 0, "N");
        const auto base = args.size() > 1 ? int_arg(args, 1, "BASE") : 1;
        inputs = Json{{"n", n}, {"base", base}};
        tq = tq_number(make_bigint(n), make_bigint(base));
      } else {
        const auto x = int_arg(args, 0, "first index");
        const auto y = int_arg(args, 1, "second index");
        inputs = Json{{"i", x}, {"j", y}};
        if (what == "fibonomial") tq = tq_fibonomial(x, y);
        if (what == "v") tq = tq_weight_v(make_bigint(x), make_bigint(y));
        if (what == "omega1") tq = tq_omega1(x, y);
        if (what == "omega2") tq = tq_omega2(x, y);
      }
      const C value = evaluate(tq, prm);
      const RationalQ lim = limit_chain(tq);
      if (cfg_.format == "json") {
        Json doc = document("elliptic " + what);
        doc["inputs"] = inputs;
        doc["params"] = prm.to_json();
        doc["value"] = complex_to_json(value);
        doc["theta_quotient"] = tq.to_string();
        doc["limit_numerator"] = poly_to_json(lim.numerator);
        doc["limit_denominator"] = poly_to_json(lim.denominator);
        emit(doc.dump(2) + "\n");
      } else if (cfg_.format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "re,im\n" << static_cast<double>(real(value)) << ',' << static_cast<double>(imag(value)) << '\n';
        emit(os.str());
      } else {
        std::ostringstream os;
        os.precision(17);
        os << static_cast<double>(real(value)) << (static_cast<double>(imag(value)) < 0 ? " - " : " + ")
           << std::abs(static_cast<double>(imag(value))) << "i\n";
        emit(os.str());
      }
      return kPass;
    });
  }

  std::ostream& out_;
  std::ostream& err_;
  RunConfig cfg_;
  std::map<std::string, std::string> param_text_;
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.run(argc, argv);
}

}  // namespace fibl::cli
