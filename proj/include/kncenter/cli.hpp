#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "kncenter/bracket.hpp"
#include "kncenter/genseries.hpp"
#include "kncenter/json_io.hpp"
#include "kncenter/reptheory.hpp"

namespace kn::cli {

namespace detail {

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json center_json(const CenterVector& v) {
  Json j = Json::object();
  for (std::size_t k = 0; k < v.size(); ++k) j["omega" + std::to_string(k)] = v[k].to_string();
  return j;
}

inline Json report_json(const SymmetryReport& r) {
  Json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["l"] = r.l;
  j["dihedral"] = r.dihedral;
  j["sign"] = sign_name(r.sign);
  j["c"] = r.c ? Json(r.c->to_string()) : Json(nullptr);
  j["c2"] = r.c2 ? Json(r.c2->to_string()) : Json(nullptr);
  j["c2_numeric"] = r.c2_numeric ? complex_json(*r.c2_numeric) : Json(nullptr);
  Json cands = Json::array();
  for (const Complex& z : r.c2_candidates) cands.push_back(complex_json(z));
  j["c2_candidates"] = cands;
  j["ambiguous_sign"] = r.ambiguous_sign;
  j["group"] = r.group.name();
  j["group_order"] = r.group.order;
  return j;
}

inline Json cyclo_list(const std::vector<Cyclo>& v) {
  Json a = Json::array();
  for (const Cyclo& c : v) a.push_back(c.minimized().to_string());
  return a;
}

inline Json decomposition_json(const DecompositionResult& d, const std::string& space) {
  Json j;
  j["n"] = d.n;
  j["k"] = d.k;
  j["group"] = d.group.name();
  j["group_order"] = d.group.order();
  j["space"] = space;
  Json cls = Json::array();
  for (const auto& c : d.group.classes()) cls.push_back(Json{{"name", c.name}, {"size", c.size}});
  j["classes"] = cls;
  j["character"] = cyclo_list(d.character);
  j["omega0_character"] = cyclo_list(d.omega0_character);
  j["omega0_irrep"] = d.omega0_irrep;
  Json m = Json::object();
  for (const auto& [nm, v] : d.multiplicities) m[nm] = v;
  j["multiplicities"] = m;
  j["bookkeeping"] = d.bookkeeping;
  return j;
}

inline Json loop_json(const SimpleLieData& g, const LoopElement& x) {
  Json terms = Json::array();
  for (const auto& [k, s] : x.terms())
    terms.push_back(Json{{"basis", g.labels[std::get<0>(k)]}, {"i", std::get<1>(k)}, {"eps", std::get<2>(k)}, {"coeff", s.to_string()}});
  return Json{{"terms", terms}, {"center", center_json(x.center())}};
}

inline void pretty(const Json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        out << prefix << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        out << prefix << k << ":\n";
        pretty(v, out, prefix + "  ");
      }
    }
  } else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); })) {
    out << prefix << j.dump() << "\n";
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_array() && v.size() == 2 && v[0].is_primitive() && v[1].is_string()) {
        out << prefix << "z^" << (v[0].is_string() ? v[0].get<std::string>() : v[0].dump()) << ": " << v[1].get<std::string>() << "\n";
      } else {
        out << prefix << "-\n";
        pretty(v, out, prefix + "  ");
      }
    }
  } else {
    out << prefix << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline int threads_from_env(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* s = std::getenv("KN_CENTER_THREADS")) {
    try {
      const int v = std::stoi(s);
      if (v >= 1) n = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, std::string("KN_CENTER_THREADS is not an integer: ") + s);
    }
  }
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Equal scalar literals compare as Scalars, so formatting does not matter.
inline bool same_value(const Json& want, const Json& got) {
  if (want.is_string() && got.is_string()) {
    if (want == got) return true;
    try {
      return parse_scalar(want.get<std::string>()) == parse_scalar(got.get<std::string>());
    } catch (const Error&) {
      return false;
    }
  }
  if (want.is_number() && got.is_number()) {
    if (want.is_number_integer() && got.is_number_integer()) return want == got;
    const double a = want.get<double>(), b = got.get<double>();
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
  }
  return want == got;
}

inline void subset_diff(const Json& want, const Json& got, const std::string& path, std::vector<std::string>& diffs) {
  if (want.is_object()) {
    if (!got.is_object()) {
      diffs.push_back(path + ": expected object, got " + got.dump());
      return;
    }
    for (const auto& [k, v] : want.items()) {
      if (!got.contains(k))
        diffs.push_back(path + "/" + k + ": missing");
      else
        subset_diff(v, got.at(k), path + "/" + k, diffs);
    }
    return;
  }
  if (want.is_array()) {
    if (!got.is_array() || got.size() != want.size()) {
      diffs.push_back(path + ": expected " + want.dump() + ", got " + got.dump());
      return;
    }
    // null entries are placeholders for values the fixture does not pin down
    for (std::size_t i = 0; i < want.size(); ++i)
      if (!want[i].is_null()) subset_diff(want[i], got[i], path + "/" + std::to_string(i), diffs);
    return;
  }
  if (!same_value(want, got)) diffs.push_back(path + ": expected " + want.dump() + ", got " + got.dump());
}

}  // namespace detail

struct Outcome {
  int code = 0;
  Json value;
};

/// Executes one subcommand; throws kn::Error for domain and parse failures.
class Runner {
 public:
  Runner() { build(); }

  Outcome execute(std::vector<std::string> args, std::ostream& out, std::ostream& err);
  CLI::App& app() { return app_; }

 private:
  CLI::App app_{"Center and cocycles of hyperelliptic current algebras", "kncenter"};
  std::string format_ = "json";
  std::string curve_, kind_ = "P", route_ = "direct", sign_, c_, roots_, x_, y_, suite_, fixtures_;
  int kmax_ = 8, i_ = -1, order_ = 10, ri_ = 0, rj_ = 0, el_ = 0, er_ = 0, n_ = 0, k_ = 0;
  double tol_ = 1e-9;
  bool generic_ = false, full_ = false, quotient_ = false;
  CLI::App *recursion_, *series_, *reduce_, *bracket_, *classify_, *decompose_, *check_;

  void build();
  Json run_check(std::ostream& out, std::ostream& err, int& code);
};

inline void Runner::build() {
  app_.require_subcommand(1);
  app_.add_option("--format", format_, "json or pretty")->check(CLI::IsMember({"json", "pretty"}));

  recursion_ = app_.add_subcommand("recursion", "P or Q coefficient table");
  recursion_->add_option("--curve", curve_, "curve JSON file")->required();
  recursion_->add_option("--kind", kind_)->check(CLI::IsMember({"P", "Q"}));
  recursion_->add_option("--kmax", kmax_, "largest k (P) or m (Q)");

  series_ = app_.add_subcommand("series", "generating series P_i(z) or Q_i(z)");
  series_->add_option("--curve", curve_)->required();
  series_->add_option("--kind", kind_)->check(CLI::IsMember({"P", "Q"}));
  series_->add_option("--i", i_, "column index, -r..-1");
  series_->add_option("--order", order_, "largest exponent kept");
  series_->add_option("--route", route_)->check(CLI::IsMember({"direct", "bell", "both"}));

  reduce_ = app_.add_subcommand("reduce", "class of t^i u^e1 d(t^j u^e2)");
  reduce_->add_option("--curve", curve_)->required();
  reduce_->add_option("--i", ri_)->required();
  reduce_->add_option("--j", rj_)->required();
  reduce_->add_option("--eps-left", el_)->check(CLI::Range(0, 1));
  reduce_->add_option("--eps-right", er_)->check(CLI::Range(0, 1));

  bracket_ = app_.add_subcommand("bracket", "bracket of two loop elements over sl2");
  bracket_->add_option("--curve", curve_)->required();
  bracket_->add_option("--x", x_)->required();
  bracket_->add_option("--y", y_)->required();

  classify_ = app_.add_subcommand("classify", "automorphism group from coefficients or roots");
  auto* cv = classify_->add_option("--curve", curve_);
  auto* ro = classify_->add_option("--roots", roots_, "JSON list of [re, im]");
  cv->excludes(ro);
  classify_->add_option("--c", c_)->excludes(ro);
  classify_->add_option("--sign", sign_)->check(CLI::IsMember({"a", "b"}))->excludes(ro);
  classify_->add_option("--tol", tol_)->needs(ro);

  decompose_ = app_.add_subcommand("decompose", "decomposition of the center");
  decompose_->add_option("--n", n_)->required();
  decompose_->add_option("--k", k_)->required();
  auto* dc = decompose_->add_option("--curve", curve_);
  auto* dg = decompose_->add_flag("--generic", generic_);
  dc->excludes(dg);
  decompose_->add_option("--c", c_, "reflection parameter");
  auto* q = decompose_->add_flag("--quotient", quotient_);
  decompose_->add_flag("--full", full_)->excludes(q);

  check_ = app_.add_subcommand("check", "regression suite over fixture files");
  check_->add_option("--suite", suite_)->required()->check(CLI::IsMember({"paper-examples"}));
  check_->add_option("--fixtures", fixtures_, "fixture directory");
}

inline Outcome Runner::execute(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  std::reverse(args.begin(), args.end());
  app_.parse(args);
  Outcome res;
  if (*recursion_) {
    const CurveSpec curve = curve_from_json(read_json_file(curve_));
    res.value = kind_ == "P" ? ptable_to_json(compute_P(curve, kmax_)) : qtable_to_json(compute_Q(curve, kmax_));
  } else if (*series_) {
    const CurveSpec curve = curve_from_json(read_json_file(curve_));
    auto gen = [&](Route r) { return kind_ == "P" ? gen_P(curve, i_, order_, r) : gen_Q(curve, i_, order_, r); };
    const HalfSeries s = gen(route_ == "bell" ? Route::Bell : Route::Direct);
    if (route_ == "both" && !(gen(Route::Bell) == s))
      throw Error(ErrorCode::InconsistentParams, "direct and Bell routes disagree");
    res.value = Json::array();
    for (const auto& [e2, c] : s.terms())
      res.value.push_back(Json::array({e2 % 2 == 0 ? Json(e2 / 2) : Json(std::to_string(e2) + "/2"), c.to_string()}));
  } else if (*reduce_) {
    const CurveSpec curve = curve_from_json(read_json_file(curve_));
    const int bound = std::max({std::abs(ri_), std::abs(rj_), curve.r()}) + 2;
    const Tables tab = make_tables(curve, bound);
    res.value = detail::center_json(reduce_form(curve, ri_, el_, rj_, er_, tab.P, tab.Q));
  } else if (*bracket_) {
    const CurveSpec curve = curve_from_json(read_json_file(curve_));
    const SimpleLieData g = make_sl2();
    const LoopElement x = parse_loop_element(g, curve, x_), y = parse_loop_element(g, curve, y_);
    int bound = curve.r() + 2;
    for (const LoopElement* e : {&x, &y})
      for (const auto& [key, s] : e->terms()) bound = std::max(bound, std::abs(std::get<1>(key)) + 2);
    const Tables tab = make_tables(curve, 2 * bound);
    res.value = detail::loop_json(g, bracket(g, curve, x, y, tab.P, tab.Q));
  } else if (*classify_) {
    if (!roots_.empty()) {
      const Json j = read_json_file(roots_);
      std::vector<Complex> roots;
      try {
        for (const auto& p : j) roots.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("roots file: ") + e.what());
      }
      res.value = detail::report_json(detect_from_roots(roots, tol_));
    } else {
      if (curve_.empty()) throw CLI::RequiredError("--curve or --roots");
      const CurveSpec curve = curve_from_json(read_json_file(curve_));
      std::optional<Scalar> c;
      std::optional<SignCase> sign;
      if (!c_.empty()) c = parse_scalar(c_);
      if (!sign_.empty()) sign = sign_ == "a" ? SignCase::A : SignCase::B;
      res.value = detail::report_json(classify(curve, c, sign));
    }
  } else if (*decompose_) {
    if (!generic_ && curve_.empty()) throw CLI::RequiredError("--curve or --generic");
    CurveSpec curve = generic_ ? generic_dihedral_curve(n_, k_) : curve_from_json(read_json_file(curve_));
    if (curve.r() != 2 * n_) throw Error(ErrorCode::InconsistentParams, "curve degree is not 2n+1");
    if (detect_cyclic(curve) % k_ != 0) throw Error(ErrorCode::InconsistentParams, "curve has no rotation of order k");
    std::optional<Scalar> c;
    if (!c_.empty())
      c = parse_scalar(c_);
    else if (generic_)
      c = Scalar::var("c");
    else {
      // Without --c, a curve whose symmetry search fails falls back to the rotation group.
      try {
        const SymmetryReport rep = classify(curve);
        if (rep.dihedral && rep.sign == SignCase::A && rep.c && rep.l % 2 == 0) c = rep.c;
      } catch (const Error&) {
      }
    }
    DecompositionResult d = decompose(curve, k_, c);
    if (full_) {
      std::vector<Cyclo> whole;
      for (std::size_t i = 0; i < d.character.size(); ++i) whole.push_back(d.character[i] + d.omega0_character[i]);
      DecompositionResult f = multiplicities(char_table(d.group), whole);
      f.n = d.n;
      f.omega0_character = d.omega0_character;
      f.omega0_irrep = d.omega0_irrep;
      d = f;
    }
    res.value = detail::decomposition_json(d, full_ ? "full" : "quotient");
  } else if (*check_) {
    res.value = run_check(out, err, res.code);
  }
  return res;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline Json Runner::run_check(std::ostream&, std::ostream&, int& code) {
#ifdef KNCENTER_FIXTURE_DIR
  const std::string dir = fixtures_.empty() ? std::string(KNCENTER_FIXTURE_DIR) : fixtures_;
#else
  const std::string dir = fixtures_;
#endif
  namespace fs = std::filesystem;
  if (dir.empty() || !fs::is_directory(dir)) throw Error(ErrorCode::ParseError, "fixture directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());

  struct Result {
    std::string name, source, status;
    std::vector<std::string> diffs, notes;
  };
  std::vector<Result> results(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t idx = next++; idx < files.size(); idx = next++) {
      Result& r = results[idx];
      r.name = files[idx].stem().string();
      try {
        const Json fx = read_json_file(files[idx].string());
        r.name = fx.value("name", r.name);
        r.source = fx.value("source", "");
        std::vector<std::string> args;
        for (const auto& a : fx.at("args")) {
          std::string s = a.get<std::string>();
          for (std::size_t p; (p = s.find("{fixtures}")) != std::string::npos;) s.replace(p, 10, dir);
          args.push_back(s);
        }
        args.insert(args.begin(), "--format");
        args.insert(args.begin() + 1, "json");
        std::ostringstream o, e;
        const int rc = run(args, o, e);
        const int want_rc = fx.value("exit", 0);
        if (rc != want_rc) r.diffs.push_back("exit code " + std::to_string(rc) + ", expected " + std::to_string(want_rc) + " " + e.str());
        if (rc == 0 && fx.contains("expect")) detail::subset_diff(fx.at("expect"), parse_json_text(o.str()), "", r.diffs);
        if (rc == 0 && fx.contains("printed")) {
          std::vector<std::string> d;
          detail::subset_diff(fx.at("printed"), parse_json_text(o.str()), "", d);
          for (auto& s : d) r.notes.push_back("printed value differs: " + s);
        }
      } catch (const std::exception& ex) {
        r.diffs.push_back(std::string("error: ") + ex.what());
      }
      r.status = r.diffs.empty() ? "pass" : "fail";
    }
  };
  const int nthreads = detail::threads_from_env(files.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::sort(results.begin(), results.end(), [](const Result& a, const Result& b) { return a.name < b.name; });

  Json list = Json::array();
  int passed = 0, failed = 0;
  for (const Result& r : results) {
    (r.status == "pass" ? passed : failed)++;
    list.push_back(Json{{"name", r.name}, {"source", r.source}, {"status", r.status}, {"diffs", r.diffs}, {"notes", r.notes}});
  }
  code = failed ? 1 : 0;
  return Json{{"suite", suite_}, {"passed", passed}, {"failed", failed}, {"results", list}};
}

/// Entry point: 0 success, 1 domain error, 2 usage or parse error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner runner;
  std::string format = "json";
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--format") format = args[i + 1];
  try {
    Outcome res = runner.execute(args, out, err);
    if (format == "pretty") {
      if (res.value.contains("results") && res.value.contains("suite")) {
        for (const auto& r : res.value.at("results")) {
          out << (r.at("status") == "pass" ? "PASS " : "FAIL ") << r.at("name").get<std::string>() << "\n";
          for (const auto& d : r.at("diffs")) out << "  " << d.get<std::string>() << "\n";
          for (const auto& d : r.at("notes")) out << "DISCREPANCY " << r.at("name").get<std::string>() << " " << d.get<std::string>() << "\n";
        }
        out << res.value.at("passed").get<int>() << " passed, " << res.value.at("failed").get<int>() << " failed\n";
      } else {
        detail::pretty(res.value, out);
      }
    } else {
      out << res.value.dump(2) << "\n";
    }
    return res.code;
  } catch (const CLI::CallForHelp& e) {
    return runner.app().exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? 2 : 1;
  }
}

}  // namespace kn::cli
