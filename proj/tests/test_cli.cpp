#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kncenter/cli.hpp"
#include "test_support.hpp"

using namespace kn;
using kn::testing::S;

namespace {

const std::string kFix = KNCENTER_FIXTURE_DIR;
const std::string kQuintic = kFix + "/curves/quintic.json";

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json call_json(std::vector<std::string> args) {
  Result r = call(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return parse_json_text(r.out);
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

// Every string leaf that parses as a scalar must print back to an equal scalar.
void check_literals(const Json& j) {
  if (j.is_object() || j.is_array()) {
    for (const auto& v : j) check_literals(v);
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      const Scalar a = parse_scalar(s);
      EXPECT_EQ(parse_scalar(a.to_string()), a) << s;
    } catch (const Error&) {
      // labels such as "rho2" or "D_6" are not all scalar literals
    }
  }
}

const std::vector<std::vector<std::string>> kInvocations{
    {"recursion", "--curve", kQuintic, "--kind", "P", "--kmax", "6"},
    {"recursion", "--curve", kQuintic, "--kind", "Q", "--kmax", "8"},
    {"series", "--curve", kQuintic, "--kind", "P", "--i", "-2", "--order", "12", "--route", "both"},
    {"reduce", "--curve", kQuintic, "--i", "4", "--eps-left", "1", "--j", "-2", "--eps-right", "1"},
    {"bracket", "--curve", kQuintic, "--x", "e@2*u + h@-1", "--y", "f@-3*u - c*h@1"},
    {"classify", "--curve", kFix + "/curves/quintic_palindromic.json"},
    {"classify", "--roots", kFix + "/curves/orbit_roots.json"},
    {"decompose", "--n", "6", "--k", "3", "--generic"},
    {"decompose", "--n", "4", "--k", "2", "--generic", "--full"},
};

}  // namespace

TEST(Cli, RecursionPrintedCoefficient) {
  const Json j = call_json({"recursion", "--kind", "P", "--kmax", "7", "--curve", kQuintic});
  EXPECT_EQ(j.at("P").at("7,-1"), "(6160*c^4-3388*c^2+153)/4641");
}

TEST(Cli, RoundTripLiterals) {
  for (const auto& args : kInvocations) check_literals(call_json(args));
}

TEST(Cli, CenterOutputMatchesLibrary) {
  const CurveSpec q = kn::testing::quintic();
  const Tables t = make_tables(q, 8);
  const Json j = call_json({"reduce", "--curve", kQuintic, "--i", "2", "--eps-left", "1", "--j", "-1"});
  const CenterVector v = reduce_form(q, 2, 1, -1, 0, t.P, t.Q);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(parse_scalar(j.at("omega" + std::to_string(k)).get<std::string>()), v[k]);
}

TEST(Cli, Deterministic) {
  for (const auto& args : kInvocations) EXPECT_EQ(call(args).out, call(args).out);
}

TEST(Cli, PrettyFormat) {
  const Result r = call({"--format", "pretty", "series", "--curve", kQuintic, "--kind", "Q", "--i", "-3", "--order", "12"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "z^8: 1\nz^10: 2*c/7\nz^12: (20*c^2+7)/77\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({"recursion", "--curve", write_temp("kn_bad.json", "{\"r\": 4, \"coeffs\": ")}).code, 2);
  EXPECT_EQ(call({"recursion", "--curve", write_temp("kn_badkey.json", R"({"r": 4, "coeffs": {"x": "1"}})")}).code, 2);
  EXPECT_EQ(call({"recursion", "--curve", kQuintic, "--unknown", "1"}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"series", "--curve", kQuintic, "--route", "sideways"}).code, 2);
  EXPECT_EQ(call({"--format", "xml", "recursion", "--curve", kQuintic}).code, 2);
  // domain errors
  EXPECT_EQ(call({"classify", "--curve", kQuintic}).code, 1);
  EXPECT_EQ(call({"decompose", "--n", "4", "--k", "3", "--generic"}).code, 1);
  EXPECT_EQ(call({"decompose", "--n", "3", "--k", "2", "--generic"}).code, 1);
  const Result dup = call({"classify", "--roots", write_temp("kn_dup.json", "[[1,0],[-1,0.0000000005]]")});
  EXPECT_EQ(dup.code, 1);
  EXPECT_NE(dup.err.find("ToleranceConflict"), std::string::npos);
}

TEST(Cli, MalformedCurveMessage) {
  const Result r = call({"recursion", "--curve", kFix + "/curves/malformed.txt"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
}

TEST(Cli, ClassifyReport) {
  const Json j = call_json({"classify", "--curve", kFix + "/curves/quintic_palindromic.json", "--c", "1", "--sign", "a"});
  EXPECT_EQ(j.at("group"), "D_4");
  EXPECT_EQ(j.at("group_order"), 8);
  EXPECT_EQ(j.at("c"), "1");
  const Json r = call_json({"classify", "--roots", kFix + "/curves/orbit_roots.json"});
  EXPECT_EQ(r.at("group"), "C_8");
  EXPECT_FALSE(r.at("dihedral").get<bool>());
}

TEST(Cli, DecomposeQuotientAndFull) {
  const Json q = call_json({"decompose", "--n", "3", "--k", "3", "--generic"});
  EXPECT_EQ(q.at("multiplicities").at("rho4"), 2);
  EXPECT_EQ(q.at("multiplicities").at("chi1"), 2);
  EXPECT_EQ(q.at("omega0_irrep"), "rho2");
  EXPECT_EQ(q.at("bookkeeping"), 6);
  const Json f = call_json({"decompose", "--n", "3", "--k", "3", "--generic", "--full"});
  EXPECT_EQ(f.at("space"), "full");
  EXPECT_EQ(f.at("multiplicities").at("rho2"), 1);
  EXPECT_EQ(f.at("bookkeeping"), 7);
  EXPECT_EQ(f.at("character").at(0), "7");
}

TEST(Cli, DecomposeCyclicFromCurveFile) {
  const std::string p =
      write_temp("kn_cyc.json", R"({"r": 12, "coeffs": {"1": "1", "4": "3", "7": "1", "10": "1", "13": "1"}})");
  const Json j = call_json({"decompose", "--n", "6", "--k", "3", "--curve", p});
  EXPECT_EQ(j.at("group"), "C_6");
  EXPECT_EQ(j.at("omega0_irrep"), "chi0");
  EXPECT_EQ(j.at("bookkeeping"), 12);
}

TEST(Cli, CheckSuitePasses) {
  const Result r = call({"check", "--suite", "paper-examples"});
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = parse_json_text(r.out);
  EXPECT_EQ(j.at("failed"), 0);
  EXPECT_GE(j.at("passed").get<int>(), 20);
  for (const auto& e : j.at("results")) EXPECT_FALSE(e.at("source").get<std::string>().empty()) << e.at("name");
  std::vector<std::string> names;
  for (const auto& e : j.at("results")) names.push_back(e.at("name"));
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
}

TEST(Cli, CheckSuiteThreadCountDoesNotChangeOutput) {
  setenv("KN_CENTER_THREADS", "1", 1);
  const std::string one = call({"check", "--suite", "paper-examples"}).out;
  setenv("KN_CENTER_THREADS", "3", 1);
  const std::string three = call({"check", "--suite", "paper-examples"}).out;
  unsetenv("KN_CENTER_THREADS");
  EXPECT_EQ(one, three);
}

TEST(Cli, CheckSuiteReportsFailures) {
  const auto dir = std::filesystem::temp_directory_path() / "kn_fixtures_bad";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "wrong.json") << R"({"name": "wrong", "source": "deliberately wrong value",
    "args": ["recursion", "--curve", ")" << kQuintic << R"(", "--kmax", "1"], "expect": {"P": {"1,-1": "c/3"}}})";
  const Result r = call({"--format", "pretty", "check", "--suite", "paper-examples", "--fixtures", dir.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL wrong"), std::string::npos);
  EXPECT_NE(r.out.find("/P/1,-1"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = KNCENTER_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("recursion --kind P --kmax 7 --curve " + kQuintic), 0);
  EXPECT_EQ(status("recursion --curve " + kFix + "/curves/malformed.txt"), 2);
  EXPECT_EQ(status("--bogus"), 2);
  EXPECT_EQ(status("classify --curve " + kQuintic), 1);
}
