#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tomlink/cli.hpp"

using namespace tomlink;
using namespace tomlink::cli;

namespace {

namespace fs = std::filesystem;

std::string case_path(const std::string& stem) { return (fs::path(default_data_dir()) / "cases" / (stem + ".case")).string(); }

const char* kSmall = R"(id = small
ambient = 1 1 1 2 1 1 1 2
basket = 1/2(1,1,1)@s; 1/2(1,1,1)@y1
)";

std::string with_matrix(const std::string& head) {
  return head + R"(a12 = x1
a13 = x2
a14 = x3
a15 = -y2^2 - x3*y3
a23 = y2
a24 = y3
a25 = y1
a34 = y4
a35 = x1*y3 - y4^2
a45 = -x2*y4 - x3*y4 + y1
)";
}

CaseError parse_error(const std::string& text) {
  try {
    parse_case_text(text, "t.case");
  } catch (const CaseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for\n" << text;
  return CaseError("t.case", 0, 0, "", "none");
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  args.insert(args.begin(), "tomlink");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int code = run(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

}  // namespace

TEST(CaseFile, BundledWorkedExample) {
  auto cf = parse_case(case_path("10985"));
  EXPECT_EQ(cf.fano.d, (std::array<long, 4>{6, 5, 4, 3}));
  EXPECT_EQ(cf.fano.r, 2);
  EXPECT_EQ(cf.matrix_weights, fixtures::case_10985().w);
  EXPECT_EQ(cf.fano.basket.to_string(), "{1/2(1,1,1), 1/6(1,1,5)}");
  EXPECT_TRUE(cf.basket_complete);
}

TEST(CaseFile, InfersMatrixWeights) {
  auto a = parse_case(case_path("20652"));
  EXPECT_EQ(a.matrix_weights, fixtures::case_20652().w);
  auto b = parse_case(case_path("24097"));
  EXPECT_EQ(b.matrix_weights, fixtures::case_24097().w);
  EXPECT_EQ(b.fano.M.to_string(), fixtures::matrix(fixtures::case_24097()).to_string());
}

TEST(CaseFile, InferenceFillsZeroEntries) {
  auto M = fixtures::matrix(fixtures::case_10985());
  auto up = M.upper();
  up[0] = Polynomial(M.ring());  // a12
  up[9] = Polynomial(M.ring());  // a45
  EXPECT_EQ(infer_matrix_weights(up), fixtures::case_10985().w);
}

TEST(CaseFile, UnsortedIdealWeights) {
  auto e = parse_error(with_matrix("id = bad\nambient = 1 1 1 1 2 1 1 2\nbasket = 1/2(1,1,1)@s\n"));
  EXPECT_EQ(e.field(), "ambient");
  EXPECT_EQ(e.line(), 2);
  EXPECT_NE(std::string(e.what()).find("ideal weights not sorted"), std::string::npos);
}

TEST(CaseFile, GeneralSeedIsDeterministic) {
  std::string text = "id = g\nambient = 1 1 1 2 1 1 1 2\nbasket = 1/2(1,1,1)@s\n"
                     "matrix_weights = 1 1 1 2 1 1 2 1 2 2\nmatrix = GENERAL 3\n";
  auto a = parse_case_text(text), b = parse_case_text(text);
  EXPECT_EQ(a.fano.M.to_string(), b.fano.M.to_string());
  EXPECT_EQ(*a.general_seed, 3u);
  auto c = parse_case_text(text.replace(text.find("GENERAL 3"), 9, "GENERAL 4"));
  EXPECT_NE(a.fano.M.to_string(), c.fano.M.to_string());
}

TEST(CaseFile, SyntaxErrorsCarryPosition) {
  auto e = parse_error("id = x\nambient 1 1 1 2 1 1 1 2\n");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 1);
  auto p = parse_error(with_matrix(kSmall).replace(with_matrix(kSmall).find("a13 = x2"), 8, "a13 = x2 +* x1"));
  EXPECT_EQ(p.field(), "a13");
  EXPECT_EQ(p.line(), 5);
  EXPECT_GT(p.column(), 7);
  auto i = parse_error("id = x\nambient = 1 1 one 2 1 1 1 2\n");
  EXPECT_EQ(i.field(), "ambient");
  EXPECT_EQ(i.column(), 15);
}

TEST(CaseFile, KeyErrors) {
  EXPECT_EQ(parse_error(with_matrix(kSmall) + "colour = red\n").field(), "colour");
  EXPECT_NE(std::string(parse_error(with_matrix(kSmall) + "id = again\n").what()).find("duplicate"), std::string::npos);
  EXPECT_EQ(parse_error(kSmall + std::string("matrix = GENERAL 1\n")).field(), "matrix");
  EXPECT_EQ(parse_error(std::string(kSmall) + "matrix_weights = 1 1 1 2 1 1 2 1 2 2\n").field(), "matrix");
}

TEST(CaseFile, BasketSyntax) {
  auto cf = parse_case(case_path("20652"));
  ASSERT_EQ(cf.fano.basket.points.size(), 3u);
  EXPECT_EQ(cf.fano.basket.points[2].locus, "y1,y2");
  auto e = parse_error(with_matrix("id = x\nambient = 1 1 1 2 1 1 1 2\nbasket = 1/2(1,1,1)@s; 1/3(1,1,1)@y1\n"));
  EXPECT_EQ(e.field(), "basket");
  EXPECT_NE(std::string(e.what()).find("not terminal"), std::string::npos);
  auto no_centre = parse_error(with_matrix("id = x\nambient = 1 1 1 2 1 1 1 2\nbasket = 1/3(1,1,2)@y1\n"));
  EXPECT_EQ(no_centre.field(), "basket");
}

TEST(CaseFile, CorruptMatrixFailsTomCheck) {
  std::string text = with_matrix(kSmall);
  text.replace(text.find("a23 = y2"), 8, "a23 = x1");
  auto e = parse_error(text);
  EXPECT_EQ(e.field(), "matrix");
  EXPECT_NE(std::string(e.what()).find("Tom_1"), std::string::npos);
}

TEST(CaseFile, AllBundledCasesParse) {
  auto cases = bundled_cases(default_data_dir());
  EXPECT_EQ(cases.size(), 23u);
  for (const auto& p : cases) EXPECT_NO_THROW(parse_case(p)) << p;
}

TEST(Report, UnprojectEmitsNineEquations) {
  for (const std::string id : {"10985", "20652", "24097"}) {
    RunOptions o;
    o.skip_saturation_oracle = true;
    auto j = unproject_report(parse_case(case_path(id)), o);
    EXPECT_EQ(j["unprojection"]["equation_count"], 9) << id;
    EXPECT_TRUE(j["ok"].get<bool>()) << id;
  }
}

TEST(Report, EmbedsSeedAndVersion) {
  std::string out;
  ASSERT_EQ(run_cli({"unproject", "--case", case_path("24097"), "--seed", "17", "--skip-saturation-oracle", "--json"}, &out), 0);
  auto j = Json::parse(out);
  EXPECT_EQ(j["seed"], 17);
  EXPECT_EQ(j["tool"]["version"], TOMLINK_VERSION);
  EXPECT_EQ(out.find('\n'), out.size() - 1);
}

TEST(Report, ByteIdenticalAcrossRuns) {
  std::string a, b;
  run_cli({"trace", "--case", case_path("20652"), "--skip-saturation-oracle"}, &a);
  run_cli({"trace", "--case", case_path("20652"), "--skip-saturation-oracle"}, &b);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("timings"), std::string::npos);
}

TEST(Report, TraceContents) {
  RunOptions o;
  o.skip_saturation_oracle = true;
  auto j = trace_report(parse_case(case_path("24097")), o);
  EXPECT_EQ(j["steps"].back()["conic"]["delta"], 6);
  auto k = trace_report(parse_case(case_path("20652")), o);
  EXPECT_EQ(k["steps"].back()["dp_degree"], 5);
  o.endpoint_quasismooth = true;
  auto p = trace_report(parse_case(case_path("picard_16339")), o);
  EXPECT_EQ(p["analysis"], "structural");
  EXPECT_EQ(p["picard"]["rho"], 1);
}

TEST(Golden, DiffIgnoresLineEndings) {
  EXPECT_EQ(golden_diff("a\nb\n", "a\r\nb\r\n"), "");
  EXPECT_EQ(golden_diff("a\nb", "a\nb\n"), "");
  auto d = golden_diff("a\nb\nc\n", "a\nB\nc\n");
  EXPECT_NE(d.find("-2: b"), std::string::npos);
  EXPECT_NE(d.find("+2: B"), std::string::npos);
}

TEST(Golden, MutatedGoldenFailsWithDiff) {
  fs::path tmp = fs::temp_directory_path() / "tomlink_golden_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp / "cases");
  fs::create_directories(tmp / "golden");
  fs::copy_file(case_path("24097"), tmp / "cases" / "24097.case");
  std::string report = golden_report(case_path("24097"), "trace");
  {
    std::ofstream(tmp / "golden" / "24097.trace.txt") << report;
  }
  auto ok = check_goldens(tmp.string());
  ASSERT_EQ(ok.size(), 1u);
  EXPECT_TRUE(ok[0].pass) << ok[0].diff;
  std::string mutated = report;
  mutated.replace(mutated.find("ConicBundle{6}"), 14, "ConicBundle{7}");
  {
    std::ofstream(tmp / "golden" / "24097.trace.txt") << mutated;
  }
  auto bad = check_goldens(tmp.string());
  EXPECT_FALSE(bad[0].pass);
  EXPECT_NE(bad[0].diff.find("ConicBundle{7}"), std::string::npos);
  fs::remove_all(tmp);
}

TEST(Cli, ExitCodes) {
  std::string out, err;
  EXPECT_EQ(run_cli({"--help"}, &out), 0);
  EXPECT_NE(out.find("selftest"), std::string::npos);
  EXPECT_EQ(run_cli({"trace"}, &out, &err), kInputError);
  EXPECT_EQ(run_cli({"trace", "--case", "/nonexistent.case"}, &out, &err), kInputError);
  EXPECT_EQ(run_cli({"trace", "--case", case_path("10985"), "--budget", "5"}, &out, &err), kBudgetExceeded);
  EXPECT_NE(err.find("budget"), std::string::npos);
}

TEST(Cli, SelftestBudgetExitCode) {
  std::string out;
  EXPECT_EQ(run_cli({"selftest", "--budget", "5", "--skip-saturation-oracle"}, &out), kBudgetExceeded);
  EXPECT_NE(out.find("SKIP criterion 4"), std::string::npos);
  EXPECT_NE(out.find("PASS golden 24097.trace.txt"), std::string::npos);
}

TEST(Cli, ExamplesListsBundledCases) {
  std::string out;
  EXPECT_EQ(run_cli({"examples"}, &out), 0);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 23);
  EXPECT_NE(out.find("(viii)"), std::string::npos);
}
