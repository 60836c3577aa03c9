#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rz/io.hpp"

namespace rz {
namespace {

namespace fs = std::filesystem;
using io::json;

struct Run {
  int code = -1;
  std::string out, err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("rz_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run rz(const std::string& args, const std::string& env = "") {
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = env + " " + RZ_CLI_PATH + " " + args + " 2>" + err.string();
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

TEST(CliGen, Thm1Example) {
  const auto r = rz("gen --family thm1 --a 0 --b 2 --n 2 --format json");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "[[1],[-1,-1],[-1,1,1]]\n");
}

TEST(CliGen, ExactModeWritesRationalStrings) {
  const auto r = rz("gen --family thm1 --a 0 --b 1/3 --n 2 --mode exact");
  EXPECT_EQ(r.code, 0) << r.err;
  // P_2 = (z+1)^2 - (z + 1/3).
  EXPECT_EQ(r.out, R"([["1/1"],["-1/1","-1/1"],["2/3","1/1","1/1"]])"
                   "\n");
}

TEST(CliGen, RationalAndDecimalFlagsAgree) {
  EXPECT_EQ(rz("gen --family thm3 --a 1/2 --b -3/4 --n 6").out, rz("gen --family thm3 --a 0.5 --b -0.75 --n 6").out);
}

TEST(CliGen, MissingFamilyParameterIsDomainError) {
  const auto r = rz("gen --family thm2 --a 1 --b 1 --n 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--c"), std::string::npos);
}

TEST(CliGen, GeneralRNeedsAllFour) {
  EXPECT_EQ(rz("gen --family generalr --a1 2 --b1 0 --a2 0 --b2 -1 --n 3").code, 0);
  EXPECT_EQ(rz("gen --family generalr --a1 2 --b1 0 --n 3").code, 1);
}

TEST(CliRoots, PipedGenMatchesInProcessBitForBit) {
  const auto file = scratch() / "seq.json";
  ASSERT_EQ(rz("gen --family thm3 --a 0.3 --b -0.7 --n 12 --out " + file.string()).code, 0);
  const auto r = rz("roots --in " + file.string());
  ASSERT_EQ(r.code, 0) << r.err;

  const auto seq = generate(family_cast<double>(Family<Rational>(Thm3<Rational>{Rational(3, 10), Rational(-7, 10)})), 12);
  json expected = json::array();
  for (const auto& p : seq) expected.push_back(io::to_json(is_hyperbolic(p), p.degree()));
  EXPECT_EQ(r.out, expected.dump() + "\n");
}

TEST(CliRoots, PipedExactModeMatchesInProcess) {
  const auto file = scratch() / "seq_exact.json";
  ASSERT_EQ(rz("gen --family thm1 --a 1/3 --b 4 --n 8 --mode exact --out " + file.string()).code, 0);
  const auto r = rz("roots --mode exact --in " + file.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto seq = generate<Rational>(Thm1<Rational>{Rational(1, 3), Rational(4)}, 8);
  json expected = json::array();
  for (const auto& p : seq) expected.push_back(io::to_json(is_hyperbolic(p), p.degree()));
  EXPECT_EQ(r.out, expected.dump() + "\n");
  const auto j = json::parse(r.out);
  EXPECT_EQ(j[8]["certificate"], 8);
  EXPECT_EQ(j[8]["status"], "AllReal");
}

TEST(CliRoots, SinglePolynomialFromStdin) {
  const auto r = rz("roots", "echo '[0.5, 1, 1]' |");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["status"], "NonRealFound");
  ASSERT_EQ(j["roots"].size(), 2u);
  EXPECT_DOUBLE_EQ(j["roots"][0]["re"].get<double>(), -0.5);
  EXPECT_DOUBLE_EQ(std::abs(j["roots"][0]["im"].get<double>()), 0.5);
}

TEST(CliRoots, BadInputExitsOne) {
  EXPECT_EQ(rz("roots", "echo '[1, \"x\"]' |").code, 1);
  EXPECT_EQ(rz("roots", "echo 'not json' |").code, 1);
  EXPECT_EQ(rz("roots", "echo '[]' |").code, 1);
}

TEST(CliTheta, TablePrintsOneRowPerRoot) {
  const auto r = rz("theta --family thm1 --a 0 --b 4 --n 5");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::vector<std::string> lines;
  for (std::string l; std::getline(is, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[1], "k\tbracket\ttheta\tz\t|P_n(z)|");
  for (int k = 1; k <= 5; ++k) {
    const auto& row = lines[static_cast<std::size_t>(k) + 1];
    EXPECT_EQ(row.substr(0, 2), std::to_string(k) + "\t");
    const double pz = std::stod(row.substr(row.rfind('\t') + 1));
    EXPECT_LT(pz, 1e-10) << row;
  }
}

TEST(CliTheta, JsonMatchesReport) {
  const auto r = rz("theta --family thm3 --a 0.25 --b 0.1 --n 3 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["family"], "thm3");
  EXPECT_GE(j["root_count"].get<int>(), 3);
  EXPECT_FALSE(j["asymptote"].is_null());
}

TEST(CliTheta, OutsideRegionIsDomainError) { EXPECT_EQ(rz("theta --family thm1 --a 0 --b 0.5 --n 3").code, 1); }

TEST(CliWitness, Thm3Example) {
  const auto r = rz("witness --family thm3 --a 0 --b 2");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["z_star"]["re"].get<double>(), 0, 1e-12);
  EXPECT_NEAR(j["z_star"]["im"].get<double>(), -1.5, 1e-12);
  ASSERT_EQ(j["t_zeros"].size(), 3u);
  EXPECT_NEAR(j["t_zeros"][0]["modulus"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["t_zeros"][1]["modulus"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["t_zeros"][2]["modulus"].get<double>(), 2, 1e-12);
  EXPECT_TRUE(j["checks"]["z_star_nonreal"].get<bool>());
  EXPECT_TRUE(j["checks"]["moduli_ordering_ok"].get<bool>());
  EXPECT_TRUE(j["checks"]["zeros_distinct"].get<bool>());
  EXPECT_EQ(j["empirical"]["n_found"], 2);
}

TEST(CliWitness, TableAndThetaStart) {
  const auto r = rz("witness --family thm1 --a 0 --b -4 --theta-start 1.0471975511965976 --n-max 0 --format table");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Thm1-bLeNeg1"), std::string::npos);
  EXPECT_NE(r.out.find("theta*  1.0471975511965976"), std::string::npos);
  EXPECT_EQ(r.out.find("first non-real"), std::string::npos);
}

TEST(CliWitness, ExitCodes) {
  // Hyperbolic region: precondition.
  EXPECT_EQ(rz("witness --family thm1 --a 0 --b 4").code, 1);
  // Thm1(1, 2.5) first goes non-real at n = 16, so n_max = 5 cannot confirm it.
  const auto r = rz("witness --family thm1 --a 1 --b 2.5 --n-max 5");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("solver error"), std::string::npos);
}

TEST(CliScan, CsvAndGnuplot) {
  const auto plot = scratch() / "scan.dat";
  const auto r = rz("scan --family thm1 --a-range -1:1 --b-range 0:4 --steps 3 --n-max 6 --gnuplot " + plot.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "a,b,n_max,verdict,first_nonreal_n,max_imag,interval_lo,interval_hi,interval_ok,theory_label");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 10);
  const auto g = slurp(plot);
  EXPECT_EQ(g.substr(0, g.find('\n')), "-1 0 1");
}

TEST(CliScan, ThreadCountDoesNotChangeOutput) {
  const std::string args = "scan --family thm3 --steps 5 --n-max 10";
  const auto one = rz(args, "RZ_THREADS=1");
  const auto many = rz(args, "RZ_THREADS=3");
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, many.out);
}

TEST(CliScan, JsonHasCellsAndSummary) {
  const auto r = rz("scan --family thm3 --steps 3 --n-max 5 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["cells"].size(), 9u);
  EXPECT_EQ(j["cells"][4]["verdict"], "RealUpToN");
  EXPECT_TRUE(j["summary"].contains("misclassified"));
}

TEST(CliScan, DensityTrend) {
  const auto r = rz("scan --family thm3 --a 0 --b 0.5 --density 10,40,160 --format json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["decreasing"].get<bool>());
  EXPECT_EQ(j["points"].size(), 3u);
}

TEST(CliCheck, SubsetPasses) {
  const auto r = rz("check --only 1,11");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS  1 "), std::string::npos);
  EXPECT_NE(r.out.find("PASS  11 "), std::string::npos);
}

TEST(CliCheck, ExpectedRedMustActuallyFail) {
  EXPECT_EQ(rz("check --only 11 --expect-red 11").code, 2);
}

TEST(CliUsage, UnknownFlagPrintsUsage) {
  const auto r = rz("gen --family thm1 --a 0 --b 2 --n 2 --bogus 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliUsage, MissingSubcommand) {
  const auto r = rz("");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(CliUsage, HelpExitsZero) { EXPECT_EQ(rz("--help").code, 0); }

}  // namespace
}  // namespace rz
