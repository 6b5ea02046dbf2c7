#include "ahs/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace ahs;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun invoke(std::vector<std::string> args) {
  std::vector<char*> argv;
  static std::string prog = "ahs";
  argv.push_back(prog.data());
  for (auto& a : args) argv.push_back(a.data());
  std::stringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  int code = cli::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return {code, captured.str()};
}

}  // namespace

TEST(Cli, ConstantsExample) {
  CliRun r = invoke({"constants", "--kind", "c", "--n", "1", "--D", "2"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "-1 * log(2)\n");
}

TEST(Cli, ConstantsJsonRoundTrips) {
  CliRun r = invoke({"--format", "json", "constants", "--kind", "q", "--n", "2", "--D", "2"});
  EXPECT_EQ(r.exit_code, 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(LogForm::from_json(j), q_exact(2, 2));
}

TEST(Cli, PointsExample) {
  CliRun r = invoke({"points", "--f", "x0^2+x1^2-x2^2", "--B", "2"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("4 points"), std::string::npos);
}

TEST(Cli, PointsJson) {
  CliRun r = invoke({"--format", "json", "points", "--f", "x0^3+x1^3+x2^3", "--B", "3/2"});
  EXPECT_EQ(r.exit_code, 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["points"].size(), 3u);
  EXPECT_EQ(j["B"], "3/2");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"constants", "--kind", "zzz", "--n", "1", "--D", "2"}).exit_code, 1);
  EXPECT_EQ(invoke({"points", "--f", "x0^2+x1", "--B", "2"}).exit_code, 1);
  EXPECT_EQ(invoke({"nonsense"}).exit_code, 1);
}

TEST(Cli, HeightPoint) {
  CliRun r = invoke({"height", "--point", "3,4"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("weil = 2 * log(2)"), std::string::npos);
  EXPECT_NE(r.out.find("fubini-study = 1 * log(5)"), std::string::npos);
}

TEST(Cli, CoverFermat) {
  CliRun r = invoke({"cover", "--f", "x0^3+x1^3+x2^3", "--B", "3/2", "--degree", "1"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("g = x0+x1+x2"), std::string::npos);
  EXPECT_NE(r.out.find("[Pass] cover-postconditions"), std::string::npos);
}

TEST(Cli, VarpiExample) {
  CliRun r = invoke({"varpi", "--n", "2", "--delta", "2", "--B", "10000", "--H", "1e8"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("800"), std::string::npos);
}

TEST(Cli, DegreeQuotient) {
  CliRun r = invoke({"degree", "--op", "quotient", "--D", "2", "--f", "x0"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("deg = 0"), std::string::npos);
}

TEST(Cli, ConfigFileAndEnvPrecision) {
  std::string path = ::testing::TempDir() + "/ahs_cli_test.cfg";
  {
    std::ofstream out(path);
    out << "# comment\nprecision_bits = 96\nepsilon = 1/10\nsign_convention = gram\n";
  }
  RunConfig cfg = RunConfig::from_file(path);
  EXPECT_EQ(cfg.epsilon, rat(1, 10));
  EXPECT_EQ(cfg.sign, RunConfig::Sign::Gram);
  std::remove(path.c_str());

  RunConfig bad;
  EXPECT_THROW(bad.apply_line("nonsense_key = 3"), std::invalid_argument);
}

TEST(Cli, VerifyChainSuite) {
  CliRun r = invoke({"verify", "--suite", "chain"});
  EXPECT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find(" 0 fail"), std::string::npos) << r.out;
}

TEST(Cli, SeedMakesSupEstimateReproducible) {
  CliRun a = invoke({"--seed", "9", "norms", "--op", "sup-estimate", "--f", "x0*x1+x1*x2"});
  CliRun b = invoke({"--seed", "9", "norms", "--op", "sup-estimate", "--f", "x0*x1+x1*x2"});
  EXPECT_EQ(a.out, b.out);
}
