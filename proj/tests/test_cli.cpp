#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sofic::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(SOFIC_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, GoldenMeanPressure) {
  const auto r = run({"pressure", sample("golden_mean.shift"), "--format", "machine"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pressure = 0.4812118251"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("verdict = pass"), std::string::npos);
}

TEST(Cli, AnalyzeReportsPeriod) {
  const auto r = run({"analyze", sample("period2.shift"), "--format", "machine"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("period = 2"), std::string::npos) << r.out;
}

TEST(Cli, FischerDegree) {
  const auto r = run({"fischer", sample("even_shift_nd.shift"), "--format", "machine"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("states = 2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("degree = 1"), std::string::npos);
}

TEST(Cli, PushforwardAmalgamation) {
  const auto r = run({"pushforward", sample("amalgamation.shift"), "--format", "machine"});
  EXPECT_NE(r.out.find("finite_to_one = no"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("degree = infinite"), std::string::npos);
}

TEST(Cli, VerifyLanfordRuelle) {
  const auto r = run({"verify", "lanford-ruelle", sample("even_shift.shift"), "--potential", sample("even_range2.pot"),
                      "--cmax", "10"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, VerifyCounterexample) {
  const auto r = run({"verify", "counterexample"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("equilibrium: yes; Gibbs: no"), std::string::npos) << r.out;
}

TEST(Cli, GibbsCheckFailsForReducibleShift) {
  const auto r = run({"gibbs-check", sample("sunny_side_up.shift")});
  EXPECT_NE(r.code, 0);
}

TEST(Cli, MissingFileIsInputError) {
  EXPECT_EQ(run({"pressure", "/nonexistent.shift"}).code, 2);
}

TEST(Cli, UnknownSubcommandIsInputError) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, BadFormatIsInputError) {
  EXPECT_EQ(run({"pressure", sample("golden_mean.shift"), "--format", "xml"}).code, 2);
}
