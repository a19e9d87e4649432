#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ybt::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const Outcome& r) { return json::parse(r.out); }

TEST(Cli, RAlphaBetaMirrorPasses) {
  const Outcome r = call({"verify", "ybe", "--family", "r-alpha-beta", "--alpha", "0.5", "--beta", "1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = report(r);
  EXPECT_EQ(j["command"], "verify ybe");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_LE(j["residuals"]["braided_ybe"].get<double>(), 1e-10);
}

TEST(Cli, MpaExamplePasses) {
  const Outcome r = call({"mpa", "--L", "4", "--q", "0.5", "--alpha", "0.6", "--beta", "0.4", "--gamma", "0.1", "--delta", "0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(report(r)["residuals"]["oracle_tv"].get<double>(), 1e-8);
}

TEST(Cli, FuseExamplePasses) {
  const Outcome r = call({"fuse", "--l", "3", "--m", "2", "--z", "0.25", "--q", "0.5", "--method", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(report(r)["residuals"]["method_difference"].get<double>(), 1e-8);
}

TEST(Cli, ResidualFailureExitsOne) {
  const Outcome r = call({"verify", "ybe", "--family", "r-alpha-beta", "--alpha", "0.5", "--beta", "0.5"});
  EXPECT_EQ(r.code, 1);
  const json j = report(r);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_GT(j["residuals"]["braided_ybe"].get<double>(), 1e-3);
}

TEST(Cli, PassMatchesResidualsAgainstTolerance) {
  // A zero tolerance turns a round-off residual into a failure.
  const Outcome loose = call({"rep-check", "--m", "3", "--q", "0.7"});
  ASSERT_EQ(loose.code, 0);
  const json j = report(loose);
  double worst = 0.0;
  for (const auto& [k, v] : j["residuals"].items()) worst = std::max(worst, v.get<double>());
  const Outcome strict = call({"--tol", "0", "rep-check", "--m", "3", "--q", "0.7"});
  EXPECT_EQ(strict.code, worst > 0.0 ? 1 : 0);
  EXPECT_EQ(report(strict)["params"]["tol"]["k_e"].get<double>(), 0.0);
}

TEST(Cli, UsageErrorsNameTheFlagWithoutOutput) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"mpa", "--L", "4", "--q", "0.5", "--alpha", "0.6", "--beta", "0.4", "--gamma", "0.1"}, "--delta"},
      {{"rep-check", "--m", "2", "--q", "-1"}, "--q"},
      {{"fuse", "--l", "2", "--m", "2", "--z", "0.3", "--q", "0.5", "--method", "fast"}, "--method"},
      {{"verify", "ybe", "--family", "r-alpha-beta", "--alpha", "0.5"}, "--beta"},
      {{"twprob", "--t", "1", "--q", "0.5", "--y", "0,x", "--x", "1"}, "--y"},
      {{"--csv", "rep-check", "--m", "2", "--q", "0.5"}, "--csv"},
      {{"--csv", "--json", "rep-check", "--m", "2", "--q", "0.5"}, "--csv"},
  };
  for (const auto& [args, flag] : cases) {
    const Outcome r = call(args);
    EXPECT_EQ(r.code, 2) << flag;
    EXPECT_TRUE(r.out.empty()) << flag;
    EXPECT_NE(r.err.find(flag), std::string::npos) << r.err;
  }
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  const Outcome r = call({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ParameterErrorExitsTwo) {
  const Outcome r = call({"mpa", "--L", "3", "--q", "0.5", "--alpha", "0.05", "--beta", "0.05", "--gamma", "0", "--delta", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("parameter error"), std::string::npos);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::vector<std::string>> cmds = {
      {"--seed", "42", "sample6v", "--b1", "0.4", "--b2", "0.7", "--width", "12", "--height", "12", "--boundary", "step"},
      {"--seed", "42", "--csv", "sample6v", "--b1", "0.4", "--b2", "0.7", "--width", "12", "--height", "12"},
      {"asep", "stationary", "--L", "4", "--q", "0.5", "--alpha", "0.6", "--beta", "0.4", "--gamma", "0.1", "--delta", "0.2",
       "--open"},
      {"twprob", "--t", "0.5", "--q", "0.5", "--y", "0,2", "--x", "1,3"},
  };
  for (const auto& c : cmds) {
    const Outcome a = call(c), b = call(c);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, SeedChangesTheSample) {
  const Outcome a = call({"--seed", "1", "--csv", "sample6v", "--b1", "0.4", "--b2", "0.7", "--width", "16", "--height", "16"});
  const Outcome b = call({"--seed", "2", "--csv", "sample6v", "--b1", "0.4", "--b2", "0.7", "--width", "16", "--height", "16"});
  EXPECT_NE(a.out, b.out);
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(Cli, CsvHeaders) {
  EXPECT_EQ(first_line(call({"--csv", "mpa", "--L", "3", "--q", "0.5", "--alpha", "0.6", "--beta", "0.4", "--gamma", "0.1",
                             "--delta", "0.2"})
                           .out),
            "bitstring,probability");
  EXPECT_EQ(first_line(call({"--csv", "asep", "stationary", "--L", "3", "--q", "0.5", "--particles", "1"}).out),
            "bitstring,probability");
  EXPECT_EQ(first_line(call({"--csv", "fuse", "--l", "2", "--m", "2", "--z", "0.3", "--q", "0.5", "--method", "both"}).out),
            "j1,k1,j2,k2,recurrence,closed");
}

TEST(Cli, MeasureCsvSumsToOne) {
  const Outcome r = call({"--csv", "mpa", "--L", "4", "--q", "0.3", "--alpha", "0.7", "--beta", "0.5", "--gamma", "0.1",
                      "--delta", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  double total = 0.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    EXPECT_EQ(comma, 4u);
    total += std::stod(line.substr(comma + 1));
    ++rows;
  }
  EXPECT_EQ(rows, 16);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Cli, TimingAddsWallTime) {
  const std::vector<std::string> base = {"rep-check", "--m", "2", "--q", "0.5"};
  EXPECT_FALSE(report(call(base)).contains("wall_time"));
  std::vector<std::string> timed = {"--timing"};
  timed.insert(timed.end(), base.begin(), base.end());
  const json j = report(call(timed));
  ASSERT_TRUE(j.contains("wall_time"));
  EXPECT_GE(j["wall_time"].get<double>(), 0.0);
}

TEST(Cli, OutWritesFile) {
  const std::string path = ::testing::TempDir() + "ybt_cli_out.json";
  const Outcome r = call({"--out", path, "rep-check", "--m", "2", "--q", "0.5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  EXPECT_EQ(s.str(), call({"rep-check", "--m", "2", "--q", "0.5"}).out);
  std::remove(path.c_str());
}

TEST(Cli, EveryCommandReportsEnvelope) {
  const std::vector<std::vector<std::string>> cmds = {
      {"verify", "ybe", "--family", "asep", "--q", "0.5"},
      {"verify", "ybe", "--family", "fused", "--l", "2", "--q", "0.5"},
      {"verify", "reflection", "--side", "right", "--q", "0.5", "--alpha", "0.6", "--beta", "0.4", "--gamma", "0.1",
       "--delta", "0.2"},
      {"verify", "hecke", "--family", "frt", "--q", "0.7"},
      {"verify", "markov", "--q", "0.5"},
      {"universal-r", "--l", "1", "--m", "1", "--q", "1.5"},
      {"oscillator", "hermite", "--max-degree", "6"},
      {"oscillator", "fock", "--cutoff", "6"},
      {"oscillator", "js", "--cutoff", "5"},
  };
  for (const auto& c : cmds) {
    const Outcome r = call(c);
    EXPECT_EQ(r.code, 0) << c[0] << " " << c[1] << ": " << r.err;
    const json j = report(r);
    for (const char* key : {"command", "params", "results", "residuals", "pass"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_TRUE(j["params"].contains("tol"));
  }
}

TEST(Cli, PoleGridIsUsageError) {
  const Outcome r = call({"verify", "ybe", "--family", "fused", "--l", "2", "--q", "0.5", "--grid", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--grid"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  const Outcome r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sample6v"), std::string::npos);
}

}  // namespace
