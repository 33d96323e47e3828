#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "run.hpp"
#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/metrics.hpp"
#include "simjoin/point_io.hpp"

using namespace simjoin;
using namespace simjoin::harness;
namespace fs = std::filesystem;

namespace {

const char* kConfig = R"({
  "base_seed": 7,
  "r": 2,
  "trials": 2,
  "protocol": {"kind": "ball-covering", "delta": 0.9},
  "input": {"kind": "hard"},
  "sweep": {"d": [10], "n": [60, 120], "p": [4]}
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("simjoin_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string field_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesAndFillsSweepDefaults) {
  const auto cfg = parse_config(kConfig);
  EXPECT_EQ(cfg.base_seed, 7u);
  EXPECT_EQ(cfg.protocol.kind, ProtocolKind::BallCovering);
  EXPECT_EQ(cfg.input, InputKind::Hard);
  ASSERT_EQ(cfg.sweep.delta.size(), 1u);
  EXPECT_EQ(*cfg.sweep.delta[0], 0.9);
  ASSERT_EQ(cfg.sweep.k.size(), 1u);
  EXPECT_FALSE(cfg.sweep.k[0].has_value());
  EXPECT_EQ(expand_sweep(cfg).size(), 2u);
}

TEST(Config, FieldDiagnostics) {
  EXPECT_NE(field_error(R"({"r": 2, "protocol": {"kind": "universal"}, "sweep": {"d": [4], "n": [4], "p": [2]}})")
                .find("'base_seed'"),
            std::string::npos);
  EXPECT_NE(field_error(R"({"base_seed": 1, "r": 2, "protocol": {"kind": "universal", "kk": 1},
                            "sweep": {"d": [4], "n": [4], "p": [2]}})")
                .find("'protocol.kk'"),
            std::string::npos);
  EXPECT_NE(field_error(R"({"base_seed": 1, "r": 2, "protocol": {"kind": "nope"},
                            "sweep": {"d": [4], "n": [4], "p": [2]}})")
                .find("'protocol.kind'"),
            std::string::npos);
  EXPECT_NE(field_error(R"({"base_seed": 1, "r": 2, "protocol": {"kind": "universal"},
                            "sweep": {"d": [4, 99], "n": [4], "p": [2]}})")
                .find("'sweep.d[1]'"),
            std::string::npos);
  EXPECT_NE(field_error(R"({"base_seed": 1, "r": 2, "protocol": {"kind": "ball-covering", "delta": 1.5},
                            "sweep": {"d": [4], "n": [4], "p": [2]}})")
                .find("'protocol.delta'"),
            std::string::npos);
}

TEST(Config, SyntaxErrorsCarryLineNumbers) {
  try {
    parse_config("{\n  \"base_seed\": 1,\n  \"r\": ,\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Run, EmptySweepWritesHeaderOnly) {
  const auto dir = scratch("empty");
  const fs::path cfg = dir / "c.json";
  std::ofstream(cfg) << R"({"base_seed": 1, "r": 1, "protocol": {"kind": "universal"},
                            "sweep": {"d": [], "n": [8], "p": [3]}})";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(cfg.string(), 1, (dir / "out").string(), out, err), 0) << err.str();
  std::string header;
  for (std::size_t i = 0; i < csv_columns().size(); ++i) header += (i ? "," : "") + csv_columns()[i];
  EXPECT_EQ(slurp(dir / "out" / "results.csv"), header + "\n");
}

TEST(Run, RepeatedRunsAreByteIdentical) {
  const auto dir = scratch("determinism");
  const fs::path cfg = dir / "c.json";
  std::ofstream(cfg) << kConfig;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(cfg.string(), 1, (dir / "a").string(), out, err), 0) << err.str();
  ASSERT_EQ(cmd_run(cfg.string(), 3, (dir / "b").string(), out, err), 0) << err.str();
  EXPECT_EQ(slurp(dir / "a" / "results.csv"), slurp(dir / "b" / "results.csv"));
  EXPECT_EQ(slurp(dir / "a" / "summary.json"), slurp(dir / "b" / "summary.json"));
  EXPECT_NE(slurp(dir / "a" / "results.csv").find("ball-covering,hard,10,60,4,4,2,"), std::string::npos);
}

TEST(Run, BadConfigAndUnwritableOutput) {
  const auto dir = scratch("errors");
  std::ofstream(dir / "bad.json") << "{";
  std::ofstream(dir / "good.json") << kConfig;
  std::ofstream(dir / "file") << "x";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run((dir / "bad.json").string(), 1, (dir / "o").string(), out, err), 2);
  EXPECT_EQ(cmd_run((dir / "good.json").string(), 1, (dir / "file" / "sub").string(), out, err), 3);
}

TEST(Run, InvalidPointsAreSkipped) {
  const auto cfg = parse_config(R"({"base_seed": 1, "r": 2, "trials": 1, "protocol": {"kind": "ball-covering", "delta": 0.5},
                                    "sweep": {"d": [10], "n": [8, 60], "p": [4]}})");
  std::ostringstream log;
  const auto res = execute(cfg, 1, log);
  EXPECT_EQ(res.rows.size(), 1u);
  EXPECT_EQ(res.skipped.size(), 1u);
  EXPECT_NE(log.str().find("skip: d=10 n=8 p=4"), std::string::npos);
}

TEST(Oracle, EmptyFileAndHandExample) {
  const auto dir = scratch("oracle");
  std::ofstream(dir / "empty.txt") << "";
  std::ofstream(dir / "header.txt") << "d=4\n";
  std::ofstream(dir / "three.txt") << "d=4\n0000\n0011\n0111\n";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_oracle((dir / "empty.txt").string(), 2, out, err), 0);
  EXPECT_EQ(cmd_oracle((dir / "header.txt").string(), 2, out, err), 0);
  EXPECT_EQ(out.str(), "");
  EXPECT_EQ(cmd_oracle((dir / "three.txt").string(), 2, out, err), 0);
  EXPECT_EQ(out.str(), "0000 0011\n0011 0111\n");
}

TEST(Oracle, MatchesTotalPairs) {
  const auto dir = scratch("oracle_pairs");
  const PointSet S = sample_uniform(80, 8, 3, 0);
  std::ofstream f(dir / "s.txt");
  write_point_set(f, S);
  f.close();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_oracle((dir / "s.txt").string(), 2, out, err), 0);
  std::size_t lines = 0;
  for (char c : out.str()) lines += c == '\n';
  const auto m = run_trial(draw(make_universal(8, 3, 1), 0), S, 2);
  EXPECT_EQ(lines, m.total_pairs);
}

TEST(Oracle, ParseErrorNamesLine) {
  const auto dir = scratch("oracle_bad");
  std::ofstream(dir / "bad.txt") << "d=4\n0000\n00x1\n";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_oracle((dir / "bad.txt").string(), 1, out, err), 2);
  EXPECT_NE(err.str().find("line 3"), std::string::npos);
}

TEST(Verify, UnknownIdIsUsageError) {
  VerifyOptions o;
  o.scope = {"ball-ratio", "nonsense"};
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(o, out, err), kUsageError);
  EXPECT_NE(err.str().find("nonsense"), std::string::npos);
}

TEST(Verify, BallRatioScopePasses) {
  VerifyOptions o;
  o.scope = {"ball-ratio"};
  o.limits.max_d = 20;
  o.quiet = true;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(o, out, err), 0);
  EXPECT_NE(out.str().find("fail=0"), std::string::npos);
}

TEST(Verify, ReportsAreDeterministic) {
  const auto dir = scratch("verify");
  VerifyOptions o;
  o.scope = {"pruning", "max-to-er"};
  o.limits.max_d = 10;
  o.quiet = true;
  std::ostringstream out, err;
  o.report_path = (dir / "a.txt").string();
  o.json_path = (dir / "a.json").string();
  cmd_verify(o, out, err);
  o.report_path = (dir / "b.txt").string();
  o.json_path = (dir / "b.json").string();
  cmd_verify(o, out, err);
  EXPECT_EQ(slurp(dir / "a.txt"), slurp(dir / "b.txt"));
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
}

TEST(Cli, UnknownSubcommandAndScope) {
  const std::string cli = SIMJOIN_CLI;
  EXPECT_NE(std::system((cli + " frobnicate > /dev/null 2>&1").c_str()), 0);
  EXPECT_NE(std::system((cli + " verify --scope bogus > /dev/null 2>&1").c_str()), 0);
  EXPECT_EQ(std::system((cli + " verify --scope lk-bound --max-d 8 --quiet > /dev/null 2>&1").c_str()), 0);
}

TEST(Cli, DrawDumpsSets) {
  const auto dir = scratch("cli_draw");
  const std::string cmd = std::string(SIMJOIN_CLI) + " draw --protocol ball-hashing-2 --d 6 --r 2 --p 3 --seed 1 --out " +
                          (dir / "sets").string() + " > /dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir / "sets" / "A_2"));
}
