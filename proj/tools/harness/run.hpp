#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "config.hpp"
#include "simjoin/metrics.hpp"

namespace simjoin::harness {

struct SweepPoint {
  int d = 0;
  std::uint64_t n = 0;
  int p = 0;
  std::optional<int> k;
  std::optional<double> delta;
};

struct ResultRow {
  SweepPoint point;
  int p_actual = 0;
  std::optional<int> k;  // resolved value
  std::optional<double> delta;
  std::optional<std::uint64_t> balls_per_processor;
  std::optional<double> ell_k;
  OverheadSummary summary;
  double seconds = 0.0;  // wall-clock, kept out of deterministic artifacts
};

struct SkippedPoint {
  SweepPoint point;
  std::string reason;
};

struct RunResult {
  std::vector<ResultRow> rows;
  std::vector<SkippedPoint> skipped;
};

/// Sweep points in the fixed order d, n, p, k, delta.
std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg);

/// Runs every sweep point; points whose preconditions fail are skipped and
/// logged to `log`.
RunResult execute(const ExperimentConfig& cfg, unsigned jobs, std::ostream& log);

const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& out, const ExperimentConfig& cfg, const RunResult& result);
nlohmann::json summary_json(const ExperimentConfig& cfg, const RunResult& result);
void write_timing(std::ostream& out, const RunResult& result);

/// The version string recorded in summaries.
std::string version_string();

/// Loads the config, runs it and writes the CSV, JSON summary and timing
/// files into `out_dir`. Returns the process exit code.
int cmd_run(const std::string& config_path, unsigned jobs, const std::string& out_dir, std::ostream& out,
            std::ostream& err);

}  // namespace simjoin::harness
