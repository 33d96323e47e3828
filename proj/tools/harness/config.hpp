#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "simjoin/covering.hpp"
#include "simjoin/inputs.hpp"

namespace simjoin::harness {

struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::BallCovering;
  std::optional<int> k;          // ball radius or subcube dimension; derived when absent
  std::optional<double> delta;   // ball-covering only
  SubcubeGrid grid = SubcubeGrid::Prefix;
  std::optional<std::uint64_t> code_seed;  // anchor-points; defaults to base_seed
};

struct SweepAxes {
  std::vector<int> d;
  std::vector<std::uint64_t> n;
  std::vector<int> p;
  std::vector<std::optional<int>> k;         // a single empty entry when absent
  std::vector<std::optional<double>> delta;  // a single empty entry when absent
};

struct OutputNames {
  std::string csv = "results.csv";
  std::string summary = "summary.json";
  std::string timing = "timing.csv";
};

struct ExperimentConfig {
  std::uint64_t base_seed = 0;
  int r = 1;
  std::uint64_t trials = 1;
  ProtocolSpec protocol;
  InputKind input = InputKind::Uniform;
  SweepAxes sweep;
  OutputNames output;
  nlohmann::json source;  // the parsed document, echoed into the summary
};

/// Parses and validates a config document. Errors are ParseError with the
/// offending field path (and line, for JSON syntax errors).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace simjoin::harness
