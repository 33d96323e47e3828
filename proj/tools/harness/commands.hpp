#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "suites.hpp"

namespace simjoin::harness {

struct VerifyOptions {
  std::vector<std::string> scope;  // empty or {"all"} runs every check
  SuiteLimits limits;
  std::string report_path;  // text report; empty writes nothing
  std::string json_path;
  bool quiet = false;       // suppress per-check lines on stdout
};

/// Exit 0 iff no check fails; 64 on an unknown check id; 3 on a write failure.
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

/// Prints the r-neighbour pairs of the set in `input_path`. Exit 2 on a parse error.
int cmd_oracle(const std::string& input_path, int r, std::ostream& out, std::ostream& err);

struct DrawOptions {
  std::string protocol;
  int d = 0;
  int r = 1;
  int k = -1;
  int p = 1;
  double delta = 0.9;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::string grid = "prefix";
  std::string out_dir;
};

/// Writes A_0 ... A_{p-1} of one draw as point-set files.
int cmd_draw(const DrawOptions& opts, std::ostream& out, std::ostream& err);

inline constexpr int kUsageError = 64;

}  // namespace simjoin::harness
