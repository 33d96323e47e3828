#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simjoin/bit_point.hpp"
#include "simjoin/report.hpp"

namespace simjoin::harness {

struct SuiteLimits {
  int max_d = 64;
  std::uint64_t seed = 20240611;
  std::uint64_t samples = 2000;  // Monte Carlo samples per instance
};

/// Every check id accepted by run_suite, in report order.
const std::vector<std::string>& check_ids();
bool is_check_id(const std::string& id);

/// Runs one family of checks over its built-in instance set, capped by limits.
VerificationReport run_suite(const std::string& id, const SuiteLimits& limits);

struct PathInstance {
  std::string label;
  PointSet set;
  int R;
  int r;
  int b;
};

/// Random subsets, balls, subcubes and full cubes at d in {6, 8, 10} with
/// R/r in {2, 3} and every admissible b.
std::vector<PathInstance> path_instances(const SuiteLimits& limits);

struct TupleInstance {
  std::string label;
  std::vector<PointSet> sets;
};

/// Explicit small tuples used by the pruning, max-to-er and edge-sampling checks.
std::vector<TupleInstance> random_tuples(int d, int r, int count, std::uint64_t seed);

}  // namespace simjoin::harness
