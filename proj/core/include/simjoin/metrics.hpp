#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "simjoin/combinatorics.hpp"
#include "simjoin/covering.hpp"
#include "simjoin/detail/parallel.hpp"
#include "simjoin/inputs.hpp"

namespace simjoin {

/// Outcome of one (draw, S) pair.
struct TrialMetrics {
  std::uint64_t trial_index = 0;
  std::uint64_t draw_seed = 0;
  std::uint64_t n = 0;
  int p = 0;
  std::vector<std::uint64_t> loads;  // |A_i ∩ S|
  std::uint64_t max_load = 0;
  Rational overhead;                 // max_i |A_i ∩ S| * p / |S|
  double overhead_value = 0.0;
  std::uint64_t covered_pairs = 0;   // distinct pairs at distance <= r sharing a processor
  std::uint64_t total_pairs = 0;
  std::optional<Rational> coverage;  // empty when total_pairs == 0
  std::vector<std::uint64_t> replication_histogram;  // [c] = points sent to exactly c processors
  std::uint64_t max_replication = 0;
  double mean_replication = 0.0;

  bool all_covered() const noexcept { return covered_pairs == total_pairs; }
  double coverage_value() const;
};

/// Loads through assign(draw, .) and exact pair coverage against the
/// brute-force join. Requires |S| >= 1.
TrialMetrics run_trial(const CoveringDraw& draw, const PointSet& S, int r);

struct Quantiles {
  double min = 0, q10 = 0, median = 0, q90 = 0, max = 0;
};

struct OverheadSummary {
  std::uint64_t trials_requested = 0;
  std::uint64_t trials_run = 0;
  std::uint64_t skipped_empty = 0;  // degenerate inputs with |S| == 0
  double mean_n = 0.0;
  double n_over_p = 0.0;
  double overhead_mean = 0.0;
  double overhead_std = 0.0;
  Quantiles overhead;
  double max_load_mean = 0.0;
  std::uint64_t coverage_trials = 0;  // trials with at least one close pair
  double coverage_mean = 0.0;
  double coverage_std = 0.0;
  double all_covered_fraction = 0.0;
  std::uint64_t max_replication = 0;
  double mean_replication = 0.0;
  std::optional<double> theorem_bound;      // ball-covering only
  std::optional<double> replication_bound;  // ball-covering only
  double overhead_exceedance_rate = 0.0;     // trials with overhead above theorem_bound
  double replication_exceedance_rate = 0.0;  // trials with max replication above replication_bound
  std::vector<TrialMetrics> trials;          // ordered by trial index
};

/// Trial t pairs draw(sampler, t) with generator.generate(t), so two
/// protocols run with the same generator see identical inputs. `jobs`
/// affects wall-clock only.
OverheadSummary estimate_overhead(const CoveringSampler& sampler, const InputGenerator& generator, int r,
                                  std::uint64_t trials, unsigned jobs = 1, bool keep_trials = true);

/// max{6 * 2^{ceil(r/2)} * ln(1/(1-delta)) * (d/k)^{ceil(r/2)}, 9 log2 p}
double theorem_bound(int d, int r, int k, int p, double delta);
/// 7 * max{d ln 2, 6 * 2^{ceil(r/2)} * ln(1/(1-delta)) * (d/k)^{ceil(r/2)}}
double replication_bound(int d, int r, int k, double delta);

}  // namespace simjoin
