#include "simjoin/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"

namespace simjoin {

namespace {

bool share_processor(const int* a, const int* a_end, const int* b, const int* b_end) {
  while (a != a_end && b != b_end) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

double interpolate(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double leading_term(int d, int r, int k, double delta) {
  const int h = ceil_half(r);
  const double ratio = h == 0 ? 1.0 : std::pow(static_cast<double>(d) / k, h);
  return 6.0 * std::ldexp(1.0, h) * -std::log1p(-delta) * ratio;
}

}  // namespace

double TrialMetrics::coverage_value() const { return coverage ? to_double(*coverage) : 1.0; }

TrialMetrics run_trial(const CoveringDraw& draw, const PointSet& S, int r) {
  if (S.empty()) throw PreconditionError("run_trial: empty input set");
  if (S.dim() != draw.sampler().dim()) {
    throw DimensionMismatch("run_trial: input dimension " + std::to_string(S.dim()) + ", protocol dimension " +
                            std::to_string(draw.sampler().dim()));
  }
  const int p = draw.processors();
  TrialMetrics m;
  m.trial_index = draw.trial_index();
  m.draw_seed = draw.seed();
  m.n = S.size();
  m.p = p;
  m.loads.assign(static_cast<std::size_t>(p), 0);

  // Processor lists for every point, stored back to back.
  std::vector<std::size_t> offsets{0};
  offsets.reserve(S.size() + 1);
  std::vector<int> flat;
  std::vector<int> procs;
  std::uint64_t replication_total = 0;
  for (auto x : S) {
    draw.assign_into(x, procs);
    for (int i : procs) ++m.loads[static_cast<std::size_t>(i)];
    flat.insert(flat.end(), procs.begin(), procs.end());
    offsets.push_back(flat.size());
    const std::size_t c = procs.size();
    if (m.replication_histogram.size() <= c) m.replication_histogram.resize(c + 1, 0);
    ++m.replication_histogram[c];
    m.max_replication = std::max<std::uint64_t>(m.max_replication, c);
    replication_total += c;
  }
  m.mean_replication = static_cast<double>(replication_total) / static_cast<double>(S.size());
  m.max_load = *std::max_element(m.loads.begin(), m.loads.end());
  m.overhead = Rational(BigInt(m.max_load) * p, BigInt(S.size()));
  m.overhead_value = to_double(m.overhead);

  const auto words = S.words();
  auto index_of = [&](std::uint64_t w) {
    return static_cast<std::size_t>(std::lower_bound(words.begin(), words.end(), w) - words.begin());
  };
  for (const auto& pair : brute_force_join(S, r)) {
    ++m.total_pairs;
    const std::size_t a = index_of(pair.u);
    const std::size_t b = index_of(pair.v);
    if (share_processor(flat.data() + offsets[a], flat.data() + offsets[a + 1], flat.data() + offsets[b],
                        flat.data() + offsets[b + 1])) {
      ++m.covered_pairs;
    }
  }
  if (m.total_pairs > 0) m.coverage = Rational(BigInt(m.covered_pairs), BigInt(m.total_pairs));
  return m;
}

double theorem_bound(int d, int r, int k, int p, double delta) {
  return std::max(leading_term(d, r, k, delta), 9.0 * std::log2(static_cast<double>(p)));
}

double replication_bound(int d, int r, int k, double delta) {
  return 7.0 * std::max(d * std::log(2.0), leading_term(d, r, k, delta));
}

OverheadSummary estimate_overhead(const CoveringSampler& sampler, const InputGenerator& generator, int r,
                                  std::uint64_t trials, unsigned jobs, bool keep_trials) {
  if (trials < 1) throw PreconditionError("estimate_overhead: trials must be at least 1");
  if (generator.d() != sampler.dim()) throw DimensionMismatch("generator and protocol dimensions differ");

  std::vector<std::optional<TrialMetrics>> results(trials);
  parallel_for(trials, jobs, [&](std::uint64_t t) {
    const GeneratedInput input = generator.generate(t);
    if (input.set.empty()) return;
    results[t] = run_trial(draw(sampler, t), input.set, r);
  });

  OverheadSummary s;
  s.trials_requested = trials;
  if (const auto* bp = std::get_if<BallCoveringParams>(&sampler.params())) {
    s.theorem_bound = theorem_bound(bp->d, bp->r, bp->k, bp->p, bp->delta);
    s.replication_bound = replication_bound(bp->d, bp->r, bp->k, bp->delta);
  }

  std::vector<double> overheads, coverages;
  double n_total = 0.0, max_load_total = 0.0, replication_total = 0.0;
  std::uint64_t all_covered = 0, overhead_exceed = 0, replication_exceed = 0;
  for (auto& slot : results) {
    if (!slot) {
      ++s.skipped_empty;
      continue;
    }
    const TrialMetrics& m = *slot;
    ++s.trials_run;
    overheads.push_back(m.overhead_value);
    n_total += static_cast<double>(m.n);
    max_load_total += static_cast<double>(m.max_load);
    replication_total += m.mean_replication;
    s.max_replication = std::max(s.max_replication, m.max_replication);
    if (m.coverage) coverages.push_back(m.coverage_value());
    if (m.all_covered()) ++all_covered;
    if (s.theorem_bound && m.overhead_value > *s.theorem_bound) ++overhead_exceed;
    if (s.replication_bound && static_cast<double>(m.max_replication) > *s.replication_bound) ++replication_exceed;
    if (keep_trials) s.trials.push_back(std::move(*slot));
  }
  if (s.trials_run == 0) return s;

  const auto runs = static_cast<double>(s.trials_run);
  s.mean_n = n_total / runs;
  s.n_over_p = s.mean_n / sampler.processors();
  s.max_load_mean = max_load_total / runs;
  s.mean_replication = replication_total / runs;
  mean_std(overheads, s.overhead_mean, s.overhead_std);
  std::sort(overheads.begin(), overheads.end());
  s.overhead = {overheads.front(), interpolate(overheads, 0.1), interpolate(overheads, 0.5),
                interpolate(overheads, 0.9), overheads.back()};
  s.coverage_trials = coverages.size();
  mean_std(coverages, s.coverage_mean, s.coverage_std);
  if (coverages.empty()) s.coverage_mean = 1.0;
  s.all_covered_fraction = static_cast<double>(all_covered) / runs;
  s.overhead_exceedance_rate = static_cast<double>(overhead_exceed) / runs;
  s.replication_exceedance_rate = static_cast<double>(replication_exceed) / runs;
  return s;
}

}  // namespace simjoin
