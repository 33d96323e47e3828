#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/metrics.hpp"

using namespace simjoin;

TEST(RunTrial, LoadsAndCoverageMatchMaterializedSets) {
  const auto s = make_ball_covering(9, 2, 2, 4, 0.5, 21);
  const auto dr = draw(s, 0);
  const PointSet S = sample_uniform(120, 9, 2, 0);
  const auto m = run_trial(dr, S, 2);
  const auto sets = dr.materialize(true);

  std::uint64_t max_load = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::uint64_t load = 0;
    for (auto x : S) load += sets[i].contains(x);
    EXPECT_EQ(m.loads[i], load);
    max_load = std::max(max_load, load);
  }
  EXPECT_EQ(m.max_load, max_load);
  EXPECT_EQ(m.overhead, Rational(BigInt(max_load * 4), BigInt(120)));

  std::uint64_t total = 0, covered = 0;
  for (auto u : S) {
    for (auto v : S) {
      if (u >= v || std::popcount(u ^ v) > 2) continue;
      ++total;
      bool together = false;
      for (const auto& A : sets) together = together || (A.contains(u) && A.contains(v));
      covered += together;
    }
  }
  EXPECT_EQ(m.total_pairs, total);
  EXPECT_EQ(m.covered_pairs, covered);
  ASSERT_TRUE(m.coverage.has_value());
  EXPECT_EQ(*m.coverage, Rational(BigInt(covered), BigInt(total)));

  std::uint64_t points = 0;
  for (auto c : m.replication_histogram) points += c;
  EXPECT_EQ(points, 120u);
}

TEST(RunTrial, NoClosePairsLeavesCoverageUndefined) {
  const auto dr = draw(make_universal(6, 3, 1), 0);
  const auto m = run_trial(dr, PointSet(6, {0, 63}), 2);
  EXPECT_FALSE(m.coverage.has_value());
  EXPECT_TRUE(m.all_covered());
  EXPECT_THROW(run_trial(dr, PointSet(6), 2), std::invalid_argument);
  EXPECT_THROW(run_trial(dr, PointSet(7, {1}), 2), DimensionMismatch);
}

TEST(Universal, LoadEqualsColourClassSize) {
  const auto dr = draw(make_universal(12, 6, 2), 0);
  const PointSet S = sample_uniform(300, 12, 1, 0);
  const auto m = run_trial(dr, S, 3);
  EXPECT_TRUE(m.all_covered());
  EXPECT_EQ(m.max_replication, 3u);  // q = 4, every point joins q - 1 pair processors
}

TEST(Estimate, IndependentOfJobCount) {
  const auto s = make_ball_covering(10, 2, 1, 8, 0.9, 4);
  const InputGenerator g(InputKind::Hard, 100, 10, 2, 4);
  const auto a = estimate_overhead(s, g, 2, 12, 1);
  const auto b = estimate_overhead(s, g, 2, 12, 3);
  EXPECT_EQ(a.overhead_mean, b.overhead_mean);
  EXPECT_EQ(a.coverage_mean, b.coverage_mean);
  EXPECT_EQ(a.overhead.median, b.overhead.median);
  ASSERT_EQ(a.trials.size(), 12u);
  for (std::size_t t = 0; t < 12; ++t) EXPECT_EQ(a.trials[t].overhead, b.trials[t].overhead);
  ASSERT_TRUE(a.theorem_bound.has_value());
  EXPECT_DOUBLE_EQ(*a.theorem_bound, theorem_bound(10, 2, 1, 8, 0.9));
}

TEST(Estimate, QuantilesOfKnownTrials) {
  const auto s = make_universal(8, 3, 9);
  const InputGenerator g(InputKind::Uniform, 30, 8, 1, 9);
  const auto e = estimate_overhead(s, g, 1, 20);
  std::vector<double> v;
  for (const auto& t : e.trials) v.push_back(t.overhead_value);
  std::sort(v.begin(), v.end());
  EXPECT_EQ(e.overhead.min, v.front());
  EXPECT_EQ(e.overhead.max, v.back());
  EXPECT_DOUBLE_EQ(e.overhead.median, (v[9] + v[10]) / 2);
  EXPECT_EQ(e.all_covered_fraction, 1.0);
  EXPECT_FALSE(e.theorem_bound.has_value());
}

TEST(Bounds, HandValues) {
  // 6 * 2 * ln 10 * (12/2) = 165.8..., 9 log2 8 = 27
  EXPECT_NEAR(theorem_bound(12, 2, 2, 8, 0.9), 72 * std::log(10.0), 1e-9);
  EXPECT_NEAR(theorem_bound(12, 2, 12, 1 << 20, 0.5), 180.0, 1e-9);
  EXPECT_NEAR(replication_bound(12, 2, 2, 0.9), 7 * 72 * std::log(10.0), 1e-9);
  EXPECT_NEAR(replication_bound(64, 2, 64, 0.1), 7 * 64 * std::log(2.0), 1e-9);
}
