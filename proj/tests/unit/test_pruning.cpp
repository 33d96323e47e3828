#include <gtest/gtest.h>

#include <random>
#include <set>

#include "simjoin/hypercube.hpp"
#include "simjoin/pruning.hpp"

using namespace simjoin;

namespace {

std::vector<PointSet> random_tuple(int d, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_real_distribution<double> dens(0.05, 0.6);
  const int p = count(gen);
  std::vector<PointSet> sets;
  for (int i = 0; i < p; ++i) {
    const double rho = dens(gen);
    std::bernoulli_distribution keep(rho);
    std::vector<std::uint64_t> w;
    for (std::uint64_t x = 0; x < (1ULL << d); ++x) {
      if (keep(gen)) w.push_back(x);
    }
    sets.emplace_back(d, w);
  }
  return sets;
}

std::set<std::pair<std::uint64_t, std::uint64_t>> naive_covered(const std::vector<PointSet>& sets, int r) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& A : sets) {
    for (auto u : A) {
      for (auto v : A) {
        if (u < v && std::popcount(u ^ v) <= r) out.emplace(u, v);
      }
    }
  }
  return out;
}

}  // namespace

TEST(Pruning, HandExample) {
  // {0,1} is covered by the first set, so the copies in the second set are redundant
  const std::vector<PointSet> t = {PointSet(3, {0, 1}), PointSet(3, {0, 1, 7})};
  const auto pr = prune(t, 1);
  EXPECT_EQ(pr.sets[0], PointSet(3, {0, 1}));
  EXPECT_TRUE(pr.sets[1].empty());
  EXPECT_EQ(pr.removed.size(), 3u);
  EXPECT_EQ(pr.max_multiplicity(), 1u);
}

TEST(Pruning, RandomTuplesKeepPairsAndBoundMultiplicity) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 150; ++trial) {
    const int d = 3 + trial % 6;
    const int r = 1 + trial % 3;
    const auto t = random_tuple(d, gen);
    const auto pr = prune(t, r);
    ASSERT_EQ(naive_covered(pr.sets, r), naive_covered(t, r));
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (auto x : pr.sets[i]) ASSERT_TRUE(t[i].contains(x));
    }
    for (std::uint64_t x = 0; x < (1ULL << d); ++x) {
      std::uint64_t w = 0;
      for (const auto& A : pr.sets) w += A.contains(x);
      ASSERT_EQ(pr.multiplicity(x), w);
      ASSERT_LE(static_cast<u128>(w), ball_volume(d, r) - 1);
    }
  }
}

TEST(CoveredPairs, CanonicalAndDistinct) {
  const std::vector<PointSet> t = {PointSet(4, {0, 1, 3}), PointSet(4, {1, 3, 7})};
  const auto pairs = covered_pairs(t, 1);
  const std::vector<PointPair> expect = {{0, 1}, {1, 3}, {3, 7}};
  EXPECT_EQ(pairs, expect);
}

TEST(EdgeUnionTest, MatchesNaiveCounts) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 4 + trial % 4;
    const int r = 1 + trial % 3;
    const auto t = random_tuple(d, gen);
    const auto eu = edge_union(t, r);
    std::set<std::uint64_t> points;
    for (const auto& A : t) points.insert(A.begin(), A.end());
    EXPECT_EQ(eu.loops, points.size());
    const auto pairs = naive_covered(t, r);
    for (int s = 1; s <= r; ++s) {
      std::uint64_t n = 0;
      for (const auto& [u, v] : pairs) n += std::popcount(u ^ v) == s;
      EXPECT_EQ(eu.exact(s), n);
    }
    EXPECT_EQ(eu.at_most(), points.size() + pairs.size());
  }
}
