#include <gtest/gtest.h>

#include <random>
#include <set>

#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"

using namespace simjoin;

namespace {

std::uint64_t naive_pairs(const PointSet& A, int lo, int hi) {
  std::uint64_t n = 0;
  const auto w = A.words();
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i; j < w.size(); ++j) {
      int dist = 0;
      for (int c = 0; c < A.dim(); ++c) dist += ((w[i] >> c) & 1) != ((w[j] >> c) & 1);
      n += dist >= lo && dist <= hi;
    }
  }
  return n;
}

PointSet random_set(int d, double density, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution keep(density);
  std::vector<std::uint64_t> words;
  for (std::uint64_t x = 0; x < (1ULL << d); ++x) {
    if (keep(gen)) words.push_back(x);
  }
  return PointSet(d, words);
}

}  // namespace

TEST(Ball, EnumerationMatchesDistanceScan) {
  for (int d = 1; d <= 10; ++d) {
    for (int k = 0; k <= d; ++k) {
      const std::uint64_t center = (0x5a5aULL * static_cast<std::uint64_t>(d)) & dim_mask(d);
      const PointSet ball = enumerate_ball(BitPoint(center, d), k);
      ASSERT_EQ(ball.size(), static_cast<std::size_t>(ball_volume(d, k)));
      for (std::uint64_t x = 0; x < (1ULL << d); ++x) {
        ASSERT_EQ(ball.contains(x), word_distance(x, center) <= k);
      }
    }
  }
  EXPECT_THROW(enumerate_ball(BitPoint(0, 4), 5), std::invalid_argument);
}

TEST(Ball, MaskEnumerationCountsBinomials) {
  for (int d = 1; d <= 12; ++d) {
    for (int w = 0; w <= d; ++w) {
      std::set<std::uint64_t> seen;
      for_each_mask_of_weight(d, w, [&](std::uint64_t m) {
        EXPECT_EQ(std::popcount(m), w);
        seen.insert(m);
      });
      ASSERT_EQ(seen.size(), static_cast<std::size_t>(binomial(d, w)));
    }
  }
}

TEST(EdgeCounts, HandExamples) {
  EXPECT_EQ(edge_count_at_most(PointSet(4, {3}), 2), 1u);
  EXPECT_EQ(edge_count_at_most(enumerate_ball(BitPoint(0, 4), 1), 1), 9u);
  EXPECT_EQ(edge_count_at_most(full_cube(3), 1), 20u);
  EXPECT_EQ(edge_count_exact(full_cube(3), 1), 12u);
  EXPECT_EQ(edge_count_exact(PointSet(4, {3}), 1), 0u);
  EXPECT_EQ(edge_density(full_cube(3), 1, EdgeMode::AtMost), Rational(5, 2));
  EXPECT_THROW(edge_count_exact(full_cube(3), 0), std::invalid_argument);
}

TEST(EdgeCounts, MatchNaiveScan) {
  for (int d : {4, 6, 8}) {
    for (double density : {0.1, 0.5, 0.9}) {
      const PointSet A = random_set(d, density, static_cast<std::uint64_t>(d * 100 + density * 10));
      for (int r = 1; r <= d; ++r) {
        ASSERT_EQ(edge_count_at_most(A, r), naive_pairs(A, 0, r));
        ASSERT_EQ(edge_count_exact(A, r), naive_pairs(A, r, r));
      }
      const auto hist = pair_distance_histogram(A, d);
      EXPECT_EQ(hist[0], A.size());
    }
  }
}

TEST(EdgeCounts, CubeClosedForms) {
  for (int d = 1; d <= 9; ++d) {
    const PointSet cube = full_cube(d);
    for (int r = 0; r <= d; ++r) {
      ASSERT_EQ(cube_edge_count_at_most(d, r), naive_pairs(cube, 0, r));
      if (r >= 1) {
        ASSERT_EQ(cube_edge_count_exact(d, r), naive_pairs(cube, r, r));
      }
    }
  }
  EXPECT_EQ(cube_edge_count_at_most(40, 3), (u128{1} << 39) * (ball_volume(40, 3) - 1) + (u128{1} << 40));
}

TEST(EdgeCounts, BallClosedForms) {
  for (int d = 1; d <= 9; ++d) {
    for (int k = 0; k <= d; ++k) {
      const PointSet ball = enumerate_ball(BitPoint(0, d), k);
      for (int r = 0; r <= d; ++r) {
        ASSERT_EQ(ball_edge_count_at_most(d, k, r), naive_pairs(ball, 0, r)) << d << " " << k << " " << r;
        if (r >= 1) {
          ASSERT_EQ(ball_edge_count_exact(d, k, r), naive_pairs(ball, r, r));
        }
      }
    }
  }
}

TEST(Join, MatchesNaivePairsInCanonicalOrder) {
  const PointSet S = random_set(9, 0.2, 99);
  for (int r = 0; r <= 4; ++r) {
    std::vector<PointPair> expect;
    for (auto u : S) {
      for (auto v : S) {
        if (u < v && std::popcount(u ^ v) <= r) expect.push_back({u, v});
      }
    }
    std::sort(expect.begin(), expect.end());
    ASSERT_EQ(brute_force_join(S, r), expect);
  }
  EXPECT_TRUE(brute_force_join(PointSet(5), 2).empty());
}

TEST(Join, HandCheckedDistances) {
  // 0000-0011 distance 2, 0000-0111 distance 3, 0011-0111 distance 1
  const PointSet S(4, {0b0000, 0b0011, 0b0111});
  const auto pairs = brute_force_join(S, 2);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0], (PointPair{0b0000, 0b0011}));
  EXPECT_EQ(pairs[1], (PointPair{0b0011, 0b0111}));
}

TEST(PointIndexTest, AgreesWithSet) {
  for (int d : {6, 30}) {
    std::mt19937_64 gen(3);
    std::vector<std::uint64_t> words;
    for (int i = 0; i < 40; ++i) words.push_back(gen() & dim_mask(d));
    const PointSet s(d, words);
    const PointIndex idx(s);
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t x = i < 40 ? words[static_cast<std::size_t>(i)] : gen() & dim_mask(d);
      ASSERT_EQ(idx.contains(x), s.contains(x));
    }
  }
}

TEST(BallRatio, SmallSweepPasses) {
  for (int d = 2; d <= 20; ++d) {
    for (int R = 2; 2 * R <= d + 1; ++R) {
      for (int r = 1; r < R; ++r) ASSERT_TRUE(ball_ratio_check(d, R, r).passed()) << d << " " << R << " " << r;
    }
  }
  EXPECT_THROW(ball_ratio_check(10, 7, 1), std::invalid_argument);
}
