#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "simjoin/covering.hpp"
#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/point_io.hpp"

using namespace simjoin;

namespace {

bool share(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

// Every pair of the cube within distance r must share a processor.
std::uint64_t uncovered_cube_pairs(const CoveringDraw& dr, int d, int r) {
  std::vector<std::vector<int>> procs(std::size_t{1} << d);
  for (std::uint64_t x = 0; x < procs.size(); ++x) procs[x] = dr.assign(BitPoint(x, d));
  std::uint64_t bad = 0;
  for (std::uint64_t x = 0; x < procs.size(); ++x) {
    for_each_in_ball(x, d, r, [&](std::uint64_t y) {
      if (x < y && !share(procs[x], procs[y])) ++bad;
    });
  }
  return bad;
}

}  // namespace

TEST(Protocols, ParseNames) {
  for (auto k : {ProtocolKind::BallCovering, ProtocolKind::Universal, ProtocolKind::BallHashing2,
                 ProtocolKind::SubcubeSplitting, ProtocolKind::AnchorPoints}) {
    EXPECT_EQ(parse_protocol_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_protocol_kind("lsh"), std::invalid_argument);
  EXPECT_EQ(parse_subcube_grid("segments"), SubcubeGrid::Segments);
}

TEST(BallCovering, ParametersFollowEdgeRatio) {
  const auto s = make_ball_covering(12, 2, 2, 8, 0.9, 1);
  const auto& bp = s.as<BallCoveringParams>();
  EXPECT_TRUE(bp.ell_k_exact);
  // ell_k from independent enumeration of both edge sets
  const PointSet ball = enumerate_ball(BitPoint(0, 12), 2);
  const Rational ell(BigInt(edge_count_at_most(full_cube(12), 2)), BigInt(edge_count_at_most(ball, 2)));
  EXPECT_EQ(bp.ell_k, ell);
  const double per = std::ceil(to_double(ell) / 8.0);
  EXPECT_EQ(bp.balls_per_processor, static_cast<std::uint64_t>(std::ceil(std::log(10.0) * per)));
  EXPECT_EQ(draw(s, 0).centers().size(), bp.total_balls());
}

TEST(BallCovering, UpperBoundAboveExactRange) {
  const auto s = make_ball_covering(24, 2, 4, 64, 0.5, 1);
  EXPECT_FALSE(s.as<BallCoveringParams>().ell_k_exact);
}

TEST(BallCovering, RejectsBadParameters) {
  EXPECT_THROW(make_ball_covering(10, 4, 1, 4, 0.9, 1), std::invalid_argument);
  EXPECT_THROW(make_ball_covering(10, 2, 1, 4, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(make_ball_covering(10, 2, 1, 0, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(make_ball_covering(40, 2, 1, 2, 0.999999, 1), GuardExceeded);
}

TEST(BallCovering, MaxRadiusForLoad) {
  EXPECT_EQ(max_ball_radius_for_load(12, 2, 1024, 8), 2);  // B(12,2)=79 <= 128 < B(12,3)=299
  EXPECT_EQ(max_ball_radius_for_load(12, 6, 1024, 8), -1);  // B(12,3) * 8 > 1024
}

TEST(Draw, Deterministic) {
  const auto s = make_ball_covering(10, 2, 2, 4, 0.9, 99);
  const auto a = draw(s, 3), b = draw(s, 3), c = draw(s, 4);
  EXPECT_TRUE(std::equal(a.centers().begin(), a.centers().end(), b.centers().begin(), b.centers().end()));
  EXPECT_FALSE(std::equal(a.centers().begin(), a.centers().end(), c.centers().begin(), c.centers().end()));
  for (std::uint64_t x = 0; x < 1024; x += 7) EXPECT_EQ(a.assign(BitPoint(x, 10)), b.assign(BitPoint(x, 10)));
}

TEST(Draw, CentersUniformChiSquare) {
  const auto s = make_ball_covering(8, 2, 2, 2, 0.5, 5);
  const int draws = 100000;
  std::vector<double> counts(256, 0.0);
  for (int t = 0; t < draws; ++t) counts[draw(s, static_cast<std::uint64_t>(t)).centers()[0]] += 1.0;
  const double expect = draws / 256.0;
  double chi = 0.0;
  for (double c : counts) chi += (c - expect) * (c - expect) / expect;
  // 255 degrees of freedom; the 0.999 quantile is about 330
  EXPECT_LT(chi, 330.0);
}

TEST(Draw, MaterializedSetsAreBallUnions) {
  const auto s = make_ball_covering(9, 2, 2, 3, 0.9, 11);
  const auto dr = draw(s, 0);
  const auto sets = dr.materialize();
  const auto centers = dr.centers();
  for (int i = 0; i < 3; ++i) {
    std::set<std::uint64_t> expect;
    for (std::size_t j = static_cast<std::size_t>(i); j < centers.size(); j += 3) {
      for (std::uint64_t x = 0; x < 512; ++x) {
        if (std::popcount(x ^ centers[j]) <= 2) expect.insert(x);
      }
    }
    EXPECT_EQ(sets[static_cast<std::size_t>(i)], PointSet(9, {expect.begin(), expect.end()}));
  }
}

TEST(Draw, AssignAgreesWithMaterializeAndIsNonEmpty) {
  std::vector<CoveringSampler> samplers = {
      make_ball_covering(8, 2, 1, 4, 0.5, 3), make_ball_covering(8, 2, 3, 4, 0.9, 3),
      make_universal(8, 10, 3), make_ball_hashing2(8, 2, 5, 3), make_subcube_splitting(8, 2, 4, 5, 3),
      make_subcube_splitting(8, 2, 3, 5, 3, SubcubeGrid::Segments),
      make_anchor_points(8, 1, 4, std::make_shared<const CoveringCode>(greedy_covering_code(8, 1, 3)), 3)};
  for (const auto& s : samplers) {
    const auto dr = draw(s, 2);
    const auto sets = dr.materialize(true);
    for (std::uint64_t x = 0; x < 256; ++x) {
      const auto procs = dr.assign(BitPoint(x, 8));
      ASSERT_FALSE(procs.empty());
      ASSERT_TRUE(std::is_sorted(procs.begin(), procs.end()));
      for (int i = 0; i < s.processors(); ++i) {
        const bool in = std::binary_search(procs.begin(), procs.end(), i);
        ASSERT_EQ(sets[static_cast<std::size_t>(i)].contains(x), in) << to_string(s.kind());
      }
    }
  }
  EXPECT_THROW(draw(samplers[0], 0).assign(BitPoint(0, 9)), DimensionMismatch);
}

TEST(Draw, RestrictToIntersects) {
  const auto dr = draw(make_ball_hashing2(7, 2, 4, 8), 0);
  const PointSet S(7, {1, 2, 3, 64, 100});
  const auto full = dr.materialize();
  const auto part = dr.restrict_to(S);
  for (std::size_t i = 0; i < part.size(); ++i) {
    for (auto x : S) EXPECT_EQ(part[i].contains(x), full[i].contains(x));
  }
}

TEST(BallCovering, PairCoverageAtLeastDelta) {
  const double delta = 0.8;
  const auto s = make_ball_covering(10, 2, 2, 4, delta, 17);
  const BitPoint u(0b0000000000, 10), v(0b0000000011, 10);
  const int trials = 1000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    const auto dr = draw(s, static_cast<std::uint64_t>(t));
    std::vector<int> a, b;
    for (std::size_t j = 0; j < dr.centers().size(); ++j) {
      if (std::popcount(dr.centers()[j] ^ u.bits()) <= 2) a.push_back(static_cast<int>(j % 4));
      if (std::popcount(dr.centers()[j] ^ v.bits()) <= 2) b.push_back(static_cast<int>(j % 4));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    hits += share(a, b);
  }
  const double sigma = std::sqrt(delta * (1 - delta) / trials);
  EXPECT_GE(hits / static_cast<double>(trials), delta - 3 * sigma);
}

TEST(Universal, PairsOfColours) {
  const auto s = make_universal(16, 7, 1);
  const auto& up = s.as<UniversalParams>();
  EXPECT_EQ(up.q, 5);
  EXPECT_EQ(up.p, 10);
  const auto dr = draw(s, 0);
  std::map<int, int> load;
  for (std::uint64_t x = 0; x < 200; ++x) {
    const auto procs = dr.assign(BitPoint((x * 977) & dim_mask(16), 16));
    EXPECT_EQ(procs.size(), 4u);
    for (int i : procs) ++load[i];
  }
  EXPECT_LE(load.size(), 10u);
}

TEST(ExactProtocols, CoverEveryCubePair) {
  for (int d : {6, 8}) {
    for (int r = 1; r <= 3; ++r) {
      const auto code = std::make_shared<const CoveringCode>(greedy_covering_code(d, r, 7));
      const std::vector<CoveringSampler> samplers = {
          make_universal(d, 6, 7), make_ball_hashing2(d, r, 6, 7), make_subcube_splitting(d, r, d / 2, 6, 7),
          make_subcube_splitting(d, r, 2, 6, 7, SubcubeGrid::Segments), make_anchor_points(d, r, 6, code, 7)};
      for (const auto& s : samplers) {
        EXPECT_EQ(uncovered_cube_pairs(draw(s, 1), d, r), 0u) << to_string(s.kind()) << " d=" << d << " r=" << r;
      }
    }
  }
}

TEST(Subcube, Guards) {
  EXPECT_THROW(make_subcube_splitting(10, 2, 10, 4, 1), std::invalid_argument);
  EXPECT_THROW(make_subcube_splitting(60, 8, 4, 4, 1), GuardExceeded);
  const auto s = make_subcube_splitting(12, 2, 3, 4, 1, SubcubeGrid::Segments);
  EXPECT_EQ(s.as<SubcubeSplittingParams>().segments, 4);
  EXPECT_EQ(s.as<SubcubeSplittingParams>().reducers_per_point, 6u);
}

TEST(Draw, DumpWritesOneFilePerProcessor) {
  const auto dir = std::filesystem::temp_directory_path() / "simjoin_dump_test";
  std::filesystem::remove_all(dir);
  const auto dr = draw(make_ball_covering(6, 2, 1, 3, 0.5, 2), 0);
  dump_draw(dr, dir);
  const auto sets = dr.materialize(true);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(read_point_set(dir / ("A_" + std::to_string(i))), sets[static_cast<std::size_t>(i)]);
  }
  std::filesystem::remove_all(dir);
}
