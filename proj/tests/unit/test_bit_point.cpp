#include <gtest/gtest.h>

#include <random>

#include "simjoin/bit_point.hpp"
#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"

using namespace simjoin;

namespace {

int coordinate_distance(const BitPoint& u, const BitPoint& v) {
  int dist = 0;
  for (int i = 0; i < u.dim(); ++i) dist += u.coordinate(i) != v.coordinate(i);
  return dist;
}

}  // namespace

TEST(BitPoint, DistanceMatchesCoordinateLoop) {
  std::mt19937_64 gen(7);
  for (int d : {1, 17, 32, 63, 64}) {
    for (int t = 0; t < 1000; ++t) {
      const BitPoint u(gen() & dim_mask(d), d), v(gen() & dim_mask(d), d);
      ASSERT_EQ(hamming_distance(u, v), coordinate_distance(u, v));
    }
  }
}

TEST(BitPoint, DistanceAxioms) {
  const BitPoint a(0b1010, 4), b(0b0110, 4), c(0b0001, 4);
  EXPECT_EQ(hamming_distance(a, a), 0);
  EXPECT_EQ(hamming_distance(a, b), hamming_distance(b, a));
  EXPECT_LE(hamming_distance(a, c), hamming_distance(a, b) + hamming_distance(b, c));
  EXPECT_EQ(hamming_distance(BitPoint(0, 64), BitPoint(~0ULL, 64)), 64);
}

TEST(BitPoint, RejectsBadInput) {
  EXPECT_THROW(BitPoint(0, 0), std::invalid_argument);
  EXPECT_THROW(BitPoint(0, 65), std::invalid_argument);
  EXPECT_THROW(BitPoint(0b10000, 4), std::invalid_argument);
  EXPECT_THROW(hamming_distance(BitPoint(0, 3), BitPoint(0, 4)), DimensionMismatch);
  EXPECT_THROW(BitPoint(1, 3) ^ BitPoint(1, 4), DimensionMismatch);
}

TEST(BitPoint, TextRoundTrip) {
  const BitPoint p(0b0011, 4);
  EXPECT_EQ(p.to_string(), "0011");
  EXPECT_EQ(BitPoint::parse("0011"), p);
  EXPECT_EQ(BitPoint::parse("1000").bits(), 8u);
  EXPECT_EQ(BitPoint::parse("1000").weight(), 1);
  EXPECT_THROW(BitPoint::parse("10a1"), std::invalid_argument);
  EXPECT_THROW(BitPoint::parse(""), std::invalid_argument);
}

TEST(PointSet, SortsAndDeduplicates) {
  const PointSet s(4, {5, 1, 5, 3, 1});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.words()[0], 1u);
  EXPECT_EQ(s.words()[2], 5u);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_THROW(PointSet(3, {8}), std::invalid_argument);
}

TEST(PointSet, FromPointsChecksDimension) {
  const std::vector<BitPoint> pts = {BitPoint(1, 3), BitPoint(1, 4)};
  EXPECT_THROW(PointSet::from_points(3, pts), DimensionMismatch);
  const std::vector<BitPoint> ok = {BitPoint(2, 3), BitPoint(1, 3)};
  EXPECT_EQ(PointSet::from_points(3, ok), PointSet(3, {1, 2}));
}

TEST(PointSet, TranslationPreservesDistances) {
  const PointSet s(6, {0, 3, 17, 42});
  const PointSet t = s.translated(0b101101);
  ASSERT_EQ(t.size(), s.size());
  EXPECT_EQ(pair_distance_histogram(s, 6), pair_distance_histogram(t, 6));
}
