#pragma once

#include <cstdint>

#include "simjoin/bit_point.hpp"

namespace simjoin {

inline constexpr int kGreedyCodeMaxDim = 16;
inline constexpr int kCodeVerifyMaxDim = 20;

/// A set of code points such that every vertex of {0,1}^d lies within
/// distance r of some code point.
class CoveringCode {
 public:
  /// Verifies the covering property exhaustively when d <= 20 and throws
  /// PreconditionError if it fails.
  CoveringCode(int d, int r, PointSet points);

  int d() const noexcept { return d_; }
  int r() const noexcept { return r_; }
  const PointSet& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  int d_;
  int r_;
  PointSet points_;
};

/// Exhaustive check that every vertex is within distance r of `points`.
bool covers_cube(const PointSet& points, int r);

/// Visits the cube in a seeded random order and keeps every vertex not yet
/// within distance r of a kept one. Guarded at d <= 16.
CoveringCode greedy_covering_code(int d, int r, std::uint64_t seed);

}  // namespace simjoin
