#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "simjoin/bit_point.hpp"
#include "simjoin/hypercube.hpp"

namespace simjoin {

inline constexpr int kTupleMaxDim = 20;
inline constexpr std::size_t kPruneMaxTotal = std::size_t{1} << 22;

/// x was dropped from set `from` because no pair {x, y} was first covered there.
struct Removal {
  std::uint64_t point;
  int from;
};

struct PrunedTuple {
  int d = 0;
  int r = 0;
  std::vector<PointSet> sets;
  std::vector<Removal> removed;

  /// w(x) = number of sets containing x.
  std::uint64_t multiplicity(std::uint64_t x) const;
  std::uint64_t max_multiplicity() const;
};

/// Keeps x in A_i only when A_i is the first set containing some pair {x, y}
/// with 0 < dist(x, y) <= r. Guarded at d <= 20 and a total size of 2^22.
PrunedTuple prune(std::span<const PointSet> tuple, int r);

/// Distinct pairs u < v with dist(u, v) <= r lying together in some set,
/// in canonical order.
std::vector<PointPair> covered_pairs(std::span<const PointSet> tuple, int r);

/// Exact sizes of the edge unions over a tuple.
struct EdgeUnion {
  std::uint64_t loops = 0;                 // points in at least one set
  std::vector<std::uint64_t> by_distance;  // [s] for s = 1..r, index 0 unused
  std::uint64_t at_most() const;           // loops + all distinct pairs
  std::uint64_t exact(int s) const { return by_distance.at(static_cast<std::size_t>(s)); }
};

/// |∪_i E_s(A_i)| for every s <= r. Guarded at d <= 20.
EdgeUnion edge_union(std::span<const PointSet> tuple, int r);

}  // namespace simjoin
