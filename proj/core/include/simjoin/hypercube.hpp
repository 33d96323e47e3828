#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "simjoin/bit_point.hpp"
#include "simjoin/combinatorics.hpp"
#include "simjoin/report.hpp"

namespace simjoin {

inline constexpr int kEnumerationMaxDim = 24;
inline constexpr std::size_t kEdgeScanMaxSize = std::size_t{1} << 20;
inline constexpr std::size_t kJoinMaxSize = std::size_t{1} << 16;

int hamming_distance(const BitPoint& u, const BitPoint& v);
inline int word_distance(std::uint64_t u, std::uint64_t v) noexcept { return std::popcount(u ^ v); }

/// Calls f(mask) for every mask of exactly `weight` set bits among the low
/// `dim` bits, in colex order of the set positions.
template <class F>
void for_each_mask_of_weight(int dim, int weight, F&& f) {
  if (weight < 0 || weight > dim) return;
  if (weight == 0) {
    f(std::uint64_t{0});
    return;
  }
  int pos[64];
  for (int i = 0; i < weight; ++i) pos[i] = i;
  for (;;) {
    std::uint64_t m = 0;
    for (int i = 0; i < weight; ++i) m |= std::uint64_t{1} << pos[i];
    f(m);
    int i = weight - 1;
    while (i >= 0 && pos[i] == dim - weight + i) --i;
    if (i < 0) return;
    ++pos[i];
    for (int j = i + 1; j < weight; ++j) pos[j] = pos[j - 1] + 1;
  }
}

/// Calls f(word) for every point within distance k of `center`, shell by shell.
template <class F>
void for_each_in_ball(std::uint64_t center, int dim, int k, F&& f) {
  for (int w = 0; w <= k && w <= dim; ++w) {
    for_each_mask_of_weight(dim, w, [&](std::uint64_t m) { f(center ^ m); });
  }
}

/// Exactly the points at distance <= k from center. Guarded at dim <= 24.
PointSet enumerate_ball(const BitPoint& center, int k);
PointSet full_cube(int dim);

/// Membership oracle over a point set: a bitmap for small dimensions,
/// binary search otherwise.
class PointIndex {
 public:
  explicit PointIndex(const PointSet& set);
  bool contains(std::uint64_t word) const;

 private:
  const PointSet* set_;
  std::vector<std::uint64_t> bitmap_;
};

/// hist[0] = |A| (self-loops); hist[s] = unordered distinct pairs at distance s,
/// for s = 1..max_dist. Guarded at |A| <= 2^20.
std::vector<std::uint64_t> pair_distance_histogram(const PointSet& A, int max_dist);

/// |E_<=r(A)|: unordered pairs at distance <= r, one self-loop per point.
std::uint64_t edge_count_at_most(const PointSet& A, int r);
/// |E_r(A)|: unordered pairs at distance exactly r >= 1; never loops.
std::uint64_t edge_count_exact(const PointSet& A, int r);

enum class EdgeMode { AtMost, Exact };
/// Edge count divided by |A|, as an exact fraction.
Rational edge_density(const PointSet& A, int r, EdgeMode mode);

struct PointPair {
  std::uint64_t u;
  std::uint64_t v;
  friend bool operator==(const PointPair&, const PointPair&) = default;
  friend auto operator<=>(const PointPair&, const PointPair&) = default;
};

/// All distinct pairs at distance <= r with u < v, ordered lexicographically.
/// The correctness oracle for every protocol. Guarded at |S| <= 2^16.
std::vector<PointPair> brute_force_join(const PointSet& S, int r);

// Closed forms over the whole cube and over Ball(0, k).

/// |E_<=r({0,1}^d)| = 2^{d-1}(B(d,r)-1) + 2^d (loops included).
u128 cube_edge_count_at_most(int d, int r);
/// |E_r({0,1}^d)| = C(d,r) 2^{d-1}.
u128 cube_edge_count_exact(int d, int r);
/// |E_<=r(Ball(0^d, k))| by grouping ball points by weight.
u128 ball_edge_count_at_most(int d, int k, int r);
u128 ball_edge_count_exact(int d, int k, int r);

/// B(d,R)/B(d,R-r) <= (d+1) d^{r-1} / R^{(r)} for r < R <= (d+1)/2,
/// decided by exact cross-multiplication.
CheckResult ball_ratio_check(int d, int R, int r);

}  // namespace simjoin
