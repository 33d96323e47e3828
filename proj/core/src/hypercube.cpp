#include "simjoin/hypercube.hpp"

#include <algorithm>
#include <string>

#include "simjoin/errors.hpp"

namespace simjoin {

namespace {

void check_radius(int r, int dim, int lo, const char* what) {
  if (r < lo || r > dim) {
    throw PreconditionError(std::string(what) + ": radius " + std::to_string(r) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(dim) + "]");
  }
}

// Neighbour enumeration wins when a ball is small relative to the set.
bool prefer_neighbour_scan(std::size_t n, int dim, int r) {
  if (n < 64) return false;
  const u128 ball = ball_volume_clamped(dim, r);
  const u128 per_point = dim <= kEnumerationMaxDim ? ball : ball * 8;  // binary search penalty
  return per_point * 2 < static_cast<u128>(n);
}

}  // namespace

int hamming_distance(const BitPoint& u, const BitPoint& v) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatch("hamming_distance: dimensions " + std::to_string(u.dim()) + " and " +
                            std::to_string(v.dim()));
  }
  return word_distance(u.bits(), v.bits());
}

PointSet enumerate_ball(const BitPoint& center, int k) {
  const int dim = center.dim();
  if (dim > kEnumerationMaxDim) throw GuardExceeded("enumerate_ball: dimension above 24");
  check_radius(k, dim, 0, "enumerate_ball");
  std::vector<std::uint64_t> words;
  words.reserve(to_u64(ball_volume(dim, k)));
  for_each_in_ball(center.bits(), dim, k, [&](std::uint64_t w) { words.push_back(w); });
  return PointSet(dim, std::move(words));
}

PointSet full_cube(int dim) {
  check_dim(dim);
  if (dim > kEnumerationMaxDim) throw GuardExceeded("full_cube: dimension above 24");
  std::vector<std::uint64_t> words(std::size_t{1} << dim);
  for (std::size_t i = 0; i < words.size(); ++i) words[i] = i;
  return PointSet(dim, std::move(words));
}

PointIndex::PointIndex(const PointSet& set) : set_(&set) {
  if (set.dim() <= kEnumerationMaxDim) {
    const std::size_t bits = std::size_t{1} << set.dim();
    bitmap_.assign((bits + 63) / 64, 0);
    for (auto w : set) bitmap_[w >> 6] |= std::uint64_t{1} << (w & 63);
  }
}

bool PointIndex::contains(std::uint64_t word) const {
  if (!bitmap_.empty()) return (bitmap_[word >> 6] >> (word & 63)) & 1u;
  return set_->contains(word);
}

std::vector<std::uint64_t> pair_distance_histogram(const PointSet& A, int max_dist) {
  if (A.size() > kEdgeScanMaxSize) throw GuardExceeded("edge scan: set larger than 2^20");
  const int dim = A.dim();
  max_dist = std::clamp(max_dist, 0, dim);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(max_dist) + 1, 0);
  hist[0] = A.size();
  if (max_dist == 0) return hist;
  const auto words = A.words();
  if (prefer_neighbour_scan(A.size(), dim, max_dist)) {
    const PointIndex index(A);
    for (auto x : words) {
      for (int s = 1; s <= max_dist; ++s) {
        for_each_mask_of_weight(dim, s, [&](std::uint64_t m) {
          if (index.contains(x ^ m)) ++hist[static_cast<std::size_t>(s)];
        });
      }
    }
    for (std::size_t s = 1; s < hist.size(); ++s) hist[s] /= 2;
  } else {
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        const int s = word_distance(words[i], words[j]);
        if (s <= max_dist) ++hist[static_cast<std::size_t>(s)];
      }
    }
  }
  return hist;
}

std::uint64_t edge_count_at_most(const PointSet& A, int r) {
  check_radius(r, A.dim(), 0, "edge_count_at_most");
  std::uint64_t total = 0;
  for (auto c : pair_distance_histogram(A, r)) total += c;
  return total;
}

std::uint64_t edge_count_exact(const PointSet& A, int r) {
  check_radius(r, A.dim(), 1, "edge_count_exact");
  return pair_distance_histogram(A, r)[static_cast<std::size_t>(r)];
}

Rational edge_density(const PointSet& A, int r, EdgeMode mode) {
  if (A.empty()) throw PreconditionError("edge_density of an empty set");
  const std::uint64_t edges = mode == EdgeMode::AtMost ? edge_count_at_most(A, r) : edge_count_exact(A, r);
  return Rational(BigInt(edges), BigInt(A.size()));
}

std::vector<PointPair> brute_force_join(const PointSet& S, int r) {
  if (S.size() > kJoinMaxSize) throw GuardExceeded("brute_force_join: set larger than 2^16");
  check_radius(r, S.dim(), 0, "brute_force_join");
  std::vector<PointPair> out;
  const auto words = S.words();
  if (r == 0) return out;
  if (prefer_neighbour_scan(S.size(), S.dim(), r)) {
    const PointIndex index(S);
    std::vector<std::uint64_t> nbrs;
    for (auto x : words) {
      nbrs.clear();
      for (int s = 1; s <= r; ++s) {
        for_each_mask_of_weight(S.dim(), s, [&](std::uint64_t m) {
          const std::uint64_t y = x ^ m;
          if (y > x && index.contains(y)) nbrs.push_back(y);
        });
      }
      std::sort(nbrs.begin(), nbrs.end());
      for (auto y : nbrs) out.push_back({x, y});
    }
  } else {
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        if (word_distance(words[i], words[j]) <= r) out.push_back({words[i], words[j]});
      }
    }
  }
  return out;
}

u128 cube_edge_count_at_most(int d, int r) {
  check_dim(d);
  check_radius(r, d, 0, "cube_edge_count_at_most");
  const u128 half = u128{1} << (d - 1);
  return checked_add(checked_mul(half, ball_volume(d, r) - 1), half * 2);
}

u128 cube_edge_count_exact(int d, int r) {
  check_dim(d);
  check_radius(r, d, 1, "cube_edge_count_exact");
  return checked_mul(binomial(d, r), u128{1} << (d - 1));
}

namespace {

// Ordered pairs (x, z) with |x| = w, |z| <= k and dist(x, z) in [lo, hi].
u128 ordered_pairs_from_weight(int d, int k, int w, int lo, int hi) {
  u128 count = 0;
  for (int i = 0; i <= w; ++i) {        // ones of x turned off
    for (int j = 0; j <= d - w; ++j) {  // zeros of x turned on
      const int dist = i + j;
      if (dist < lo || dist > hi || w - i + j > k) continue;
      count = checked_add(count, checked_mul(binomial(w, i), binomial(d - w, j)));
    }
  }
  return count;
}

}  // namespace

u128 ball_edge_count_at_most(int d, int k, int r) {
  check_dim(d);
  check_radius(k, d, 0, "ball_edge_count_at_most");
  check_radius(r, d, 0, "ball_edge_count_at_most");
  u128 ordered = 0;
  for (int w = 0; w <= k; ++w) {
    ordered = checked_add(ordered, checked_mul(binomial(d, w), ordered_pairs_from_weight(d, k, w, 0, r)));
  }
  // Every distinct pair appears twice, every loop once.
  return (ordered + ball_volume(d, k)) / 2;
}

u128 ball_edge_count_exact(int d, int k, int r) {
  check_dim(d);
  check_radius(k, d, 0, "ball_edge_count_exact");
  check_radius(r, d, 1, "ball_edge_count_exact");
  u128 ordered = 0;
  for (int w = 0; w <= k; ++w) {
    ordered = checked_add(ordered, checked_mul(binomial(d, w), ordered_pairs_from_weight(d, k, w, r, r)));
  }
  return ordered / 2;
}

CheckResult ball_ratio_check(int d, int R, int r) {
  if (d < 1 || d > 64 || r < 1 || r >= R || 2 * R > d + 1) {
    throw PreconditionError("ball_ratio_check requires 1 <= r < R <= (d+1)/2 (d=" + std::to_string(d) +
                            ", R=" + std::to_string(R) + ", r=" + std::to_string(r) + ")");
  }
  const BigInt big = to_big(ball_volume(d, R));
  const BigInt small = to_big(ball_volume(d, R - r));
  const BigInt rhs_num = BigInt(d + 1) * pow_big(BigInt(d), static_cast<unsigned>(r - 1));
  const BigInt rhs_den = falling_factorial(R, r);

  CheckResult c;
  c.id = "ball-ratio";
  c.params = "d=" + std::to_string(d) + ",R=" + std::to_string(R) + ",r=" + std::to_string(r);
  c.lhs = big.str() + "/" + small.str();
  c.rhs = rhs_num.str() + "/" + rhs_den.str();
  c.status = big * rhs_den <= rhs_num * small ? CheckStatus::Pass : CheckStatus::Fail;
  return c;
}

}  // namespace simjoin
