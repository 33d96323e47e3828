#include "simjoin/covering_code.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/rng.hpp"

namespace simjoin {

bool covers_cube(const PointSet& points, int r) {
  const int d = points.dim();
  if (d > kCodeVerifyMaxDim) throw GuardExceeded("covers_cube: dimension above 20");
  std::vector<bool> covered(std::size_t{1} << d, false);
  for (auto c : points) {
    for_each_in_ball(c, d, r, [&](std::uint64_t w) { covered[w] = true; });
  }
  for (bool b : covered) {
    if (!b) return false;
  }
  return true;
}

CoveringCode::CoveringCode(int d, int r, PointSet points) : d_(d), r_(r), points_(std::move(points)) {
  check_dim(d);
  if (r < 0 || r > d) throw PreconditionError("covering radius outside [0, d]");
  if (points_.dim() != d) throw DimensionMismatch("code points have the wrong dimension");
  if (d <= kCodeVerifyMaxDim && !covers_cube(points_, r)) {
    throw PreconditionError("point set is not a covering code of radius " + std::to_string(r));
  }
}

CoveringCode greedy_covering_code(int d, int r, std::uint64_t seed) {
  check_dim(d);
  if (d > kGreedyCodeMaxDim) throw GuardExceeded("greedy_covering_code: dimension above 16");
  if (r < 0 || r > d) throw PreconditionError("covering radius outside [0, d]");

  const std::size_t n = std::size_t{1} << d;
  std::vector<std::uint64_t> order(n);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  Rng rng(derive_seed(seed, Stream::CodeOrder, 0));
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  std::vector<bool> covered(n, false);
  std::vector<std::uint64_t> code;
  for (auto x : order) {
    if (covered[x]) continue;
    code.push_back(x);
    for_each_in_ball(x, d, r, [&](std::uint64_t w) { covered[w] = true; });
  }
  return CoveringCode(d, r, PointSet(d, std::move(code)));
}

}  // namespace simjoin
