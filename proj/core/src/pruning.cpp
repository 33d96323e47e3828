#include "simjoin/pruning.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "simjoin/errors.hpp"

namespace simjoin {

namespace {

int tuple_dim(std::span<const PointSet> tuple) {
  if (tuple.empty()) throw PreconditionError("empty tuple");
  const int d = tuple.front().dim();
  for (const auto& A : tuple) {
    if (A.dim() != d) throw DimensionMismatch("tuple sets have different dimensions");
  }
  if (d > kTupleMaxDim) throw GuardExceeded("tuple operations: dimension above 20");
  return d;
}

// For each point of the union, the ascending list of sets containing it.
struct Membership {
  std::vector<std::uint64_t> points;  // sorted union
  std::vector<std::size_t> offsets;   // into sets
  std::vector<int> sets;

  std::vector<std::uint32_t> position;  // dense point -> index into points, or kAbsent

  static constexpr std::uint32_t kAbsent = ~std::uint32_t{0};

  Membership(std::span<const PointSet> tuple, int d) {
    std::vector<std::pair<std::uint64_t, int>> entries;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      for (auto x : tuple[i]) entries.emplace_back(x, static_cast<int>(i));
    }
    std::sort(entries.begin(), entries.end());
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (j == 0 || entries[j].first != entries[j - 1].first) {
        points.push_back(entries[j].first);
        offsets.push_back(j);
      }
      sets.push_back(entries[j].second);
    }
    offsets.push_back(entries.size());
    position.assign(std::size_t{1} << d, kAbsent);
    for (std::size_t j = 0; j < points.size(); ++j) position[points[j]] = static_cast<std::uint32_t>(j);
  }

  std::size_t find(std::uint64_t x) const {
    const std::uint32_t j = position[x];
    return j == kAbsent ? points.size() : j;
  }
  std::span<const int> of(std::size_t pos) const {
    return {sets.data() + offsets[pos], offsets[pos + 1] - offsets[pos]};
  }
};

int first_common(std::span<const int> a, std::span<const int> b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return a[i];
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return -1;
}

bool intersects(std::span<const int> a, std::span<const int> b) { return first_common(a, b) >= 0; }

// Calls f(x_pos, y, y_pos, s) for every pair x < y of union points at distance s in [1, r].
template <class F>
void for_each_union_pair(const Membership& mem, int d, int r, F&& f) {
  for (std::size_t xp = 0; xp < mem.points.size(); ++xp) {
    const std::uint64_t x = mem.points[xp];
    for (int s = 1; s <= r; ++s) {
      for_each_mask_of_weight(d, s, [&](std::uint64_t m) {
        const std::uint64_t y = x ^ m;
        if (y < x) return;
        const std::size_t yp = mem.find(y);
        if (yp != mem.points.size()) f(xp, y, yp, s);
      });
    }
  }
}

}  // namespace

std::uint64_t PrunedTuple::multiplicity(std::uint64_t x) const {
  std::uint64_t w = 0;
  for (const auto& A : sets) w += A.contains(x) ? 1 : 0;
  return w;
}

std::uint64_t PrunedTuple::max_multiplicity() const {
  std::vector<std::uint64_t> all;
  for (const auto& A : sets) all.insert(all.end(), A.begin(), A.end());
  std::sort(all.begin(), all.end());
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    best = std::max<std::uint64_t>(best, j - i);
    i = j;
  }
  return best;
}

PrunedTuple prune(std::span<const PointSet> tuple, int r) {
  const int d = tuple_dim(tuple);
  if (r < 1 || r > d) throw PreconditionError("prune: r must lie in [1, d]");
  std::size_t total = 0;
  for (const auto& A : tuple) total += A.size();
  if (total > kPruneMaxTotal) throw GuardExceeded("prune: total tuple size above 2^22");

  const Membership mem(tuple, d);
  // pivotal[j] marks the membership entry j (point, set) as kept.
  std::vector<char> pivotal(mem.sets.size(), 0);
  auto mark = [&](std::size_t pos, int set) {
    const auto list = mem.of(pos);
    const auto it = std::lower_bound(list.begin(), list.end(), set);
    pivotal[mem.offsets[pos] + static_cast<std::size_t>(it - list.begin())] = 1;
  };
  for_each_union_pair(mem, d, r, [&](std::size_t xp, std::uint64_t, std::size_t yp, int) {
    const int f = first_common(mem.of(xp), mem.of(yp));
    if (f < 0) return;
    mark(xp, f);
    mark(yp, f);
  });

  PrunedTuple out;
  out.d = d;
  out.r = r;
  std::vector<std::vector<std::uint64_t>> kept(tuple.size());
  for (std::size_t pos = 0; pos < mem.points.size(); ++pos) {
    std::uint64_t w = 0;
    for (std::size_t j = mem.offsets[pos]; j < mem.offsets[pos + 1]; ++j) {
      if (pivotal[j]) {
        kept[static_cast<std::size_t>(mem.sets[j])].push_back(mem.points[pos]);
        ++w;
      } else {
        out.removed.push_back({mem.points[pos], mem.sets[j]});
      }
    }
    if (static_cast<u128>(w) > ball_volume(d, r) - 1) {
      throw std::logic_error("prune: multiplicity " + std::to_string(w) + " exceeds B(d,r)-1");
    }
  }
  for (std::size_t i = 0; i < kept.size(); ++i) out.sets.emplace_back(d, std::move(kept[i]));
  return out;
}

std::vector<PointPair> covered_pairs(std::span<const PointSet> tuple, int r) {
  const int d = tuple_dim(tuple);
  if (r < 0 || r > d) throw PreconditionError("covered_pairs: r must lie in [0, d]");
  const Membership mem(tuple, d);
  std::vector<PointPair> out;
  for_each_union_pair(mem, d, r, [&](std::size_t xp, std::uint64_t y, std::size_t yp, int) {
    if (intersects(mem.of(xp), mem.of(yp))) out.push_back({mem.points[xp], y});
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t EdgeUnion::at_most() const {
  std::uint64_t total = loops;
  for (std::size_t s = 1; s < by_distance.size(); ++s) total += by_distance[s];
  return total;
}

EdgeUnion edge_union(std::span<const PointSet> tuple, int r) {
  const int d = tuple_dim(tuple);
  if (r < 0 || r > d) throw PreconditionError("edge_union: r must lie in [0, d]");
  const Membership mem(tuple, d);
  EdgeUnion u;
  u.loops = mem.points.size();
  u.by_distance.assign(static_cast<std::size_t>(r) + 1, 0);
  for_each_union_pair(mem, d, r, [&](std::size_t xp, std::uint64_t, std::size_t yp, int s) {
    if (intersects(mem.of(xp), mem.of(yp))) ++u.by_distance[static_cast<std::size_t>(s)];
  });
  return u;
}

}  // namespace simjoin
