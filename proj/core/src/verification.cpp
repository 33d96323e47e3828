#include "simjoin/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "simjoin/combinatorics.hpp"
#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/inputs.hpp"
#include "simjoin/pruning.hpp"
#include "simjoin/rng.hpp"

namespace simjoin {

namespace {

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

int tuple_dim(std::span<const PointSet> tuple) {
  if (tuple.empty()) throw PreconditionError("empty tuple");
  const int d = tuple.front().dim();
  for (const auto& A : tuple) {
    if (A.dim() != d) throw DimensionMismatch("tuple sets have different dimensions");
  }
  if (d > kTupleMaxDim) throw GuardExceeded("tuple checks: dimension above 20");
  return d;
}

// Sets containing each cube point, stored densely (d <= 20).
class DenseMembership {
 public:
  DenseMembership(std::span<const PointSet> tuple, int d) : offsets_((std::size_t{1} << d) + 1, 0) {
    for (const auto& A : tuple) {
      for (auto x : A) ++offsets_[x + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    sets_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      for (auto x : tuple[i]) sets_[fill[x]++] = static_cast<int>(i);
    }
  }

  std::span<const int> of(std::uint64_t x) const {
    return {sets_.data() + offsets_[x], offsets_[x + 1] - offsets_[x]};
  }

  bool share(std::uint64_t x, std::uint64_t y) const {
    const auto a = of(x);
    const auto b = of(y);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return true;
      if (a[i] < b[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return false;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<int> sets_;
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return m;
}

std::string tuple_params(int d, std::size_t p, std::uint64_t n, int r) {
  return "d=" + std::to_string(d) + ",p=" + std::to_string(p) + ",n=" + std::to_string(n) + ",r=" +
         std::to_string(r);
}

// Number of centers c with both endpoints of a distance-s pair inside Ball(c, R).
u128 common_centers(int d, int s, int R) {
  u128 total = 0;
  for (int i = 0; i <= s; ++i) {
    for (int j = 0; j <= d - s; ++j) {
      if (i + j <= R && s - i + j <= R) total = checked_add(total, checked_mul(binomial(s, i), binomial(d - s, j)));
    }
  }
  return total;
}

}  // namespace

CheckResult verify_ball_degree(int d, int k, int r) {
  check_dim(d);
  if (d > kBallDegreeMaxDim) throw GuardExceeded("verify_ball_degree: dimension above 14");
  if (r < 0 || r > d || k < ceil_half(r) || k > d) {
    throw PreconditionError("verify_ball_degree requires ceil(r/2) <= k <= d and 0 <= r <= d");
  }
  const PointSet ball = enumerate_ball(BitPoint::zero(d), k);
  const BigInt edges(edge_count_at_most(ball, r));
  const BigInt volume(ball.size());
  const BigInt bound_twice = to_big(binomial(k, ceil_half(r))) * to_big(ball_volume(d - k, std::min(floor_half(r), d - k)));

  CheckResult c;
  c.id = "ball-degree";
  c.params = "d=" + std::to_string(d) + ",k=" + std::to_string(k) + ",r=" + std::to_string(r);
  c.lhs = to_string(Rational(edges, volume));
  c.rhs = to_string(Rational(bound_twice, 2));
  // edges / volume >= bound_twice / 2
  c.status = 2 * edges >= bound_twice * volume ? CheckStatus::Pass : CheckStatus::Fail;
  c.note = "slack=" + to_string(Rational(edges, volume) - Rational(bound_twice, 2));
  return c;
}

CheckResult verify_lk_bound(int d, int k, int r) {
  check_dim(d);
  if (d > kBallDegreeMaxDim) throw GuardExceeded("verify_lk_bound: dimension above 14");
  const int h = ceil_half(r);
  if (r < 1 || r > d || k < h || 2 * k > d - 2 * h) {
    throw PreconditionError("verify_lk_bound requires r >= 1 and ceil(r/2) <= k <= d/2 - ceil(r/2)");
  }
  const PointSet ball = enumerate_ball(BitPoint::zero(d), k);
  const BigInt ball_edges(edge_count_at_most(ball, r));
  const BigInt cube_edges = to_big(cube_edge_count_at_most(d, r));
  const BigInt num = pow_big(BigInt(2 * d), static_cast<unsigned>(h)) * (BigInt(1) << (d + 1));
  const BigInt den = pow_big(BigInt(k), static_cast<unsigned>(h)) * to_big(ball_volume(d, k));

  CheckResult c;
  c.id = "lk-bound";
  c.params = "d=" + std::to_string(d) + ",k=" + std::to_string(k) + ",r=" + std::to_string(r);
  c.lhs = to_string(Rational(cube_edges, ball_edges));
  c.rhs = to_string(Rational(num, den));
  c.status = cube_edges * den < num * ball_edges ? CheckStatus::Pass : CheckStatus::Fail;
  return c;
}

CheckResult verify_max_to_er(std::span<const PointSet> tuple, std::uint64_t n, int r, std::uint64_t samples,
                             std::uint64_t seed) {
  const int d = tuple_dim(tuple);
  CheckResult c;
  c.id = "max-to-er";
  c.params = tuple_params(d, tuple.size(), n, r);
  auto not_applicable = [&](const std::string& why) {
    c.status = CheckStatus::NotApplicable;
    c.note = why;
    return c;
  };
  if (r < 1 || r > d) return not_applicable("r outside [1, d]");
  int R = 0;
  try {
    R = radius_for(n, d, r);
  } catch (const PreconditionError& e) {
    return not_applicable(e.what());
  }
  c.params += ",R=" + std::to_string(R);
  if (R / r < 2) return not_applicable("R = r; the lemma needs R = kr with k >= 2");
  if (2 * R > d) return not_applicable("R > d/2");
  if (samples < kMinMonteCarloSamples) return not_applicable("fewer than 1000 samples");
  const u128 pruned_cap = ball_volume(d, r) - 1;
  {
    const PrunedTuple pruned = prune(tuple, r);
    if (!std::equal(pruned.sets.begin(), pruned.sets.end(), tuple.begin(), tuple.end())) {
      return not_applicable("tuple is not r-pruned");
    }
  }

  BigInt sum_edges = 0;
  for (const auto& A : tuple) sum_edges += BigInt(edge_count_at_most(A, R));
  const Rational rhs(to_big(ball_volume(d, R - r)) * sum_edges,
                     (BigInt(1) << (d - 1)) * to_big(ball_volume(d, R)) * to_big(pruned_cap));

  const DenseMembership mem(tuple, d);
  const std::uint64_t mc_seed = derive_seed(seed, Stream::MonteCarlo, 0);
  std::vector<double> maxima;
  maxima.reserve(samples);
  std::vector<std::uint64_t> loads(tuple.size());
  for (std::uint64_t s = 0; s < samples; ++s) {
    const PointSet S = sample_hard(n, d, r, mc_seed, s).set;
    std::fill(loads.begin(), loads.end(), 0);
    for (auto x : S) {
      for (int i : mem.of(x)) ++loads[static_cast<std::size_t>(i)];
    }
    maxima.push_back(static_cast<double>(*std::max_element(loads.begin(), loads.end())));
  }
  const MeanSe m = mean_se(maxima);
  const double bound = to_double(rhs);
  c.lhs = decimal(m.mean);
  c.rhs = to_string(rhs);
  if (m.mean - 3.0 * m.se > bound) {
    c.status = CheckStatus::Pass;
    c.note = "se=" + decimal(m.se);
  } else if (m.mean + 3.0 * m.se > bound) {
    c.status = CheckStatus::Pass;
    c.note = "se=" + decimal(m.se) + ",within 3 se";
  } else {
    c.status = CheckStatus::Fail;
    c.note = "se=" + decimal(m.se);
  }
  return c;
}

CheckResult verify_exact_density(std::span<const PointSet> tuple, int r, double delta) {
  const int d = tuple_dim(tuple);
  CheckResult c;
  c.id = "exact-density";
  char dbuf[32];
  std::snprintf(dbuf, sizeof dbuf, "%g", delta);
  c.params = "d=" + std::to_string(d) + ",p=" + std::to_string(tuple.size()) + ",r=" + std::to_string(r) +
             ",delta=" + dbuf;
  auto not_applicable = [&](const std::string& why) {
    c.status = CheckStatus::NotApplicable;
    c.note = why;
    return c;
  };
  if (!(delta > 0.0 && delta <= 1.0)) return not_applicable("delta outside (0, 1]");
  if (r < 1 || 2 * r * r > d) return not_applicable("r > sqrt(d/2)");
  const Rational dq = exact_rational(delta);
  if (dq * dq * d < 16) return not_applicable("delta < 4/sqrt(d)");

  const EdgeUnion u = edge_union(tuple, r);
  const BigInt half_cube = BigInt(1) << (d - 1);
  const Rational premise = dq / 2 * Rational(to_big(ball_volume(d, r)) * half_cube);
  if (Rational(BigInt(u.at_most())) < premise) {
    c.lhs = std::to_string(u.at_most());
    c.rhs = to_string(premise);
    return not_applicable("tuple covers fewer than (delta/2) B(d,r) 2^{d-1} edges");
  }
  const Rational bound = dq / 4 * Rational(to_big(binomial(d, r)) * half_cube);
  c.lhs = std::to_string(u.exact(r));
  c.rhs = to_string(bound);
  c.status = Rational(BigInt(u.exact(r))) >= bound ? CheckStatus::Pass : CheckStatus::Fail;
  c.note = "covered_at_most=" + std::to_string(u.at_most());
  return c;
}

EdgeSamplingResult check_uniform_edge_sampling(std::span<const PointSet> tuple, std::uint64_t n, int r,
                                               std::uint64_t samples, std::uint64_t seed) {
  const int d = tuple_dim(tuple);
  EdgeSamplingResult out;
  out.uniform.id = "edge-sampling";
  out.stratified.id = "edge-sampling-stratified";
  out.uniform.params = out.stratified.params = tuple_params(d, tuple.size(), n, r);
  if (r < 1 || r > d) throw PreconditionError("edge sampling: r must lie in [1, d]");
  if (samples < 2) throw PreconditionError("edge sampling: at least two samples needed");
  const int R = radius_for(n, d, r);

  // Exact per-class inclusion probabilities under D_{n,d}.
  const EdgeUnion covered = edge_union(tuple, r);
  const BigInt cube = BigInt(1) << d;
  const BigInt volume = to_big(ball_volume(d, R));
  const BigInt nn(n);
  Rational union_no_loops(0), edges_no_loops(0);
  for (int s = 1; s <= r; ++s) {
    const Rational prob(to_big(common_centers(d, s, R)) * nn * (nn - 1), cube * volume * (volume - 1));
    union_no_loops += Rational(BigInt(covered.exact(s))) * prob;
    edges_no_loops += Rational(to_big(cube_edge_count_exact(d, s))) * prob;
  }
  const Rational expected_union = union_no_loops + Rational(BigInt(covered.loops) * nn, cube);
  const Rational expected_edges = edges_no_loops + Rational(nn);
  const Rational alpha(BigInt(covered.at_most()), to_big(cube_edge_count_at_most(d, r)));
  const Rational alpha_no_loops(BigInt(covered.at_most() - covered.loops), to_big(cube_edge_count_at_most(d, r)) - cube);
  const double alpha_value = to_double(alpha);

  const DenseMembership mem(tuple, d);
  const std::uint64_t mc_seed = derive_seed(seed, Stream::MonteCarlo, 1);
  std::vector<double> gaps, unions;
  gaps.reserve(samples);
  unions.reserve(samples);
  for (std::uint64_t t = 0; t < samples; ++t) {
    const PointSet S = sample_hard(n, d, r, mc_seed, t).set;
    std::uint64_t hit = 0;
    for (auto x : S) hit += mem.of(x).empty() ? 0 : 1;
    const auto pairs = brute_force_join(S, r);
    for (const auto& pr : pairs) hit += mem.share(pr.u, pr.v) ? 1 : 0;
    const double edges = static_cast<double>(S.size() + pairs.size());
    unions.push_back(static_cast<double>(hit));
    gaps.push_back(static_cast<double>(hit) - alpha_value * edges);
  }

  const MeanSe g = mean_se(gaps);
  const Rational exact_gap = expected_union - alpha * expected_edges;
  out.uniform.lhs = decimal(g.mean);
  out.uniform.rhs = "0";
  out.uniform.status = std::fabs(g.mean) <= 3.0 * g.se ? CheckStatus::Pass : CheckStatus::Fail;
  out.uniform.note = "se=" + decimal(g.se) + ",alpha=" + decimal(alpha_value) +
                     ",exact_gap=" + decimal(to_double(exact_gap)) +
                     (exact_gap <= 0 ? ",inequality holds" : ",inequality fails") +
                     ",loop_free_gap=" + decimal(to_double(union_no_loops - alpha_no_loops * edges_no_loops));

  const MeanSe u = mean_se(unions);
  const double target = to_double(expected_union);
  out.stratified.lhs = decimal(u.mean);
  out.stratified.rhs = decimal(target);
  out.stratified.status = std::fabs(u.mean - target) <= 3.0 * u.se ? CheckStatus::Pass : CheckStatus::Fail;
  out.stratified.note = "se=" + decimal(u.se);
  return out;
}

}  // namespace simjoin
