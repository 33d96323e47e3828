#pragma once

#include <cstdint>
#include <span>

#include "simjoin/bit_point.hpp"
#include "simjoin/report.hpp"

namespace simjoin {

inline constexpr int kBallDegreeMaxDim = 14;
inline constexpr std::uint64_t kMinMonteCarloSamples = 1000;

/// e_<=r(Ball(0,k)) >= C(k, ceil(r/2)) B(d-k, floor(r/2)) / 2, by enumeration.
/// Requires ceil(r/2) <= k <= d <= 14.
CheckResult verify_ball_degree(int d, int k, int r);

/// ell_k < (2d/k)^{ceil(r/2)} 2^{d+1} / B(d,k), with ell_k from enumeration.
/// Requires 1 <= r, ceil(r/2) <= k <= d/2 - ceil(r/2), d <= 14.
CheckResult verify_lk_bound(int d, int k, int r);

/// Monte Carlo check of
///   E_{S~D}[max_i |A_i ∩ S|] > B(d,R-r) / (2^{d-1} B(d,R) (B(d,r)-1)) * sum_i |E_<=R(A_i)|
/// with R = radius_for(n, d, r). Not-applicable unless R = kr with k >= 2,
/// R <= d/2, the tuple is r-pruned and samples >= 1000. Passes when
/// mean - 3 SE exceeds the right side; a mean within 3 SE is a pass noted as
/// statistical.
CheckResult verify_max_to_er(std::span<const PointSet> tuple, std::uint64_t n, int r, std::uint64_t samples,
                             std::uint64_t seed);

/// For tuples with |∪ E_<=r(A_i)| >= (delta/2) B(d,r) 2^{d-1} (loops counted),
/// |∪ E_r(A_i)| >= (delta/4) C(d,r) 2^{d-1}. Not-applicable unless
/// r <= sqrt(d/2), delta >= 4/sqrt(d) and the tuple meets the coverage premise.
CheckResult verify_exact_density(std::span<const PointSet> tuple, int r, double delta);

struct EdgeSamplingResult {
  /// E|∪ E_<=r(A_i ∩ S)| = alpha E|E_<=r(S)| with alpha the covered fraction of
  /// the cube's edges; Monte Carlo, two-sided 3 SE.
  CheckResult uniform;
  /// E|∪ E_<=r(A_i ∩ S)| against its exact value summed over distance classes;
  /// Monte Carlo, two-sided 3 SE.
  CheckResult stratified;
};

EdgeSamplingResult check_uniform_edge_sampling(std::span<const PointSet> tuple, std::uint64_t n, int r,
                                               std::uint64_t samples, std::uint64_t seed);

}  // namespace simjoin
