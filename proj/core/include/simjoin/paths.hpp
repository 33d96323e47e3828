#pragma once

#include "simjoin/bit_point.hpp"
#include "simjoin/combinatorics.hpp"
#include "simjoin/report.hpp"

namespace simjoin {

inline constexpr std::size_t kPathMaxSet = std::size_t{1} << 12;
inline constexpr int kPathMaxSteps = 4;

/// pi_{R,b}(A): sequences (v_0, ..., v_{R/r}) in A with dist(v_{j-1}, v_j) = r
/// and dist(v_0, v_j) >= j(r - 2b).
struct PathCount {
  int R = 0;
  int r = 0;
  int b = 0;
  std::size_t set_size = 0;
  BigInt count;
};

/// Requires r | R, R/r <= 4, 0 <= b <= floor(r/2), |A| <= 2^12.
PathCount count_rb_paths(const PointSet& A, int R, int r, int b);

/// pi >= N (M/(4N))^{R/r} where N = |A|, M = |E_r(A)|; not-applicable unless
/// M/N >= 4 C(R-r, b+1) C(d, r-b-1).
CheckResult verify_sid(const PointSet& A, int R, int r, int b);

/// |E_<=R(A)| >= pi / (R! d^{bR/r}), loops included. The note also reports the
/// ordered-pair form 2|E_<=R(A)| - |A| and the loop-free count.
CheckResult verify_paths_to_pairs(const PointSet& A, int R, int r, int b);

/// e_<=R(A) >= e_r(A)^{R/r} / (4^{R/r} R! d^{bR/r}) whenever verify_sid's
/// precondition holds; not-applicable otherwise.
CheckResult verify_path_composition(const PointSet& A, int R, int r, int b);

/// True when M/N >= 4 C(R-r, b+1) C(d, r-b-1).
bool sid_precondition(const PointSet& A, int R, int r, int b);

}  // namespace simjoin
