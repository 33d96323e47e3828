#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "simjoin/bit_point.hpp"
#include "simjoin/combinatorics.hpp"
#include "simjoin/covering_code.hpp"

namespace simjoin {

enum class ProtocolKind { BallCovering, Universal, BallHashing2, SubcubeSplitting, AnchorPoints };

std::string to_string(ProtocolKind kind);
ProtocolKind parse_protocol_kind(std::string_view name);

inline constexpr std::uint64_t kMaxBallCenters = std::uint64_t{1} << 24;
inline constexpr int kBallCoveringExactDim = 20;
inline constexpr int kMaterializeMaxDim = 20;

/// Unions of L random radius-k balls per processor.
struct BallCoveringParams {
  int d = 0;
  int r = 0;
  int k = 0;
  int p = 0;
  double delta = 0.0;
  Rational ell_k;            // edge ratio |E_<=r(cube)| / |E_<=r(Ball(0,k))|, or its upper bound
  bool ell_k_exact = false;  // false when the closed-form upper bound was used
  std::uint64_t balls_per_processor = 0;  // L

  std::uint64_t total_balls() const { return balls_per_processor * static_cast<std::uint64_t>(p); }
};

/// Pair processors {a, b} of a random q-colouring; p = C(q, 2).
struct UniversalParams {
  int d = 0;
  std::uint64_t p_requested = 0;
  int q = 0;
  int p = 0;
};

/// Random map z -> [p]; x goes to h(z) for every z within ceil(r/2) of x.
struct BallHashing2Params {
  int d = 0;
  int r = 0;
  int p = 0;
  int radius = 0;
};

enum class SubcubeGrid {
  Prefix,    // subcube = the top d-k bits; x goes to every prefix within r of its own
  Segments,  // coordinates cut into k-bit segments; a reducer frees min(r, m) of the m segments
};

std::string to_string(SubcubeGrid grid);
SubcubeGrid parse_subcube_grid(std::string_view name);

inline constexpr std::uint64_t kSubcubeMaxFanOut = std::uint64_t{1} << 16;

/// Fixed grid of k-dimensional subcubes hashed to processors.
struct SubcubeSplittingParams {
  int d = 0;
  int r = 0;
  int k = 0;
  int p = 0;
  SubcubeGrid grid = SubcubeGrid::Prefix;
  int segments = 0;       // Segments grid only
  int free_segments = 0;  // Segments grid only
  std::uint64_t reducers_per_point = 0;
};

/// Covering-code anchors randomly owned by processors; x goes to the owner of
/// every anchor within ceil(3r/2).
struct AnchorPointsParams {
  int d = 0;
  int r = 0;
  int p = 0;
  int reach = 0;
  std::shared_ptr<const CoveringCode> code;
};

using ProtocolParams =
    std::variant<BallCoveringParams, UniversalParams, BallHashing2Params, SubcubeSplittingParams, AnchorPointsParams>;

/// A seeded protocol description. Immutable; draws are pure functions of
/// (params, base_seed, trial_index).
class CoveringSampler {
 public:
  CoveringSampler(ProtocolParams params, std::uint64_t base_seed);

  ProtocolKind kind() const noexcept;
  const ProtocolParams& params() const noexcept { return params_; }
  std::uint64_t base_seed() const noexcept { return base_seed_; }
  int dim() const noexcept;
  int processors() const noexcept;

  template <class T>
  const T& as() const {
    return std::get<T>(params_);
  }

 private:
  ProtocolParams params_;
  std::uint64_t base_seed_;
};

CoveringSampler make_ball_covering(int d, int r, int k, int p, double delta, std::uint64_t seed);
CoveringSampler make_universal(int d, std::uint64_t p_requested, std::uint64_t seed);
CoveringSampler make_ball_hashing2(int d, int r, int p, std::uint64_t seed);
CoveringSampler make_subcube_splitting(int d, int r, int k, int p, std::uint64_t seed,
                                       SubcubeGrid grid = SubcubeGrid::Prefix);
CoveringSampler make_anchor_points(int d, int r, int p, std::shared_ptr<const CoveringCode> code,
                                   std::uint64_t seed);

/// Largest k >= ceil(r/2) with B(d,k) <= n/p, or -1 if none.
int max_ball_radius_for_load(int d, int r, std::uint64_t n, int p);

/// L = ceil(ln(1/(1-delta)) * ceil(ell_k / p)).
std::uint64_t balls_per_processor(const Rational& ell_k, int p, double delta);

/// One realized p-tuple (A_1, ..., A_p), held implicitly through its
/// randomness (ball centers, hash seed).
class CoveringDraw {
 public:
  CoveringDraw(CoveringSampler sampler, std::uint64_t trial_index);

  const CoveringSampler& sampler() const noexcept { return sampler_; }
  std::uint64_t trial_index() const noexcept { return trial_index_; }
  std::uint64_t seed() const noexcept { return seed_; }
  int processors() const noexcept { return sampler_.processors(); }

  /// Ball centers x_1..x_{Lp}; empty for other protocols.
  std::span<const std::uint64_t> centers() const noexcept { return centers_; }

  /// Writes P(x) into `out` (sorted, unique, never empty). No dimension check.
  void assign_into(std::uint64_t word, std::vector<int>& out) const;
  std::vector<int> assign(const BitPoint& x) const;

  /// True when some drawn ball contains x; always true for other protocols.
  bool covered_by_some_ball(std::uint64_t word) const;

  /// Explicit A_i over the whole cube. Guarded at d <= 20. For ball-covering
  /// the sets are the plain ball unions unless `with_fallback` is set.
  std::vector<PointSet> materialize(bool with_fallback = false) const;
  /// A_i restricted to S.
  std::vector<PointSet> restrict_to(const PointSet& S) const;

 private:
  CoveringSampler sampler_;
  std::uint64_t trial_index_;
  std::uint64_t seed_;
  std::vector<std::uint64_t> centers_;
  // (center, index) sorted by center, for ball lookups when B(d,k) < Lp.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> center_index_;
  bool scan_by_ball_ = false;
};

CoveringDraw draw(const CoveringSampler& sampler, std::uint64_t trial_index);
std::vector<int> assign(const CoveringDraw& d, const BitPoint& x);

/// Writes A_0 ... A_{p-1} as point-set files into `dir`.
void dump_draw(const CoveringDraw& d, const std::filesystem::path& dir);

}  // namespace simjoin
