#include "simjoin/covering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/point_io.hpp"
#include "simjoin/rng.hpp"

namespace simjoin {

namespace {

constexpr std::uint64_t kFallbackSalt = 0x5bd1e9955bd1e995ULL;
constexpr std::uint64_t kSubcubeSalt = 0x2545f4914f6cdd1dULL;

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

int processors_of(const ProtocolParams& params) {
  return std::visit([](const auto& p) { return p.p; }, params);
}

int dim_of(const ProtocolParams& params) {
  return std::visit([](const auto& p) { return p.d; }, params);
}

// Pair {a, b} with a < b maps to b(b-1)/2 + a.
int pair_index(int a, int b) {
  if (a > b) std::swap(a, b);
  return b * (b - 1) / 2 + a;
}

int hash_to(std::uint64_t seed, std::uint64_t word, int p) {
  return static_cast<int>(hash_word(seed, word) % static_cast<std::uint64_t>(p));
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Segment s covers coordinates [s*k, min((s+1)*k, d)).
std::uint64_t segment_mask(int s, int k, int d) {
  const int lo = s * k;
  const int hi = std::min(lo + k, d);
  return dim_mask(hi) & ~dim_mask(lo);
}

}  // namespace

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::BallCovering: return "ball-covering";
    case ProtocolKind::Universal: return "universal";
    case ProtocolKind::BallHashing2: return "ball-hashing-2";
    case ProtocolKind::SubcubeSplitting: return "subcube-splitting";
    case ProtocolKind::AnchorPoints: return "anchor-points";
  }
  return "unknown";
}

ProtocolKind parse_protocol_kind(std::string_view name) {
  for (auto k : {ProtocolKind::BallCovering, ProtocolKind::Universal, ProtocolKind::BallHashing2,
                 ProtocolKind::SubcubeSplitting, ProtocolKind::AnchorPoints}) {
    if (to_string(k) == name) return k;
  }
  throw PreconditionError("unknown protocol '" + std::string(name) + "'");
}

std::string to_string(SubcubeGrid grid) { return grid == SubcubeGrid::Prefix ? "prefix" : "segments"; }

SubcubeGrid parse_subcube_grid(std::string_view name) {
  if (name == "prefix") return SubcubeGrid::Prefix;
  if (name == "segments") return SubcubeGrid::Segments;
  throw PreconditionError("unknown subcube grid '" + std::string(name) + "'");
}

CoveringSampler::CoveringSampler(ProtocolParams params, std::uint64_t base_seed)
    : params_(std::move(params)), base_seed_(base_seed) {
  require(processors_of(params_) >= 1, "p must be at least 1");
  check_dim(dim_of(params_));
}

ProtocolKind CoveringSampler::kind() const noexcept { return static_cast<ProtocolKind>(params_.index()); }
int CoveringSampler::dim() const noexcept { return dim_of(params_); }
int CoveringSampler::processors() const noexcept { return processors_of(params_); }

int max_ball_radius_for_load(int d, int r, std::uint64_t n, int p) {
  check_dim(d);
  require(p >= 1, "p must be at least 1");
  int best = -1;
  for (int k = ceil_half(r); k <= d; ++k) {
    if (ball_volume(d, k) * static_cast<u128>(p) <= n) best = k;
  }
  return best;
}

std::uint64_t balls_per_processor(const Rational& ell_k, int p, double delta) {
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(p >= 1, "p must be at least 1");
  const BigInt per = ceil_div(ell_k / Rational(p));
  const double factor = -std::log1p(-delta);
  const double L = std::ceil(factor * static_cast<double>(per));
  if (!(L < 1.8e19)) throw OverflowError("number of balls overflows");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(L));
}

CoveringSampler make_ball_covering(int d, int r, int k, int p, double delta, std::uint64_t seed) {
  check_dim(d);
  require(r >= 0 && r <= d, "r must lie in [0, d]");
  require(k >= ceil_half(r) && k <= d, "k must satisfy ceil(r/2) <= k <= d");
  require(p >= 1, "p must be at least 1");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");

  BallCoveringParams bp;
  bp.d = d;
  bp.r = r;
  bp.k = k;
  bp.p = p;
  bp.delta = delta;
  if (d <= kBallCoveringExactDim || k == 0) {
    bp.ell_k = Rational(to_big(cube_edge_count_at_most(d, r)), to_big(ball_edge_count_at_most(d, k, r)));
    bp.ell_k_exact = true;
  } else {
    const int h = ceil_half(r);
    bp.ell_k = Rational(pow_big(BigInt(2 * d), static_cast<unsigned>(h)) * (BigInt(1) << (d + 1)),
                        pow_big(BigInt(k), static_cast<unsigned>(h)) * to_big(ball_volume(d, k)));
    bp.ell_k_exact = false;
  }
  bp.balls_per_processor = balls_per_processor(bp.ell_k, p, delta);
  if (static_cast<u128>(bp.balls_per_processor) * static_cast<u128>(p) > kMaxBallCenters) {
    throw GuardExceeded("ball-covering: L*p = " + to_string(static_cast<u128>(bp.balls_per_processor) * p) +
                        " centers exceeds 2^24");
  }
  return CoveringSampler(bp, seed);
}

CoveringSampler make_universal(int d, std::uint64_t p_requested, std::uint64_t seed) {
  check_dim(d);
  require(p_requested >= 1, "p must be at least 1");
  std::uint64_t q = 2;
  while (q * (q - 1) / 2 < p_requested) ++q;
  require(q <= 65536, "p too large for the universal protocol");
  UniversalParams up;
  up.d = d;
  up.p_requested = p_requested;
  up.q = static_cast<int>(q);
  up.p = static_cast<int>(q * (q - 1) / 2);
  return CoveringSampler(up, seed);
}

CoveringSampler make_ball_hashing2(int d, int r, int p, std::uint64_t seed) {
  check_dim(d);
  if (d > kEnumerationMaxDim) throw GuardExceeded("ball-hashing-2: dimension above 24");
  require(r >= 0 && r <= d, "r must lie in [0, d]");
  require(p >= 1, "p must be at least 1");
  BallHashing2Params bp;
  bp.d = d;
  bp.r = r;
  bp.p = p;
  bp.radius = ceil_half(r);
  return CoveringSampler(bp, seed);
}

CoveringSampler make_subcube_splitting(int d, int r, int k, int p, std::uint64_t seed, SubcubeGrid grid) {
  check_dim(d);
  require(k >= 1 && k < d, "subcube dimension k must satisfy 1 <= k < d");
  require(r >= 0 && r <= d, "r must lie in [0, d]");
  require(p >= 1, "p must be at least 1");
  SubcubeSplittingParams sp;
  sp.d = d;
  sp.r = r;
  sp.k = k;
  sp.p = p;
  sp.grid = grid;
  u128 fan_out = 0;
  if (grid == SubcubeGrid::Prefix) {
    fan_out = ball_volume(d - k, std::min(r, d - k));
  } else {
    sp.segments = (d + k - 1) / k;
    sp.free_segments = std::min(r, sp.segments);
    fan_out = binomial(sp.segments, sp.free_segments);
  }
  if (fan_out > kSubcubeMaxFanOut) throw GuardExceeded("subcube-splitting: fan-out above 2^16");
  sp.reducers_per_point = static_cast<std::uint64_t>(fan_out);
  return CoveringSampler(sp, seed);
}

CoveringSampler make_anchor_points(int d, int r, int p, std::shared_ptr<const CoveringCode> code,
                                   std::uint64_t seed) {
  check_dim(d);
  require(code != nullptr, "anchor-points needs a covering code");
  require(p >= 1, "p must be at least 1");
  if (code->d() != d) throw DimensionMismatch("covering code dimension differs from d");
  require(code->r() == r, "covering code radius differs from r");
  require(!code->points().empty(), "covering code is empty");
  AnchorPointsParams ap;
  ap.d = d;
  ap.r = r;
  ap.p = p;
  ap.reach = std::min(d, (3 * r + 1) / 2);
  ap.code = std::move(code);
  return CoveringSampler(ap, seed);
}

CoveringDraw::CoveringDraw(CoveringSampler sampler, std::uint64_t trial_index)
    : sampler_(std::move(sampler)),
      trial_index_(trial_index),
      seed_(derive_seed(sampler_.base_seed(), Stream::CoveringDraw, trial_index)) {
  if (const auto* bp = std::get_if<BallCoveringParams>(&sampler_.params())) {
    Rng rng(seed_);
    centers_.resize(bp->total_balls());
    for (auto& c : centers_) c = rng.bits(bp->d);
    if (ball_volume(bp->d, bp->k) < static_cast<u128>(centers_.size())) {
      scan_by_ball_ = true;
      center_index_.reserve(centers_.size());
      for (std::size_t j = 0; j < centers_.size(); ++j) {
        center_index_.emplace_back(centers_[j], static_cast<std::uint32_t>(j));
      }
      std::sort(center_index_.begin(), center_index_.end());
    }
  }
}

bool CoveringDraw::covered_by_some_ball(std::uint64_t word) const {
  const auto* bp = std::get_if<BallCoveringParams>(&sampler_.params());
  if (!bp) return true;
  for (auto c : centers_) {
    if (word_distance(c, word) <= bp->k) return true;
  }
  return false;
}

void CoveringDraw::assign_into(std::uint64_t x, std::vector<int>& out) const {
  out.clear();
  std::visit(
      [&](const auto& prm) {
        using T = std::decay_t<decltype(prm)>;
        if constexpr (std::is_same_v<T, BallCoveringParams>) {
          const auto p = static_cast<std::uint64_t>(prm.p);
          if (scan_by_ball_) {
            for_each_in_ball(x, prm.d, prm.k, [&](std::uint64_t z) {
              auto it = std::lower_bound(center_index_.begin(), center_index_.end(),
                                         std::pair<std::uint64_t, std::uint32_t>{z, 0});
              for (; it != center_index_.end() && it->first == z; ++it) out.push_back(static_cast<int>(it->second % p));
            });
          } else {
            for (std::size_t j = 0; j < centers_.size(); ++j) {
              if (word_distance(centers_[j], x) <= prm.k) out.push_back(static_cast<int>(j % p));
            }
          }
          if (out.empty()) out.push_back(hash_to(seed_ ^ kFallbackSalt, x, prm.p));
        } else if constexpr (std::is_same_v<T, UniversalParams>) {
          const int h = hash_to(seed_, x, prm.q);
          for (int i = 0; i < prm.q; ++i) {
            if (i != h) out.push_back(pair_index(h, i));
          }
        } else if constexpr (std::is_same_v<T, BallHashing2Params>) {
          for_each_in_ball(x, prm.d, prm.radius, [&](std::uint64_t z) { out.push_back(hash_to(seed_, z, prm.p)); });
        } else if constexpr (std::is_same_v<T, SubcubeSplittingParams>) {
          if (prm.grid == SubcubeGrid::Prefix) {
            const int width = prm.d - prm.k;
            const std::uint64_t prefix = x >> prm.k;
            for_each_in_ball(prefix, width, std::min(prm.r, width),
                             [&](std::uint64_t u) { out.push_back(hash_to(seed_ ^ kSubcubeSalt, u, prm.p)); });
          } else {
            std::uint64_t subset_id = 0;
            for_each_mask_of_weight(prm.segments, prm.free_segments, [&](std::uint64_t segs) {
              std::uint64_t cleared = x;
              for (int s = 0; s < prm.segments; ++s) {
                if ((segs >> s) & 1u) cleared &= ~segment_mask(s, prm.k, prm.d);
              }
              const std::uint64_t key = mix64(cleared ^ mix64(subset_id));
              out.push_back(hash_to(seed_ ^ kSubcubeSalt, key, prm.p));
              ++subset_id;
            });
          }
        } else if constexpr (std::is_same_v<T, AnchorPointsParams>) {
          const PointSet& code = prm.code->points();
          const u128 ball = ball_volume(prm.d, prm.reach);
          if (static_cast<u128>(code.size()) <= ball) {
            for (auto c : code) {
              if (word_distance(c, x) <= prm.reach) out.push_back(hash_to(seed_, c, prm.p));
            }
          } else {
            for_each_in_ball(x, prm.d, prm.reach, [&](std::uint64_t z) {
              if (code.contains(z)) out.push_back(hash_to(seed_, z, prm.p));
            });
          }
          if (out.empty()) out.push_back(hash_to(seed_ ^ kFallbackSalt, x, prm.p));
        }
      },
      sampler_.params());
  sort_unique(out);
}

std::vector<int> CoveringDraw::assign(const BitPoint& x) const {
  if (x.dim() != sampler_.dim()) {
    throw DimensionMismatch("assign: point dimension " + std::to_string(x.dim()) + ", protocol dimension " +
                            std::to_string(sampler_.dim()));
  }
  std::vector<int> out;
  assign_into(x.bits(), out);
  return out;
}

std::vector<PointSet> CoveringDraw::materialize(bool with_fallback) const {
  const int d = sampler_.dim();
  if (d > kMaterializeMaxDim) throw GuardExceeded("materialize: dimension above 20");
  const int p = processors();
  std::vector<std::vector<std::uint64_t>> sets(static_cast<std::size_t>(p));
  const auto* bp = std::get_if<BallCoveringParams>(&sampler_.params());
  if (bp && !with_fallback) {
    for (std::size_t j = 0; j < centers_.size(); ++j) {
      auto& target = sets[j % static_cast<std::size_t>(p)];
      for_each_in_ball(centers_[j], d, bp->k, [&](std::uint64_t w) { target.push_back(w); });
    }
  } else {
    std::vector<int> procs;
    const std::uint64_t n = std::uint64_t{1} << d;
    for (std::uint64_t x = 0; x < n; ++x) {
      assign_into(x, procs);
      for (int i : procs) sets[static_cast<std::size_t>(i)].push_back(x);
    }
  }
  std::vector<PointSet> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.emplace_back(d, std::move(s));
  return out;
}

std::vector<PointSet> CoveringDraw::restrict_to(const PointSet& S) const {
  if (S.dim() != sampler_.dim()) throw DimensionMismatch("restrict_to: set dimension differs from protocol");
  std::vector<std::vector<std::uint64_t>> sets(static_cast<std::size_t>(processors()));
  std::vector<int> procs;
  for (auto x : S) {
    assign_into(x, procs);
    for (int i : procs) sets[static_cast<std::size_t>(i)].push_back(x);
  }
  std::vector<PointSet> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.emplace_back(S.dim(), std::move(s));
  return out;
}

CoveringDraw draw(const CoveringSampler& sampler, std::uint64_t trial_index) {
  return CoveringDraw(sampler, trial_index);
}

std::vector<int> assign(const CoveringDraw& d, const BitPoint& x) { return d.assign(x); }

void dump_draw(const CoveringDraw& d, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto sets = d.materialize(true);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    write_point_set(dir / ("A_" + std::to_string(i)), sets[i]);
  }
}

}  // namespace simjoin
