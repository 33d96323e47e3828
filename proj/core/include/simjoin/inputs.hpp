#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "simjoin/bit_point.hpp"

namespace simjoin {

/// The unique multiple R of r with B(d,R-r) < n <= B(d,R). Requires
/// 2 <= n <= 2^{d-1} and 1 <= r <= d; throws PreconditionError naming the
/// side of the sandwich that cannot be met.
int radius_for(std::uint64_t n, int d, int r);

/// A generated input together with the latent variables that produced it.
struct GeneratedInput {
  PointSet set;
  std::vector<std::uint64_t> centers;  // ball centers, empty for uniform sets
  int radius = -1;                     // ball radius, -1 for uniform sets
};

inline constexpr std::uint64_t kBallEnumerationMax = std::uint64_t{1} << 24;

/// n points drawn as a uniform n-subset of Ball(x, R) for a uniform center x.
GeneratedInput sample_hard(std::uint64_t n, int d, int r, std::uint64_t seed, std::uint64_t trial);
/// Same with the center fixed.
GeneratedInput sample_hard_at(std::uint64_t center, std::uint64_t n, int d, int r, std::uint64_t seed,
                              std::uint64_t trial);

/// n distinct uniform points of {0,1}^d.
PointSet sample_uniform(std::uint64_t n, int d, std::uint64_t seed, std::uint64_t trial);

/// One random ball of radius floor(r/2), each point kept with probability 1/2.
GeneratedInput sample_single_ball_half(int d, int r, std::uint64_t seed, std::uint64_t trial);
/// ceil(n / B(d, floor(r/2))) independent half-subsampled balls of radius
/// floor(r/2). Requires n >= B(d, floor(r/2)).
GeneratedInput sample_multi_ball_half(std::uint64_t n, int d, int r, std::uint64_t seed, std::uint64_t trial);

enum class InputKind { Uniform, Hard, SingleBallHalf, MultiBallHalf };

std::string to_string(InputKind kind);
InputKind parse_input_kind(std::string_view name);

class InputGenerator {
 public:
  /// Validates the parameters up front (radius_for for Hard, guards for the
  /// ball-half kinds). `n` is ignored by SingleBallHalf.
  InputGenerator(InputKind kind, std::uint64_t n, int d, int r, std::uint64_t base_seed);

  InputKind kind() const noexcept { return kind_; }
  std::uint64_t n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  int r() const noexcept { return r_; }
  std::uint64_t base_seed() const noexcept { return base_seed_; }

  GeneratedInput generate(std::uint64_t trial) const;

 private:
  InputKind kind_;
  std::uint64_t n_;
  int d_;
  int r_;
  std::uint64_t base_seed_;
};

}  // namespace simjoin
