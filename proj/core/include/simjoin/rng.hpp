#pragma once

#include <cstdint>
#include <random>

#include "simjoin/combinatorics.hpp"

namespace simjoin {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded hash of a packed point; the ideal random map the protocols assume.
constexpr std::uint64_t hash_word(std::uint64_t seed, std::uint64_t word) noexcept {
  return mix64(mix64(seed) ^ (word * 0xd6e8feb86659fd93ULL));
}

// Stream tags keep draws, inputs and Monte Carlo checks independent.
enum class Stream : std::uint64_t {
  CoveringDraw = 1,
  Input = 2,
  CodeOrder = 3,
  MonteCarlo = 4,
  Tuples = 5,
};

constexpr std::uint64_t derive_seed(std::uint64_t base, Stream stream, std::uint64_t index) noexcept {
  return mix64(mix64(base ^ mix64(static_cast<std::uint64_t>(stream))) + index);
}

/// Deterministic generator. The bounded and real-valued helpers are written
/// out here so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform point of {0,1}^dim.
  std::uint64_t bits(int dim) {
    const std::uint64_t w = engine_();
    return dim >= 64 ? w : w & ((std::uint64_t{1} << dim) - 1);
  }

  /// Uniform integer in [0, bound), bound >= 1 (Lemire's method).
  std::uint64_t below(std::uint64_t bound) {
    u128 m = static_cast<u128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<u128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform integer in [0, bound) for 128-bit bounds, by rejection.
  u128 below128(u128 bound) {
    if (bound <= ~std::uint64_t{0}) return below(static_cast<std::uint64_t>(bound));
    int bits = 128;
    while (bits > 0 && !((bound - 1) >> (bits - 1))) --bits;
    const u128 mask = bits >= 128 ? ~u128{0} : (u128{1} << bits) - 1;
    for (;;) {
      const u128 v = ((static_cast<u128>(engine_()) << 64) | engine_()) & mask;
      if (v < bound) return v;
    }
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool coin() { return engine_() >> 63; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace simjoin
