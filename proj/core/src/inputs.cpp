#include "simjoin/inputs.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "simjoin/combinatorics.hpp"
#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/rng.hpp"

namespace simjoin {

namespace {

constexpr std::uint64_t kSmallBall = std::uint64_t{1} << 16;

// Uniform subset of `count` coordinates out of `dim` (Floyd).
std::uint64_t random_support(Rng& rng, int dim, int count) {
  std::uint64_t mask = 0;
  for (int j = dim - count; j < dim; ++j) {
    const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
    const std::uint64_t bit = std::uint64_t{1} << t;
    mask |= (mask & bit) ? (std::uint64_t{1} << j) : bit;
  }
  return mask;
}

// Uniform point of Ball(center, R): shell chosen with weight C(d, i).
std::uint64_t random_ball_point(Rng& rng, std::uint64_t center, int d, int R, u128 volume) {
  u128 t = rng.below128(volume);
  int shell = 0;
  for (; shell < R; ++shell) {
    const u128 c = binomial(d, shell);
    if (t < c) break;
    t -= c;
  }
  return center ^ random_support(rng, d, shell);
}

PointSet subset_of_ball(Rng& rng, std::uint64_t center, std::uint64_t n, int d, int R) {
  const u128 volume = ball_volume(d, R);
  if (static_cast<u128>(n) > volume) throw PreconditionError("more points requested than the ball holds");
  const bool sparse = static_cast<u128>(n) * 2 <= volume && volume > kSmallBall;
  if (sparse) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> words;
    words.reserve(n);
    while (words.size() < n) {
      const std::uint64_t w = random_ball_point(rng, center, d, R, volume);
      if (seen.insert(w).second) words.push_back(w);
    }
    return PointSet(d, std::move(words));
  }
  if (volume > kBallEnumerationMax) throw GuardExceeded("hard input: ball larger than 2^24 and too dense for rejection");
  std::vector<std::uint64_t> ball;
  ball.reserve(static_cast<std::size_t>(volume));
  for_each_in_ball(center, d, R, [&](std::uint64_t w) { ball.push_back(w); });
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.below(ball.size() - i);
    std::swap(ball[i], ball[j]);
  }
  ball.resize(n);
  return PointSet(d, std::move(ball));
}

GeneratedInput half_balls(std::uint64_t balls, int d, int r, Rng& rng) {
  const int h = floor_half(std::max(r, 0));
  GeneratedInput out{PointSet(d), {}, h};
  std::vector<std::uint64_t> words;
  for (std::uint64_t b = 0; b < balls; ++b) {
    const std::uint64_t c = rng.bits(d);
    out.centers.push_back(c);
    for_each_in_ball(c, d, h, [&](std::uint64_t w) {
      if (rng.coin()) words.push_back(w);
    });
  }
  out.set = PointSet(d, std::move(words));
  return out;
}

void check_ball_half(int d, int r) {
  check_dim(d);
  if (d > kEnumerationMaxDim) throw GuardExceeded("ball-half inputs: dimension above 24");
  if (r < 0 || r > d) throw PreconditionError("r must lie in [0, d]");
}

}  // namespace

int radius_for(std::uint64_t n, int d, int r) {
  check_dim(d);
  if (r < 1 || r > d) throw PreconditionError("radius_for: r must lie in [1, d]");
  if (n < 2) {
    throw PreconditionError("radius_for: lower side fails, n = " + std::to_string(n) +
                            " is not above B(d,0) = 1");
  }
  if (static_cast<u128>(n) > (u128{1} << (d - 1))) {
    throw PreconditionError("radius_for: n = " + std::to_string(n) + " exceeds 2^(d-1)");
  }
  for (int R = r; R <= d; R += r) {
    if (static_cast<u128>(n) <= ball_volume(d, R)) return R;
  }
  const int top = d / r * r;
  throw PreconditionError("radius_for: upper side fails, n = " + std::to_string(n) + " exceeds B(d," +
                          std::to_string(top) + ") = " + to_string(ball_volume(d, top)));
}

GeneratedInput sample_hard_at(std::uint64_t center, std::uint64_t n, int d, int r, std::uint64_t seed,
                              std::uint64_t trial) {
  const int R = radius_for(n, d, r);
  if (center & ~dim_mask(d)) throw PreconditionError("center has bits beyond d");
  Rng rng(derive_seed(seed, Stream::Input, trial));
  return GeneratedInput{subset_of_ball(rng, center, n, d, R), {center}, R};
}

GeneratedInput sample_hard(std::uint64_t n, int d, int r, std::uint64_t seed, std::uint64_t trial) {
  const int R = radius_for(n, d, r);
  Rng rng(derive_seed(seed, Stream::Input, trial));
  const std::uint64_t center = rng.bits(d);
  return GeneratedInput{subset_of_ball(rng, center, n, d, R), {center}, R};
}

PointSet sample_uniform(std::uint64_t n, int d, std::uint64_t seed, std::uint64_t trial) {
  check_dim(d);
  if (d < 64 && n > (std::uint64_t{1} << d)) {
    throw PreconditionError("sample_uniform: n = " + std::to_string(n) + " exceeds 2^d");
  }
  Rng rng(derive_seed(seed, Stream::Input, trial));
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(n);
  if (d == 64) {
    while (chosen.size() < n) chosen.insert(rng.next());
  } else {
    const std::uint64_t N = std::uint64_t{1} << d;
    for (std::uint64_t j = N - n; j < N; ++j) {
      const std::uint64_t t = rng.below(j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
  }
  return PointSet(d, std::vector<std::uint64_t>(chosen.begin(), chosen.end()));
}

GeneratedInput sample_single_ball_half(int d, int r, std::uint64_t seed, std::uint64_t trial) {
  check_ball_half(d, r);
  Rng rng(derive_seed(seed, Stream::Input, trial));
  return half_balls(1, d, r, rng);
}

GeneratedInput sample_multi_ball_half(std::uint64_t n, int d, int r, std::uint64_t seed, std::uint64_t trial) {
  check_ball_half(d, r);
  const u128 volume = ball_volume(d, floor_half(r));
  if (n == 0) throw PreconditionError("sample_multi_ball_half: zero balls requested");
  if (static_cast<u128>(n) < volume) {
    throw PreconditionError("sample_multi_ball_half: n = " + std::to_string(n) + " is below B(d, floor(r/2)) = " +
                            to_string(volume));
  }
  const auto balls = static_cast<std::uint64_t>((static_cast<u128>(n) + volume - 1) / volume);
  Rng rng(derive_seed(seed, Stream::Input, trial));
  return half_balls(balls, d, r, rng);
}

std::string to_string(InputKind kind) {
  switch (kind) {
    case InputKind::Uniform: return "uniform";
    case InputKind::Hard: return "hard";
    case InputKind::SingleBallHalf: return "single-ball-half";
    case InputKind::MultiBallHalf: return "multi-ball-half";
  }
  return "unknown";
}

InputKind parse_input_kind(std::string_view name) {
  for (auto k : {InputKind::Uniform, InputKind::Hard, InputKind::SingleBallHalf, InputKind::MultiBallHalf}) {
    if (to_string(k) == name) return k;
  }
  throw PreconditionError("unknown input kind '" + std::string(name) + "'");
}

InputGenerator::InputGenerator(InputKind kind, std::uint64_t n, int d, int r, std::uint64_t base_seed)
    : kind_(kind), n_(n), d_(d), r_(r), base_seed_(base_seed) {
  check_dim(d);
  switch (kind) {
    case InputKind::Uniform:
      if (d < 64 && n > (std::uint64_t{1} << d)) throw PreconditionError("uniform input: n exceeds 2^d");
      break;
    case InputKind::Hard: {
      const int R = radius_for(n, d, r);
      const u128 volume = ball_volume(d, R);
      if (volume > kBallEnumerationMax && static_cast<u128>(n) * 2 > volume) {
        throw GuardExceeded("hard input: ball larger than 2^24 and too dense for rejection");
      }
      break;
    }
    case InputKind::SingleBallHalf:
      check_ball_half(d, r);
      break;
    case InputKind::MultiBallHalf:
      check_ball_half(d, r);
      if (n == 0 || static_cast<u128>(n) < ball_volume(d, floor_half(r))) {
        throw PreconditionError("multi-ball-half input: n must be at least B(d, floor(r/2))");
      }
      break;
  }
}

GeneratedInput InputGenerator::generate(std::uint64_t trial) const {
  switch (kind_) {
    case InputKind::Uniform: return GeneratedInput{sample_uniform(n_, d_, base_seed_, trial), {}, -1};
    case InputKind::Hard: return sample_hard(n_, d_, r_, base_seed_, trial);
    case InputKind::SingleBallHalf: return sample_single_ball_half(d_, r_, base_seed_, trial);
    case InputKind::MultiBallHalf: return sample_multi_ball_half(n_, d_, r_, base_seed_, trial);
  }
  throw PreconditionError("unknown input kind");
}

}  // namespace simjoin
