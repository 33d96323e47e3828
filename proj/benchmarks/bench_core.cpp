#include <benchmark/benchmark.h>

#include "simjoin/covering.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/inputs.hpp"
#include "simjoin/metrics.hpp"
#include "simjoin/paths.hpp"
#include "simjoin/pruning.hpp"

using namespace simjoin;

static void BM_BruteForceJoin(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const PointSet S = sample_hard(n, 16, 2, 1, 0).set;
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_join(S, 2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BruteForceJoin)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNSquared);

static void BM_BallCoveringDraw(benchmark::State& state) {
  const auto sampler = make_ball_covering(16, 2, 2, static_cast<int>(state.range(0)), 0.9, 1);
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(draw(sampler, t++).centers().size());
}
BENCHMARK(BM_BallCoveringDraw)->Arg(8)->Arg(64);

static void BM_RunTrial(benchmark::State& state) {
  const auto kind = static_cast<ProtocolKind>(state.range(0));
  const int d = 16, r = 2, p = 16;
  const CoveringSampler sampler = kind == ProtocolKind::BallCovering ? make_ball_covering(d, r, 2, p, 0.9, 1)
                                  : kind == ProtocolKind::Universal  ? make_universal(d, p, 1)
                                                                     : make_ball_hashing2(d, r, p, 1);
  const auto dr = draw(sampler, 0);
  const PointSet S = sample_hard(4096, d, r, 1, 0).set;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(dr, S, r).max_load);
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_RunTrial)
    ->Arg(static_cast<int>(ProtocolKind::BallCovering))
    ->Arg(static_cast<int>(ProtocolKind::Universal))
    ->Arg(static_cast<int>(ProtocolKind::BallHashing2))
    ->Unit(benchmark::kMillisecond);

static void BM_CountPaths(benchmark::State& state) {
  const PointSet A = full_cube(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_rb_paths(A, 4, 2, 1).count);
}
BENCHMARK(BM_CountPaths)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_Prune(benchmark::State& state) {
  const auto sets = draw(make_ball_covering(12, 2, 2, 8, 0.9, 3), 0).materialize();
  for (auto _ : state) benchmark::DoNotOptimize(prune(sets, 2).removed.size());
}
BENCHMARK(BM_Prune)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
