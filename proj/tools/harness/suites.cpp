#include "suites.hpp"

#include <algorithm>
#include <cmath>

#include "simjoin/covering.hpp"
#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/inputs.hpp"
#include "simjoin/paths.hpp"
#include "simjoin/pruning.hpp"
#include "simjoin/rng.hpp"
#include "simjoin/verification.hpp"

namespace simjoin::harness {

namespace {

PointSet random_subset(int d, double density, Rng& rng) {
  std::vector<std::uint64_t> words;
  const std::uint64_t n = std::uint64_t{1} << d;
  for (std::uint64_t x = 0; x < n; ++x) {
    if (rng.uniform01() < density) words.push_back(x);
  }
  return PointSet(d, std::move(words));
}

// Points whose coordinates at positions >= dim are zero.
PointSet subcube(int d, int dim) {
  std::vector<std::uint64_t> words(std::size_t{1} << dim);
  for (std::size_t i = 0; i < words.size(); ++i) words[i] = i;
  return PointSet(d, std::move(words));
}

VerificationReport ball_ratio_suite(const SuiteLimits& lim) {
  VerificationReport rep;
  for (int d = 2; d <= std::min(40, lim.max_d); ++d) {
    for (int R = 2; 2 * R <= d + 1; ++R) {
      for (int r = 1; r < R; ++r) rep.add(ball_ratio_check(d, R, r));
    }
  }
  return rep;
}

VerificationReport ball_degree_suite(const SuiteLimits& lim) {
  VerificationReport rep;
  for (int d = 1; d <= std::min(12, lim.max_d); ++d) {
    for (int r = 1; r <= std::min(4, d); ++r) {
      for (int k = ceil_half(r); k <= d; ++k) rep.add(verify_ball_degree(d, k, r));
    }
  }
  return rep;
}

VerificationReport lk_suite(const SuiteLimits& lim) {
  VerificationReport rep;
  for (int d = 1; d <= std::min(14, lim.max_d); ++d) {
    for (int r = 1; r <= std::min(4, d); ++r) {
      const int h = ceil_half(r);
      for (int k = h; 2 * k <= d - 2 * h; ++k) rep.add(verify_lk_bound(d, k, r));
    }
  }
  return rep;
}

VerificationReport path_suite(const std::string& id, const SuiteLimits& lim) {
  VerificationReport rep;
  for (const auto& inst : path_instances(lim)) {
    CheckResult c;
    if (id == "sid") {
      c = verify_sid(inst.set, inst.R, inst.r, inst.b);
    } else if (id == "paths-to-pairs") {
      if (!sid_precondition(inst.set, inst.R, inst.r, inst.b)) continue;
      c = verify_paths_to_pairs(inst.set, inst.R, inst.r, inst.b);
    } else {
      c = verify_path_composition(inst.set, inst.R, inst.r, inst.b);
    }
    c.params = inst.label + "," + c.params;
    rep.add(std::move(c));
  }
  return rep;
}

VerificationReport pruning_suite(const SuiteLimits& lim) {
  VerificationReport rep;
  for (int d : {4, 6, 8}) {
    if (d > lim.max_d) continue;
    for (int r : {1, 2}) {
      for (auto& t : random_tuples(d, r, 20, lim.seed + static_cast<std::uint64_t>(100 * d + r))) {
        const PrunedTuple pruned = prune(t.sets, r);
        bool subsets = true;
        for (std::size_t i = 0; i < t.sets.size(); ++i) {
          for (auto x : pruned.sets[i]) subsets = subsets && t.sets[i].contains(x);
        }
        const bool same_pairs = covered_pairs(t.sets, r) == covered_pairs(pruned.sets, r);
        const std::uint64_t w = pruned.max_multiplicity();
        const u128 cap = ball_volume(d, r) - 1;
        CheckResult c;
        c.id = "pruning";
        c.params = t.label + ",d=" + std::to_string(d) + ",r=" + std::to_string(r) + ",p=" + std::to_string(t.sets.size());
        c.lhs = std::to_string(w);
        c.rhs = to_string(cap);
        c.status = subsets && same_pairs && static_cast<u128>(w) <= cap ? CheckStatus::Pass : CheckStatus::Fail;
        c.note = std::string(same_pairs ? "pairs preserved" : "pairs changed") + (subsets ? "" : ",not a subset") +
                 ",removed=" + std::to_string(pruned.removed.size());
        rep.add(std::move(c));
      }
    }
  }
  return rep;
}

VerificationReport max_to_er_suite(const SuiteLimits& lim) {
  VerificationReport rep;
  struct Setting {
    int d, r;
    std::vector<std::uint64_t> ns;
  };
  const std::vector<Setting> settings = {{10, 2, {60, 200, 386}}, {12, 2, {80, 500}}, {12, 3, {300}}};
  for (const auto& s : settings) {
    if (s.d > lim.max_d) continue;
    const auto tuples = random_tuples(s.d, s.r, 4, lim.seed + static_cast<std::uint64_t>(1000 + s.d * 10 + s.r));
    for (const auto& t : tuples) {
      const PrunedTuple pruned = prune(t.sets, s.r);
      for (auto n : s.ns) {
        CheckResult c = verify_max_to_er(pruned.sets, n, s.r, std::max(lim.samples, kMinMonteCarloSamples),
                                         lim.seed ^ n);
        c.params = t.label + "," + c.params;
        rep.add(std::move(c));
      }
    }
  }
  return rep;
}

std::vector<TupleInstance> density_tuples(int d, int r, std::uint64_t seed) {
  std::vector<TupleInstance> out;
  out.push_back({"full-cube", {full_cube(d)}});
  struct Draw {
    int p, k;
    double delta;
  };
  const int k0 = std::max(ceil_half(r), r + 1);
  for (const Draw& w : {Draw{2, k0, 0.9}, Draw{4, k0, 0.99}, Draw{3, k0 + 1, 0.9}, Draw{2, k0 + 1, 0.5}}) {
    const auto sampler = make_ball_covering(d, r, w.k, w.p, w.delta, seed);
    auto sets = draw(sampler, 0).materialize();
    out.push_back({"ball-covering(p=" + std::to_string(w.p) + ",k=" + std::to_string(w.k) + ",delta=" +
                       std::to_string(w.delta).substr(0, 4) + ")",
                   std::move(sets)});
  }
  return out;
}

VerificationReport exact_density_suite(const SuiteLimits& lim) {
  VerificationReport rep;
  for (int d : {16, 17, 18}) {
    if (d > lim.max_d) continue;
    const double gate = 4.0 / std::sqrt(static_cast<double>(d));
    std::vector<double> deltas = {1.0};
    if (gate < 0.99) deltas.insert(deltas.begin(), std::ceil(gate * 1000.0) / 1000.0);
    for (int r = 1; 2 * r * r <= d; ++r) {
      for (const auto& t : density_tuples(d, r, lim.seed + static_cast<std::uint64_t>(d * 10 + r))) {
        for (double delta : deltas) {
          CheckResult c = verify_exact_density(t.sets, r, delta);
          c.params = t.label + "," + c.params;
          rep.add(std::move(c));
        }
      }
    }
  }
  return rep;
}

VerificationReport edge_sampling_suite(const std::string& id, const SuiteLimits& lim) {
  VerificationReport rep;
  struct Setting {
    int d, r;
    std::uint64_t n;
  };
  for (const Setting& s : {Setting{8, 1, 30}, Setting{10, 2, 100}, Setting{10, 3, 200}}) {
    if (s.d > lim.max_d) continue;
    auto tuples = random_tuples(s.d, s.r, 6, lim.seed + static_cast<std::uint64_t>(2000 + s.d));
    for (const auto& t : tuples) {
      auto res = check_uniform_edge_sampling(t.sets, s.n, s.r, lim.samples, lim.seed);
      CheckResult c = id == "edge-sampling" ? res.uniform : res.stratified;
      c.params = t.label + "," + c.params;
      rep.add(std::move(c));
    }
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {"ball-ratio",     "ball-degree",      "lk-bound",
                                               "sid",            "paths-to-pairs",   "path-composition",
                                               "pruning",        "max-to-er",        "exact-density",
                                               "edge-sampling",  "edge-sampling-stratified"};
  return ids;
}

bool is_check_id(const std::string& id) {
  const auto& ids = check_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

VerificationReport run_suite(const std::string& id, const SuiteLimits& limits) {
  if (id == "ball-ratio") return ball_ratio_suite(limits);
  if (id == "ball-degree") return ball_degree_suite(limits);
  if (id == "lk-bound") return lk_suite(limits);
  if (id == "sid" || id == "paths-to-pairs" || id == "path-composition") return path_suite(id, limits);
  if (id == "pruning") return pruning_suite(limits);
  if (id == "max-to-er") return max_to_er_suite(limits);
  if (id == "exact-density") return exact_density_suite(limits);
  if (id == "edge-sampling" || id == "edge-sampling-stratified") return edge_sampling_suite(id, limits);
  throw PreconditionError("unknown check id '" + id + "'");
}

std::vector<PathInstance> path_instances(const SuiteLimits& limits) {
  std::vector<PathInstance> out;
  for (int d : {6, 8, 10}) {
    if (d > limits.max_d) continue;
    std::vector<std::pair<std::string, PointSet>> sets;
    sets.emplace_back("full-cube", full_cube(d));
    for (int k = 1; k <= d / 2 + 1; ++k) sets.emplace_back("ball(k=" + std::to_string(k) + ")", enumerate_ball(BitPoint::zero(d), k));
    sets.emplace_back("subcube(" + std::to_string(d - 1) + ")", subcube(d, d - 1));
    sets.emplace_back("subcube(" + std::to_string(d - 2) + ")", subcube(d, d - 2));
    Rng rng(derive_seed(limits.seed, Stream::Tuples, static_cast<std::uint64_t>(d)));
    for (double density : {0.3, 0.5, 0.8, 0.9, 0.95}) {
      for (int rep = 0; rep < 3; ++rep) {
        sets.emplace_back("random(" + std::to_string(density).substr(0, 4) + ")", random_subset(d, density, rng));
      }
    }
    for (const auto& [label, set] : sets) {
      for (int r = 1; r <= 3; ++r) {
        for (int steps = 2; steps <= 3; ++steps) {
          for (int b = 0; b <= floor_half(r); ++b) out.push_back({label, set, steps * r, r, b});
        }
      }
    }
  }
  return out;
}

std::vector<TupleInstance> random_tuples(int d, int r, int count, std::uint64_t seed) {
  std::vector<TupleInstance> out;
  Rng rng(derive_seed(seed, Stream::Tuples, 0));
  for (int i = 0; i < count; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    switch (i % 5) {
      case 0: {
        const int p = 1 + static_cast<int>(rng.below(6));
        const double density = 0.1 + 0.1 * static_cast<double>(rng.below(5));
        TupleInstance t{"random-sets", {}};
        for (int j = 0; j < p; ++j) t.sets.push_back(random_subset(d, density, rng));
        out.push_back(std::move(t));
        break;
      }
      case 1:
      case 3: {
        const int p = 2 + static_cast<int>(rng.below(4));
        const int k = std::max(1, ceil_half(r)) + static_cast<int>(rng.below(2));
        const double delta = i % 2 ? 0.9 : 0.5;
        const auto sampler = make_ball_covering(d, r, k, p, delta, seed + idx);
        out.push_back({"ball-covering", draw(sampler, idx).materialize()});
        break;
      }
      case 2: {
        const PointSet A = random_subset(d, 0.3, rng);
        out.push_back({"duplicate", {A, A}});
        break;
      }
      case 4: {
        const int p = 2 + static_cast<int>(rng.below(3));
        const auto sampler = make_subcube_splitting(d, r, std::max(1, d / 2), p, seed + idx);
        out.push_back({"subcube-splitting", draw(sampler, idx).materialize()});
        break;
      }
    }
  }
  return out;
}

}  // namespace simjoin::harness
