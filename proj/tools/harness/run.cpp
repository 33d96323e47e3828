#include "run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>

#include "simjoin/covering_code.hpp"
#include "simjoin/errors.hpp"

#ifndef SIMJOIN_VERSION
#define SIMJOIN_VERSION "v0.0.0-unknown"
#endif

namespace simjoin::harness {

using nlohmann::json;

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

template <class T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return num(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string describe(const SweepPoint& pt) {
  std::string s = "d=" + std::to_string(pt.d) + " n=" + std::to_string(pt.n) + " p=" + std::to_string(pt.p);
  if (pt.k) s += " k=" + std::to_string(*pt.k);
  if (pt.delta) s += " delta=" + num(*pt.delta);
  return s;
}

int subcube_dimension(const SweepPoint& pt) {
  const double ratio = static_cast<double>(pt.n) / pt.p;
  const int k = ratio >= 2.0 ? static_cast<int>(std::floor(std::log2(ratio))) : 1;
  return std::clamp(k, 1, pt.d - 1);
}

class CodeCache {
 public:
  std::shared_ptr<const CoveringCode> get(int d, int r, std::uint64_t seed) {
    auto& slot = codes_[{d, r}];
    if (!slot) slot = std::make_shared<const CoveringCode>(greedy_covering_code(d, r, seed));
    return slot;
  }

 private:
  std::map<std::pair<int, int>, std::shared_ptr<const CoveringCode>> codes_;
};

CoveringSampler build_sampler(const ExperimentConfig& cfg, const SweepPoint& pt, ResultRow& row, CodeCache& codes) {
  const auto& proto = cfg.protocol;
  const int r = cfg.r;
  switch (proto.kind) {
    case ProtocolKind::BallCovering: {
      int k = pt.k.value_or(-1);
      if (!pt.k) {
        k = max_ball_radius_for_load(pt.d, r, pt.n, pt.p);
        if (k < 0) throw PreconditionError("no k >= ceil(r/2) with B(d,k) <= n/p");
      }
      if (!pt.delta) throw PreconditionError("ball-covering needs delta");
      auto s = make_ball_covering(pt.d, r, k, pt.p, *pt.delta, cfg.base_seed);
      const auto& bp = s.as<BallCoveringParams>();
      row.k = k;
      row.delta = pt.delta;
      row.balls_per_processor = bp.balls_per_processor;
      row.ell_k = to_double(bp.ell_k);
      return s;
    }
    case ProtocolKind::Universal:
      return make_universal(pt.d, static_cast<std::uint64_t>(pt.p), cfg.base_seed);
    case ProtocolKind::BallHashing2:
      return make_ball_hashing2(pt.d, r, pt.p, cfg.base_seed);
    case ProtocolKind::SubcubeSplitting: {
      const int k = pt.k.value_or(subcube_dimension(pt));
      row.k = k;
      return make_subcube_splitting(pt.d, r, k, pt.p, cfg.base_seed, proto.grid);
    }
    case ProtocolKind::AnchorPoints:
      return make_anchor_points(pt.d, r, pt.p, codes.get(pt.d, r, proto.code_seed.value_or(cfg.base_seed)),
                                cfg.base_seed);
  }
  throw PreconditionError("unknown protocol");
}

}  // namespace

std::string version_string() { return SIMJOIN_VERSION; }

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg) {
  std::vector<SweepPoint> out;
  for (int d : cfg.sweep.d) {
    for (auto n : cfg.sweep.n) {
      for (int p : cfg.sweep.p) {
        for (const auto& k : cfg.sweep.k) {
          for (const auto& delta : cfg.sweep.delta) out.push_back({d, n, p, k, delta});
        }
      }
    }
  }
  return out;
}

RunResult execute(const ExperimentConfig& cfg, unsigned jobs, std::ostream& log) {
  RunResult result;
  CodeCache codes;
  for (const auto& pt : expand_sweep(cfg)) {
    ResultRow row;
    row.point = pt;
    try {
      const CoveringSampler sampler = build_sampler(cfg, pt, row, codes);
      row.p_actual = sampler.processors();
      const InputGenerator generator(cfg.input, pt.n, pt.d, cfg.r, cfg.base_seed);
      const auto start = std::chrono::steady_clock::now();
      row.summary = estimate_overhead(sampler, generator, cfg.r, cfg.trials, jobs, false);
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (row.summary.skipped_empty > 0) {
        log << "note: " << describe(pt) << ": " << row.summary.skipped_empty << " empty input(s) skipped\n";
      }
      result.rows.push_back(std::move(row));
    } catch (const std::invalid_argument& e) {
      log << "skip: " << describe(pt) << ": " << e.what() << "\n";
      result.skipped.push_back({pt, e.what()});
    } catch (const GuardExceeded& e) {
      log << "skip: " << describe(pt) << ": " << e.what() << "\n";
      result.skipped.push_back({pt, e.what()});
    } catch (const OverflowError& e) {
      log << "skip: " << describe(pt) << ": " << e.what() << "\n";
      result.skipped.push_back({pt, e.what()});
    }
  }
  return result;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "protocol",         "input",          "d",
      "n",                "p",              "p_actual",
      "r",                "k",              "delta",
      "trials",           "trials_run",     "skipped_empty",
      "n_over_p",         "overhead_mean",  "overhead_std",
      "overhead_min",     "overhead_q10",   "overhead_median",
      "overhead_q90",     "overhead_max",   "max_load_mean",
      "coverage_mean",    "coverage_std",   "all_covered_fraction",
      "max_replication",  "mean_replication", "theorem_bound",
      "replication_bound", "overhead_exceedance_rate", "replication_exceedance_rate",
      "balls_per_processor", "ell_k",       "grid"};
  return cols;
}

void write_csv(std::ostream& out, const ExperimentConfig& cfg, const RunResult& result) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  const std::string grid =
      cfg.protocol.kind == ProtocolKind::SubcubeSplitting ? to_string(cfg.protocol.grid) : std::string();
  for (const auto& row : result.rows) {
    const auto& s = row.summary;
    const std::vector<std::string> cells = {
        to_string(cfg.protocol.kind),
        to_string(cfg.input),
        std::to_string(row.point.d),
        std::to_string(row.point.n),
        std::to_string(row.point.p),
        std::to_string(row.p_actual),
        std::to_string(cfg.r),
        opt(row.k),
        opt(row.delta),
        std::to_string(s.trials_requested),
        std::to_string(s.trials_run),
        std::to_string(s.skipped_empty),
        num(s.n_over_p),
        num(s.overhead_mean),
        num(s.overhead_std),
        num(s.overhead.min),
        num(s.overhead.q10),
        num(s.overhead.median),
        num(s.overhead.q90),
        num(s.overhead.max),
        num(s.max_load_mean),
        num(s.coverage_mean),
        num(s.coverage_std),
        num(s.all_covered_fraction),
        std::to_string(s.max_replication),
        num(s.mean_replication),
        opt(s.theorem_bound),
        opt(s.replication_bound),
        s.theorem_bound ? num(s.overhead_exceedance_rate) : "",
        s.replication_bound ? num(s.replication_exceedance_rate) : "",
        opt(row.balls_per_processor),
        opt(row.ell_k),
        grid};
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
  }
}

json summary_json(const ExperimentConfig& cfg, const RunResult& result) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    const auto& s = row.summary;
    json j = {{"d", row.point.d},
              {"n", row.point.n},
              {"p", row.point.p},
              {"p_actual", row.p_actual},
              {"trials_run", s.trials_run},
              {"skipped_empty", s.skipped_empty},
              {"n_over_p", s.n_over_p},
              {"overhead", {{"mean", s.overhead_mean},
                            {"std", s.overhead_std},
                            {"min", s.overhead.min},
                            {"q10", s.overhead.q10},
                            {"median", s.overhead.median},
                            {"q90", s.overhead.q90},
                            {"max", s.overhead.max}}},
              {"max_load_mean", s.max_load_mean},
              {"coverage", {{"mean", s.coverage_mean}, {"std", s.coverage_std}, {"trials", s.coverage_trials}}},
              {"all_covered_fraction", s.all_covered_fraction},
              {"max_replication", s.max_replication},
              {"mean_replication", s.mean_replication}};
    if (row.k) j["k"] = *row.k;
    if (row.delta) j["delta"] = *row.delta;
    if (row.balls_per_processor) j["balls_per_processor"] = *row.balls_per_processor;
    if (row.ell_k) j["ell_k"] = *row.ell_k;
    if (s.theorem_bound) {
      j["theorem_bound"] = *s.theorem_bound;
      j["overhead_exceedance_rate"] = s.overhead_exceedance_rate;
    }
    if (s.replication_bound) {
      j["replication_bound"] = *s.replication_bound;
      j["replication_exceedance_rate"] = s.replication_exceedance_rate;
    }
    rows.push_back(std::move(j));
  }
  json skipped = json::array();
  for (const auto& sk : result.skipped) {
    skipped.push_back({{"d", sk.point.d}, {"n", sk.point.n}, {"p", sk.point.p}, {"reason", sk.reason}});
  }
  return {{"version", version_string()},
          {"estimate", "overheads are estimates over the configured input generator, not worst cases"},
          {"config", cfg.source},
          {"rows", rows},
          {"skipped", skipped}};
}

void write_timing(std::ostream& out, const RunResult& result) {
  out << "d,n,p,k,delta,trials_run,seconds,seconds_per_trial\n";
  for (const auto& row : result.rows) {
    const auto runs = row.summary.trials_run;
    out << row.point.d << "," << row.point.n << "," << row.point.p << "," << opt(row.k) << "," << opt(row.delta)
        << "," << runs << "," << num(row.seconds) << "," << (runs ? num(row.seconds / static_cast<double>(runs)) : "")
        << "\n";
  }
}

int cmd_run(const std::string& config_path, unsigned jobs, const std::string& out_dir, std::ostream& out,
            std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ParseError& e) {
    err << "error: " << config_path << ": " << e.what() << "\n";
    return 2;
  }
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  auto open = [&](const std::string& name, std::ofstream& f) {
    f.open(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) err << "error: cannot write '" << (dir / name).string() << "'\n";
    return static_cast<bool>(f);
  };
  std::ofstream csv, summary, timing;
  if (!open(cfg.output.csv, csv) || !open(cfg.output.summary, summary) || !open(cfg.output.timing, timing)) return 3;

  const RunResult result = execute(cfg, jobs, err);
  write_csv(csv, cfg, result);
  summary << summary_json(cfg, result).dump(2) << "\n";
  write_timing(timing, result);
  csv.close();
  summary.close();
  timing.close();
  if (!csv || !summary || !timing) {
    err << "error: writing results to '" << dir.string() << "' failed\n";
    return 3;
  }
  out << "wrote " << result.rows.size() << " row(s), skipped " << result.skipped.size() << " point(s) to "
      << dir.string() << "\n";
  return 0;
}

}  // namespace simjoin::harness
