#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "simjoin/covering.hpp"
#include "simjoin/covering_code.hpp"
#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"
#include "simjoin/point_io.hpp"

namespace simjoin::harness {

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<std::string> ids;
  const bool all = opts.scope.empty() || (opts.scope.size() == 1 && opts.scope[0] == "all");
  if (all) {
    ids = check_ids();
  } else {
    for (const auto& id : opts.scope) {
      if (!is_check_id(id)) {
        err << "error: unknown check id '" << id << "'; known ids:";
        for (const auto& k : check_ids()) err << " " << k;
        err << "\n";
        return kUsageError;
      }
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
  }

  std::ofstream report;
  if (!opts.report_path.empty()) {
    report.open(opts.report_path, std::ios::binary | std::ios::trunc);
    if (!report) {
      err << "error: cannot write '" << opts.report_path << "'\n";
      return 3;
    }
  }
  nlohmann::json checks = nlohmann::json::array();
  nlohmann::json families = nlohmann::json::object();
  std::size_t pass = 0, fail = 0, na = 0;
  for (const auto& id : ids) {
    const VerificationReport rep = run_suite(id, opts.limits);
    for (const auto& c : rep.checks) {
      const std::string line = format_line(c);
      if (!opts.quiet) out << line << "\n";
      if (report) report << line << "\n";
      checks.push_back({{"id", c.id},
                        {"params", c.params},
                        {"status", to_string(c.status)},
                        {"lhs", c.lhs},
                        {"rhs", c.rhs},
                        {"note", c.note}});
    }
    const auto p = rep.count(CheckStatus::Pass), f = rep.count(CheckStatus::Fail),
               n = rep.count(CheckStatus::NotApplicable);
    families[id] = {{"pass", p}, {"fail", f}, {"not_applicable", n}};
    const std::string line = "summary " + id + " pass=" + std::to_string(p) + " fail=" + std::to_string(f) +
                             " not_applicable=" + std::to_string(n);
    out << line << "\n";
    if (report) report << line << "\n";
    pass += p;
    fail += f;
    na += n;
  }
  const std::string total = "total pass=" + std::to_string(pass) + " fail=" + std::to_string(fail) +
                            " not_applicable=" + std::to_string(na);
  out << total << "\n";
  if (report) {
    report << total << "\n";
    report.close();
    if (!report) {
      err << "error: writing '" << opts.report_path << "' failed\n";
      return 3;
    }
  }
  if (!opts.json_path.empty()) {
    std::ofstream js(opts.json_path, std::ios::binary | std::ios::trunc);
    const nlohmann::json doc = {{"limits", {{"max_d", opts.limits.max_d}, {"seed", opts.limits.seed}, {"samples", opts.limits.samples}}},
                                {"families", families},
                                {"checks", checks}};
    js << doc.dump(2) << "\n";
    if (!js) {
      err << "error: cannot write '" << opts.json_path << "'\n";
      return 3;
    }
  }
  return fail == 0 ? 0 : 1;
}

int cmd_oracle(const std::string& input_path, int r, std::ostream& out, std::ostream& err) {
  std::ifstream in(input_path);
  if (!in) {
    err << "error: cannot open '" << input_path << "'\n";
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();
  // A file with nothing but whitespace is an empty set.
  if (text.str().find_first_not_of(" \t\r\n") == std::string::npos) return 0;
  PointSet S(1);
  try {
    std::istringstream body(text.str());
    S = read_point_set(body);
  } catch (const ParseError& e) {
    err << "error: " << input_path << ": " << e.what() << "\n";
    return 2;
  }
  if (r < 0) {
    err << "error: r must be non-negative\n";
    return kUsageError;
  }
  for (const auto& pair : brute_force_join(S, r)) {
    out << format_word(pair.u, S.dim()) << " " << format_word(pair.v, S.dim()) << "\n";
  }
  return 0;
}

int cmd_draw(const DrawOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const ProtocolKind kind = parse_protocol_kind(o.protocol);
    CoveringSampler sampler = [&]() {
      switch (kind) {
        case ProtocolKind::BallCovering:
          return make_ball_covering(o.d, o.r, o.k >= 0 ? o.k : ceil_half(o.r), o.p, o.delta, o.seed);
        case ProtocolKind::Universal:
          return make_universal(o.d, static_cast<std::uint64_t>(o.p), o.seed);
        case ProtocolKind::BallHashing2:
          return make_ball_hashing2(o.d, o.r, o.p, o.seed);
        case ProtocolKind::SubcubeSplitting:
          return make_subcube_splitting(o.d, o.r, o.k >= 1 ? o.k : std::max(1, o.d / 2), o.p, o.seed,
                                        parse_subcube_grid(o.grid));
        case ProtocolKind::AnchorPoints:
          break;
      }
      auto code = std::make_shared<const CoveringCode>(greedy_covering_code(o.d, o.r, o.seed));
      return make_anchor_points(o.d, o.r, o.p, std::move(code), o.seed);
    }();
    const CoveringDraw dr = draw(sampler, o.trial);
    dump_draw(dr, o.out_dir);
    out << "wrote " << dr.processors() << " set(s) to " << o.out_dir << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace simjoin::harness
