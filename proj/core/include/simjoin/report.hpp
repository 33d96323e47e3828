#pragma once

#include <string>
#include <vector>

namespace simjoin {

enum class CheckStatus { Pass, Fail, NotApplicable };

std::string to_string(CheckStatus s);

/// One verification outcome. `lhs`/`rhs` are exact values rendered as text
/// (integers or reduced fractions) or, for Monte Carlo checks, decimals.
struct CheckResult {
  std::string id;
  std::string params;
  CheckStatus status = CheckStatus::NotApplicable;
  std::string lhs;
  std::string rhs;
  std::string note;

  bool passed() const { return status == CheckStatus::Pass; }
  bool failed() const { return status == CheckStatus::Fail; }
};

/// `<id> <params> <status> lhs=<..> rhs=<..>[ note=<..>]`
std::string format_line(const CheckResult& c);

struct VerificationReport {
  std::vector<CheckResult> checks;

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  std::size_t count(CheckStatus s) const;
  bool any_failed() const { return count(CheckStatus::Fail) > 0; }
};

}  // namespace simjoin
