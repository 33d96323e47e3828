#include "simjoin/report.hpp"

#include <algorithm>

namespace simjoin {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

std::string format_line(const CheckResult& c) {
  std::string line = c.id + " " + (c.params.empty() ? "-" : c.params) + " " + to_string(c.status) +
                     " lhs=" + (c.lhs.empty() ? "-" : c.lhs) + " rhs=" + (c.rhs.empty() ? "-" : c.rhs);
  if (!c.note.empty()) line += " note=" + c.note;
  return line;
}

std::size_t VerificationReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [s](const CheckResult& c) { return c.status == s; }));
}

}  // namespace simjoin
