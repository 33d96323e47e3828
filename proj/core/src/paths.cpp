#include "simjoin/paths.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "simjoin/errors.hpp"
#include "simjoin/hypercube.hpp"

namespace simjoin {

namespace {

void check_path_params(const PointSet& A, int R, int r, int b) {
  if (r < 1 || R < r || R % r != 0) throw PreconditionError("path count needs r >= 1 and r | R");
  if (R / r > kPathMaxSteps) throw GuardExceeded("path count: R/r above 4");
  if (b < 0 || b > floor_half(r)) throw PreconditionError("path count needs 0 <= b <= floor(r/2)");
  if (r > A.dim()) throw PreconditionError("path count needs r <= d");
  if (A.size() > kPathMaxSet) throw GuardExceeded("path count: set larger than 2^12");
}

std::string params_of(const PointSet& A, int R, int r, int b) {
  return "d=" + std::to_string(A.dim()) + ",n=" + std::to_string(A.size()) + ",R=" + std::to_string(R) +
         ",r=" + std::to_string(r) + ",b=" + std::to_string(b);
}

std::string fraction(const BigInt& num, const BigInt& den) { return to_string(Rational(num, den)); }

// |E_<=R(A)| with loops; R may exceed d.
BigInt edges_within(const PointSet& A, int R) {
  std::uint64_t total = 0;
  for (auto c : pair_distance_histogram(A, std::min(R, A.dim()))) total += c;
  return BigInt(total);
}

}  // namespace

PathCount count_rb_paths(const PointSet& A, int R, int r, int b) {
  check_path_params(A, R, r, b);
  const auto words = A.words();
  const std::size_t n = words.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (word_distance(words[i], words[j]) == r) {
        adj[i].push_back(static_cast<std::uint32_t>(j));
        adj[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  const int steps = R / r;
  const int gain = r - 2 * b;
  PathCount pc{R, r, b, n, BigInt(0)};
  std::vector<u128> cur(n), next(n);
  std::vector<std::uint32_t> active, upcoming;
  std::vector<char> queued(n, 0);
  for (std::size_t v0 = 0; v0 < n; ++v0) {
    std::fill(cur.begin(), cur.end(), 0);
    cur[v0] = 1;
    active.assign(1, static_cast<std::uint32_t>(v0));
    for (int j = 1; j <= steps && !active.empty(); ++j) {
      upcoming.clear();
      for (auto v : active) {
        for (auto w : adj[v]) {
          if (word_distance(words[v0], words[w]) < j * gain) continue;
          if (!queued[w]) {
            queued[w] = 1;
            upcoming.push_back(w);
          }
          next[w] = checked_add(next[w], cur[v]);
        }
      }
      for (auto v : active) cur[v] = 0;
      for (auto w : upcoming) {
        cur[w] = next[w];
        next[w] = 0;
        queued[w] = 0;
      }
      std::swap(active, upcoming);
    }
    for (auto v : active) {
      pc.count += to_big(cur[v]);
      cur[v] = 0;
    }
  }
  return pc;
}

bool sid_precondition(const PointSet& A, int R, int r, int b) {
  if (A.empty()) return false;
  const BigInt M(edge_count_exact(A, r));
  const BigInt N(A.size());
  const BigInt need = 4 * to_big(binomial(R - r, b + 1)) * to_big(binomial(A.dim(), r - b - 1));
  return M >= need * N;
}

CheckResult verify_sid(const PointSet& A, int R, int r, int b) {
  check_path_params(A, R, r, b);
  CheckResult c;
  c.id = "sid";
  c.params = params_of(A, R, r, b);
  if (!sid_precondition(A, R, r, b)) {
    c.status = CheckStatus::NotApplicable;
    c.note = "precondition unmet: e_r(A) below 4 C(R-r,b+1) C(d,r-b-1)";
    if (!A.empty()) {
      c.lhs = fraction(BigInt(edge_count_exact(A, r)), BigInt(A.size()));
      c.rhs = (4 * to_big(binomial(R - r, b + 1)) * to_big(binomial(A.dim(), r - b - 1))).str();
    }
    return c;
  }
  const BigInt N(A.size());
  const BigInt M(edge_count_exact(A, r));
  const auto L = static_cast<unsigned>(R / r);
  const BigInt pi = count_rb_paths(A, R, r, b).count;
  // pi >= N (M / 4N)^L  <=>  pi (4N)^L >= N M^L
  const BigInt den = pow_big(4 * N, L);
  const BigInt num = N * pow_big(M, L);
  c.lhs = pi.str();
  c.rhs = fraction(num, den);
  c.status = pi * den >= num ? CheckStatus::Pass : CheckStatus::Fail;
  return c;
}

CheckResult verify_paths_to_pairs(const PointSet& A, int R, int r, int b) {
  check_path_params(A, R, r, b);
  CheckResult c;
  c.id = "paths-to-pairs";
  c.params = params_of(A, R, r, b);
  const BigInt pi = count_rb_paths(A, R, r, b).count;
  const BigInt edges = edges_within(A, R);
  const BigInt N(A.size());
  const auto L = static_cast<unsigned>(R / r);
  const BigInt den = factorial(R) * pow_big(BigInt(A.dim()), static_cast<unsigned>(b) * L);
  c.lhs = edges.str();
  c.rhs = fraction(pi, den);
  c.status = edges * den >= pi ? CheckStatus::Pass : CheckStatus::Fail;
  const BigInt ordered = 2 * edges - N;
  c.note = "ordered_pairs=" + ordered.str() + (ordered * den >= pi ? " holds" : " fails") +
           ",loop_free=" + BigInt(edges - N).str() + ",pi=" + pi.str();
  return c;
}

CheckResult verify_path_composition(const PointSet& A, int R, int r, int b) {
  check_path_params(A, R, r, b);
  CheckResult c;
  c.id = "path-composition";
  c.params = params_of(A, R, r, b);
  if (!sid_precondition(A, R, r, b)) {
    c.status = CheckStatus::NotApplicable;
    c.note = "precondition unmet";
    return c;
  }
  const BigInt N(A.size());
  const BigInt M(edge_count_exact(A, r));
  const BigInt edges = edges_within(A, R);
  const auto L = static_cast<unsigned>(R / r);
  // |E_<=R|/N >= (M/N)^L / (4^L R! d^{bL})
  const BigInt scale = pow_big(BigInt(4), L) * factorial(R) *
                       pow_big(BigInt(A.dim()), static_cast<unsigned>(b) * L);
  c.lhs = fraction(edges, N);
  c.rhs = fraction(pow_big(M, L), pow_big(N, L) * scale);
  c.status = edges * pow_big(N, L - 1) * scale >= pow_big(M, L) ? CheckStatus::Pass : CheckStatus::Fail;
  return c;
}

}  // namespace simjoin
