#include "simjoin/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simjoin/errors.hpp"

namespace simjoin {

u128 checked_add(u128 a, u128 b) {
  u128 out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("exact addition exceeds 128 bits");
  return out;
}

u128 checked_mul(u128 a, u128 b) {
  u128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("exact multiplication exceeds 128 bits");
  return out;
}

std::uint64_t to_u64(u128 v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("value does not fit 64 bits");
  return static_cast<std::uint64_t>(v);
}

u128 binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 c = 1;
  for (int i = 1; i <= k; ++i) {
    // c * (n - k + i) is divisible by i at every step.
    c = checked_mul(c, static_cast<u128>(n - k + i)) / static_cast<u128>(i);
  }
  return c;
}

u128 ball_volume(int d, int k) {
  if (d < 0 || d > 64 || k < 0 || k > d) {
    throw PreconditionError("ball_volume requires 0 <= k <= d <= 64 (d=" + std::to_string(d) +
                            ", k=" + std::to_string(k) + ")");
  }
  u128 total = 0;
  for (int i = 0; i <= k; ++i) total = checked_add(total, binomial(d, i));
  return total;
}

u128 ball_volume_clamped(int d, int k) {
  if (k < 0) return 0;
  return ball_volume(d, std::min(k, d));
}

BigInt falling_factorial(int R, int r) {
  BigInt out = 1;
  for (int i = 0; i < r; ++i) out *= (R - i);
  return out;
}

BigInt factorial(int n) { return falling_factorial(n, n); }

BigInt pow_big(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

BigInt to_big(u128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  BigInt lo = static_cast<std::uint64_t>(v);
  return (hi << 64) | lo;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw PreconditionError("non-finite value has no exact rational form");
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  // mant * 2^53 is an integer for any double.
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational q = Rational(BigInt(scaled));
  exp -= 53;
  if (exp >= 0) {
    q *= Rational(BigInt(1) << exp);
  } else {
    q /= Rational(BigInt(1) << -exp);
  }
  return q;
}

BigInt ceil_div(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt quot = num / den;
  if (quot * den < num) ++quot;
  return quot;
}

}  // namespace simjoin
