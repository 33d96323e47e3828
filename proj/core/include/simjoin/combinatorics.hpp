#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace simjoin {

__extension__ typedef unsigned __int128 u128;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact C(n, k); zero outside 0 <= k <= n. Throws OverflowError on wrap.
u128 binomial(int n, int k);

/// B(d, k) = sum_{i<=k} C(d, i), the volume of a radius-k Hamming ball in
/// {0,1}^d. Requires 0 <= k <= d <= 64.
u128 ball_volume(int d, int k);

/// Same as ball_volume but clamps: k < 0 gives 0, k > d gives 2^d.
u128 ball_volume_clamped(int d, int k);

/// R (R-1) ... (R-r+1)
BigInt falling_factorial(int R, int r);
BigInt factorial(int n);
BigInt pow_big(const BigInt& base, unsigned exp);

BigInt to_big(u128 v);
u128 checked_add(u128 a, u128 b);
u128 checked_mul(u128 a, u128 b);
std::uint64_t to_u64(u128 v);

std::string to_string(u128 v);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Exact rational value of a finite double.
Rational exact_rational(double x);

inline int ceil_half(int r) { return (r + 1) / 2; }
inline int floor_half(int r) { return r / 2; }

/// ceil(a / b) for positive rationals.
BigInt ceil_div(const Rational& q);

}  // namespace simjoin
