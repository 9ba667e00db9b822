#pragma once

#include <cstdint>
#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "error.hpp"

/// Exact integer helpers shared by the enumeration modules. All arithmetic is
/// 64-bit and checked; the desk-scale bounds keep every value far from overflow.
namespace gwcalc::combinatorics {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  require(!__builtin_add_overflow(a, b, &out), ErrorCode::bound_exceeded,
          "integer overflow in addition");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  require(!__builtin_mul_overflow(a, b, &out), ErrorCode::bound_exceeded,
          "integer overflow in multiplication");
  return out;
}

inline std::int64_t factorial(int n) {
  require(n >= 0, ErrorCode::precondition, "factorial of a negative number");
  std::int64_t out = 1;
  for (int i = 2; i <= n; ++i) out = checked_mul(out, i);
  return out;
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 out = 1;
  for (int i = 1; i <= k; ++i) {
    // out * (n - k + i) is divisible by i at every step.
    out = out * (n - k + i) / i;
    require(out <= INT64_MAX, ErrorCode::bound_exceeded, "binomial coefficient overflows 64 bits");
  }
  return static_cast<std::int64_t>(out);
}

/// (sum parts)! / prod(parts!) as a product of binomial coefficients.
inline std::int64_t multinomial(std::span<const int> parts) {
  std::int64_t out = 1;
  int running = 0;
  for (int part : parts) {
    running += part;
    out = checked_mul(out, binomial(running, part));
  }
  return out;
}

inline std::int64_t ipow(std::int64_t base, int exponent) {
  require(exponent >= 0, ErrorCode::precondition, "negative exponent");
  std::int64_t out = 1;
  for (int i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<int> primes_in(int lo_exclusive, int hi_inclusive) {
  std::vector<int> out;
  for (int n = std::max(lo_exclusive + 1, 2); n <= hi_inclusive; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

inline std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

/// Möbius function.
inline int mobius(int n) {
  require(n >= 1, ErrorCode::precondition, "mobius of a non-positive number");
  int sign = 1;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

/// gcd of the nonzero entries; 0 when every entry is zero.
inline int gcd_of(std::span<const int> values) {
  int g = 0;
  for (int v : values) g = std::gcd(g, v);
  return g;
}

/// Number of aperiodic necklaces of length m over k letters,
/// (1/m) * sum_{d | m} mu(d) k^{m/d}.
inline std::int64_t necklace_count(int k, int m) {
  require(k >= 1 && m >= 1, ErrorCode::precondition, "necklace_count needs k, m >= 1");
  std::int64_t total = 0;
  for (int d : divisors(m)) total += mobius(d) * ipow(k, m / d);
  return total / m;
}

/// Bell numbers via the Bell triangle.
inline std::int64_t bell(int n) {
  require(n >= 0, ErrorCode::precondition, "bell of a negative number");
  std::vector<std::int64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> next{row.back()};
    for (auto v : row) next.push_back(checked_add(next.back(), v));
    row = std::move(next);
  }
  return row.front();
}

/// All k-vectors of nonnegative integers summing to n, ordered with the first
/// coordinate descending (then recursively).
inline std::vector<std::vector<int>> compositions(int n, int k) {
  require(n >= 0 && k >= 1, ErrorCode::precondition, "compositions needs n >= 0, k >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(k), 0);
  auto rec = [&](auto&& self, int index, int remaining) -> void {
    if (index == k - 1) {
      current[static_cast<std::size_t>(index)] = remaining;
      out.push_back(current);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      current[static_cast<std::size_t>(index)] = v;
      self(self, index + 1, remaining - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

}  // namespace gwcalc::combinatorics
