#pragma once

// Exact arithmetic modulo odd primes below 2^62.
//
// Products go through unsigned __int128, so every routine here is exact for
// the whole supported range without Montgomery or Barrett tricks.

#include <cstdint>
#include <vector>

namespace resmap {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

inline constexpr u64 kMaxPrime = u64{1} << 62;

/// An odd prime 2 < p < 2^62. Construction verifies primality.
class Prime {
 public:
  explicit Prime(u64 value);

  [[nodiscard]] constexpr u64 value() const noexcept { return value_; }
  constexpr operator u64() const noexcept { return value_; }  // NOLINT

  friend constexpr bool operator==(Prime, Prime) = default;
  friend constexpr auto operator<=>(Prime, Prime) = default;

 private:
  u64 value_;
};

[[nodiscard]] constexpr u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

[[nodiscard]] constexpr u64 add_mod(u64 a, u64 b, u64 m) noexcept {
  const u64 s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

/// base^exp mod m for 0 <= base < m. exp = 0 yields 1.
[[nodiscard]] constexpr u64 mod_pow(u64 base, u64 exp, u64 m) noexcept {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Reduces any integer into [0, p).
[[nodiscard]] constexpr u64 reduce(i64 a, u64 p) noexcept {
  const i64 r = a % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

/// Multiplicative inverse of a in [1, p). Throws std::domain_error for a = 0.
[[nodiscard]] u64 mod_inv(u64 a, const Prime& p);

/// Legendre symbol (a/p) in {-1, 0, +1} via Euler's criterion.
[[nodiscard]] int legendre(i64 a, const Prime& p);

/// Representative of a mod p in (-p/2, p/2).
[[nodiscard]] i64 abs_least_residue(i64 a, const Prime& p);

/// Deterministic for every 64-bit input.
[[nodiscard]] bool is_prime(u64 m) noexcept;

/// table[x] = (x/p) for 0 <= x < p, built by marking squares.
[[nodiscard]] std::vector<std::int8_t> legendre_table(const Prime& p);

/// Distinct prime factors of m (trial division).
[[nodiscard]] std::vector<u64> prime_factors(u64 m);

/// Least primitive root modulo p.
[[nodiscard]] u64 primitive_root(const Prime& p);

/// All primes in [lo, hi], via a segmented sieve.
[[nodiscard]] std::vector<u64> primes_between(u64 lo, u64 hi);

}  // namespace resmap
