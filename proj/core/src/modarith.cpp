#include "resmap/modarith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace resmap {

Prime::Prime(u64 value) : value_(value) {
  if (value <= 2 || value >= kMaxPrime || !is_prime(value)) {
    throw std::invalid_argument("not an odd prime below 2^62: " + std::to_string(value));
  }
}

u64 mod_inv(u64 a, const Prime& p) {
  a %= p.value();
  if (a == 0) throw std::domain_error("mod_inv: 0 has no inverse");
  // Extended Euclid on signed 128-bit to stay exact near 2^62.
  i128 r0 = p.value(), r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const i128 q = r0 / r1;
    const i128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    const i128 s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (s0 < 0) s0 += p.value();
  return static_cast<u64>(s0);
}

int legendre(i64 a, const Prime& p) {
  const u64 r = reduce(a, p);
  if (r == 0) return 0;
  return mod_pow(r, (p.value() - 1) / 2, p) == 1 ? 1 : -1;
}

i64 abs_least_residue(i64 a, const Prime& p) {
  const u64 r = reduce(a, p);
  return 2 * r < p.value() ? static_cast<i64>(r) : static_cast<i64>(r) - static_cast<i64>(p.value());
}

namespace {

bool miller_rabin_round(u64 n, u64 a, u64 d, int s) {
  u64 x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1 || a % n == 0) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(u64 m) noexcept {
  if (m < 2) return false;
  constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kSmall) {
    if (m == q) return true;
    if (m % q == 0) return false;
  }
  if (m < 41 * 41) return true;
  u64 d = m - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve primes are a deterministic witness set below 3.3e24.
  return std::all_of(std::begin(kSmall), std::end(kSmall),
                     [&](u64 a) { return miller_rabin_round(m, a, d, s); });
}

std::vector<std::int8_t> legendre_table(const Prime& p) {
  const u64 pv = p.value();
  std::vector<std::int8_t> table(pv, -1);
  table[0] = 0;
  // x^2 for x <= (p-1)/2 hits every nonzero square exactly once;
  // (x+1)^2 = x^2 + 2x + 1 keeps the loop multiplication-free.
  u64 sq = 0;
  for (u64 x = 1; 2 * x < pv; ++x) {
    sq += 2 * x - 1;
    if (sq >= pv) sq %= pv;
    table[sq] = 1;
  }
  return table;
}

std::vector<u64> prime_factors(u64 m) {
  std::vector<u64> out;
  for (u64 q = 2; q * q <= m; q += (q == 2 ? 1 : 2)) {
    if (m % q == 0) {
      out.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

u64 primitive_root(const Prime& p) {
  const u64 order = p.value() - 1;
  const auto factors = prime_factors(order);
  for (u64 g = 2; g < p.value(); ++g) {
    const bool generator = std::none_of(factors.begin(), factors.end(), [&](u64 q) {
      return mod_pow(g, order / q, p) == 1;
    });
    if (generator) return g;
  }
  throw std::logic_error("no primitive root found for " + std::to_string(p.value()));
}

std::vector<u64> primes_between(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<u64>(lo, 2);

  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small[j] = 0;
  }

  constexpr u64 kSegment = u64{1} << 18;
  std::vector<char> seg(kSegment);
  for (u64 low = lo; low <= hi; low += kSegment) {
    const u64 high = std::min(hi, low + kSegment - 1);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(high - low + 1), 1);
    for (u64 q : base) {
      if (q * q > high) break;
      u64 start = std::max(q * q, (low + q - 1) / q * q);
      for (u64 j = start; j <= high; j += q) seg[j - low] = 0;
    }
    for (u64 x = low; x <= high; ++x) {
      if (seg[x - low]) out.push_back(x);
    }
    if (high == hi) break;
  }
  return out;
}

}  // namespace resmap
