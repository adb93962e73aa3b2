#pragma once

// Deliberately naive reference implementations. Nothing here shares code
// with core/: no fast pow, no sieve, no early exit.

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline bool is_prime(u64 m) {
  if (m < 2) return false;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

inline u64 gcd(u64 a, u64 b) {
  while (b) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// x^k mod p by k multiplications; only for small p.
inline u64 slow_pow(u64 x, u64 k, u64 p) {
  u64 r = 1 % p;
  for (u64 e = 0; e < k; ++e) r = r * x % p;
  return r;
}

inline u64 residue(i64 a, u64 p) {
  const i64 r = a % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

// Target sets of each class under A x^k.
inline std::vector<std::set<u64>> targets(u64 p, i64 A, u64 k, u64 n) {
  std::vector<std::set<u64>> t(n);
  const u64 a = residue(A, p);
  for (u64 x = 1; x < p; ++x) t[x % n].insert(a * slow_pow(x, k, p) % p % n);
  return t;
}

struct Types {
  bool i = true, iia = true, iib = false, iii = false, iv = false;
};

inline Types types(u64 p, i64 A, u64 k, u64 n) {
  const auto t = targets(p, A, k, n);
  Types r;
  std::set<u64> images;
  for (u64 c = 0; c < n; ++c) {
    const bool single = t[c].size() == 1;
    r.i = r.i && single && *t[c].begin() == c;
    if (single) {
      r.iii = true;
      images.insert(*t[c].begin());
    } else {
      r.iia = false;
    }
    if (t[c].size() < n) r.iv = true;
  }
  r.iia = r.iia && images.size() == n;
  // f(I_c) = I_c needs both inclusion and equal size; sizes match when the
  // image lies in I_c because f is injective and |f(I_c)| = |I_c|.
  for (u64 c = 0; c < n; ++c) {
    if (t[c].size() == 1 && *t[c].begin() == c) r.iib = true;
  }
  return r;
}

inline int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  for (u64 y = 1; y < p; ++y) {
    if (y * y % p == a) return 1;
  }
  return -1;
}

// Longest run of constant Legendre symbol inside 1..p-1.
inline u64 longest_run(u64 p) {
  u64 best = 0, cur = 0;
  int prev = 0;
  for (u64 x = 1; x < p; ++x) {
    const int l = legendre(x, p);
    cur = l == prev ? cur + 1 : 1;
    prev = l;
    if (cur > best) best = cur;
  }
  return best;
}

}  // namespace oracle
