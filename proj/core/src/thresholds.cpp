#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "resmap/bounds.hpp"

namespace resmap {

namespace {

using boost::multiprecision::cpp_int;
using Float = boost::multiprecision::cpp_bin_float_50;

cpp_int pow10(unsigned e) { return boost::multiprecision::pow(cpp_int(10), e); }

// Largest r with r^3 <= v.
cpp_int icbrt_floor(const cpp_int& v) {
  if (v <= 0) return 0;
  cpp_int lo = 0, hi = 1;
  while (hi * hi * hi <= v) hi <<= 1;
  while (hi - lo > 1) {
    cpp_int mid = (lo + hi) >> 1;
    if (mid * mid * mid <= v) lo = mid;
    else hi = mid;
  }
  return lo;
}

cpp_int icbrt_ceil(const cpp_int& v) {
  cpp_int r = icbrt_floor(v);
  return r * r * r == v ? r : r + 1;
}

cpp_int ceil_div(const cpp_int& a, const cpp_int& b) { return (a + b - 1) / b; }

// p >= 9e34 n^(92/3)  <=>  p^3 >= 729e102 n^92
cpp_int large_prime_threshold(u32 n) {
  return icbrt_ceil(729 * pow10(102) * boost::multiprecision::pow(cpp_int(n), 92));
}

bool error_term_small(u32 n, const Float& p) {
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const Float lp = log(p);
  const Float lhs = Float("0.66") * n * sqrt(p) * lp * lp;
  const Float rhs = Float("0.006") * pow(p, Float(89) / 92);
  return lhs <= rhs;
}

}  // namespace

std::vector<Threshold> thresholds(u32 n, std::optional<u64> k_minus_one) {
  if (n < 2) throw std::domain_error("n must be at least 2");
  const cpp_int N(n);
  std::vector<Threshold> out;

  const cpp_int t13 = large_prime_threshold(n);
  out.push_back({"large_prime", "p >= 9e34 n^(92/3)", t13.str(), t13.str()});

  // p > 4e29 n^(184/3)  <=>  p^3 > 64e87 n^184
  const cpp_int r33 = 64 * pow10(87) * boost::multiprecision::pow(N, 184);
  const cpp_int f33 = icbrt_floor(r33);
  out.push_back({"large_prime_iii", "p > 4e29 n^(184/3)", icbrt_ceil(r33).str(), cpp_int(f33 + 1).str()});

  const cpp_int guard = (4 * N + 1) * (4 * N + 1);
  out.push_back({"no_type_iii_half", "p > (4n+1)^2", guard.str(), cpp_int(guard + 1).str()});

  if (k_minus_one) {
    const cpp_int K(*k_minus_one);
    const cpp_int a = 37 * K * K * N * N;
    out.push_back({"no_type_iii_k", "p > 37 |k-1|^2 n^2", a.str(), cpp_int(a + 1).str()});
    const cpp_int b = ceil_div(162 * K * K * N * N * N * N, 10);
    out.push_back({"no_type_iv_k", "p >= 16.2 |k-1|^2 n^4", b.str(), b.str()});
  }
  return out;
}

std::string large_gcd_threshold(u32 n, u64 p) {
  using boost::multiprecision::ceil;
  using boost::multiprecision::log;
  using boost::multiprecision::sqrt;
  const Float fp(p);
  const Float lp = log(fp);
  const Float v = ceil(Float("0.66") * n * sqrt(fp) * lp * lp);
  return v.convert_to<cpp_int>().str();
}

bool large_prime_consistency(u32 n) {
  // The ratio 0.006 p^(89/92) / (0.66 n sqrt(p) log^2 p) increases for
  // p > e^(184/43), so a few checkpoints from the threshold up are enough
  // to catch a bad constant.
  const Float base(large_prime_threshold(n));
  for (int e = 0; e <= 30; e += 10) {
    if (!error_term_small(n, base * boost::multiprecision::pow(Float(10), e))) return false;
  }
  return true;
}

}  // namespace resmap
