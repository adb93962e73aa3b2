#include <doctest.h>

#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "oracle.hpp"
#include "resmap/bounds.hpp"

using namespace resmap;
using boost::multiprecision::cpp_int;

namespace {

// Direct long-double evaluation, no root table and no compensated sums.
std::complex<long double> e_sum(u64 p, auto&& phase) {
  std::complex<long double> s = 0;
  for (u64 x = 1; x < p; ++x) {
    const long double th = 2 * std::numbers::pi_v<long double> * static_cast<long double>(phase(x)) / p;
    s += std::complex<long double>(std::cos(th), std::sin(th));
  }
  return s;
}

u64 brute_mij(u64 p, u64 C, u64 n, u64 i, u64 j) {
  u64 c = 0;
  for (u64 x = 1; x < p; ++x) {
    if (x % n == i && C * x % p % n == j) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("sums against direct evaluation") {
  for (u64 p : {5ULL, 13ULL, 101ULL}) {
    const Prime pp(p);
    for (u64 a = 1; a < p; a += 3) {
      for (u64 b = 0; b < p; b += 5) {
        const auto want = e_sum(p, [&](u64 x) { return (a * oracle::slow_pow(x, 3, p) + b * x) % p; });
        const auto got = binomial_sum(pp, 3, a, b);
        REQUIRE(std::abs(got.real() - static_cast<double>(want.real())) < 1e-9);
        REQUIRE(std::abs(got.imag() - static_cast<double>(want.imag())) < 1e-9);
        if (b == 0) continue;
        const auto k = e_sum(p, [&](u64 x) { return (a * oracle::slow_pow(x, p - 2, p) + b * x) % p; });
        REQUIRE(std::abs(kloosterman_sum(pp, a, b) - std::complex<double>(k)) < 1e-9);
      }
    }
  }
}

TEST_CASE("Kloosterman and binomial maxima") {
  for (u64 p : primes_between(3, 120)) {
    const auto r = kloosterman_max(Prime(p));
    REQUIRE(r.holds);
    REQUIRE(r.computed <= 2 * std::sqrt(static_cast<double>(p)) + 1e-6);
  }
  for (const auto& r : binomial_sum_max(Prime(101), 3)) CHECK(r.holds);
  for (const auto& r : binomial_sum_max(Prime(97), 5)) CHECK(r.holds);
  // Weil with |k - 1| = 2 for k = 3.
  double m = 0;
  for (u64 a = 1; a < 101; ++a) {
    for (u64 b = 0; b < 101; ++b) m = std::max(m, std::abs(binomial_sum(Prime(101), 3, a, b)));
  }
  CHECK(m <= 2 * std::sqrt(101.0) + 1 + 1e-6);
}

TEST_CASE("Fourier coefficients: DFT against closed form") {
  for (u64 p : {7ULL, 31ULL, 613ULL}) {
    for (u32 n : {2u, 3u, 10u}) {
      if (n >= p) continue;
      for (u32 j = 0; j < n; ++j) {
        const auto prof = fourier_profile(Prime(p), n, j);
        const u64 Nj = ClassPartition(Prime(p), n).size(j);
        for (u64 u = 1; u < p; ++u) {
          REQUIRE(std::abs(std::abs(prof.coefficients[u]) - fourier_magnitude(p, n, Nj, u)) < 1e-9);
        }
        REQUIRE(std::abs(prof.l1_tail - fourier_l1_tail(p, Nj)) < 1e-9);
      }
    }
  }
  CHECK(fourier_l1(Prime(7), 2, 1).holds);
  CHECK(fourier_l1(Prime(613), 10, 3).holds);
  CHECK(fourier_l1_constant(607) == doctest::Approx(0.5));
  CHECK(fourier_l1_constant(613) == doctest::Approx(0.381));
  CHECK_THROWS_AS((void)fourier_l1(Prime(5), 2, 0), std::domain_error);
}

TEST_CASE("class counts under multiplication") {
  const auto m = mij_count(Prime(101), 7, 5, 2, 3);
  CHECK(m.count == brute_mij(101, 7, 5, 2, 3));
  CHECK(m.uniform_holds);
  CHECK(m.uniform_bound == doctest::Approx(std::max(2.0 * 101 / 25 + 2, 101.0 / 10 + 1)));
  for (u64 C = 2; 2 * C < 97; ++C) {
    for (u32 n = 2; n < 20; ++n) {
      for (u32 i = 0; i < n; i += 2) {
        for (u32 j = 0; j < n; j += 3) {
          const auto c = mij_count(Prime(97), C, n, i, j);
          REQUIRE(c.count == brute_mij(97, C, n, i, j));
          REQUIRE(c.count == intersection_count(PowerMap(Prime(97), static_cast<i64>(C), 1), n, i, j));
        }
      }
    }
  }
}

TEST_CASE("cell errors and character sums") {
  for (const auto& r : intersection_error(PowerMap(Prime(1009), 3, 5), 4)) CHECK(r.holds);
  for (const auto& r : character_sum_S(Prime(613), 5, 3, 1, 2, 2)) CHECK(r.holds);
  CHECK_THROWS((void)character_sum_S(Prime(613), 5, 3, 1, 2, 5));
  // |G(chi, A)| = sqrt(p) for nontrivial chi and A != 0.
  for (u64 r = 1; r < 4; ++r) CHECK(std::abs(gauss_sum(Prime(613), 4, r, 5)) == doctest::Approx(std::sqrt(613.0)));
}

TEST_CASE("thresholds in exact arithmetic") {
  const auto ts = thresholds(2, 2);
  auto get = [&](const std::string& name) {
    for (const auto& t : ts) {
      if (t.name == name) return t;
    }
    FAIL("missing " << name);
    return Threshold{};
  };
  CHECK(get("no_type_iii_k").smallest == "593");  // 37*4*4 = 592
  CHECK(get("no_type_iv_k").smallest == "1037");  // 16.2*4*16 = 1036.8
  CHECK(get("no_type_iii_half").smallest == "82");
  CHECK(thresholds(12)[2].smallest == "2402");

  // p >= 9e34 n^(92/3)  <=>  p^3 >= 729e102 n^92.
  for (u32 n : {2u, 3u, 12u}) {
    const cpp_int s(thresholds(n)[0].smallest);
    const cpp_int rhs = cpp_int(729) * boost::multiprecision::pow(cpp_int(10), 102) * boost::multiprecision::pow(cpp_int(n), 92);
    CHECK(s * s * s >= rhs);
    CHECK((s - 1) * (s - 1) * (s - 1) < rhs);
  }
  CHECK(thresholds(2)[0].smallest.size() == 45);
  // p > 4e29 n^(184/3)  <=>  p^3 > 64e87 n^184.
  const cpp_int s(thresholds(2)[1].smallest);
  const cpp_int rhs = cpp_int(64) * boost::multiprecision::pow(cpp_int(10), 87) * boost::multiprecision::pow(cpp_int(2), 184);
  CHECK(s * s * s > rhs);
  CHECK((s - 1) * (s - 1) * (s - 1) <= rhs);
  CHECK(large_prime_consistency(2));
  CHECK(large_prime_consistency(100));
  const double g = 0.66 * 5 * std::sqrt(1009.0) * std::pow(std::log(1009.0), 2);
  CHECK(std::stoull(large_gcd_threshold(5, 1009)) == static_cast<u64>(std::ceil(g)));
}
