#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracle.hpp"
#include "resmap/runs.hpp"

using namespace resmap;

namespace {

std::vector<RunRecord> brute_runs(u64 p) {
  std::vector<RunRecord> out;
  for (u64 x = 1; x < p;) {
    const int l = oracle::legendre(x, p);
    u64 y = x;
    while (y + 1 < p && oracle::legendre(y + 1, p) == l) ++y;
    out.push_back({p, x, y - x + 1, l});
    x = y + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("Legendre runs against direct evaluation") {
  for (u64 p : primes_between(3, 400)) REQUIRE(qr_runs(Prime(p)) == brute_runs(p));
  const auto r7 = qr_runs(Prime(7));
  // 1 2 | 3 | 4 | 5 6 : squares mod 7 are {1, 2, 4}.
  REQUIRE(r7.size() == 4);
  CHECK(r7[0].t == 2);
  CHECK(r7[3].value == -1);
}

TEST_CASE("longest run stays below sqrt p except at 13") {
  for (u64 p : primes_between(3, 3000)) {
    const auto r = longest_qr_run(Prime(p));
    if (p < 300) REQUIRE(r.t == oracle::longest_run(p));
    if (p == 13) {
      // 5, 6, 7, 8 are all nonresidues.
      CHECK(r.a == 5);
      CHECK(r.t == 4);
      continue;
    }
    REQUIRE(static_cast<double>(r.t) < std::sqrt(static_cast<double>(p)));
  }
}

TEST_CASE("central and one-third runs, two ways") {
  for (u64 p : primes_between(5, 20000)) {
    if (p % 4 != 1) continue;
    const Prime pp(p);
    REQUIRE(central_run(pp) == central_run_by_primes(pp));
    REQUIRE(third_runs(pp) == third_runs_by_residues(pp));
  }
  CHECK_THROWS_AS((void)central_run(Prime(23)), std::domain_error);
}

TEST_CASE("census agrees with per-prime runs") {
  CensusOptions all;
  all.dedup = false;
  const auto census = run_census(600, 5, all);
  std::vector<RunRecord> want;
  for (u64 p : primes_between(3, 599)) {
    for (const auto& r : brute_runs(p)) {
      if (r.t >= 5) want.push_back(r);
    }
  }
  CHECK(census == want);

  CensusOptions dedup;
  dedup.one_mod_four_only = true;
  dedup.threads = 3;
  for (const auto& r : run_census(20000, 5, dedup)) {
    REQUIRE(r.p % 4 == 1);
    REQUIRE(2 * r.a < r.p);
  }
}

TEST_CASE("cubic runs") {
  for (u64 p : primes_between(7, 500)) {
    if (p % 3 != 1) continue;
    const auto runs = cubic_runs(Prime(p));
    u64 covered = 0;
    for (const auto& r : runs) {
      for (u64 x = r.a; x < r.a + r.t; ++x) REQUIRE(static_cast<i64>(oracle::slow_pow(x, (p - 1) / 3, p)) == r.value);
      covered += r.t;
    }
    REQUIRE(covered == p - 1);
  }
  CHECK_THROWS((void)cubic_runs(Prime(11)));
}
