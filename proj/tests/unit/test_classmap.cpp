#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "resmap/classmap.hpp"

using namespace resmap;

namespace {

PowerMap random_map(std::mt19937_64& rng, u64 p_max) {
  static const auto ps = primes_between(5, 400);
  for (;;) {
    const u64 p = ps[rng() % ps.size()];
    if (p > p_max) continue;
    const u64 k = 1 + rng() % (p - 2);
    if (oracle::gcd(k, p - 1) != 1) continue;
    const i64 A = static_cast<i64>(1 + rng() % ((p - 1) / 2)) * (rng() % 2 ? 1 : -1);
    return PowerMap(Prime(p), A, static_cast<i64>(k));
  }
}

}  // namespace

TEST_CASE("evaluation") {
  CHECK(PowerMap(Prime(7), 3, 5)(2) == 5);
  CHECK(PowerMap(Prime(13), 2, 5)(9) == 6);
  CHECK(apply(PowerMap(Prime(13), -2, 5), 9) == 7);
}

TEST_CASE("map validation") {
  CHECK_THROWS_AS(PowerMap(Prime(11), 2, 5), std::invalid_argument);  // gcd(5,10)=5
  CHECK_THROWS_AS(PowerMap(Prime(11), 6, 3), std::invalid_argument);  // |A| >= p/2
  CHECK_THROWS_AS(PowerMap(Prime(11), 0, 3), std::invalid_argument);
  const PowerMap f(Prime(11), 2, -1);
  CHECK(f.exponent() == 9);
  CHECK(f.signed_exponent() == -1);
  CHECK(f.d() == oracle::gcd(8, 10));
  CHECK(PowerMap(Prime(13), 1, 1).d() == 12);
}

TEST_CASE("class partition sizes") {
  const ClassPartition part(Prime(29), 24);
  for (u32 j = 0; j < 24; ++j) CHECK(part.size(j) == (j >= 1 && j <= 4 ? 2u : 1u));
  CHECK_THROWS(ClassPartition(Prime(29), 29));
  u64 total = 0;
  for (u64 x : part.members(3)) {
    CHECK(x % 24 == 3);
    ++total;
  }
  CHECK(total == 2);
}

TEST_CASE("intersection counts") {
  CHECK(intersection_count(PowerMap(Prime(7), 3, 5), 3, 0, 1) == 2);
  CHECK(intersection_count(PowerMap(Prime(13), 1, 5), 2, 0, 1) == 0);
}

TEST_CASE("composition and inverse") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const PowerMap f = random_map(rng, 400);
    const PowerMap g = inverse(f);
    const u64 p = f.prime().value();
    for (u64 x = 1; x < p; x += 1 + p / 17) REQUIRE(g(f(x)) == x);
    const PowerMap h = compose(f, g);
    CHECK(h.multiplier() == 1);
    CHECK(h.exponent() == 1);
    REQUIRE(negate(f)(3) == p - f(3));
  }
  // 2^{-1} = 15 and (2/29) = -1, so A' = -15, reduced into |A'| < p/2.
  const PowerMap g = inverse(PowerMap(Prime(29), 2, 15));
  CHECK(g.multiplier() == 14);
  CHECK(g.exponent() == 15);
}

TEST_CASE("classifier against the naive oracle") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1500; ++t) {
    const PowerMap f = random_map(rng, 200);
    const u64 p = f.prime().value();
    const u32 n = 2 + static_cast<u32>(rng() % std::min<u64>(p - 2, 14));
    const auto c = classify(f, n);
    const auto o = oracle::types(p, f.multiplier(), f.exponent(), n);
    INFO(f.to_string(), " n=", n);
    REQUIRE(c.type_i == o.i);
    REQUIRE(c.type_iia == o.iia);
    REQUIRE(!c.type_iib.empty() == o.iib);
    REQUIRE(c.has_type_iii() == o.iii);
    REQUIRE(c.has_type_iv() == o.iv);
    const auto tg = oracle::targets(p, f.multiplier(), f.exponent(), n);
    for (u32 i = 0; i < n; ++i) {
      REQUIRE(c.targets[i].size() == tg[i].size());
    }
  }
}

TEST_CASE("table rows by hand") {
  // n=4, p=11: every class of x^9 lands in one class.
  const auto c = classify(PowerMap(Prime(11), 1, 9), 4);
  CHECK(c.type_iii.size() == 4);
  // (03)(12)(46)(57): 2*7^{-1} = 5 and 2*5^{-1} = 7 mod 11.
  const auto s = classify(PowerMap(Prime(11), 2, 9), 8);
  REQUIRE(s.sigma);
  CHECK(cycle_notation(*s.sigma) == "(03)(12)(46)(57)");
  CHECK(cycle_notation({0, 1, 2}) == "()");
}

TEST_CASE("quick classifier agrees with the exact one") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    const PowerMap f = random_map(rng, 300);
    const u32 n = 2 + static_cast<u32>(rng() % std::min<u64>(f.prime().value() - 2, 20));
    const auto c = classify(f, n);
    const auto q = classify_quick(f, n, kAllTypes);
    REQUIRE(q.type_i == c.type_i);
    REQUIRE(q.type_iia == c.type_iia);
    REQUIRE(q.type_iib == !c.type_iib.empty());
    REQUIRE(q.type_iii == c.has_type_iii());
    REQUIRE(q.type_iv == c.has_type_iv());
  }
}

TEST_CASE("witnesses survive the symmetry orbit") {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int t = 0; t < 3000 && checked < 200; ++t) {
    const PowerMap f = random_map(rng, 120);
    const u32 n = 3 + static_cast<u32>(rng() % 4);
    if (2 * n >= f.prime().value()) continue;
    const auto c = classify(f, n);
    if (c.type_iii.empty()) continue;
    ++checked;
    for (const auto& img : symmetry_orbit(f, n)) {
      const auto g = classify(img.map, n);
      for (const auto& w : c.type_iii) {
        const auto moved = transform_witness(img.transform, f.prime().value(), n, w);
        const bool found = std::find(g.type_iii.begin(), g.type_iii.end(), moved) != g.type_iii.end();
        // Swaps need N_i = N_j; the orbit only offers them when they apply.
        if (img.transform == WitnessTransform::kReflectTarget) REQUIRE(found);
        if (c.class_sizes[w.first] == c.class_sizes[w.second]) REQUIRE(found);
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("type names round trip") {
  CHECK(parse_types("i,iia,iib,iii,iv") == kAllTypes);
  CHECK(parse_types("iii") == kTypeIII);
  CHECK_THROWS((void)parse_types("v"));
  CHECK(type_name(kTypeIIb) == "iib");
}
