#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <set>
#include <tuple>

#include "oracle.hpp"
#include "resmap/search.hpp"

using namespace resmap;

namespace {

// Every (p, A, k, n) with a Type (iii) witness, by brute force over A > 0.
std::set<std::tuple<u32, u64, u64, u64>> brute_iii(u32 n_lo, u32 n_hi, u64 p_max) {
  std::set<std::tuple<u32, u64, u64, u64>> out;
  for (u64 p = 5; p <= p_max; ++p) {
    if (!oracle::is_prime(p)) continue;
    for (u32 n = n_lo; n <= n_hi; ++n) {
      if (p < 2 * n + 1) continue;
      for (u64 k = 1; k < p - 1; ++k) {
        if (oracle::gcd(k, p - 1) != 1) continue;
        for (u64 A = 1; 2 * A < p; ++A) {
          if (A == 1 && k == 1) continue;
          if (n % 2 == 1 && A == 1 && k == (p + 1) / 2) continue;
          if (oracle::types(p, static_cast<i64>(A), k, n).iii) out.insert({n, p, A, k});
        }
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("admissible exponents") {
  CHECK(admissible_exponents(Prime(11), ExponentFilter::all()) == std::vector<u64>{1, 3, 7, 9});
  CHECK(enumerate_maps(Prime(11), ExponentFilter::all()).size() == 20);
  CHECK(admissible_exponents(Prime(13), ExponentFilter::half()) == std::vector<u64>{7});
  CHECK(admissible_exponents(Prime(11), ExponentFilter::exact(-1)) == std::vector<u64>{9});
  CHECK(admissible_exponents(Prime(11), ExponentFilter::abs_at_most(1)) == std::vector<u64>{1, 9});
}

TEST_CASE("prime window") {
  PrimeWindow w;  // p >= 2n + 1
  CHECK_FALSE(w.admits(7, 4));
  CHECK(w.admits(11, 5));
  PrimeWindow t3{2, 1, true, 16, 8, 1};  // 2n < p <= (4n+1)^2
  CHECK(t3.admits(81, 2));
  CHECK_FALSE(t3.admits(83, 2));
}

TEST_CASE("search matches brute force on a small regime") {
  SearchSpec spec;
  spec.n_min = 3;
  spec.n_max = 6;
  spec.p_max = 61;
  const auto res = run_search(spec);
  REQUIRE(res.status == SearchStatus::kComplete);
  std::set<std::tuple<u32, u64, u64, u64>> got;
  for (const auto& h : res.hits) got.insert({h.n, h.p, h.A, h.k});
  CHECK(got == brute_iii(3, 6, 61));
  CHECK(std::is_sorted(res.hits.begin(), res.hits.end(), [](const SearchHit& a, const SearchHit& b) {
    return std::tie(a.n, a.p, a.A, a.k) < std::tie(b.n, b.p, b.A, b.k);
  }));
}

TEST_CASE("n = 4 Type (iii) lives at p = 11 and 13 only") {
  SearchSpec spec;
  spec.n_min = spec.n_max = 4;
  spec.p_max = 600;
  const auto res = run_search(spec);
  std::set<u64> ps;
  for (const auto& h : res.hits) ps.insert(h.p);
  CHECK(ps == std::set<u64>{11, 13});
}

TEST_CASE("n = 3 Type (i) up to symmetry") {
  SearchSpec spec;
  spec.n_min = spec.n_max = 3;
  spec.p_max = 400;
  spec.window = {1, 1};  // p = 5 is below 2n + 1
  spec.types = kTypeI;
  spec.skip_half_odd = false;
  const auto res = run_search(spec);
  std::set<std::tuple<u64, i64, u64>> got;
  for (const auto& h : res.hits) got.insert({h.p, h.sign * static_cast<i64>(h.A), h.k});
  CHECK(got == std::set<std::tuple<u64, i64, u64>>{{5, -1, 3}, {7, -3, 5}});
  for (const auto& [p, A, k] : got) CHECK(oracle::types(p, A, k, 3).i);
}

TEST_CASE("threads do not change the result") {
  SearchSpec spec;
  spec.n_min = 3;
  spec.n_max = 8;
  spec.p_max = 300;
  SearchOptions one, four;
  four.threads = 4;
  CHECK(run_search(spec, one).hits == run_search(spec, four).hits);
}

TEST_CASE("resource limit is distinct from an empty search") {
  SearchSpec spec;
  spec.n_min = spec.n_max = 4;
  spec.p_min = 100;
  spec.p_max = 400;
  const auto full = run_search(spec);
  CHECK(full.status == SearchStatus::kComplete);
  CHECK(full.hits.empty());
  SearchOptions o;
  o.max_maps = 5;
  const auto cut = run_search(spec, o);
  CHECK(cut.status == SearchStatus::kResourceLimit);
  CHECK(std::string(status_name(cut.status)) == "resource-limit");
}

TEST_CASE("checkpoint resume equals one uninterrupted run") {
  const auto path = (std::filesystem::temp_directory_path() / "resmap_unit_ckpt.json").string();
  std::filesystem::remove(path);
  SearchSpec spec;
  spec.n_min = spec.n_max = 3;
  spec.p_max = 500;
  const auto oracle_run = run_search(spec);

  SearchOptions o;
  o.checkpoint_path = path;
  o.max_shards = 20;
  const auto first = run_search(spec, o);
  CHECK(first.status == SearchStatus::kInterrupted);
  o.max_shards = 0;
  const auto second = run_search(spec, o);
  CHECK(second.status == SearchStatus::kComplete);
  CHECK(second.hits == oracle_run.hits);
  CHECK(second.maps_visited == oracle_run.maps_visited);

  SearchSpec other = spec;
  other.p_max = 400;
  CHECK_THROWS_AS((void)run_search(other, o), CheckpointMismatch);
  std::filesystem::remove(path);
}

TEST_CASE("largest hits keeps the top primes per n") {
  SearchSpec spec;
  spec.n_min = spec.n_max = 5;
  spec.p_max = 1000;
  const auto top = largest_hits(run_search(spec).hits, 5);
  std::set<u64> ps;
  for (const auto& h : top) ps.insert(h.p);
  CHECK(ps == std::set<u64>{19, 23, 29, 31, 43});
  CHECK(largest_hits(top, 0).empty());
}
