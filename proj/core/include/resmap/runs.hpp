#pragma once

// Runs of consecutive integers on which the quadratic character, or the
// cubic power x^((p-1)/3), is constant.

#include <cstdint>
#include <vector>

#include "resmap/modarith.hpp"

namespace resmap {

/// A maximal interval [a, a + t) inside [1, p) with constant character value.
struct RunRecord {
  u64 p = 0;
  u64 a = 0;
  u64 t = 0;
  /// +-1 for Legendre runs, the residue x^((p-1)/3) mod p for cubic runs.
  i64 value = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// All maximal Legendre runs of p in increasing order of a. Runs never wrap
/// around p.
[[nodiscard]] std::vector<RunRecord> qr_runs(const Prime& p);
[[nodiscard]] std::vector<RunRecord> qr_runs(const Prime& p, const std::vector<std::int8_t>& legendre);

/// The first longest Legendre run.
[[nodiscard]] RunRecord longest_qr_run(const Prime& p);

/// Largest T with the Legendre symbol constant on [(p+1)/2 - T, (p-1)/2 + T].
/// Throws std::domain_error unless p = 1 mod 4.
[[nodiscard]] u64 central_run(const Prime& p);
/// Same T from the prime condition: (q/p) = 1 for every odd prime q <= 2T - 1.
[[nodiscard]] u64 central_run_by_primes(const Prime& p);

struct ThirdRuns {
  u64 T1 = 0;
  u64 T2 = 0;
  u32 delta = 0;

  friend bool operator==(const ThirdRuns&, const ThirdRuns&) = default;
};

/// Run around c = (p - delta)/3 with value (3/p): T1 counts c, c-1, ...
/// downward, T2 counts c+1, c+2, ... upward. Throws unless p = 1 mod 4.
[[nodiscard]] ThirdRuns third_runs(const Prime& p);
/// Same pair from ((3m - delta)/p) = 1 for 1 <= m <= T2 and
/// ((3m + delta)/p) = 1 for 0 <= m < T1.
[[nodiscard]] ThirdRuns third_runs_by_residues(const Prime& p);

/// Maximal runs of constant x^((p-1)/3) mod p. Throws unless p = 1 mod 3.
[[nodiscard]] std::vector<RunRecord> cubic_runs(const Prime& p);
/// Half-length T of the cubic run centred on p/2.
[[nodiscard]] u64 central_cubic_run(const Prime& p);

struct CensusOptions {
  /// Keep one run of each symmetric pair (the one with a < p/2).
  bool dedup = true;
  /// Restrict to p = 1 mod 4, where x^((p+1)/2) permutes and the runs feed
  /// the Type (iii) families.
  bool one_mod_four_only = false;
  unsigned threads = 1;
};

/// Every Legendre run with t >= t_min for primes 3 <= p < p_limit, sorted by
/// (p, a).
[[nodiscard]] std::vector<RunRecord> run_census(u64 p_limit, u64 t_min, const CensusOptions& options = {});

}  // namespace resmap
