#pragma once

// Exhaustive enumeration of power maps over (p, A, k, n) with early exit.
//
// Only A > 0 is enumerated. Types (iia), (iib), (iii) and (iv) are invariant
// under A -> -A (witnesses reflect), and a Type (i) hit for -A is recorded as
// the positive multiplier with sign = -1.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "resmap/classmap.hpp"

namespace resmap {

struct ExponentFilter {
  enum class Kind { kAll, kHalf, kAbsAtMost, kExact };
  Kind kind = Kind::kAll;
  /// Bound for kAbsAtMost, signed exponent for kExact.
  i64 value = 0;

  static ExponentFilter all() { return {}; }
  static ExponentFilter half() { return {Kind::kHalf, 0}; }
  static ExponentFilter abs_at_most(i64 b) { return {Kind::kAbsAtMost, b}; }
  static ExponentFilter exact(i64 k) { return {Kind::kExact, k}; }
};

/// p >= lo_mul * n + lo_add and, when hi_enabled, p <= hi2 n^2 + hi1 n + hi0.
struct PrimeWindow {
  u64 lo_mul = 2;
  u64 lo_add = 1;
  bool hi_enabled = false;
  u64 hi2 = 0;
  u64 hi1 = 0;
  u64 hi0 = 0;

  [[nodiscard]] bool admits(u64 p, u32 n) const noexcept;
};

struct SearchSpec {
  u32 n_min = 3;
  u32 n_max = 12;
  u64 p_min = 3;
  u64 p_max = 1000;
  PrimeWindow window;
  ExponentFilter exponents;
  TypeMask types = kTypeIII;
  /// Skip f = +-x.
  bool skip_identity = true;
  /// Skip f = +-x^((p+1)/2) for odd n.
  bool skip_half_odd = true;

  /// Canonical one-line rendering; the checkpoint hash is taken over it.
  [[nodiscard]] std::string canonical() const;
};

struct SearchHit {
  u32 n = 0;
  u64 p = 0;
  u64 A = 0;
  u64 k = 0;
  /// -1 when the hit is a Type (i) map for -A (the mirror of A x^k).
  int sign = 1;
  TypeMask types = 0;
  std::vector<ClassPair> type_iii;
  std::vector<u32> type_iib;
  std::optional<std::vector<u32>> sigma;

  [[nodiscard]] PowerMap map() const;
  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

/// Ordering used for every emitted hit list: (n, p, A, k, sign).
bool hit_less(const SearchHit& a, const SearchHit& b);

/// Exponents admitted by the filter, canonical and ascending.
[[nodiscard]] std::vector<u64> admissible_exponents(const Prime& p, const ExponentFilter& filter);

/// Every admissible (A, k) with 0 < A < p/2, grouped by k.
[[nodiscard]] std::vector<std::pair<u64, u64>> enumerate_maps(const Prime& p, const ExponentFilter& filter);

enum class SearchStatus { kComplete, kInterrupted, kResourceLimit };
[[nodiscard]] const char* status_name(SearchStatus s);

struct SearchOptions {
  unsigned threads = 1;
  /// Stop after this many maps have been classified (0: no limit).
  u64 max_maps = 0;
  /// Stop dispatching after this many primes in this invocation (0: no limit).
  u64 max_shards = 0;
  /// Resume from and save to this file when non-empty.
  std::string checkpoint_path;
};

struct SearchResult {
  SearchStatus status = SearchStatus::kComplete;
  std::vector<SearchHit> hits;
  /// (p, number of maps classified for p), ascending in p.
  std::vector<std::pair<u64, u64>> maps_per_prime;
  u64 maps_visited = 0;
};

/// Thrown when a checkpoint belongs to another spec or code version.
class CheckpointMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] SearchResult run_search(const SearchSpec& spec, const SearchOptions& options = {});

/// Hits restricted to the `count` largest primes per n that have any hit.
[[nodiscard]] std::vector<SearchHit> largest_hits(const std::vector<SearchHit>& hits, std::size_t count);
[[nodiscard]] std::vector<SearchHit> largest_hits(const SearchSpec& spec, std::size_t count,
                                                  const SearchOptions& options = {});

/// Classifies f exactly and turns it into a hit for the requested types, or
/// nothing when f has none of them. A negative multiplier becomes sign = -1.
[[nodiscard]] std::optional<SearchHit> make_hit(const PowerMap& f, u32 n, TypeMask types,
                                              const std::vector<u32>* powers = nullptr);

/// Checkpoint payload: completed primes with their map counts and the hits
/// found so far (witnesses are recomputed on load).
struct CheckpointState {
  std::string spec_hash;
  std::string code_version;
  std::vector<std::pair<u64, u64>> done;
  std::vector<SearchHit> hits;
};

[[nodiscard]] std::string spec_hash(const SearchSpec& spec);
void save_checkpoint(const std::string& path, const CheckpointState& state);
/// Throws CheckpointMismatch when the file was written for another spec or
/// code version, std::runtime_error when it is malformed.
[[nodiscard]] CheckpointState load_checkpoint(const std::string& path, const SearchSpec& spec);

}  // namespace resmap
