#pragma once

// Constructive families of exceptional maps, built from Legendre and cubic
// run structure. Every constructor only *predicts*; verify() settles each
// claim with the classifier and direct evaluation, never with the formulas.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resmap/classmap.hpp"

namespace resmap {

enum class Family {
  kEx13,  // +-x^((p+1)/2): fixed class and two-class images
  kT22,   // 2 x^((p+1)/2) from a pattern prime
  kT23,   // identity on I_0 from residues 1..t
  kT24,   // identity on I_i from the run around p/2
  kT25,   // identity on I_i from the runs around p/3 and 2p/3
  kT26,   // identity on I_i from a general run [a, a + t)
  kT27,   // cubic run around p/2
  kT28,   // Type (iia) for p = n + w
};

[[nodiscard]] const char* family_name(Family f);
/// Accepts "ex13", "t22", ..., "t28". Throws std::invalid_argument.
[[nodiscard]] Family parse_family(const std::string& name);

enum class Claim {
  kInto,        // f(I_i) inside I_j
  kIdentityOn,  // f(x) = x on I_i
  kFixesClass,  // f(I_i) = I_i
  kTwoClasses,  // f(I_i) meets exactly I_i and I_{p-i mod n}
  kTypeIIa,     // f permutes the classes
};

[[nodiscard]] const char* claim_name(Claim c);

struct Prediction {
  i64 A = 0;
  u64 k = 0;
  u32 i = 0;
  u32 j = 0;
  Claim claim = Claim::kInto;
  /// Which formula produced it, e.g. "defi", "n=2 mod 3, a1".
  std::string branch;
  bool verified = false;
};

struct FamilyInstance {
  Family family = Family::kEx13;
  u64 p = 0;
  u32 n = 0;
  std::vector<std::pair<std::string, i64>> parameters;
  std::vector<Prediction> predicted;
  /// Skipped exponents, disagreeing readings of a range, and similar.
  std::vector<std::string> notices;
  bool verified = false;
};

/// Checks every prediction independently; sets each flag and the overall one
/// (true iff there is at least one prediction and all hold).
void verify(FamilyInstance& instance);
[[nodiscard]] bool check_claim(const Prediction& pred, const Prime& p, u32 n);

/// f = sign * x^((p+1)/2), p = 1 mod 4. Odd n: I_i with 2i = p mod n is fixed.
/// When p > (n+1)^2 every other class meets exactly I_i and I_{p-i}.
[[nodiscard]] FamilyInstance ex13_predict(const Prime& p, u32 n, int sign);

/// (p/q) = +1 for primes q = 1 mod 4 and -1 for q = 3 mod 4, 3 <= q <= 4t-1.
[[nodiscard]] bool pattern_check_22(const Prime& p, u64 t);
/// Largest t with pattern_check_22 (0 if none).
[[nodiscard]] u64 max_pattern_t(const Prime& p);
/// Smallest n = 2 mod 4 with 2p/(4t+1) <= n < 2p/(4t-1), if any.
[[nodiscard]] std::optional<u32> t22_smallest_n(const Prime& p, u64 t);
[[nodiscard]] FamilyInstance t22_predict(const Prime& p, u64 t, u32 n);
/// Pattern primes p = 1 mod 4 below p_limit with maximal t >= t_min.
[[nodiscard]] std::vector<std::pair<u64, u64>> find_pattern_primes(u64 p_limit, u64 t_min, unsigned threads = 1);

[[nodiscard]] FamilyInstance t23_predict(const Prime& p, u64 t, u32 n);
[[nodiscard]] FamilyInstance t24_predict(const Prime& p, u64 T, u32 n);
/// Emits every branch that admits n. Throws when none does.
[[nodiscard]] FamilyInstance t25_predict(const Prime& p, u64 T1, u64 T2, u32 n);
[[nodiscard]] FamilyInstance t26_predict(const Prime& p, u64 a, u64 t, i64 u, u32 n);
/// Exponents with gcd(k, p-1) > 1 are skipped with a notice.
[[nodiscard]] FamilyInstance t27_predict(const Prime& p, u64 T, u32 n);

/// p = n + w, 2 <= w < n, p = 1 mod 4: (y/p) = ((w-y)/p) for 1 <= y < w/2.
/// Throws std::domain_error outside that setting.
[[nodiscard]] bool t28_check(const Prime& p, u32 n);
[[nodiscard]] FamilyInstance t28_predict(const Prime& p, u32 n);

/// Moduli n in the even (or odd) window of the central-run family:
/// 2p/(t+1) < n < 2p/(t-1) for even n, p/(t+1) < n < p/(t-1) for odd n.
[[nodiscard]] std::vector<u32> central_window(u64 p, u64 t, bool even);

/// Admissible u for a run (a, t): (s+1-r)/(t+1) > u > s+1-(a+t)/2 where
/// a = st + r.
[[nodiscard]] std::vector<i64> t26_admissible_u(u64 a, u64 t);
/// Integer n in the first range for (a, t, u); empty when there is none.
[[nodiscard]] std::vector<u32> t26_first_range(u64 p, u64 a, u64 t, i64 u);

}  // namespace resmap
