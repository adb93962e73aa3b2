#pragma once

// Numerical checks of the exponential-sum, Fourier and counting estimates
// that govern how power maps spread residue classes, plus exact threshold
// arithmetic for the asymptotic results.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "resmap/classmap.hpp"

namespace resmap {

/// One computed quantity against one bound.
struct BoundReport {
  std::string quantity;
  double computed = 0;
  double bound = 0;
  bool holds = false;
  /// Parameters at which `computed` is attained.
  std::string witness;
  /// Side information: the alternative constant, "informative only", ...
  std::string note;
};

inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kSqrtTolerance = 1e-6;

/// computed <= bound up to a relative tolerance.
[[nodiscard]] bool within(double computed, double bound, double rel_tol);

/// Sum of complex terms with compensated (Kahan) accumulation per component.
class CompensatedSum {
 public:
  void add(std::complex<double> z);
  [[nodiscard]] std::complex<double> value() const { return {re_, im_}; }

 private:
  double re_ = 0, im_ = 0, cre_ = 0, cim_ = 0;
};

/// e_p(m) = exp(2 pi i m / p) for every residue m.
[[nodiscard]] std::vector<std::complex<double>> roots_of_unity(u64 p);

/// sum_{x=1}^{p-1} e_p(a x^k + b x), k canonical.
[[nodiscard]] std::complex<double> binomial_sum(const Prime& p, u64 k, u64 a, u64 b);

/// Kloosterman sum sum_{x=1}^{p-1} e_p(a x^{-1} + b x).
[[nodiscard]] std::complex<double> kloosterman_sum(const Prime& p, u64 a, u64 b);

/// Size guard for the O(p^2) sweeps below.
inline constexpr u64 kExpSumPrimeLimit = 20000;

/// max over a, b != 0 of |K(a, b)| against 2 sqrt(p). Uses K(a, b) = K(1, ab).
[[nodiscard]] BoundReport kloosterman_max(const Prime& p);

/// max over (a, b) != (0, 0) of |sum_{x=1}^{p-1} e_p(a x^k + b x)| for the
/// signed exponent k. Reports the comparison with 1 + d + 2.292 p^(89/92)
/// and, for k != 1, with the Weil bound |k-1| sqrt(p) (plus 1 for the missing
/// x = 0 term when k > 1). Uses S(a, b) = S(a b^{-k}, 1) for b != 0.
[[nodiscard]] std::vector<BoundReport> binomial_sum_max(const Prime& p, i64 k);

/// (4/pi^2) log p + c with c = 0.381 for p > 607 and 1/2 for 7 <= p <= 607.
[[nodiscard]] double fourier_l1_constant(u64 p);
[[nodiscard]] double fourier_l1_bound(u64 p);

/// |a_j(u)| = |sin(pi n u N_j / p)| / (p |sin(pi n u / p)|) for u != 0.
[[nodiscard]] double fourier_magnitude(u64 p, u32 n, u64 class_size, u64 u);

/// sum_{u != 0} |a_j(u)|. Depends only on p and N_j, since n u runs over
/// every nonzero residue.
[[nodiscard]] double fourier_l1_tail(u64 p, u64 class_size);

struct FourierProfile {
  u64 p = 0;
  u32 n = 0;
  u32 j = 0;
  /// a_j(u) for u in [0, p), by direct DFT of the indicator of I_j.
  std::vector<std::complex<double>> coefficients;
  double l1_tail = 0;
};

[[nodiscard]] FourierProfile fourier_profile(const Prime& p, u32 n, u32 j);

/// The closed-form L1 tail for I_j against fourier_l1_bound(p).
/// Throws std::domain_error for p < 7.
[[nodiscard]] BoundReport fourier_l1(const Prime& p, u32 n, u32 j);

/// Cell errors |f(I_i) cap I_j| - N_i N_j / p over all (i, j) against
/// (d + 1 + c p^(89/92)) ((4/pi^2) log p + c')^2, reported for c = 2.293
/// and c = 2.292, followed by the main-term window |N_i N_j / p - p/n^2| < 1.
[[nodiscard]] std::vector<BoundReport> intersection_error(const PowerMap& f, u32 n);

struct MijCount {
  u64 count = 0;
  /// (floor((C-1)/n) + 1)(floor(p/(C n)) + 1)
  u64 interval_bound = 0;
  /// max{2p/n^2 + 2, p/(2n) + 1}
  double uniform_bound = 0;
  bool interval_holds = false;
  bool uniform_holds = false;
};

/// |{x in I_i : C x mod p in I_j}| with its two upper bounds.
/// Requires 2 <= C < p/2 and 2 <= n < p.
[[nodiscard]] MijCount mij_count(const Prime& p, u64 C, u32 n, u32 i, u32 j);

/// Worst cell of max{2p/n^2 + 2, p/(2n) + 1} over all 2 <= C < p/2,
/// 3 <= n < p/2 and all (i, j); also tallies the interval bound.
[[nodiscard]] std::vector<BoundReport> mij_sweep(const Prime& p);

/// Character chi_r of order dividing L: chi_r(g^m) = e(r m / L), g the least
/// primitive root. S(chi) = sum_x chi(x) [x in I_i] [C x mod p in I \ I_j]
/// for every r = 1 .. L-1, compared against c' sqrt(p) + c'^2 sqrt(p) with
/// c' = (4/pi^2) log p + c. The 0.22 sqrt(p) log^2 p form is carried in the
/// note (informative only below p = 10^6). Throws unless L divides p - 1.
[[nodiscard]] std::vector<BoundReport> character_sum_S(const Prime& p, u32 n, u64 C, u32 i, u32 j, u64 L);

/// G(chi_r, A) = sum_x chi_r(x) e_p(A x) with chi_r of order dividing L.
[[nodiscard]] std::complex<double> gauss_sum(const Prime& p, u64 L, u64 r, u64 A);

/// Exact thresholds in decimal.
struct Threshold {
  std::string name;
  /// Human readable condition, e.g. "p > 37 |k-1|^2 n^2".
  std::string condition;
  /// Right-hand side rounded up to an integer.
  std::string bound;
  /// Smallest integer p satisfying the condition.
  std::string smallest;
};

/// Thresholds for modulus n and, when given, |k - 1|:
///   p >= 9e34 n^(92/3), p > 4e29 n^(184/3), p > (4n+1)^2,
///   p > 37 |k-1|^2 n^2, p >= 16.2 |k-1|^2 n^4.
[[nodiscard]] std::vector<Threshold> thresholds(u32 n, std::optional<u64> k_minus_one = std::nullopt);

/// Smallest integer d with d >= 0.66 n sqrt(p) log^2 p.
[[nodiscard]] std::string large_gcd_threshold(u32 n, u64 p);

/// At p = the 9e34 n^(92/3) threshold: whether 0.66 n p^(1/2) log^2 p is
/// at most 0.006 p^(89/92), i.e. the error term no longer dominates.
[[nodiscard]] bool large_prime_consistency(u32 n);

}  // namespace resmap
