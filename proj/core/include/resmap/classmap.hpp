#pragma once

// Monomial permutations f(x) = A x^k mod p and how they move the residue
// classes I_j = {1 <= x < p : x = j mod n}.

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resmap/modarith.hpp"

namespace resmap {

/// f(x) = A x^k mod p, a permutation of {1, .., p-1}.
///
/// The multiplier is kept in its signed form |A| < p/2. The exponent may be
/// given canonically (1 <= k < p-1) or signed (|k| < (p-1)/2, negative k for
/// inverse powers); both denote the same permutation and are stored as the
/// canonical residue.
class PowerMap {
 public:
  /// Throws std::invalid_argument unless |A| < p/2, p does not divide A,
  /// 0 < |k| < p-1 and gcd(k mod (p-1), p-1) = 1.
  PowerMap(Prime p, i64 multiplier, i64 exponent);

  [[nodiscard]] const Prime& prime() const noexcept { return p_; }
  [[nodiscard]] i64 multiplier() const noexcept { return a_; }
  [[nodiscard]] u64 multiplier_residue() const noexcept { return a_res_; }
  [[nodiscard]] u64 exponent() const noexcept { return k_; }
  [[nodiscard]] i64 signed_exponent() const noexcept;
  /// d = gcd(k - 1, p - 1), with gcd(0, p - 1) = p - 1 for k = 1.
  [[nodiscard]] u64 d() const noexcept { return d_; }
  /// L = (p - 1) / d.
  [[nodiscard]] u64 L() const noexcept { return (p_.value() - 1) / d_; }

  /// Unchecked evaluation; x must lie in [1, p).
  [[nodiscard]] u64 operator()(u64 x) const noexcept {
    return mul_mod(a_res_, mod_pow(x, k_, p_), p_);
  }

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const PowerMap&, const PowerMap&) = default;

 private:
  Prime p_;
  i64 a_;
  u64 a_res_;
  u64 k_;
  u64 d_;
};

/// Checked evaluation. Throws std::invalid_argument for x outside [1, p).
[[nodiscard]] u64 apply(const PowerMap& f, u64 x);

/// x -> -f(x).
[[nodiscard]] PowerMap negate(const PowerMap& f);

/// x -> outer(inner(x)).
[[nodiscard]] PowerMap compose(const PowerMap& outer, const PowerMap& inner);

/// The inverse permutation, again a monomial.
[[nodiscard]] PowerMap inverse(const PowerMap& f);

/// x^k mod p for every x in [0, p), built along powers of a primitive root.
[[nodiscard]] std::vector<u32> power_table(const Prime& p, u64 k);

/// Stride view over one residue class: first, first + n, first + 2n, ...
class ClassRange {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = u64;
    using difference_type = std::ptrdiff_t;
    using pointer = const u64*;
    using reference = u64;

    iterator() = default;
    iterator(u64 value, u64 step) : value_(value), step_(step) {}
    u64 operator*() const { return value_; }
    iterator& operator++() {
      value_ += step_;
      return *this;
    }
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.value_ == b.value_; }

   private:
    u64 value_ = 0;
    u64 step_ = 1;
  };

  ClassRange(u64 first, u64 step, u64 count) : first_(first), step_(step), count_(count) {}
  [[nodiscard]] iterator begin() const { return {first_, step_}; }
  [[nodiscard]] iterator end() const { return {first_ + count_ * step_, step_}; }
  [[nodiscard]] u64 size() const noexcept { return count_; }

 private:
  u64 first_;
  u64 step_;
  u64 count_;
};

/// The n classes I_0..I_{n-1} inside {1, .., p-1}.
class ClassPartition {
 public:
  /// Throws std::invalid_argument unless 2 <= n < p.
  ClassPartition(Prime p, u32 n);

  [[nodiscard]] const Prime& prime() const noexcept { return p_; }
  [[nodiscard]] u32 modulus() const noexcept { return n_; }
  /// N_j = |I_j|.
  [[nodiscard]] u64 size(u32 j) const { return sizes_.at(j); }
  [[nodiscard]] const std::vector<u64>& sizes() const noexcept { return sizes_; }
  [[nodiscard]] bool contains(u32 j, u64 x) const noexcept {
    return x >= 1 && x < p_.value() && x % n_ == j;
  }
  [[nodiscard]] ClassRange members(u32 j) const;

 private:
  Prime p_;
  u32 n_;
  std::vector<u64> sizes_;
};

/// Bit flags for the exceptional-map types.
enum MapType : unsigned {
  kTypeI = 1u << 0,    // f(I_j) = I_j for all j
  kTypeIIa = 1u << 1,  // classes permuted
  kTypeIIb = 1u << 2,  // some f(I_j) = I_j
  kTypeIII = 1u << 3,  // some f(I_i) inside a single I_j
  kTypeIV = 1u << 4,   // some f(I_i) misses some I_j
};
using TypeMask = unsigned;
inline constexpr TypeMask kAllTypes = kTypeI | kTypeIIa | kTypeIIb | kTypeIII | kTypeIV;

[[nodiscard]] std::string type_name(MapType t);
/// Parses "i", "iia", "iib", "iii", "iv" (comma separated). Throws on junk.
[[nodiscard]] TypeMask parse_types(const std::string& spec);

using ClassPair = std::pair<u32, u32>;

struct ClassificationResult {
  PowerMap map;
  u32 n;
  std::vector<u64> class_sizes;
  /// targets[i] = sorted classes j with f(I_i) meeting I_j.
  std::vector<std::vector<u32>> targets;
  bool type_i = false;
  bool type_iia = false;
  std::vector<u32> type_iib;
  std::vector<ClassPair> type_iii;
  /// sigma[i] = image class of I_i, present exactly when type_iia.
  std::optional<std::vector<u32>> sigma;

  [[nodiscard]] bool has_type_iii() const noexcept { return !type_iii.empty(); }
  [[nodiscard]] bool has_type_iv() const noexcept;
  /// Pairs (i, j) with f(I_i) and I_j disjoint. Materialised on demand since
  /// there are up to n^2 of them.
  [[nodiscard]] std::vector<ClassPair> type_iv_witnesses() const;
  [[nodiscard]] TypeMask types() const noexcept;
};

/// Exact classification; every flag and witness list is complete.
[[nodiscard]] ClassificationResult classify(const PowerMap& f, u32 n);
/// Same, reusing a power_table(p, k) that the caller already holds.
[[nodiscard]] ClassificationResult classify(const PowerMap& f, u32 n, const std::vector<u32>& powers);

/// |f(I_i) ∩ I_j|.
[[nodiscard]] u64 intersection_count(const PowerMap& f, u32 n, u32 i, u32 j);

/// Cycle notation for a class permutation, e.g. "(0312)" or "(4 10)".
/// Fixed points are omitted; the identity prints as "()".
[[nodiscard]] std::string cycle_notation(const std::vector<u32>& sigma);

/// Flags from the early-exit classifier. Only the types in `reported` carry
/// meaning; they agree with classify() on those.
struct QuickFlags {
  TypeMask reported = 0;
  bool type_i = false;
  /// -f is Type (i), i.e. f(I_j) = I_{p-j mod n} for all j.
  bool type_i_mirror = false;
  bool type_iia = false;
  bool type_iib = false;
  bool type_iii = false;
  bool type_iv = false;

  [[nodiscard]] bool any(TypeMask wanted) const noexcept;
};

/// Incremental per-modulus state for early-exit classification. Feed it
/// (class of x, class of f(x)) pairs; it reports when every requested flag
/// is settled.
class ClassTracker {
 public:
  void reset(u64 p, u32 n, TypeMask wanted);
  /// Returns true once every wanted flag is settled.
  bool observe(u32 src, u32 dst);
  [[nodiscard]] bool settled() const noexcept { return settled_; }
  [[nodiscard]] QuickFlags flags() const;

 private:
  void settle_check();

  static constexpr u32 kNone = ~u32{0};

  u64 p_ = 0;
  u32 n_ = 0;
  TypeMask wanted_ = 0;
  std::vector<u32> first_;
  std::vector<std::uint8_t> multi_;
  std::vector<u64> remaining_;  // unseen members per class
  std::vector<std::uint8_t> claimed_;
  std::vector<std::uint8_t> cell_;  // n*n hit grid, only with Type (iv)
  u64 cells_hit_ = 0;
  std::vector<u32> distinct_;
  u32 unresolved_ = 0;       // classes with fewer than two targets
  u32 iib_alive_ = 0;        // classes that could still satisfy f(I_i) = I_i
  bool perm_alive_ = true;   // no class split and no target shared so far
  bool ident_alive_ = true;
  bool mirror_alive_ = true;
  bool iii_found_ = false;
  bool iv_found_ = false;
  bool iib_found_ = false;
  bool settled_ = false;
};

/// Early-exit classifier; stops once the wanted flags are decided.
[[nodiscard]] QuickFlags classify_quick(const PowerMap& f, u32 n, TypeMask wanted);

/// How a witness pair transforms under a symmetry of the map.
enum class WitnessTransform {
  kReflectTarget,   // (i, j) -> (i, p - j mod n), for -f
  kSwap,            // (i, j) -> (j, i), for f^{-1} when N_i = N_j
  kSwapReflect,     // (i, j) -> (j, p - i mod n), for -f^{-1} when N_i = N_j
};

struct SymmetryImage {
  PowerMap map;
  WitnessTransform transform;
};

/// -f, f^{-1} and -f^{-1} with their witness transforms (duplicates removed).
[[nodiscard]] std::vector<SymmetryImage> symmetry_orbit(const PowerMap& f, u32 n);

[[nodiscard]] ClassPair transform_witness(WitnessTransform t, u64 p, u32 n, ClassPair w);

}  // namespace resmap
