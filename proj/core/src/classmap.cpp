#include "resmap/classmap.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace resmap {

PowerMap::PowerMap(Prime p, i64 multiplier, i64 exponent)
    : p_(p), a_(multiplier), a_res_(0), k_(0), d_(0) {
  const u64 pv = p.value();
  const u64 abs_a = static_cast<u64>(multiplier < 0 ? -multiplier : multiplier);
  if (multiplier == 0 || 2 * abs_a >= pv) {
    throw std::invalid_argument("multiplier must satisfy 0 < |A| < p/2");
  }
  const u64 abs_k = static_cast<u64>(exponent < 0 ? -exponent : exponent);
  if (exponent == 0 || abs_k >= pv - 1) {
    throw std::invalid_argument("exponent must satisfy 0 < |k| < p-1");
  }
  k_ = reduce(exponent, pv - 1);
  if (std::gcd(k_, pv - 1) != 1) {
    throw std::invalid_argument("gcd(k, p-1) != 1, x^k does not permute");
  }
  a_res_ = reduce(multiplier, pv);
  d_ = std::gcd(k_ - 1, pv - 1);
}

i64 PowerMap::signed_exponent() const noexcept {
  const u64 pm1 = p_.value() - 1;
  return 2 * k_ <= pm1 ? static_cast<i64>(k_) : static_cast<i64>(k_) - static_cast<i64>(pm1);
}

std::string PowerMap::to_string() const {
  std::ostringstream os;
  os << '(' << p_.value() << ';' << a_ << ',' << k_ << ')';
  return os.str();
}

u64 apply(const PowerMap& f, u64 x) {
  if (x == 0 || x >= f.prime().value()) {
    throw std::invalid_argument("apply: x must lie in [1, p)");
  }
  return f(x);
}

PowerMap negate(const PowerMap& f) {
  return PowerMap(f.prime(), -f.multiplier(), static_cast<i64>(f.exponent()));
}

PowerMap compose(const PowerMap& outer, const PowerMap& inner) {
  if (outer.prime() != inner.prime()) throw std::invalid_argument("compose: primes differ");
  const Prime& p = outer.prime();
  const u64 k = mul_mod(outer.exponent(), inner.exponent(), p.value() - 1);
  const u64 a = mul_mod(outer.multiplier_residue(), mod_pow(inner.multiplier_residue(), outer.exponent(), p), p);
  return PowerMap(p, abs_least_residue(static_cast<i64>(a), p), static_cast<i64>(k));
}

PowerMap inverse(const PowerMap& f) {
  const Prime& p = f.prime();
  const u64 pm1 = p.value() - 1;
  // k' = k^{-1} mod (p-1); f^{-1}(y) = (y / A)^{k'}.
  u64 k_inv = 1;
  if (pm1 > 1) {
    i128 r0 = pm1, r1 = f.exponent(), s0 = 0, s1 = 1;
    while (r1 != 0) {
      const i128 q = r0 / r1;
      std::tie(r0, r1) = std::pair<i128, i128>{r1, r0 - q * r1};
      std::tie(s0, s1) = std::pair<i128, i128>{s1, s0 - q * s1};
    }
    s0 %= static_cast<i128>(pm1);
    if (s0 < 0) s0 += pm1;
    k_inv = static_cast<u64>(s0);
  }
  const u64 a = mod_pow(mod_inv(f.multiplier_residue(), p), k_inv, p);
  return PowerMap(p, abs_least_residue(static_cast<i64>(a), p), static_cast<i64>(k_inv));
}

std::vector<u32> power_table(const Prime& p, u64 k) {
  const u64 pv = p.value();
  if (pv > (u64{1} << 32)) throw std::length_error("power_table: p must be below 2^32");
  std::vector<u32> table(pv, 0);
  const u64 g = primitive_root(p);
  const u64 gk = mod_pow(g, k, p);
  u64 x = 1, y = 1;
  for (u64 m = 0; m + 1 < pv; ++m) {
    table[x] = static_cast<u32>(y);
    x = mul_mod(x, g, pv);
    y = mul_mod(y, gk, pv);
  }
  return table;
}

ClassPartition::ClassPartition(Prime p, u32 n) : p_(p), n_(n) {
  if (n < 2 || n >= p.value()) throw std::invalid_argument("partition: need 2 <= n < p");
  const u64 pv = p.value();
  sizes_.resize(n);
  sizes_[0] = pv / n;
  for (u32 j = 1; j < n; ++j) sizes_[j] = (pv - 1 + n - j) / n;
}

ClassRange ClassPartition::members(u32 j) const {
  if (j >= n_) throw std::out_of_range("class index out of range");
  return {j == 0 ? n_ : j, n_, sizes_[j]};
}

std::string type_name(MapType t) {
  switch (t) {
    case kTypeI: return "i";
    case kTypeIIa: return "iia";
    case kTypeIIb: return "iib";
    case kTypeIII: return "iii";
    case kTypeIV: return "iv";
  }
  return "?";
}

TypeMask parse_types(const std::string& spec) {
  TypeMask mask = 0;
  std::istringstream is(spec);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok == "i") mask |= kTypeI;
    else if (tok == "iia") mask |= kTypeIIa;
    else if (tok == "iib") mask |= kTypeIIb;
    else if (tok == "iii") mask |= kTypeIII;
    else if (tok == "iv") mask |= kTypeIV;
    else if (tok == "all") mask |= kAllTypes;
    else throw std::invalid_argument("unknown map type '" + tok + "'");
  }
  if (mask == 0) throw std::invalid_argument("empty type list");
  return mask;
}

bool ClassificationResult::has_type_iv() const noexcept {
  return std::any_of(targets.begin(), targets.end(), [&](const auto& t) { return t.size() < n; });
}

std::vector<ClassPair> ClassificationResult::type_iv_witnesses() const {
  std::vector<ClassPair> out;
  for (u32 i = 0; i < n; ++i) {
    const auto& t = targets[i];
    auto it = t.begin();
    for (u32 j = 0; j < n; ++j) {
      if (it != t.end() && *it == j) {
        ++it;
      } else {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

TypeMask ClassificationResult::types() const noexcept {
  TypeMask m = 0;
  if (type_i) m |= kTypeI;
  if (type_iia) m |= kTypeIIa;
  if (!type_iib.empty()) m |= kTypeIIb;
  if (has_type_iii()) m |= kTypeIII;
  if (has_type_iv()) m |= kTypeIV;
  return m;
}

ClassificationResult classify(const PowerMap& f, u32 n) {
  return classify(f, n, power_table(f.prime(), f.exponent()));
}

ClassificationResult classify(const PowerMap& f, u32 n, const std::vector<u32>& pw) {
  const ClassPartition part(f.prime(), n);
  const u64 pv = f.prime().value();
  if (pw.size() != pv) throw std::invalid_argument("power table does not match p");
  const u64 a = f.multiplier_residue();

  ClassificationResult r{f, n, part.sizes(), std::vector<std::vector<u32>>(n), false, false, {}, {}, std::nullopt};
  for (u64 x = 1; x < pv; ++x) {
    const u32 src = static_cast<u32>(x % n);
    const u32 dst = static_cast<u32>(mul_mod(a, pw[x], pv) % n);
    auto& t = r.targets[src];
    if (std::find(t.begin(), t.end(), dst) == t.end()) t.push_back(dst);
  }

  std::vector<u32> sigma(n);
  std::vector<std::uint8_t> hit(n, 0);
  bool perm = true;
  for (u32 i = 0; i < n; ++i) {
    auto& t = r.targets[i];
    std::sort(t.begin(), t.end());
    if (t.size() == 1) {
      r.type_iii.emplace_back(i, t[0]);
      if (t[0] == i) r.type_iib.push_back(i);
      sigma[i] = t[0];
      if (hit[t[0]]) perm = false;
      hit[t[0]] = 1;
    } else {
      perm = false;
    }
  }
  if (perm) {
    r.type_iia = true;
    r.type_i = std::all_of(r.type_iii.begin(), r.type_iii.end(), [](const ClassPair& w) { return w.first == w.second; });
    r.sigma = std::move(sigma);
  }
  return r;
}

u64 intersection_count(const PowerMap& f, u32 n, u32 i, u32 j) {
  const ClassPartition part(f.prime(), n);
  if (j >= n) throw std::out_of_range("class index out of range");
  u64 count = 0;
  for (u64 x : part.members(i)) {
    if (f(x) % n == j) ++count;
  }
  return count;
}

std::string cycle_notation(const std::vector<u32>& sigma) {
  std::string out;
  std::vector<std::uint8_t> seen(sigma.size(), 0);
  for (u32 start = 0; start < sigma.size(); ++start) {
    if (seen[start] || sigma[start] == start) continue;
    std::vector<u32> cycle;
    for (u32 c = start; !seen[c]; c = sigma[c]) {
      seen[c] = 1;
      cycle.push_back(c);
    }
    const bool wide = std::any_of(cycle.begin(), cycle.end(), [](u32 c) { return c >= 10; });
    out += '(';
    for (std::size_t idx = 0; idx < cycle.size(); ++idx) {
      if (wide && idx > 0) out += ' ';
      out += std::to_string(cycle[idx]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

bool QuickFlags::any(TypeMask wanted) const noexcept {
  return ((wanted & kTypeI) && type_i) || ((wanted & kTypeIIa) && type_iia) ||
         ((wanted & kTypeIIb) && type_iib) || ((wanted & kTypeIII) && type_iii) ||
         ((wanted & kTypeIV) && type_iv);
}

void ClassTracker::reset(u64 p, u32 n, TypeMask wanted) {
  p_ = p;
  n_ = n;
  wanted_ = wanted;
  first_.assign(n, kNone);
  multi_.assign(n, 0);
  claimed_.assign(n, 0);
  remaining_.resize(n);
  remaining_[0] = p / n;
  for (u32 j = 1; j < n; ++j) remaining_[j] = (p - 1 + n - j) / n;
  unresolved_ = n;
  iib_alive_ = n;
  perm_alive_ = ident_alive_ = mirror_alive_ = true;
  iii_found_ = iv_found_ = iib_found_ = false;
  cells_hit_ = 0;
  cell_.clear();
  distinct_.clear();
  if (wanted & kTypeIV) {
    const u64 smallest = *std::min_element(remaining_.begin(), remaining_.end());
    if (smallest < n) {
      iv_found_ = true;  // pigeonhole: a class smaller than n cannot meet every class
    } else {
      cell_.assign(static_cast<std::size_t>(n) * n, 0);
      distinct_.assign(n, 0);
    }
  }
  settled_ = false;
  settle_check();
}

bool ClassTracker::observe(u32 src, u32 dst) {
  --remaining_[src];
  if (first_[src] == kNone) {
    first_[src] = dst;
    if (dst != src) {
      --iib_alive_;
      ident_alive_ = false;
    }
    const u32 mirror = static_cast<u32>((p_ % n_ + n_ - src) % n_);
    if (dst != mirror) mirror_alive_ = false;
    if (claimed_[dst]) perm_alive_ = false;
    claimed_[dst] = 1;
  } else if (!multi_[src] && first_[src] != dst) {
    multi_[src] = 1;
    --unresolved_;
    perm_alive_ = ident_alive_ = mirror_alive_ = false;
    if (first_[src] == src) --iib_alive_;
  }
  if (remaining_[src] == 0 && !multi_[src]) {
    iii_found_ = true;
    if (first_[src] == src) iib_found_ = true;
  }
  if (!cell_.empty()) {
    const std::size_t idx = static_cast<std::size_t>(src) * n_ + dst;
    if (!cell_[idx]) {
      cell_[idx] = 1;
      ++cells_hit_;
      ++distinct_[src];
    }
    if (remaining_[src] == 0 && distinct_[src] < n_) iv_found_ = true;
  }
  settle_check();
  return settled_;
}

void ClassTracker::settle_check() {
  bool s = true;
  if (wanted_ & kTypeIII) s = s && (iii_found_ || unresolved_ == 0);
  if (wanted_ & kTypeIIb) s = s && (iib_found_ || iib_alive_ == 0);
  if (wanted_ & kTypeIIa) s = s && !perm_alive_;
  if (wanted_ & kTypeI) s = s && !(perm_alive_ && (ident_alive_ || mirror_alive_));
  if (wanted_ & kTypeIV) s = s && (iv_found_ || cells_hit_ == static_cast<u64>(n_) * n_);
  settled_ = s;
}

QuickFlags ClassTracker::flags() const {
  QuickFlags q;
  q.reported = wanted_;
  q.type_iii = iii_found_;
  q.type_iib = iib_found_;
  q.type_iia = perm_alive_;
  q.type_i = perm_alive_ && ident_alive_;
  q.type_i_mirror = perm_alive_ && mirror_alive_;
  q.type_iv = iv_found_;
  return q;
}

QuickFlags classify_quick(const PowerMap& f, u32 n, TypeMask wanted) {
  const u64 pv = f.prime().value();
  if (n < 2 || n >= pv) throw std::invalid_argument("partition: need 2 <= n < p");
  ClassTracker tracker;
  tracker.reset(pv, n, wanted);
  for (u64 x = 1; x < pv && !tracker.settled(); ++x) {
    tracker.observe(static_cast<u32>(x % n), static_cast<u32>(f(x) % n));
  }
  return tracker.flags();
}

std::vector<SymmetryImage> symmetry_orbit(const PowerMap& f, u32 /*n*/) {
  std::vector<SymmetryImage> out;
  auto push = [&](PowerMap m, WitnessTransform t) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const SymmetryImage& s) { return s.map == m; });
    if (!dup) out.push_back({std::move(m), t});
  };
  push(negate(f), WitnessTransform::kReflectTarget);
  const PowerMap inv = inverse(f);
  push(inv, WitnessTransform::kSwap);
  push(negate(inv), WitnessTransform::kSwapReflect);
  return out;
}

ClassPair transform_witness(WitnessTransform t, u64 p, u32 n, ClassPair w) {
  auto reflect = [&](u32 j) { return static_cast<u32>((p % n + n - j) % n); };
  switch (t) {
    case WitnessTransform::kReflectTarget: return {w.first, reflect(w.second)};
    case WitnessTransform::kSwap: return {w.second, w.first};
    case WitnessTransform::kSwapReflect: return {w.second, reflect(w.first)};
  }
  return w;
}

}  // namespace resmap
