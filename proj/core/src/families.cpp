#include "resmap/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"
#include "resmap/runs.hpp"

namespace resmap {

namespace {

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

void require(bool cond, const std::string& what) {
  if (!cond) throw std::domain_error(what);
}

u64 half_exponent(const Prime& p) { return (p.value() + 1) / 2; }

Prediction identity_on(i64 a, u64 k, i64 i, u32 n, std::string branch) {
  if (i < 0 || i >= static_cast<i64>(n)) throw std::domain_error("class index " + std::to_string(i) + " outside [0, n)");
  Prediction pr;
  pr.A = a;
  pr.k = k;
  pr.i = static_cast<u32>(i);
  pr.j = static_cast<u32>(i);
  pr.claim = Claim::kIdentityOn;
  pr.branch = std::move(branch);
  return pr;
}

// n in the open window lo_num*p/lo_den < n < hi_num*p/hi_den, written without
// division so no rounding can creep in.
bool strictly_between(u64 n, u64 p, i64 lo_num, i64 lo_den, i64 hi_num, i64 hi_den) {
  if (lo_den <= 0 || hi_den <= 0) return false;
  return i128(n) * lo_den > i128(lo_num) * p && i128(n) * hi_den < i128(hi_num) * p;
}

void check_central(const Prime& p, u64 T, u32 n) {
  require(T >= 1, "T must be positive");
  require(n >= 2 && n < p.value(), "need 2 <= n < p");
  const u64 t = 2 * T;
  const bool ok = n % 2 == 0 ? strictly_between(n, p, 2, static_cast<i64>(t + 1), 2, static_cast<i64>(t - 1))
                             : strictly_between(n, p, 1, static_cast<i64>(t + 1), 1, static_cast<i64>(t - 1));
  require(ok, "n = " + std::to_string(n) + " outside the central-run window");
}

// The class I_i that the run around p/2 maps onto itself.
i64 central_class(u64 p, u64 T, u32 n) {
  const i64 a = static_cast<i64>((p + 1) / 2 - T);
  const i64 pn = static_cast<i64>(p);
  if (n % 2 == 0) return a * n - (static_cast<i64>(n) / 2 - 1) * pn;
  return a * n - ((static_cast<i64>(n) - 1) / 2) * pn;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::kEx13: return "ex13";
    case Family::kT22: return "t22";
    case Family::kT23: return "t23";
    case Family::kT24: return "t24";
    case Family::kT25: return "t25";
    case Family::kT26: return "t26";
    case Family::kT27: return "t27";
    case Family::kT28: return "t28";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::kEx13, Family::kT22, Family::kT23, Family::kT24, Family::kT25, Family::kT26,
                   Family::kT27, Family::kT28}) {
    if (name == family_name(f)) return f;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

const char* claim_name(Claim c) {
  switch (c) {
    case Claim::kInto: return "into";
    case Claim::kIdentityOn: return "identity";
    case Claim::kFixesClass: return "fixes";
    case Claim::kTwoClasses: return "two-classes";
    case Claim::kTypeIIa: return "iia";
  }
  return "?";
}

bool check_claim(const Prediction& pred, const Prime& p, u32 n) {
  const PowerMap f(p, pred.A, static_cast<i64>(pred.k));
  if (pred.claim == Claim::kIdentityOn) {
    const ClassPartition part(p, n);
    for (u64 x : part.members(pred.i)) {
      if (f(x) != x) return false;
    }
    return true;
  }
  const ClassificationResult r = classify(f, n);
  const auto& t = r.targets.at(pred.i);
  switch (pred.claim) {
    case Claim::kInto: return t.size() == 1 && t[0] == pred.j;
    case Claim::kFixesClass: return t.size() == 1 && t[0] == pred.i;
    case Claim::kTwoClasses: {
      std::vector<u32> want = {pred.i, pred.j};
      std::sort(want.begin(), want.end());
      return want[0] != want[1] && t == want;
    }
    case Claim::kTypeIIa: return r.type_iia;
    case Claim::kIdentityOn: break;
  }
  return false;
}

void verify(FamilyInstance& instance) {
  const Prime p(instance.p);
  bool all = !instance.predicted.empty();
  for (auto& pred : instance.predicted) {
    pred.verified = check_claim(pred, p, instance.n);
    all = all && pred.verified;
  }
  instance.verified = all;
}

FamilyInstance ex13_predict(const Prime& p, u32 n, int sign) {
  require(p.value() % 4 == 1, "p must be 1 mod 4");
  require(n >= 2 && n < p.value(), "need 2 <= n < p");
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  FamilyInstance inst;
  inst.family = Family::kEx13;
  inst.p = p.value();
  inst.n = n;
  inst.parameters = {{"sign", sign}};
  const u64 k = half_exponent(p);
  const bool two_class = (static_cast<u64>(n) + 1) * (n + 1) < p.value();
  std::optional<u32> fixed;
  if (n % 2 == 1) {
    // 2^{-1} p mod n for odd n.
    const u64 inv2 = (n + 1) / 2;
    fixed = static_cast<u32>(inv2 * (p.value() % n) % n);
  }
  for (u32 i = 0; i < n; ++i) {
    Prediction pr;
    pr.A = sign;
    pr.k = k;
    pr.i = i;
    if (fixed && *fixed == i) {
      pr.j = i;
      pr.claim = Claim::kFixesClass;
      pr.branch = "2i = p mod n";
    } else if (two_class) {
      pr.j = static_cast<u32>((p.value() % n + n - i) % n);
      pr.claim = Claim::kTwoClasses;
      pr.branch = "p > (n+1)^2";
    } else {
      continue;
    }
    inst.predicted.push_back(pr);
  }
  if (!two_class) inst.notices.push_back("p <= (n+1)^2: two-class claims not made");
  return inst;
}

bool pattern_check_22(const Prime& p, u64 t) {
  require(p.value() % 4 == 1, "p must be 1 mod 4");
  if (t == 0) return true;
  for (u64 q = 3; q <= 4 * t - 1; q += 2) {
    if (!is_prime(q)) continue;
    if (q >= p.value()) return false;
    const int want = q % 4 == 1 ? 1 : -1;
    if (legendre(static_cast<i64>(p.value() % q), Prime(q)) != want) return false;
  }
  return true;
}

u64 max_pattern_t(const Prime& p) {
  require(p.value() % 4 == 1, "p must be 1 mod 4");
  u64 t = 0;
  for (;;) {
    // Going from t to t + 1 adds the odd numbers 4t + 1 and 4t + 3.
    bool ok = true;
    for (u64 q : {4 * t + 1, 4 * t + 3}) {
      if (q < 3 || !is_prime(q)) continue;
      if (q >= p.value()) return t;
      const int want = q % 4 == 1 ? 1 : -1;
      if (legendre(static_cast<i64>(p.value() % q), Prime(q)) != want) ok = false;
    }
    if (!ok) return t;
    ++t;
  }
}

std::optional<u32> t22_smallest_n(const Prime& p, u64 t) {
  require(t >= 1, "t must be positive");
  const u64 pv = p.value();
  // 2p/(4t+1) <= n < 2p/(4t-1), n = 2 mod 4.
  u64 n = (2 * pv + 4 * t) / (4 * t + 1);
  while (n % 4 != 2) ++n;
  if (n * (4 * t - 1) < 2 * pv && n < pv) return static_cast<u32>(n);
  return std::nullopt;
}

FamilyInstance t22_predict(const Prime& p, u64 t, u32 n) {
  require(t >= 1, "t must be positive");
  require(pattern_check_22(p, t), "p fails the residue pattern up to 4t-1");
  require(n % 4 == 2, "n must be 2 mod 4");
  const u64 pv = p.value();
  require(u64{n} * (4 * t + 1) >= 2 * pv && u64{n} * (4 * t - 1) < 2 * pv,
          "n = " + std::to_string(n) + " outside 2p/(4t+1) <= n < 2p/(4t-1)");
  FamilyInstance inst;
  inst.family = Family::kT22;
  inst.p = pv;
  inst.n = n;
  inst.parameters = {{"t", static_cast<i64>(t)}};
  const int ln = legendre(n, p);
  const i64 p_i = static_cast<i64>(pv);
  const i64 nn = n;
  auto mod_n = [&](i64 v) { return static_cast<u32>(((v % nn) + nn) % nn); };
  const i64 num1 = 2 * p_i - static_cast<i64>(4 * t - 1) * nn;
  const i64 num2 = 2 * p_i - static_cast<i64>(4 * t - 3) * nn;
  require(num1 % 4 == 0 && num2 % 4 == 0, "non-integral class index");
  const i64 i1 = num1 / 4, i2 = num2 / 4;
  require(i1 >= 0 && i1 < nn && i2 >= 0 && i2 < nn, "class index outside [0, n)");
  Prediction a;
  a.A = 2;
  a.k = half_exponent(p);
  a.i = static_cast<u32>(i1);
  a.j = ln == -1 ? mod_n(2 * i1) : mod_n(p_i - 2 * i1);
  a.branch = "i = (2p - (4t-1)n)/4";
  Prediction b = a;
  b.i = static_cast<u32>(i2);
  b.j = ln == -1 ? mod_n(p_i - 2 * i2) : mod_n(2 * i2);
  b.branch = "i = (2p - (4t-3)n)/4";
  inst.predicted = {a, b};
  return inst;
}

std::vector<std::pair<u64, u64>> find_pattern_primes(u64 p_limit, u64 t_min, unsigned threads) {
  std::vector<u64> primes;
  if (p_limit > 5) {
    for (u64 p : primes_between(5, p_limit - 1)) {
      if (p % 4 == 1) primes.push_back(p);
    }
  }
  std::vector<u64> best(primes.size(), 0);
  detail::parallel_for(primes.size(), threads, [&](std::size_t i) { best[i] = max_pattern_t(Prime(primes[i])); });
  std::vector<std::pair<u64, u64>> out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (best[i] >= t_min) out.emplace_back(primes[i], best[i]);
  }
  return out;
}

FamilyInstance t23_predict(const Prime& p, u64 t, u32 n) {
  const u64 pv = p.value();
  require(pv % 8 == 1, "p must be 1 mod 8");
  require(t >= 1 && pv > t, "need 1 <= t < p");
  require(n >= 2 && n < pv, "need 2 <= n < p");
  for (u64 q = 3; q <= t; q += 2) {
    if (is_prime(q)) require(legendre(static_cast<i64>(q), p) == 1, "odd prime " + std::to_string(q) + " is not a residue");
  }
  require(u64{n} * (t + 1) > pv - 1, "n must exceed (p-1)/(t+1)");
  FamilyInstance inst;
  inst.family = Family::kT23;
  inst.p = pv;
  inst.n = n;
  inst.parameters = {{"t", static_cast<i64>(t)}};
  inst.predicted.push_back(identity_on(legendre(n, p), half_exponent(p), 0, n, "I_0"));
  return inst;
}

FamilyInstance t24_predict(const Prime& p, u64 T, u32 n) {
  require(central_run(p) >= T, "central run shorter than T");
  check_central(p, T, n);
  FamilyInstance inst;
  inst.family = Family::kT24;
  inst.p = p.value();
  inst.n = n;
  inst.parameters = {{"T", static_cast<i64>(T)}, {"a", static_cast<i64>((p.value() + 1) / 2 - T)}};
  inst.predicted.push_back(identity_on(legendre(2 * static_cast<i64>(n), p), half_exponent(p),
                                       central_class(p.value(), T, n), n, n % 2 == 0 ? "n even" : "n odd"));
  return inst;
}

FamilyInstance t25_predict(const Prime& p, u64 T1, u64 T2, u32 n) {
  const ThirdRuns runs = third_runs(p);
  require(runs.T1 >= T1 && runs.T2 >= T2, "runs around p/3 are shorter than (T1, T2)");
  require(T1 >= 1, "T1 must be positive");
  require(n >= 2 && n < p.value(), "need 2 <= n < p");
  const u64 pv = p.value();
  const i64 d = runs.delta;
  const i64 t1 = static_cast<i64>(T1), t2 = static_cast<i64>(T2);
  const i64 pi = static_cast<i64>(pv);
  const i64 nn = n;
  const i64 a1 = (pi - d) / 3 - (t1 - 1);
  const i64 a2 = (2 * pi + d) / 3 - t2;

  FamilyInstance inst;
  inst.family = Family::kT25;
  inst.p = pv;
  inst.n = n;
  inst.parameters = {{"T1", t1}, {"T2", t2}, {"delta", d}};
  const i64 A = legendre(3 * nn, p);
  const u64 k = half_exponent(p);
  auto add = [&](i64 i, const char* branch) {
    if (i < 0 || i >= nn) {
      inst.notices.push_back(std::string(branch) + ": i = " + std::to_string(i) + " outside [0, n)");
      return;
    }
    inst.predicted.push_back(identity_on(A, k, i, n, branch));
  };

  switch (n % 3) {
    case 0:
      if (strictly_between(n, pv, 3, 3 * t1 + d, 3, 3 * t1 + d - 3)) add(a1 * nn - (nn / 3 - 1) * pi, "n=0 mod 3, a1");
      if (strictly_between(n, pv, 3, 3 * t2 + 3 - d, 3, 3 * t2 - d)) add(a2 * nn - (2 * nn / 3 - 1) * pi, "n=0 mod 3, a2");
      break;
    case 2:
      if (t1 <= 2 * t2 + 2 - d && strictly_between(n, pv, 2, 3 * t1 + d, 2, 3 * t1 + d - 3)) {
        add(a1 * nn - ((nn - 2) / 3) * pi, "n=2 mod 3, a1");
      }
      if (t1 >= 2 * t2 + 2 - d && strictly_between(n, pv, 1, 3 * t2 + 3 - d, 1, 3 * t2 - d)) {
        add(a2 * nn - ((2 * nn - 1) / 3) * pi, "n=2 mod 3, a2");
      }
      break;
    case 1:
      if (t2 >= 2 * t1 - 1 + d && strictly_between(n, pv, 1, 3 * t1 + d, 1, 3 * t1 + d - 3)) {
        add(a1 * nn - ((nn - 1) / 3) * pi, "n=1 mod 3, a1");
      }
      if (t2 <= 2 * t1 - 1 + d && strictly_between(n, pv, 2, 3 * t2 + 3 - d, 2, 3 * t2 - d)) {
        add(a2 * nn - ((2 * nn - 2) / 3) * pi, "n=1 mod 3, a2");
      }
      break;
  }
  require(!inst.predicted.empty(), "no branch admits n = " + std::to_string(n));
  return inst;
}

std::vector<i64> t26_admissible_u(u64 a, u64 t) {
  require(t >= 1, "t must be positive");
  const i64 s = static_cast<i64>(a / t), r = static_cast<i64>(a % t);
  const i64 ti = static_cast<i64>(t), ai = static_cast<i64>(a);
  // u (t+1) < s+1-r and 2u > 2(s+1) - (a+t).
  const i64 hi = floor_div(s + 1 - r - 1, ti + 1);
  const i64 lo = floor_div(2 * (s + 1) - (ai + ti), 2) + 1;
  std::vector<i64> out;
  for (i64 u = lo; u <= hi; ++u) out.push_back(u);
  return out;
}

std::vector<u32> t26_first_range(u64 p, u64 a, u64 t, i64 u) {
  const i64 s = static_cast<i64>(a / t);
  const i64 m = s - u;
  std::vector<u32> out;
  if (m <= 0 || a < 2) return out;
  const i64 pi = static_cast<i64>(p), ai = static_cast<i64>(a), ti = static_cast<i64>(t);
  const i64 lo = std::max(ceil_div((m + 1) * pi, ai + ti), ceil_div(m * pi, ai));
  const i64 hi = std::min(floor_div(m * pi, ai - 1), pi - 1);
  for (i64 n = std::max<i64>(lo, 2); n <= hi; ++n) out.push_back(static_cast<u32>(n));
  return out;
}

FamilyInstance t26_predict(const Prime& p, u64 a, u64 t, i64 u, u32 n) {
  const u64 pv = p.value();
  require(a >= 2 && t >= 1 && a + t <= pv, "need a >= 2 and a + t <= p");
  require(n >= 2 && n < pv, "need 2 <= n < p");
  const int v = legendre(static_cast<i64>(a), p);
  for (u64 x = a; x < a + t; ++x) {
    require(legendre(static_cast<i64>(x), p) == v, "Legendre symbol not constant on [a, a+t)");
  }
  const auto us = t26_admissible_u(a, t);
  require(std::find(us.begin(), us.end(), u) != us.end(), "u outside its admissible range");

  const i64 s = static_cast<i64>(a / t);
  const i64 m = s - u;
  const i128 P = pv, N = n, A_ = static_cast<i64>(a), T_ = static_cast<i64>(t);
  const bool first = N * (A_ + T_) >= (m + 1) * P && N * A_ >= m * P && N * (A_ - 1) <= m * P;
  const bool second_scaled = N * (A_ + T_) >= (m + 1) * P && N * (A_ - 1) <= m * P && N * (A_ + T_ - 1) <= (m + 1) * P;
  // The second range as literally printed: only its second bound carries p.
  const bool second_literal = N * (A_ + T_) >= (m + 1) * P && N * (A_ - 1) <= m && N * (A_ + T_ - 1) <= (m + 1) * P;

  FamilyInstance inst;
  inst.family = Family::kT26;
  inst.p = pv;
  inst.n = n;
  inst.parameters = {{"a", static_cast<i64>(a)}, {"t", static_cast<i64>(t)}, {"u", u}, {"s", s},
                     {"r", static_cast<i64>(a % t)}};
  if (second_scaled != second_literal) {
    inst.notices.push_back(std::string("second n-range: p-scaled reading ") + (second_scaled ? "admits" : "rejects") +
                           " n, literal reading " + (second_literal ? "admits" : "rejects"));
  }
  const i64 A = legendre(static_cast<i64>(a) * n, p);
  const u64 k = half_exponent(p);
  const i64 pi = static_cast<i64>(pv), ni = n, ai = static_cast<i64>(a), tt = static_cast<i64>(t);
  auto add = [&](i64 i, const char* branch) {
    if (i < 0 || i >= ni) {
      inst.notices.push_back(std::string(branch) + ": i = " + std::to_string(i) + " outside [0, n)");
      return;
    }
    inst.predicted.push_back(identity_on(A, k, i, n, branch));
  };
  if (first) add(ni * ai - m * pi, "first range");
  if (second_scaled) add((m + 1) * pi - ni * (ai + tt - 1), "second range");
  require(!inst.predicted.empty(), "n = " + std::to_string(n) + " lies in neither range");
  return inst;
}

FamilyInstance t27_predict(const Prime& p, u64 T, u32 n) {
  const u64 pv = p.value();
  require(pv % 3 == 1, "p must be 1 mod 3");
  require(central_cubic_run(p) >= T, "cubic run around p/2 shorter than T");
  check_central(p, T, n);
  FamilyInstance inst;
  inst.family = Family::kT27;
  inst.p = pv;
  inst.n = n;
  const u64 a = (pv + 1) / 2 - T;
  inst.parameters = {{"T", static_cast<i64>(T)}, {"a", static_cast<i64>(a)}};
  const i64 i = central_class(pv, T, n);
  const u64 an = mul_mod(a, n, pv);

  auto add = [&](u64 k, Claim claim, const std::string& branch) {
    if (std::gcd(k, pv - 1) != 1) {
      inst.notices.push_back("k = " + std::to_string(k) + " skipped: gcd(k, p-1) != 1");
      return;
    }
    const u64 A = mod_pow(an, 2 * (k - 1), pv);
    Prediction pr = identity_on(abs_least_residue(static_cast<i64>(A), p), k, i, n, branch);
    pr.claim = claim;
    inst.predicted.push_back(pr);
  };
  for (u64 j : {1, 2}) add(j * (pv - 1) / 3 + 1, Claim::kIdentityOn, "k = j(p-1)/3 + 1, j = " + std::to_string(j));
  if (n % 2 == 1) {
    for (u64 j : {1, 5}) add(j * (pv - 1) / 6 + 1, Claim::kFixesClass, "k = j(p-1)/6 + 1, j = " + std::to_string(j));
  }
  return inst;
}

bool t28_check(const Prime& p, u32 n) {
  const u64 pv = p.value();
  require(pv % 4 == 1, "p must be 1 mod 4");
  require(n < pv, "need n < p");
  const u64 w = pv - n;
  require(w >= 2 && w < n, "need p = n + w with 2 <= w < n");
  for (u64 y = 1; 2 * y < w; ++y) {
    if (legendre(static_cast<i64>(y), p) != legendre(static_cast<i64>(w - y), p)) return false;
  }
  return true;
}

FamilyInstance t28_predict(const Prime& p, u32 n) {
  require(t28_check(p, n), "residue symmetry fails for w = p - n");
  FamilyInstance inst;
  inst.family = Family::kT28;
  inst.p = p.value();
  inst.n = n;
  inst.parameters = {{"w", static_cast<i64>(p.value() - n)}};
  Prediction pr;
  pr.A = 1;
  pr.k = half_exponent(p);
  pr.claim = Claim::kTypeIIa;
  pr.branch = "x^((p+1)/2)";
  inst.predicted.push_back(pr);
  return inst;
}

std::vector<u32> central_window(u64 p, u64 t, bool even) {
  std::vector<u32> out;
  if (t < 2) return out;
  const u64 c = even ? 2 : 1;
  // c p/(t+1) < n < c p/(t-1)
  const u64 lo = c * p / (t + 1) + 1;
  const u64 hi = (c * p - 1) / (t - 1);
  for (u64 n = std::max<u64>(lo, 2); n <= hi && n < p; ++n) {
    if ((n % 2 == 0) == even) out.push_back(static_cast<u32>(n));
  }
  return out;
}

}  // namespace resmap
