#include "resmap/runs.hpp"

#include <algorithm>
#include <stdexcept>

#include "parallel.hpp"

namespace resmap {

namespace {

template <class Value>
std::vector<RunRecord> runs_of(u64 p, const std::vector<Value>& values) {
  std::vector<RunRecord> out;
  u64 start = 1;
  for (u64 x = 2; x <= p; ++x) {
    if (x == p || values[x] != values[start]) {
      out.push_back({p, start, x - start, static_cast<i64>(values[start])});
      start = x;
    }
  }
  return out;
}

void require_one_mod_four(const Prime& p) {
  if (p.value() % 4 != 1) throw std::domain_error("p must be 1 mod 4");
}

std::vector<u64> cubic_table(const Prime& p) {
  const u64 pv = p.value();
  if (pv % 3 != 1) throw std::domain_error("p must be 1 mod 3");
  const u64 g = primitive_root(p);
  const u64 w = mod_pow(g, (pv - 1) / 3, p);
  const u64 coset[3] = {1, w, mul_mod(w, w, pv)};
  std::vector<u64> table(pv, 0);
  u64 x = 1;
  for (u64 m = 0; m + 1 < pv; ++m) {
    table[x] = coset[m % 3];
    x = mul_mod(x, g, pv);
  }
  return table;
}

}  // namespace

std::vector<RunRecord> qr_runs(const Prime& p, const std::vector<std::int8_t>& legendre) {
  return runs_of(p.value(), legendre);
}

std::vector<RunRecord> qr_runs(const Prime& p) { return qr_runs(p, legendre_table(p)); }

RunRecord longest_qr_run(const Prime& p) {
  const auto runs = qr_runs(p);
  return *std::max_element(runs.begin(), runs.end(),
                           [](const RunRecord& a, const RunRecord& b) { return a.t < b.t; });
}

u64 central_run(const Prime& p) {
  require_one_mod_four(p);
  const u64 mid = (p.value() + 1) / 2;
  const int v = legendre(static_cast<i64>(mid), p);
  u64 t = 0;
  while (mid + t < p.value() && legendre(static_cast<i64>(mid + t), p) == v) ++t;
  return t;
}

u64 central_run_by_primes(const Prime& p) {
  require_one_mod_four(p);
  u64 t = 1;
  // Growing T to T + 1 needs the next odd number 2T + 1 to be a residue; odd
  // composites are products of smaller residues.
  while (2 * t + 1 < p.value() && (!is_prime(2 * t + 1) || legendre(static_cast<i64>(2 * t + 1), p) == 1)) ++t;
  return t;
}

ThirdRuns third_runs(const Prime& p) {
  require_one_mod_four(p);
  const u64 pv = p.value();
  ThirdRuns r;
  r.delta = pv % 3 == 1 ? 1 : 2;
  const u64 c = (pv - r.delta) / 3;
  const int v = legendre(3, p);
  while (r.T1 < c && legendre(static_cast<i64>(c - r.T1), p) == v) ++r.T1;
  while (c + r.T2 + 1 < pv && legendre(static_cast<i64>(c + r.T2 + 1), p) == v) ++r.T2;
  return r;
}

ThirdRuns third_runs_by_residues(const Prime& p) {
  require_one_mod_four(p);
  const u64 pv = p.value();
  ThirdRuns r;
  r.delta = pv % 3 == 1 ? 1 : 2;
  const i64 d = r.delta;
  const u64 c = (pv - r.delta) / 3;
  while (r.T1 < c && legendre(3 * static_cast<i64>(r.T1) + d, p) == 1) ++r.T1;
  while (c + r.T2 + 1 < pv && legendre(3 * static_cast<i64>(r.T2 + 1) - d, p) == 1) ++r.T2;
  return r;
}

std::vector<RunRecord> cubic_runs(const Prime& p) { return runs_of(p.value(), cubic_table(p)); }

u64 central_cubic_run(const Prime& p) {
  const auto table = cubic_table(p);
  const u64 mid = (p.value() + 1) / 2;
  u64 t = 0;
  while (mid + t < p.value() && table[mid + t] == table[mid]) ++t;
  return t;
}

std::vector<RunRecord> run_census(u64 p_limit, u64 t_min, const CensusOptions& options) {
  if (p_limit <= 3) return {};
  const std::vector<u64> primes = primes_between(3, p_limit - 1);
  std::vector<std::vector<RunRecord>> per_prime(primes.size());
  detail::parallel_for(primes.size(), options.threads, [&](std::size_t i) {
    const Prime p(primes[i]);
    if (options.one_mod_four_only && p.value() % 4 != 1) return;
    for (const RunRecord& r : qr_runs(p)) {
      if (r.t < t_min) continue;
      if (options.dedup && 2 * r.a > p.value()) continue;
      per_prime[i].push_back(r);
    }
  });
  std::vector<RunRecord> out;
  for (auto& v : per_prime) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace resmap
