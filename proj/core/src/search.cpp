#include "resmap/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "resmap/version.hpp"

namespace resmap {

bool PrimeWindow::admits(u64 p, u32 n) const noexcept {
  if (p < lo_mul * n + lo_add) return false;
  if (hi_enabled && p > hi2 * n * n + hi1 * n + hi0) return false;
  return true;
}

std::string SearchSpec::canonical() const {
  std::ostringstream os;
  os << "n=" << n_min << ".." << n_max << " p=" << p_min << ".." << p_max << " lo=" << window.lo_mul
     << "n+" << window.lo_add;
  if (window.hi_enabled) os << " hi=" << window.hi2 << "n^2+" << window.hi1 << "n+" << window.hi0;
  os << " k=";
  switch (exponents.kind) {
    case ExponentFilter::Kind::kAll: os << "all"; break;
    case ExponentFilter::Kind::kHalf: os << "half"; break;
    case ExponentFilter::Kind::kAbsAtMost: os << "abs<=" << exponents.value; break;
    case ExponentFilter::Kind::kExact: os << "exact:" << exponents.value; break;
  }
  os << " types=" << types << " skip_identity=" << skip_identity << " skip_half_odd=" << skip_half_odd;
  return os.str();
}

PowerMap SearchHit::map() const {
  return PowerMap(Prime(p), sign * static_cast<i64>(A), static_cast<i64>(k));
}

bool hit_less(const SearchHit& a, const SearchHit& b) {
  return std::tie(a.n, a.p, a.A, a.k, a.sign) < std::tie(b.n, b.p, b.A, b.k, b.sign);
}

const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::kComplete: return "complete";
    case SearchStatus::kInterrupted: return "interrupted";
    case SearchStatus::kResourceLimit: return "resource-limit";
  }
  return "?";
}

std::vector<u64> admissible_exponents(const Prime& p, const ExponentFilter& filter) {
  const u64 pm1 = p.value() - 1;
  auto ok = [&](u64 k) { return k >= 1 && k < pm1 && std::gcd(k, pm1) == 1; };
  std::vector<u64> out;
  switch (filter.kind) {
    case ExponentFilter::Kind::kAll:
      for (u64 k = 1; k < pm1; ++k) {
        if (ok(k)) out.push_back(k);
      }
      break;
    case ExponentFilter::Kind::kHalf:
      if (ok((p.value() + 1) / 2)) out.push_back((p.value() + 1) / 2);
      break;
    case ExponentFilter::Kind::kAbsAtMost:
      for (i64 k = -filter.value; k <= filter.value; ++k) {
        const u64 mag = static_cast<u64>(k < 0 ? -k : k);
        if (k == 0 || mag >= pm1) continue;
        const u64 c = reduce(k, pm1);
        if (ok(c)) out.push_back(c);
      }
      break;
    case ExponentFilter::Kind::kExact: {
      const i64 k = filter.value;
      const u64 mag = static_cast<u64>(k < 0 ? -k : k);
      if (k != 0 && mag < pm1) {
        const u64 c = reduce(k, pm1);
        if (ok(c)) out.push_back(c);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<u64, u64>> enumerate_maps(const Prime& p, const ExponentFilter& filter) {
  std::vector<std::pair<u64, u64>> out;
  for (u64 k : admissible_exponents(p, filter)) {
    for (u64 a = 1; 2 * a < p.value(); ++a) out.emplace_back(a, k);
  }
  return out;
}

std::optional<SearchHit> make_hit(const PowerMap& f, u32 n, TypeMask types, const std::vector<u32>* powers) {
  const ClassificationResult r = powers ? classify(f, n, *powers) : classify(f, n);
  const TypeMask got = r.types() & types;
  if (got == 0) return std::nullopt;
  SearchHit h;
  h.n = n;
  h.p = f.prime().value();
  h.A = static_cast<u64>(f.multiplier() < 0 ? -f.multiplier() : f.multiplier());
  h.k = f.exponent();
  h.sign = f.multiplier() < 0 ? -1 : 1;
  h.types = got;
  h.type_iii = r.type_iii;
  h.type_iib = r.type_iib;
  h.sigma = r.sigma;
  return h;
}

namespace {

struct ShardOutput {
  std::vector<SearchHit> hits;
  u64 maps = 0;
};

std::vector<u32> moduli_for(const SearchSpec& spec, u64 p) {
  std::vector<u32> ns;
  for (u32 n = std::max<u32>(spec.n_min, 2); n <= spec.n_max; ++n) {
    if (n < p && spec.window.admits(p, n)) ns.push_back(n);
  }
  return ns;
}

ShardOutput process_prime(const SearchSpec& spec, u64 pv) {
  ShardOutput out;
  const std::vector<u32> ns = moduli_for(spec, pv);
  if (ns.empty()) return out;
  const Prime p(pv);
  const u64 half = (pv + 1) / 2;

  std::vector<ClassTracker> trackers(ns.size());
  std::vector<std::size_t> used;
  std::vector<std::size_t> active;
  std::vector<u32> xr;

  for (u64 k : admissible_exponents(p, spec.exponents)) {
    const std::vector<u32> pw = power_table(p, k);
    for (u64 a = 1; 2 * a < pv; ++a) {
      used.clear();
      for (std::size_t idx = 0; idx < ns.size(); ++idx) {
        const u32 n = ns[idx];
        if (spec.skip_identity && a == 1 && k == 1) continue;
        if (spec.skip_half_odd && a == 1 && k == half && n % 2 == 1) continue;
        trackers[idx].reset(pv, n, spec.types);
        used.push_back(idx);
      }
      if (used.empty()) continue;
      ++out.maps;

      active.clear();
      for (std::size_t idx : used) {
        if (!trackers[idx].settled()) active.push_back(idx);
      }
      xr.assign(active.size(), 0);
      for (u64 x = 1; x < pv && !active.empty(); ++x) {
        const u64 y = mul_mod(a, pw[x], pv);
        for (std::size_t s = 0; s < active.size();) {
          const u32 n = ns[active[s]];
          if (++xr[s] == n) xr[s] = 0;
          if (trackers[active[s]].observe(xr[s], static_cast<u32>(y % n))) {
            active[s] = active.back();
            active.pop_back();
            xr[s] = xr.back();
            xr.pop_back();
          } else {
            ++s;
          }
        }
      }

      for (std::size_t idx : used) {
        const QuickFlags q = trackers[idx].flags();
        const u32 n = ns[idx];
        if (q.any(spec.types)) {
          if (auto h = make_hit(PowerMap(p, static_cast<i64>(a), static_cast<i64>(k)), n, spec.types, &pw)) {
            out.hits.push_back(std::move(*h));
          }
        }
        if ((spec.types & kTypeI) && q.type_i_mirror) {
          if (auto h = make_hit(PowerMap(p, -static_cast<i64>(a), static_cast<i64>(k)), n, spec.types, &pw)) {
            out.hits.push_back(std::move(*h));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

SearchResult run_search(const SearchSpec& spec, const SearchOptions& options) {
  if (spec.n_min > spec.n_max) throw std::invalid_argument("empty modulus range");
  if (spec.p_max >= kMaxPrime) throw std::invalid_argument("p_max too large");

  std::vector<u64> primes;
  for (u64 p : primes_between(std::max<u64>(spec.p_min, 3), spec.p_max)) {
    if (!moduli_for(spec, p).empty()) primes.push_back(p);
  }

  CheckpointState state;
  state.spec_hash = spec_hash(spec);
  state.code_version = kVersion;
  if (!options.checkpoint_path.empty() && std::filesystem::exists(options.checkpoint_path)) {
    state = load_checkpoint(options.checkpoint_path, spec);
  }
  std::map<u64, u64> done(state.done.begin(), state.done.end());
  std::vector<u64> todo;
  for (u64 p : primes) {
    if (!done.count(p)) todo.push_back(p);
  }

  std::vector<std::optional<ShardOutput>> slots(todo.size());
  std::atomic<std::size_t> next{0};
  std::atomic<u64> visited{0};
  for (const auto& [p, m] : done) visited += m;
  enum Stop : int { kRunning = 0, kShardCap = 1, kMapCap = 2 };
  std::atomic<int> stop{kRunning};
  std::mutex mu;
  auto last_save = std::chrono::steady_clock::now();

  auto snapshot = [&]() {
    CheckpointState s;
    s.spec_hash = state.spec_hash;
    s.code_version = state.code_version;
    std::map<u64, u64> d = done;
    std::vector<SearchHit> hits = state.hits;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i]) continue;
      d[todo[i]] = slots[i]->maps;
      hits.insert(hits.end(), slots[i]->hits.begin(), slots[i]->hits.end());
    }
    s.done.assign(d.begin(), d.end());
    std::sort(hits.begin(), hits.end(), hit_less);
    s.hits = std::move(hits);
    return s;
  };

  auto worker = [&]() {
    while (stop.load() == kRunning) {
      if (options.max_maps != 0 && visited.load() >= options.max_maps) {
        stop = kMapCap;
        break;
      }
      const std::size_t i = next++;
      if (i >= todo.size()) break;
      if (options.max_shards != 0 && i >= options.max_shards) {
        stop = kShardCap;
        break;
      }
      ShardOutput out = process_prime(spec, todo[i]);
      visited += out.maps;
      std::lock_guard lock(mu);
      slots[i] = std::move(out);
      const auto now = std::chrono::steady_clock::now();
      if (!options.checkpoint_path.empty() && now - last_save > std::chrono::seconds(2)) {
        save_checkpoint(options.checkpoint_path, snapshot());
        last_save = now;
      }
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CheckpointState final_state = snapshot();
  if (!options.checkpoint_path.empty()) save_checkpoint(options.checkpoint_path, final_state);

  SearchResult result;
  const bool all_done = std::all_of(slots.begin(), slots.end(), [](const auto& s) { return s.has_value(); });
  if (all_done) {
    result.status = SearchStatus::kComplete;
  } else {
    result.status = stop.load() == kMapCap ? SearchStatus::kResourceLimit : SearchStatus::kInterrupted;
  }
  result.hits = std::move(final_state.hits);
  result.maps_per_prime = std::move(final_state.done);
  result.maps_visited = visited.load();
  return result;
}

std::vector<SearchHit> largest_hits(const std::vector<SearchHit>& hits, std::size_t count) {
  std::map<u32, std::vector<u64>> primes_by_n;
  for (const auto& h : hits) primes_by_n[h.n].push_back(h.p);
  std::map<u32, u64> cutoff;
  for (auto& [n, ps] : primes_by_n) {
    std::sort(ps.begin(), ps.end(), std::greater<>());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    if (count > 0) cutoff[n] = ps[std::min(count, ps.size()) - 1];
  }
  std::vector<SearchHit> out;
  if (count == 0) return out;
  for (const auto& h : hits) {
    if (h.p >= cutoff[h.n]) out.push_back(h);
  }
  std::sort(out.begin(), out.end(), hit_less);
  return out;
}

std::vector<SearchHit> largest_hits(const SearchSpec& spec, std::size_t count, const SearchOptions& options) {
  if (count == 0) return {};
  SearchResult r = run_search(spec, options);
  if (r.status != SearchStatus::kComplete) {
    throw std::runtime_error(std::string("search did not complete: ") + status_name(r.status));
  }
  return largest_hits(r.hits, count);
}

}  // namespace resmap
