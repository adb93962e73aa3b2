// resmap: command-line front end for the classifier, searches, table
// reproduction, families, run census and bound sweeps.
//
// Exit codes: 0 success or match, 1 mismatch / failed check / incomplete
// search, 2 usage or domain error.

#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "resmap/bounds.hpp"
#include "resmap/families.hpp"
#include "resmap/io.hpp"
#include "resmap/report.hpp"
#include "resmap/runs.hpp"
#include "resmap/search.hpp"
#include "resmap/tables.hpp"
#include "resmap/version.hpp"

using namespace resmap;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct Output {
  bool json = false;
  bool csv = false;
  std::string out;

  void add(CLI::App* cmd) {
    auto* j = cmd->add_flag("--json", json, "JSON lines instead of CSV");
    auto* c = cmd->add_flag("--csv", csv, "CSV (the default for record streams)");
    j->excludes(c);
    cmd->add_option("--out", out, "Write to this file (atomically) instead of stdout");
  }

  [[nodiscard]] Format format() const { return json ? Format::kJson : Format::kCsv; }

  void emit(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      std::cout.flush();
    } else {
      write_file_atomic(out, text);
    }
  }
};

unsigned default_threads() {
  if (const char* env = std::getenv("RESMAP_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring RESMAP_THREADS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// "13..100", "7" or "..500".
std::pair<u64, u64> parse_range(const std::string& s, u64 lo_default, u64 hi_default) {
  const auto dots = s.find("..");
  auto num = [&](const std::string& t, u64 fallback) -> u64 {
    if (t.empty()) return fallback;
    std::size_t used = 0;
    const unsigned long long v = std::stoull(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad range '" + s + "'");
    return v;
  };
  if (dots == std::string::npos) {
    const u64 v = num(s, lo_default);
    return {v, v};
  }
  const u64 lo = num(s.substr(0, dots), lo_default), hi = num(s.substr(dots + 2), hi_default);
  if (lo > hi) throw std::invalid_argument("empty range '" + s + "'");
  return {lo, hi};
}

ExponentFilter parse_exponents(const std::string& s) {
  if (s == "all") return ExponentFilter::all();
  if (s == "half") return ExponentFilter::half();
  if (s.rfind("abs:", 0) == 0) return ExponentFilter::abs_at_most(std::stoll(s.substr(4)));
  if (s.rfind("exact:", 0) == 0) return ExponentFilter::exact(std::stoll(s.substr(6)));
  throw std::invalid_argument("--k must be all, half, abs:B or exact:K");
}

std::string text_classification(const ClassificationResult& c) {
  std::ostringstream os;
  os << "f(x) = " << c.map.to_string() << "  n = " << c.n << '\n';
  os << "class sizes:";
  for (u64 s : c.class_sizes) os << ' ' << s;
  os << '\n';
  std::string types;
  for (MapType t : {kTypeI, kTypeIIa, kTypeIIb, kTypeIII, kTypeIV}) {
    if (c.types() & t) types += " " + type_name(t);
  }
  os << "types:" << (types.empty() ? " none" : types) << '\n';
  if (c.sigma) os << "sigma: " << cycle_notation(*c.sigma) << '\n';
  if (!c.type_iib.empty()) {
    os << "iib at:";
    for (u32 i : c.type_iib) os << ' ' << i;
    os << '\n';
  }
  if (!c.type_iii.empty()) {
    os << "iii witnesses:";
    for (const auto& [i, j] : c.type_iii) os << " (" << i << ',' << j << ')';
    os << '\n';
  }
  if (c.has_type_iv()) os << "iv pairs: " << c.type_iv_witnesses().size() << '\n';
  return os.str();
}

int all_hold(const std::vector<BoundReport>& reports) {
  for (const auto& r : reports) {
    if (!r.holds) return kMismatch;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power maps A x^k mod p acting on residue classes mod n"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: RESMAP_THREADS, else hardware)")->check(CLI::PositiveNumber);

  // classify
  auto* cls = app.add_subcommand("classify", "Classify one map f(x) = A x^k mod p for modulus n");
  u64 c_p = 0, c_n = 0;
  i64 c_A = 0, c_k = 0;
  Output c_out;
  cls->add_option("p", c_p, "Prime")->required();
  cls->add_option("A", c_A, "Multiplier, |A| < p/2")->required();
  cls->add_option("k", c_k, "Exponent, canonical or signed")->required();
  cls->add_option("n", c_n, "Modulus")->required();
  c_out.add(cls);

  // search
  auto* srch = app.add_subcommand("search", "Exhaustive search over (p, A, k, n)");
  std::string s_n = "3..12", s_k = "all", s_types = "iii", s_hi, s_checkpoint;
  u64 s_pmin = 3, s_pmax = 1000, s_lo_mul = 2, s_lo_add = 1, s_max_maps = 0;
  std::size_t s_largest = 0;
  bool s_keep_identity = false, s_keep_half = false;
  Output s_out;
  srch->add_option("--n", s_n, "Modulus range a..b")->capture_default_str();
  srch->add_option("--p-min", s_pmin, "Smallest p")->capture_default_str();
  srch->add_option("--p-max", s_pmax, "Largest p")->capture_default_str();
  srch->add_option("--lo-mul", s_lo_mul, "Require p >= lo_mul*n + lo_add")->capture_default_str();
  srch->add_option("--lo-add", s_lo_add)->capture_default_str();
  srch->add_option("--hi", s_hi, "Require p <= c2 n^2 + c1 n + c0, given as c2,c1,c0");
  srch->add_option("--k", s_k, "all, half, abs:B or exact:K")->capture_default_str();
  srch->add_option("--type", s_types, "Comma list of i, iia, iib, iii, iv")->capture_default_str();
  srch->add_flag("--keep-identity", s_keep_identity, "Do not skip f = +-x");
  srch->add_flag("--keep-half", s_keep_half, "Do not skip +-x^((p+1)/2) for odd n");
  srch->add_option("--largest", s_largest, "Keep only the N largest primes per n");
  srch->add_option("--checkpoint", s_checkpoint, "Resume from and save progress to this file");
  srch->add_option("--max-maps", s_max_maps, "Stop after this many maps (resource limit)");
  s_out.add(srch);

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Recompute a published table and diff it against its fixture");
  std::string r_table, r_scale = "desk", r_checkpoint;
  bool r_json = false, r_rows = false;
  std::string r_out;
  rep->add_option("table", r_table, "T1, T2, T3, T4, T5, T6iia or T6extra")->required();
  rep->add_option("--scale", r_scale, "desk or full")->capture_default_str();
  rep->add_option("--checkpoint", r_checkpoint, "Checkpoint file for search-based tables");
  rep->add_flag("--rows", r_rows, "Verify each fixture row instead of rerunning the regime");
  rep->add_flag("--json", r_json, "Print the report as JSON");
  rep->add_option("--out", r_out, "Write to this file (atomically) instead of stdout");

  // family
  auto* fam = app.add_subcommand("family", "Construct and verify a family instance");
  std::string f_name, f_n, f_regime;
  u64 f_p = 0, f_t = 0, f_T = 0, f_T1 = 0, f_T2 = 0, f_a = 0;
  i64 f_u = 0;
  int f_sign = 1;
  Output f_out;
  fam->add_option("family", f_name, "ex13, t22, t23, t24, t25, t26, t27 or t28")->required();
  fam->add_option("--p", f_p, "Prime");
  fam->add_option("--n", f_n, "Modulus, or a range a..b for t28");
  fam->add_option("--t", f_t, "Run length t");
  fam->add_option("--T", f_T, "Half-length T of a central run (default: the actual one)");
  fam->add_option("--T1", f_T1, "Run below p/3 (default: the actual one)");
  fam->add_option("--T2", f_T2, "Run above p/3 (default: the actual one)");
  fam->add_option("--a", f_a, "Run start a");
  fam->add_option("--u", f_u, "Shift u for general runs");
  fam->add_option("--sign", f_sign, "+1 or -1 for ex13")->check(CLI::IsMember({-1, 1}));
  fam->add_option("--regime", f_regime, "t28 only: 'paper' scans n+4 <= p < 5n for each n in --n");
  f_out.add(fam);

  // runs
  auto* runs = app.add_subcommand("runs", "Legendre or cubic runs");
  u64 u_pmax = 1000, u_tmin = 1, u_p = 0;
  bool u_all = false, u_nodedup = false, u_cubic = false;
  Output u_out;
  runs->add_option("--p-max", u_pmax, "Census over primes below this bound")->capture_default_str();
  runs->add_option("--t-min", u_tmin, "Minimum run length")->capture_default_str();
  runs->add_option("--p", u_p, "List the runs of a single prime");
  runs->add_flag("--all-primes", u_all, "Include p = 3 mod 4 in the census");
  runs->add_flag("--no-dedup", u_nodedup, "Keep both runs of each symmetric pair");
  runs->add_flag("--cubic", u_cubic, "Runs of x^((p-1)/3) (needs --p)");
  u_out.add(runs);

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Numerical checks of the sum and counting bounds");
  bnd->require_subcommand(1);
  Output b_out;
  u64 b_pmin = 3, b_pmax = 101, b_p = 0, b_seed = 1, b_samples = 200, b_C = 2, b_L = 2;
  u32 b_n = 3, b_i = 0, b_j = 0;
  std::optional<i64> b_k;
  std::optional<u64> b_km1;
  auto* b_kl = bnd->add_subcommand("kloosterman", "max |K(a,b)| against 2 sqrt(p)");
  auto* b_bin = bnd->add_subcommand("binomial", "max |sum e_p(a x^k + b x)| against Weil and the p^(89/92) bound");
  auto* b_fo = bnd->add_subcommand("fourier", "L1 norm of the class indicator's Fourier tail");
  auto* b_mij = bnd->add_subcommand("mij", "Counts |{x in I_i : Cx in I_j}| against both bounds");
  auto* b_cell = bnd->add_subcommand("cells", "Cell errors of random power maps");
  auto* b_chi = bnd->add_subcommand("charsum", "The character sums S(chi) for one (p, n, C, i, j, L)");
  auto* b_thr = bnd->add_subcommand("thresholds", "Exact threshold integers");
  for (auto* sub : {b_kl, b_bin, b_fo, b_mij, b_cell}) {
    sub->add_option("--p-min", b_pmin)->capture_default_str();
    sub->add_option("--p-max", b_pmax)->capture_default_str();
    b_out.add(sub);
  }
  b_bin->add_option("--k", b_k, "Signed exponent (default: every admissible k)");
  b_cell->add_option("--samples", b_samples)->capture_default_str();
  b_cell->add_option("--seed", b_seed)->capture_default_str();
  b_chi->add_option("--p", b_p)->required();
  b_chi->add_option("--n", b_n)->required();
  b_chi->add_option("--C", b_C)->required();
  b_chi->add_option("--i", b_i)->required();
  b_chi->add_option("--j", b_j)->required();
  b_chi->add_option("--L", b_L)->required();
  b_out.add(b_chi);
  b_thr->add_option("--n", b_n)->required();
  b_thr->add_option("--k-minus-one", b_km1, "|k - 1| for the exponent-dependent thresholds");
  b_thr->add_option("--p", b_p, "Also report the gcd threshold 0.66 n sqrt(p) log^2 p");
  b_out.add(b_thr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (threads == 0) threads = default_threads();

  try {
    if (*cls) {
      const PowerMap f(Prime(c_p), c_A, c_k);
      if (c_n < 2 || c_n >= c_p) throw std::domain_error("need 2 <= n < p");
      const auto c = classify(f, static_cast<u32>(c_n));
      if (c_out.json || c_out.csv) c_out.emit(render(classification_records(c), c_out.format()));
      else c_out.emit(text_classification(c));
      return kOk;
    }

    if (*srch) {
      SearchSpec spec;
      const auto [nlo, nhi] = parse_range(s_n, 2, 2);
      spec.n_min = static_cast<u32>(nlo);
      spec.n_max = static_cast<u32>(nhi);
      spec.p_min = s_pmin;
      spec.p_max = s_pmax;
      spec.window.lo_mul = s_lo_mul;
      spec.window.lo_add = s_lo_add;
      if (!s_hi.empty()) {
        std::vector<u64> c;
        std::stringstream ss(s_hi);
        for (std::string tok; std::getline(ss, tok, ',');) c.push_back(std::stoull(tok));
        if (c.size() != 3) throw std::invalid_argument("--hi needs c2,c1,c0");
        spec.window.hi_enabled = true;
        spec.window.hi2 = c[0];
        spec.window.hi1 = c[1];
        spec.window.hi0 = c[2];
      }
      spec.exponents = parse_exponents(s_k);
      spec.types = parse_types(s_types);
      spec.skip_identity = !s_keep_identity;
      spec.skip_half_odd = !s_keep_half;
      SearchOptions opt;
      opt.threads = threads;
      opt.max_maps = s_max_maps;
      opt.checkpoint_path = s_checkpoint;
      SearchResult res = run_search(spec, opt);
      if (res.status != SearchStatus::kComplete) {
        std::cerr << "search stopped: " << status_name(res.status) << " after " << res.maps_visited
                  << " maps; no output written\n";
        return kMismatch;
      }
      if (s_largest > 0) res.hits = largest_hits(res.hits, s_largest);
      s_out.emit(render(hit_records(res.hits), s_out.format()));
      std::cerr << res.hits.size() << " hits, " << res.maps_visited << " maps\n";
      return kOk;
    }

    if (*rep) {
      Output o;
      o.out = r_out;
      if (r_rows) {
        const auto checks = verify_fixture_rows(r_table);
        std::ostringstream os;
        std::size_t bad = 0;
        for (const auto& c : checks) {
          if (!c.ok) ++bad;
          os << (c.ok ? "ok   " : "FAIL ") << c.source << " | " << c.row;
          if (!c.detail.empty()) os << " | " << c.detail;
          os << '\n';
        }
        os << checks.size() << " rows, " << bad << " failed\n";
        o.emit(os.str());
        return bad == 0 ? kOk : kMismatch;
      }
      SearchOptions opt;
      opt.threads = threads;
      opt.checkpoint_path = r_checkpoint;
      const auto report = reproduce_table(r_table, parse_scale(r_scale), opt);
      o.emit(r_json ? report_json(report) + "\n" : format_report(report));
      return report.match() ? kOk : kMismatch;
    }

    if (*fam) {
      const Family family = parse_family(f_name);
      std::vector<FamilyInstance> instances;
      auto need_p = [&]() {
        if (f_p == 0) throw std::invalid_argument("--p is required");
        return Prime(f_p);
      };
      auto need_n = [&]() -> u32 {
        if (f_n.empty()) throw std::invalid_argument("--n is required");
        const auto [lo, hi] = parse_range(f_n, 0, 0);
        if (lo != hi) throw std::invalid_argument("--n must be a single modulus here");
        return static_cast<u32>(lo);
      };
      switch (family) {
        case Family::kEx13: instances.push_back(ex13_predict(need_p(), need_n(), f_sign)); break;
        case Family::kT22: {
          const Prime p = need_p();
          const u64 t = f_t ? f_t : max_pattern_t(p);
          u32 n = 0;
          if (!f_n.empty()) {
            n = need_n();
          } else if (auto sn = t22_smallest_n(p, t)) {
            n = *sn;
          } else {
            throw std::domain_error("no n = 2 mod 4 in range");
          }
          instances.push_back(t22_predict(p, t, n));
          break;
        }
        case Family::kT23: {
          if (f_t == 0) throw std::invalid_argument("--t is required");
          instances.push_back(t23_predict(need_p(), f_t, need_n()));
          break;
        }
        case Family::kT24: {
          const Prime p = need_p();
          instances.push_back(t24_predict(p, f_T ? f_T : central_run(p), need_n()));
          break;
        }
        case Family::kT25: {
          const Prime p = need_p();
          const ThirdRuns r = third_runs(p);
          instances.push_back(t25_predict(p, f_T1 ? f_T1 : r.T1, f_T2 ? f_T2 : r.T2, need_n()));
          break;
        }
        case Family::kT26: {
          if (f_a == 0 || f_t == 0) throw std::invalid_argument("--a and --t are required");
          instances.push_back(t26_predict(need_p(), f_a, f_t, f_u, need_n()));
          break;
        }
        case Family::kT27: {
          const Prime p = need_p();
          instances.push_back(t27_predict(p, f_T ? f_T : central_cubic_run(p), need_n()));
          break;
        }
        case Family::kT28: {
          if (f_regime == "paper") {
            const auto [lo, hi] = parse_range(f_n.empty() ? "13..100" : f_n, 13, 100);
            for (u64 n = lo; n <= hi; ++n) {
              for (u64 pv : primes_between(n + 4, 5 * n - 1)) {
                if (pv % 4 != 1 || pv - n >= n) continue;
                const Prime p(pv);
                if (t28_check(p, static_cast<u32>(n))) instances.push_back(t28_predict(p, static_cast<u32>(n)));
              }
            }
          } else if (!f_regime.empty()) {
            throw std::invalid_argument("--regime must be 'paper'");
          } else {
            instances.push_back(t28_predict(need_p(), need_n()));
          }
          break;
        }
      }
      bool ok = true;
      for (auto& inst : instances) {
        verify(inst);
        ok = ok && inst.verified;
        for (const auto& note : inst.notices) std::cerr << "note: " << note << '\n';
      }
      f_out.emit(render(family_records(instances), f_out.format()));
      return ok ? kOk : kMismatch;
    }

    if (*runs) {
      std::vector<RunRecord> out;
      if (u_p != 0) {
        const Prime p(u_p);
        for (const auto& r : u_cubic ? cubic_runs(p) : qr_runs(p)) {
          if (r.t >= u_tmin) out.push_back(r);
        }
      } else {
        if (u_cubic) throw std::invalid_argument("--cubic needs --p");
        CensusOptions co;
        co.dedup = !u_nodedup;
        co.one_mod_four_only = !u_all;
        co.threads = threads;
        out = run_census(u_pmax, u_tmin, co);
      }
      u_out.emit(render(run_records(out), u_out.format()));
      return kOk;
    }

    if (*bnd) {
      std::vector<BoundReport> reports;
      auto primes = [&](u64 floor) { return primes_between(std::max(b_pmin, floor), b_pmax); };
      if (*b_kl) {
        for (u64 p : primes(3)) reports.push_back(kloosterman_max(Prime(p)));
      } else if (*b_bin) {
        for (u64 p : primes(3)) {
          const Prime pp(p);
          std::vector<i64> ks;
          if (b_k) {
            ks.push_back(*b_k);
          } else {
            for (u64 k : admissible_exponents(pp, ExponentFilter::all())) {
              ks.push_back(PowerMap(pp, 1, static_cast<i64>(k)).signed_exponent());
            }
          }
          for (i64 k : ks) {
            for (auto& r : binomial_sum_max(pp, k)) reports.push_back(std::move(r));
          }
        }
      } else if (*b_fo) {
        for (u64 p : primes(7)) {
          // The tail depends on N_j only; report the worst class per prime.
          BoundReport worst;
          worst.computed = -1;
          std::vector<bool> seen(p, false);
          for (u32 n = 2; n < p; ++n) {
            const ClassPartition part(Prime(p), n);
            for (u32 j = 0; j < n; ++j) {
              if (seen[part.size(j)]) continue;
              seen[part.size(j)] = true;
              auto r = fourier_l1(Prime(p), n, j);
              if (r.computed > worst.computed) worst = r;
            }
          }
          reports.push_back(worst);
        }
      } else if (*b_mij) {
        for (u64 p : primes(5)) {
          for (auto& r : mij_sweep(Prime(p))) reports.push_back(std::move(r));
        }
      } else if (*b_cell) {
        const auto ps = primes(7);
        if (ps.empty()) throw std::invalid_argument("no primes in range");
        std::mt19937_64 rng(b_seed);
        for (u64 s = 0; s < b_samples; ++s) {
          const Prime p(ps[rng() % ps.size()]);
          const auto ks = admissible_exponents(p, ExponentFilter::all());
          const u64 k = ks[rng() % ks.size()];
          const i64 A = 1 + static_cast<i64>(rng() % ((p.value() - 1) / 2));
          const u32 n = 2 + static_cast<u32>(rng() % std::min<u64>(p.value() - 2, 60));
          for (auto& r : intersection_error(PowerMap(p, A, static_cast<i64>(k)), n)) reports.push_back(std::move(r));
        }
      } else if (*b_chi) {
        reports = character_sum_S(Prime(b_p), b_n, b_C, b_i, b_j, b_L);
      } else if (*b_thr) {
        auto ts = thresholds(b_n, b_km1);
        if (b_p != 0) {
          const auto d = large_gcd_threshold(b_n, b_p);
          ts.push_back({"large_gcd", "d >= 0.66 n sqrt(p) log^2 p", d, d});
        }
        ts.push_back({"consistency", "0.66 n sqrt(p) log^2 p <= 0.006 p^(89/92) at the large-prime threshold",
                      large_prime_consistency(b_n) ? "holds" : "fails", ""});
        b_out.emit(render(threshold_records(ts), b_out.format()));
        return large_prime_consistency(b_n) ? kOk : kMismatch;
      }
      b_out.emit(render(bound_records(reports), b_out.format()));
      return all_hold(reports);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CheckpointMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMismatch;
  }
  return kOk;
}
