#include "resmap/tables.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "resmap/families.hpp"
#include "resmap/report.hpp"
#include "resmap/runs.hpp"

namespace resmap {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

u64 to_u64(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

std::vector<u64> u64_list(const std::string& s) {
  std::vector<u64> out;
  for (const auto& w : words(s)) out.push_back(to_u64(w));
  return out;
}

// "0 1* 2*" -> sorted classes mod n, keeping or dropping the stars.
std::string normalize_classes(const std::string& s, u32 n, bool keep_stars = false) {
  std::map<u32, bool> classes;
  for (std::string w : words(s)) {
    const bool star = !w.empty() && w.back() == '*';
    if (star) w.pop_back();
    classes[static_cast<u32>(to_u64(w) % n)] = star;
  }
  std::string out;
  for (auto [i, star] : classes) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i);
    if (star && keep_stars) out += '*';
  }
  return out;
}

std::vector<u32> starred_classes(const std::string& s, u32 n) {
  std::vector<u32> out;
  for (std::string w : words(s)) {
    if (w.empty() || w.back() != '*') continue;
    w.pop_back();
    out.push_back(static_cast<u32>(to_u64(w) % n));
  }
  return out;
}

std::string source_classes(const SearchHit& h) {
  std::set<u32> src;
  for (const auto& w : h.type_iii) src.insert(w.first);
  std::string out;
  for (u32 i : src) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i);
  }
  return out;
}

std::string head(u32 n, u64 p) { return "n=" + std::to_string(n) + " p=" + std::to_string(p); }

std::string map_head(u32 n, u64 p, i64 A, u64 k) {
  return head(n, p) + " A=" + std::to_string(A) + " k=" + std::to_string(k);
}

// Fixture rows with A and k lists, expanded.
struct Expanded {
  const FixtureRow* row;
  u32 n;
  u64 p;
  u64 A;
  u64 k;
};

std::vector<Expanded> expand(const Fixture& fx, bool half_k) {
  std::vector<Expanded> out;
  for (const auto& row : fx.rows) {
    const u32 n = static_cast<u32>(to_u64(fx.at(row, "n")));
    const u64 p = to_u64(fx.at(row, "p"));
    const std::vector<u64> ks = half_k ? std::vector<u64>{(p + 1) / 2} : u64_list(fx.at(row, "k"));
    for (u64 A : u64_list(fx.at(row, "A"))) {
      for (u64 k : ks) out.push_back({&row, n, p, A, k});
    }
  }
  return out;
}

std::string fixture_key(const Fixture& fx, const Expanded& e) {
  const std::string& id = fx.id;
  if (id == "T1") return map_head(e.n, e.p, e.A, e.k) + " i=" + normalize_classes(fx.at(*e.row, "i"), e.n);
  if (id == "T2") {
    return map_head(e.n, e.p, e.A, e.k) + " i=" + normalize_classes(fx.at(*e.row, "i"), e.n) +
           " ratio=" + fx.at(*e.row, "ratio");
  }
  if (id == "T3") return head(e.n, e.p) + " A=" + std::to_string(e.A) + " i=" + normalize_classes(fx.at(*e.row, "i"), e.n);
  if (id == "T6iia") return map_head(e.n, e.p, e.A, e.k) + " sigma=" + fx.at(*e.row, "sigma");
  return map_head(e.n, e.p, e.A, e.k);
}

std::string hit_key(std::string_view id, const SearchHit& h) {
  if (id == "T1") return t1_key(h);
  if (id == "T2") return t2_key(h);
  if (id == "T3") return t3_key(h);
  return iia_key(h, id == "T6iia");
}

TypeMask table_types(std::string_view id) {
  if (id == "T6iia" || id == "T6extra") return kTypeIIa;
  return kTypeIII | kTypeIIb;
}

DiffSection diff(std::string name, std::vector<std::string> expected, std::vector<std::string> computed) {
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
  std::sort(computed.begin(), computed.end());
  computed.erase(std::unique(computed.begin(), computed.end()), computed.end());
  DiffSection d;
  d.name = std::move(name);
  d.expected = expected.size();
  d.computed = computed.size();
  std::set_difference(expected.begin(), expected.end(), computed.begin(), computed.end(), std::back_inserter(d.missing));
  std::set_difference(computed.begin(), computed.end(), expected.begin(), expected.end(), std::back_inserter(d.extra));
  return d;
}

// ---- search-based tables -------------------------------------------------

void reproduce_search(ReproduceReport& rep, const SearchSpec& spec, const SearchOptions& options) {
  const Fixture fx = load_fixture(rep.table);
  const SearchResult res = run_search(spec, options);
  rep.status = res.status;
  if (res.status != SearchStatus::kComplete) {
    rep.notes.push_back(std::string("search ") + status_name(res.status) + "; diff is partial");
  }
  rep.notes.push_back(std::to_string(res.maps_visited) + " maps classified");
  std::vector<SearchHit> hits = res.hits;
  if (rep.table == "T1") hits = largest_hits(hits, 5);

  // Fixture rows outside a desk sub-regime are not expected.
  std::vector<Expanded> rows;
  for (const auto& e : expand(fx, rep.table == "T3")) {
    if (e.n >= spec.n_min && e.n <= spec.n_max && e.p >= spec.p_min && e.p <= spec.p_max && spec.window.admits(e.p, e.n)) {
      rows.push_back(e);
    }
  }
  std::vector<std::string> expected, computed;
  for (const auto& e : rows) expected.push_back(fixture_key(fx, e));
  for (const auto& h : hits) computed.push_back(hit_key(rep.table, h));

  if (rep.table == "T1") {
    std::vector<std::string> ep, cp;
    for (const auto& e : rows) ep.push_back(head(e.n, e.p));
    for (const auto& h : hits) cp.push_back(head(h.n, h.p));
    rep.sections.push_back(diff("primes", std::move(ep), std::move(cp)));
  }
  rep.sections.push_back(diff("rows", std::move(expected), std::move(computed)));
}

// ---- T4 ------------------------------------------------------------------

std::string t4_key(u64 p, u64 t, u64 n, const std::string& ratio) {
  return "p=" + std::to_string(p) + " t=" + std::to_string(t) + " n=" + std::to_string(n) + " ratio=" + ratio;
}

void reproduce_t4(ReproduceReport& rep, const SearchOptions& options) {
  const Fixture fx = load_fixture("T4");
  std::vector<std::string> expected, computed;
  for (const auto& row : fx.rows) {
    expected.push_back(t4_key(to_u64(fx.at(row, "p")), to_u64(fx.at(row, "t")), to_u64(fx.at(row, "n")),
                              fx.at(row, "ratio")));
  }
  for (const auto& [p, t] : find_pattern_primes(100000, 9, options.threads)) {
    const auto n = t22_smallest_n(Prime(p), t);
    if (!n) {
      rep.notes.push_back("p=" + std::to_string(p) + ": no n = 2 mod 4 in range");
      continue;
    }
    computed.push_back(t4_key(p, t, *n, ratio6(p, *n)));
    FamilyInstance inst = t22_predict(Prime(p), t, *n);
    verify(inst);
    if (!inst.verified) rep.failures.push_back("t22 p=" + std::to_string(p) + " n=" + std::to_string(*n));
  }
  rep.sections.push_back(diff("rows", std::move(expected), std::move(computed)));
}

// ---- T5 ------------------------------------------------------------------

std::string t5_key(const std::string& family, u64 p, u64 t, u64 a, u64 n, const std::string& classes) {
  return family + " p=" + std::to_string(p) + " t=" + std::to_string(t) + " a=" + std::to_string(a) +
         " n=" + std::to_string(n) + " i=" + classes + " ratio=" + ratio6(p, n);
}

std::string class_list(const FamilyInstance& inst) {
  std::set<u32> is;
  for (const auto& pr : inst.predicted) is.insert(pr.i);
  std::string out;
  for (u32 i : is) out += (out.empty() ? "" : " ") + std::to_string(i);
  return out;
}

template <class Make>
std::optional<FamilyInstance> first_admitted(u64 n_lo, u64 n_hi, u32 step_mod, u32 residue, Make make) {
  for (u64 n = std::max<u64>(n_lo, 2); n <= n_hi; ++n) {
    if (n % step_mod != residue) continue;
    try {
      return make(static_cast<u32>(n));
    } catch (const std::domain_error&) {
    }
  }
  return std::nullopt;
}

enum class RunKind { kStart, kCentral, kThird, kGeneral };

RunKind run_kind(const RunRecord& run) {
  if (run.a == 1) return RunKind::kStart;
  if (2 * run.a + run.t == run.p + 1 && run.t % 2 == 0) return RunKind::kCentral;
  const ThirdRuns third = third_runs(Prime(run.p));
  const u64 c = (run.p - third.delta) / 3;
  if (run.a <= c && c < run.a + run.t) return RunKind::kThird;
  return RunKind::kGeneral;
}

const char* kind_family(RunKind k) {
  switch (k) {
    case RunKind::kStart: return "t23";
    case RunKind::kCentral: return "t24";
    case RunKind::kThird: return "t25";
    case RunKind::kGeneral: return "t26";
  }
  return "";
}

// The family that the run's position selects, at modulus n. u only matters
// for general runs.
FamilyInstance family_at(const RunRecord& run, u32 n, i64 u) {
  const Prime p(run.p);
  switch (run_kind(run)) {
    case RunKind::kStart: return t23_predict(p, run.t, n);
    case RunKind::kCentral: return t24_predict(p, run.t / 2, n);
    case RunKind::kThird: {
      const ThirdRuns third = third_runs(p);
      return t25_predict(p, third.T1, third.T2, n);
    }
    case RunKind::kGeneral: return t26_predict(p, run.a, run.t, u, n);
  }
  throw std::logic_error("unreachable");
}

// Smallest admissible moduli for one census run: both parities for runs at 1
// and around p/2, each class mod 3 for runs around p/3, and the largest p/n
// over u for general runs.
std::vector<FamilyInstance> smallest_instances(const RunRecord& run) {
  const Prime p(run.p);
  const u64 pv = run.p;
  std::vector<FamilyInstance> out;
  switch (run_kind(run)) {
    case RunKind::kStart: {
      const u64 lo = (pv - 1) / (run.t + 1) + 1;
      for (u32 parity : {1u, 0u}) {
        if (auto inst = first_admitted(lo, pv - 1, 2, parity, [&](u32 n) { return t23_predict(p, run.t, n); })) {
          out.push_back(*inst);
        }
      }
      break;
    }
    case RunKind::kCentral:
      for (bool even : {false, true}) {
        const auto ns = central_window(pv, run.t, even);
        if (!ns.empty()) out.push_back(t24_predict(p, run.t / 2, ns.front()));
      }
      break;
    case RunKind::kThird: {
      const ThirdRuns third = third_runs(p);
      const u64 lo = pv / (3 * (third.T1 + third.T2) + 6);
      for (u32 r : {2u, 1u, 0u}) {
        if (auto inst = first_admitted(lo, pv - 1, 3, r, [&](u32 n) { return t25_predict(p, third.T1, third.T2, n); })) {
          out.push_back(*inst);
        }
      }
      break;
    }
    case RunKind::kGeneral: {
      std::optional<FamilyInstance> best;
      for (i64 u : t26_admissible_u(run.a, run.t)) {
        for (u32 n : t26_first_range(pv, run.a, run.t, u)) {
          if (best && n >= best->n) break;
          try {
            best = t26_predict(p, run.a, run.t, u, n);
          } catch (const std::domain_error&) {
            continue;
          }
          break;
        }
      }
      if (best) out.push_back(*best);
      break;
    }
  }
  return out;
}

std::string run_key(u64 p, u64 t, u64 a) {
  return "p=" + std::to_string(p) + " t=" + std::to_string(t) + " a=" + std::to_string(a);
}

void reproduce_t5(ReproduceReport& rep, const SearchOptions& options) {
  const Fixture fx = load_fixture("T5");
  CensusOptions co;
  co.one_mod_four_only = true;
  co.threads = options.threads;
  const auto census = run_census(100000, 25, co);

  std::vector<std::string> census_expected, census_computed, rows_expected, rows_computed;
  std::map<std::string, RunRecord> runs;
  for (const auto& r : census) {
    census_computed.push_back(run_key(r.p, r.t, r.a));
    runs.emplace(run_key(r.p, r.t, r.a), r);
  }

  std::set<std::string> printed;
  for (const auto& row : fx.rows) {
    const u64 p = to_u64(fx.at(row, "p")), t = to_u64(fx.at(row, "t")), a = to_u64(fx.at(row, "a"));
    const u32 n = static_cast<u32>(to_u64(fx.at(row, "n")));
    census_expected.push_back(run_key(p, t, a));
    rows_expected.push_back(t5_key(fx.at(row, "family"), p, t, a, n, normalize_classes(fx.at(row, "i"), n)));
    printed.insert(run_key(p, t, a) + " n=" + std::to_string(n));
    if (ratio6(p, n) != fx.at(row, "ratio")) {
      rep.notes.push_back("line " + std::to_string(row.line) + ": printed ratio " + fx.at(row, "ratio") +
                          " differs from p/n = " + ratio6(p, n));
    }

    // The computed side: the family chosen by the run's position, at the
    // printed modulus, verified independently.
    const auto it = runs.find(run_key(p, t, a));
    if (it == runs.end()) continue;
    const std::string u = fx.at(row, "u");
    try {
      FamilyInstance inst = family_at(it->second, n, u.empty() ? 0 : std::stoll(u));
      verify(inst);
      rows_computed.push_back(t5_key(kind_family(run_kind(it->second)), p, t, a, n, class_list(inst)));
      if (!inst.verified) rep.failures.push_back(rows_computed.back());
    } catch (const std::domain_error& ex) {
      rep.failures.push_back(run_key(p, t, a) + " n=" + std::to_string(n) + ": " + ex.what());
    }
  }

  // Smallest admissible n per run, for comparison with the printed choice.
  for (const auto& r : census) {
    for (FamilyInstance inst : smallest_instances(r)) {
      verify(inst);
      const std::string key = run_key(r.p, r.t, r.a) + " n=" + std::to_string(inst.n);
      if (!inst.verified) rep.failures.push_back(std::string(kind_family(run_kind(r))) + " " + key);
      if (!printed.count(key)) {
        rep.notes.push_back(std::string(kind_family(run_kind(r))) + " " + key + " i=" + class_list(inst) +
                            " is admissible and verified" + " (not printed)");
      }
    }
  }
  rep.sections.push_back(diff("census", std::move(census_expected), std::move(census_computed)));
  rep.sections.push_back(diff("families", std::move(rows_expected), std::move(rows_computed)));
}

// ---- row verification ------------------------------------------------------

RowCheck check_map_row(const Fixture& fx, const Expanded& e) {
  RowCheck rc;
  rc.source = fx.at(*e.row, "source");
  rc.row = fixture_key(fx, e);
  try {
    const PowerMap f(Prime(e.p), static_cast<i64>(e.A), static_cast<i64>(e.k));
    const auto hit = make_hit(f, e.n, table_types(fx.id));
    if (!hit) {
      rc.detail = "classifier reports none of the claimed types";
      return rc;
    }
    const std::string got = hit_key(fx.id, *hit);
    rc.ok = got == rc.row;
    if (!rc.ok) {
      rc.detail = "classifier gives " + got;
      return rc;
    }
    if (fx.id != "T1") return rc;
    // Starred classes claim f(I_i) = I_i; an unstarred one may still be fixed.
    const auto& iib = hit->type_iib;
    std::string unstarred;
    const auto stars = starred_classes(fx.at(*e.row, "i"), e.n);
    for (u32 i : stars) {
      if (std::find(iib.begin(), iib.end(), i) == iib.end()) {
        rc.ok = false;
        rc.detail = "I_" + std::to_string(i) + " is starred but not fixed";
      }
    }
    for (u32 i : iib) {
      if (std::find(stars.begin(), stars.end(), i) == stars.end()) unstarred += " " + std::to_string(i);
    }
    if (rc.ok && !unstarred.empty()) rc.detail = "also fixed, unstarred:" + unstarred;
  } catch (const std::exception& ex) {
    rc.detail = ex.what();
  }
  return rc;
}

RowCheck check_t4_row(const Fixture& fx, const FixtureRow& row) {
  RowCheck rc;
  rc.source = fx.at(row, "source");
  const u64 p = to_u64(fx.at(row, "p")), t = to_u64(fx.at(row, "t")), n = to_u64(fx.at(row, "n"));
  rc.row = t4_key(p, t, n, fx.at(row, "ratio"));
  try {
    const Prime pp(p);
    std::vector<std::string> problems;
    if (max_pattern_t(pp) != t) problems.push_back("maximal t is " + std::to_string(max_pattern_t(pp)));
    const auto smallest = t22_smallest_n(pp, t);
    if (!smallest || *smallest != n) problems.push_back("smallest n differs");
    FamilyInstance inst = t22_predict(pp, t, static_cast<u32>(n));
    verify(inst);
    if (!inst.verified) problems.push_back("predicted inclusions fail");
    rc.ok = problems.empty();
    if (ratio6(p, n) != fx.at(row, "ratio")) problems.push_back("printed ratio " + fx.at(row, "ratio") + ", p/n = " + ratio6(p, n));
    for (const auto& s : problems) rc.detail += (rc.detail.empty() ? "" : "; ") + s;
  } catch (const std::exception& ex) {
    rc.detail = ex.what();
  }
  return rc;
}

RowCheck check_t5_row(const Fixture& fx, const FixtureRow& row) {
  RowCheck rc;
  rc.source = fx.at(row, "source");
  const std::string family = fx.at(row, "family");
  const u64 p = to_u64(fx.at(row, "p")), t = to_u64(fx.at(row, "t")), a = to_u64(fx.at(row, "a"));
  const u32 n = static_cast<u32>(to_u64(fx.at(row, "n")));
  rc.row = t5_key(family, p, t, a, n, fx.at(row, "i"));
  try {
    const Prime pp(p);
    std::vector<std::string> problems;
    const auto runs = qr_runs(pp);
    if (std::none_of(runs.begin(), runs.end(), [&](const RunRecord& r) { return r.a == a && r.t == t; })) {
      problems.push_back("[a, a+t) is not a maximal run");
    }
    FamilyInstance inst;
    if (family == "t23") inst = t23_predict(pp, t, n);
    else if (family == "t24") inst = t24_predict(pp, t / 2, n);
    else if (family == "t25") inst = t25_predict(pp, to_u64(fx.at(row, "T1")), to_u64(fx.at(row, "T2")), n);
    else if (family == "t26") inst = t26_predict(pp, a, t, std::stoll(fx.at(row, "u")), n);
    else throw std::runtime_error("unknown family " + family);
    verify(inst);
    if (!inst.verified) problems.push_back("identity claim fails");
    if (class_list(inst) != normalize_classes(fx.at(row, "i"), n)) problems.push_back("predicted i = " + class_list(inst));
    rc.ok = problems.empty();
    if (ratio6(p, n) != fx.at(row, "ratio")) problems.push_back("printed ratio " + fx.at(row, "ratio") + ", p/n = " + ratio6(p, n));
    for (const auto& s : problems) rc.detail += (rc.detail.empty() ? "" : "; ") + s;
  } catch (const std::exception& ex) {
    rc.detail = ex.what();
  }
  return rc;
}

}  // namespace

const char* scale_name(Scale s) { return s == Scale::kFull ? "full" : "desk"; }

Scale parse_scale(const std::string& s) {
  if (s == "desk") return Scale::kDesk;
  if (s == "full") return Scale::kFull;
  throw std::invalid_argument("scale must be 'desk' or 'full'");
}

const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids = {"T1", "T2", "T3", "T4", "T5", "T6iia", "T6extra"};
  return ids;
}

const std::string& Fixture::at(const FixtureRow& row, std::string_view column) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == column) return row.cells.at(c);
  }
  throw std::out_of_range(id + ": no column '" + std::string(column) + "'");
}

Fixture parse_fixture(std::string_view id, std::string_view text) {
  Fixture fx;
  fx.id = std::string(id);
  int line_no = 0;
  for (std::string line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      fx.comments.push_back(line);
      continue;
    }
    auto cells = split(line, ',');
    if (fx.columns.empty()) {
      fx.columns = std::move(cells);
      if (std::find(fx.columns.begin(), fx.columns.end(), "source") == fx.columns.end()) {
        throw std::runtime_error(fx.id + ": header lacks a source column");
      }
      continue;
    }
    if (cells.size() != fx.columns.size()) {
      throw std::runtime_error(fx.id + " line " + std::to_string(line_no) + ": expected " +
                               std::to_string(fx.columns.size()) + " cells, got " + std::to_string(cells.size()));
    }
    fx.rows.push_back({line_no, std::move(cells)});
    if (fx.at(fx.rows.back(), "source").empty()) {
      throw std::runtime_error(fx.id + " line " + std::to_string(line_no) + ": empty source");
    }
  }
  if (fx.columns.empty()) throw std::runtime_error(fx.id + ": no header");
  return fx;
}

Fixture load_fixture(std::string_view id) {
  const auto text = embedded_fixture(id);
  if (!text) throw std::invalid_argument("unknown table '" + std::string(id) + "'");
  return parse_fixture(id, *text);
}

const TablePreset& table_preset(std::string_view id) {
  static const std::vector<TablePreset> presets = [] {
    std::vector<TablePreset> v = {
      {"T1", "Type iii, five largest primes per n, n=3..12, 2n < p < 20000, all k, excluding +-x and +-x^((p+1)/2) for odd n",
       "same, 2n < p < 1000"},
      {"T2", "Type iii, 13 <= n <= 86, 9n < p <= 15n, all k, excluding +-x and +-x^((p+1)/2) for odd n",
       "same, 13 <= n <= 40"},
      {"T3", "Type iii, k = (p+1)/2, n=3..12, 2n < p <= (4n+1)^2, excluding x^((p+1)/2) for odd n", ""},
      {"T4", "pattern primes p < 100000 with maximal t >= 9, smallest n = 2 mod 4 in range", ""},
      {"T5", "Legendre runs t >= 25, p < 100000, p = 1 mod 4, a < p/2, with derived identity families", ""},
      {"T6iia", "Type iia, n=3..12, n+1 < p < 20000, all k, f != x", "same, n+1 < p < 1000"},
      {"T6extra", "Type iia, 13 <= n <= 100, n+4 <= p < 5n, all k, f != x", ""},
    };
    for (auto& pr : v) {
      if (pr.desk_regime.empty()) pr.desk_regime = pr.regime;
    }
    return v;
  }();
  for (const auto& pr : presets) {
    if (pr.id == id) return pr;
  }
  throw std::invalid_argument("unknown table '" + std::string(id) + "'");
}

std::optional<SearchSpec> preset_search_spec(std::string_view id, Scale scale) {
  const bool full = scale == Scale::kFull;
  SearchSpec s;
  if (id == "T1") {
    s.n_min = 3;
    s.n_max = 12;
    s.p_max = full ? 19999 : 999;
    s.window = {2, 1};
    s.types = kTypeIII | kTypeIIb;
  } else if (id == "T2") {
    s.n_min = 13;
    s.n_max = full ? 86 : 40;
    s.p_max = 15 * s.n_max;
    s.window = {9, 1, true, 0, 15, 0};
    s.types = kTypeIII | kTypeIIb;
  } else if (id == "T3") {
    s.n_min = 3;
    s.n_max = 12;
    s.p_max = (4 * 12 + 1) * (4 * 12 + 1);
    s.window = {2, 1, true, 16, 8, 1};
    s.exponents = ExponentFilter::half();
    s.types = kTypeIII | kTypeIIb;
  } else if (id == "T6iia") {
    s.n_min = 3;
    s.n_max = 12;
    s.p_max = full ? 19999 : 999;
    s.window = {1, 2};
    s.types = kTypeIIa;
    s.skip_half_odd = false;
  } else if (id == "T6extra") {
    s.n_min = 13;
    s.n_max = 100;
    s.p_max = 5 * 100;
    // p < 5n and p <= 5n agree for prime p and n >= 2.
    s.window = {1, 4, true, 0, 5, 0};
    s.types = kTypeIIa;
    s.skip_half_odd = false;
  } else {
    return std::nullopt;
  }
  return s;
}

std::vector<RowCheck> verify_fixture_rows(std::string_view id) {
  const Fixture fx = load_fixture(id);
  std::vector<RowCheck> out;
  if (id == "T4") {
    for (const auto& row : fx.rows) out.push_back(check_t4_row(fx, row));
  } else if (id == "T5") {
    for (const auto& row : fx.rows) out.push_back(check_t5_row(fx, row));
  } else {
    for (const auto& e : expand(fx, id == "T3")) out.push_back(check_map_row(fx, e));
  }
  return out;
}

bool ReproduceReport::match() const noexcept {
  if (status != SearchStatus::kComplete || !failures.empty() || sections.empty()) return false;
  return std::all_of(sections.begin(), sections.end(), [](const DiffSection& d) { return d.clean(); });
}

ReproduceReport reproduce_table(std::string_view id, Scale scale, const SearchOptions& options) {
  const TablePreset& preset = table_preset(id);
  ReproduceReport rep;
  rep.table = preset.id;
  rep.scale = scale;
  rep.regime = scale == Scale::kFull ? preset.regime : preset.desk_regime;
  if (auto spec = preset_search_spec(id, scale)) {
    reproduce_search(rep, *spec, options);
  } else if (id == "T4") {
    reproduce_t4(rep, options);
  } else {
    reproduce_t5(rep, options);
  }
  return rep;
}

std::string format_report(const ReproduceReport& r) {
  std::ostringstream os;
  os << r.table << " (" << scale_name(r.scale) << "): " << r.regime << '\n';
  for (const auto& s : r.sections) {
    os << "  " << s.name << ": expected " << s.expected << ", computed " << s.computed << ", missing "
       << s.missing.size() << ", extra " << s.extra.size() << '\n';
    for (const auto& m : s.missing) os << "    - " << m << '\n';
    for (const auto& e : s.extra) os << "    + " << e << '\n';
  }
  for (const auto& f : r.failures) os << "  verification failed: " << f << '\n';
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  os << (r.match() ? "MATCH" : "MISMATCH") << '\n';
  return os.str();
}

std::string report_json(const ReproduceReport& r) {
  nlohmann::ordered_json j;
  j["table"] = r.table;
  j["scale"] = scale_name(r.scale);
  j["regime"] = r.regime;
  j["status"] = status_name(r.status);
  j["match"] = r.match();
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : r.sections) {
    j["sections"].push_back({{"name", s.name},
                             {"expected", s.expected},
                             {"computed", s.computed},
                             {"missing", s.missing},
                             {"extra", s.extra}});
  }
  j["failures"] = r.failures;
  j["notes"] = r.notes;
  return j.dump();
}

std::string t1_key(const SearchHit& h) {
  return map_head(h.n, h.p, static_cast<i64>(h.A) * h.sign, h.k) + " i=" + source_classes(h);
}

std::string t2_key(const SearchHit& h) { return t1_key(h) + " ratio=" + ratio6(h.p, h.n); }

std::string t3_key(const SearchHit& h) {
  return head(h.n, h.p) + " A=" + std::to_string(static_cast<i64>(h.A) * h.sign) + " i=" + source_classes(h);
}

std::string iia_key(const SearchHit& h, bool with_sigma) {
  std::string key = map_head(h.n, h.p, static_cast<i64>(h.A) * h.sign, h.k);
  if (with_sigma) key += " sigma=" + (h.sigma ? cycle_notation(*h.sigma) : std::string("-"));
  return key;
}

}  // namespace resmap
