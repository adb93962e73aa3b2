#include "resmap/report.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include <json.hpp>

namespace resmap {

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return v;
      },
      c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join(const std::vector<u32>& v) {
  std::string out;
  for (u32 x : v) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  }
  return out;
}

Cell num(u64 v) { return static_cast<std::int64_t>(v); }

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

std::string ratio6(u64 p, u64 n) {
  const u128 scaled = u128{p} * 1'000'000 / n;
  const u64 whole = static_cast<u64>(scaled / 1'000'000);
  std::string frac = std::to_string(static_cast<u64>(scaled % 1'000'000));
  frac.insert(0, 6 - frac.size(), '0');
  return std::to_string(whole) + "." + frac;
}

std::string Records::to_csv() const {
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(cell_text(row[c]));
    os << '\n';
  }
  return os.str();
}

std::string Records::to_jsonl() const {
  std::string out;
  for (const auto& row : rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size() && c < columns.size(); ++c) {
      std::visit([&](const auto& v) { obj[columns[c]] = v; }, row[c]);
    }
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::string render(const Records& r, Format f) { return f == Format::kJson ? r.to_jsonl() : r.to_csv(); }

Records hit_records(const std::vector<SearchHit>& hits) {
  Records r;
  r.columns = {"n", "p", "A", "k", "i", "j", "type", "ratio"};
  for (const SearchHit& h : hits) {
    const Cell A = static_cast<std::int64_t>(h.A) * h.sign;
    const std::string ratio = ratio6(h.p, h.n);
    auto row = [&](u32 i, u32 j, const char* type) {
      r.rows.push_back({num(h.n), num(h.p), A, num(h.k), num(i), num(j), std::string(type), ratio});
    };
    if (h.types & kTypeI) {
      for (u32 i = 0; i < h.n; ++i) row(i, i, "i");
    }
    if ((h.types & kTypeIIa) && h.sigma) {
      for (u32 i = 0; i < h.n; ++i) row(i, (*h.sigma)[i], "iia");
    }
    for (u32 i : h.type_iib) row(i, i, "iib");
    for (const auto& [i, j] : h.type_iii) row(i, j, "iii");
    if ((h.types & kTypeIV) && !(h.types & (kTypeI | kTypeIIa | kTypeIIb | kTypeIII))) {
      // Type (iv) alone: report the first disjoint pair only.
      const auto c = classify(h.map(), h.n);
      const auto w = c.type_iv_witnesses();
      if (!w.empty()) row(w.front().first, w.front().second, "iv");
    }
  }
  return r;
}

Records run_records(const std::vector<RunRecord>& runs) {
  Records r;
  r.columns = {"p", "a", "t", "value"};
  for (const auto& x : runs) r.rows.push_back({num(x.p), num(x.a), num(x.t), static_cast<std::int64_t>(x.value)});
  return r;
}

Records bound_records(const std::vector<BoundReport>& reports) {
  Records r;
  r.columns = {"quantity", "computed", "bound", "holds", "witness", "note"};
  for (const auto& b : reports) r.rows.push_back({b.quantity, b.computed, b.bound, b.holds, b.witness, b.note});
  return r;
}

Records family_records(const std::vector<FamilyInstance>& instances) {
  Records r;
  r.columns = {"family", "p", "n", "A", "k", "i", "j", "claim", "branch", "verified"};
  for (const auto& inst : instances) {
    for (const auto& pr : inst.predicted) {
      r.rows.push_back({std::string(family_name(inst.family)), num(inst.p), num(inst.n),
                        static_cast<std::int64_t>(pr.A), num(pr.k), num(pr.i), num(pr.j),
                        std::string(claim_name(pr.claim)), pr.branch, pr.verified});
    }
  }
  return r;
}

Records threshold_records(const std::vector<Threshold>& ts) {
  Records r;
  r.columns = {"name", "condition", "bound", "smallest"};
  for (const auto& t : ts) r.rows.push_back({t.name, t.condition, t.bound, t.smallest});
  return r;
}

Records classification_records(const ClassificationResult& c) {
  Records r;
  r.columns = {"n", "p", "A", "k", "types", "type_i", "type_iia", "sigma",
               "type_iib", "type_iii", "type_iv", "class_sizes"};
  std::string types;
  for (MapType t : {kTypeI, kTypeIIa, kTypeIIb, kTypeIII, kTypeIV}) {
    if (c.types() & t) types += (types.empty() ? "" : " ") + type_name(t);
  }
  std::string iii;
  for (const auto& [i, j] : c.type_iii) iii += (iii.empty() ? "" : " ") + std::to_string(i) + ":" + std::to_string(j);
  std::string iv;
  for (const auto& [i, j] : c.type_iv_witnesses()) iv += (iv.empty() ? "" : " ") + std::to_string(i) + ":" + std::to_string(j);
  std::string sizes;
  for (u64 s : c.class_sizes) sizes += (sizes.empty() ? "" : " ") + std::to_string(s);
  r.rows.push_back({num(c.n), num(c.map.prime().value()), static_cast<std::int64_t>(c.map.multiplier()),
                    num(c.map.exponent()), types, c.type_i, c.type_iia,
                    c.sigma ? cycle_notation(*c.sigma) : std::string(), join(c.type_iib), iii, iv, sizes});
  return r;
}

}  // namespace resmap
