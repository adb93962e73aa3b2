#pragma once

// Table presets: each published table as a search or census regime plus the
// transcribed rows it should reproduce, and the diff between the two.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resmap/search.hpp"

namespace resmap {

enum class Scale { kDesk, kFull };
[[nodiscard]] const char* scale_name(Scale s);
/// "desk" or "full". Throws std::invalid_argument.
[[nodiscard]] Scale parse_scale(const std::string& s);

/// T1, T2, T3, T4, T5, T6iia, T6extra.
[[nodiscard]] const std::vector<std::string>& table_ids();

/// Raw CSV text compiled in from data/fixtures.
[[nodiscard]] std::optional<std::string_view> embedded_fixture(std::string_view table_id);

struct FixtureRow {
  int line = 0;
  std::vector<std::string> cells;
};

struct Fixture {
  std::string id;
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<FixtureRow> rows;

  /// Cell of `row` under `column`; throws std::out_of_range for an unknown column.
  [[nodiscard]] const std::string& at(const FixtureRow& row, std::string_view column) const;
};

/// '#' lines are comments, the first other line is the header. Every row must
/// have one cell per column and a non-empty source. Throws std::runtime_error.
[[nodiscard]] Fixture parse_fixture(std::string_view id, std::string_view text);
/// parse_fixture on the embedded text. Throws std::invalid_argument for an unknown id.
[[nodiscard]] Fixture load_fixture(std::string_view id);

struct TablePreset {
  std::string id;
  std::string regime;
  /// Pinned sub-regime used at desk scale; equal to regime when the full run is cheap.
  std::string desk_regime;
};

[[nodiscard]] const TablePreset& table_preset(std::string_view id);

/// Search regime behind a search-based table (T1, T2, T3, T6iia, T6extra).
[[nodiscard]] std::optional<SearchSpec> preset_search_spec(std::string_view id, Scale scale);

/// One transcribed row checked against the classifier or family verifier.
struct RowCheck {
  std::string source;
  std::string row;
  bool ok = false;
  std::string detail;
};

/// Criterion-style row verification for every row of a table. Rows with
/// A or k lists expand to one check per (A, k).
[[nodiscard]] std::vector<RowCheck> verify_fixture_rows(std::string_view id);

struct DiffSection {
  std::string name;
  std::size_t expected = 0;
  std::size_t computed = 0;
  std::vector<std::string> missing;  // in the fixture, not computed
  std::vector<std::string> extra;    // computed, not in the fixture

  [[nodiscard]] bool clean() const noexcept { return missing.empty() && extra.empty(); }
};

struct ReproduceReport {
  std::string table;
  Scale scale = Scale::kDesk;
  std::string regime;
  SearchStatus status = SearchStatus::kComplete;
  std::vector<DiffSection> sections;
  /// Derived instances that failed independent verification.
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  [[nodiscard]] bool match() const noexcept;
};

[[nodiscard]] ReproduceReport reproduce_table(std::string_view id, Scale scale, const SearchOptions& options = {});

/// Plain-text rendering: one line per section plus the missing/extra rows.
[[nodiscard]] std::string format_report(const ReproduceReport& r);
/// Same information as one JSON object.
[[nodiscard]] std::string report_json(const ReproduceReport& r);

/// Row keys shared by reproduction and verification.
[[nodiscard]] std::string t1_key(const SearchHit& h);
[[nodiscard]] std::string t2_key(const SearchHit& h);
[[nodiscard]] std::string t3_key(const SearchHit& h);
[[nodiscard]] std::string iia_key(const SearchHit& h, bool with_sigma);

}  // namespace resmap
