#pragma once

// Tabular records with fixed columns, rendered as CSV or JSON lines. Both
// renderings carry the same fields in the same order.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "resmap/bounds.hpp"
#include "resmap/families.hpp"
#include "resmap/runs.hpp"
#include "resmap/search.hpp"

namespace resmap {

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Records {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  [[nodiscard]] std::string to_csv() const;
  [[nodiscard]] std::string to_jsonl() const;
};

enum class Format { kCsv, kJson };
[[nodiscard]] std::string render(const Records& r, Format f);

/// p/n truncated (not rounded) to six decimals, e.g. "9.157142".
[[nodiscard]] std::string ratio6(u64 p, u64 n);

/// Shortest round-trip decimal for a double.
[[nodiscard]] std::string format_double(double v);

/// Columns n,p,A,k,i,j,type,ratio. One record per witness: (i, j) for Type
/// (iii), (i, i) for Type (iib), (i, sigma(i)) for Type (iia) and Type (i).
/// A carries the sign of the map.
[[nodiscard]] Records hit_records(const std::vector<SearchHit>& hits);

/// Columns p,a,t,value.
[[nodiscard]] Records run_records(const std::vector<RunRecord>& runs);

/// Columns quantity,computed,bound,holds,witness,note.
[[nodiscard]] Records bound_records(const std::vector<BoundReport>& reports);

/// Columns family,p,n,A,k,i,j,claim,branch,verified.
[[nodiscard]] Records family_records(const std::vector<FamilyInstance>& instances);

/// Columns name,condition,bound,smallest.
[[nodiscard]] Records threshold_records(const std::vector<Threshold>& ts);

/// Columns n,p,A,k,types,type_i,type_iia,sigma,type_iib,type_iii,type_iv,class_sizes.
/// List fields are space separated, witness pairs written i:j.
[[nodiscard]] Records classification_records(const ClassificationResult& c);

}  // namespace resmap
