#include <doctest.h>

#include <stdexcept>

#include <json.hpp>
#include <sstream>

#include "resmap/report.hpp"
#include "resmap/tables.hpp"

using namespace resmap;

TEST_CASE("fixtures are embedded and parse") {
  for (const auto& id : table_ids()) {
    INFO(id);
    REQUIRE(embedded_fixture(id));
    const auto f = load_fixture(id);
    CHECK_FALSE(f.rows.empty());
    CHECK(f.columns.back() == "source");
  }
  CHECK_FALSE(embedded_fixture("T9"));
  CHECK_THROWS((void)load_fixture("T9"));
}

TEST_CASE("fixture parser") {
  const auto f = parse_fixture("X", "# note\nn,p,source\n3,7,a\n\n4,11,b\n");
  CHECK(f.comments.size() == 1);
  REQUIRE(f.rows.size() == 2);
  CHECK(f.at(f.rows[1], "p") == "11");
  CHECK_THROWS((void)parse_fixture("X", "n,p\n3\n"));
}

TEST_CASE("scales and presets") {
  CHECK(parse_scale("desk") == Scale::kDesk);
  CHECK_THROWS((void)parse_scale("huge"));
  const auto t3 = preset_search_spec("T3", Scale::kFull);
  REQUIRE(t3);
  CHECK(t3->exponents.kind == ExponentFilter::Kind::kHalf);
  CHECK(t3->window.admits(2401, 12));
  CHECK_FALSE(preset_search_spec("T4", Scale::kFull));
}

TEST_CASE("cheap tables verify row by row and reproduce") {
  for (const char* id : {"T3", "T4"}) {
    for (const auto& c : verify_fixture_rows(id)) {
      INFO(c.source, " ", c.row, " ", c.detail);
      CHECK(c.ok);
    }
    const auto rep = reproduce_table(id, Scale::kFull);
    INFO(format_report(rep));
    CHECK(rep.match());
    CHECK(nlohmann::json::parse(report_json(rep))["match"] == true);
  }
}

TEST_CASE("the sigma misprint is caught") {
  bool flagged = false;
  for (const auto& c : verify_fixture_rows("T6iia")) {
    if (!c.ok) {
      flagged = true;
      CHECK(c.row.find("11") != std::string::npos);
    }
  }
  CHECK(flagged);
}

TEST_CASE("ratio truncation") {
  CHECK(ratio6(29, 24) == "1.208333");
  CHECK(ratio6(2, 3) == "0.666666");
  CHECK(ratio6(87841, 3017) == "29.115346");
  CHECK(ratio6(10, 5) == "2.000000");
}

TEST_CASE("CSV and JSON lines carry the same records") {
  Records r;
  r.columns = {"a", "b", "c"};
  r.rows.push_back({std::int64_t{-3}, std::string("x,y"), true});
  r.rows.push_back({std::int64_t{4}, std::string("say \"hi\""), false});
  CHECK(r.to_csv() == "a,b,c\n-3,\"x,y\",true\n4,\"say \"\"hi\"\"\",false\n");
  std::istringstream in(r.to_jsonl());
  std::string line;
  std::getline(in, line);
  const auto j = nlohmann::json::parse(line);
  CHECK(j["a"] == -3);
  CHECK(j["b"] == "x,y");
  CHECK(j["c"] == true);
}
