#include <doctest.h>

#include <sstream>

#include "fairaudit/dataset.hpp"
#include "fairaudit/errors.hpp"
#include "test_util.hpp"

using namespace fairaudit;

namespace {

const char* kHeader = "id,race,decile_score,two_year_recid,c_charge_degree,priors_count\n";

ParseResult parse_text(const std::string& text, bool strict = true) {
  std::istringstream in(text);
  ParseOptions opts;
  opts.strict = strict;
  return parse_dataset(in, ColumnMapping{}, opts);
}

}  // namespace

TEST_CASE("parse maps fields directly") {
  auto result = parse_text(std::string(kHeader) + "1,b,3,0,F,2\n");
  REQUIRE(result.accepted == 1);
  CHECK(result.rejected == 0);
  const Record& r = result.dataset.records[0];
  CHECK(r.id == "1");
  CHECK(r.group == "b");
  CHECK(r.score == 3);
  CHECK(r.outcome == 0);
  CHECK(r.charge_degree == ChargeDegree::Felony);
  CHECK(r.priors == 2);
}

TEST_CASE("out-of-range decile fails strict parsing with the row number") {
  const std::string text = std::string(kHeader) + "1,b,11,0,F,2\n";
  CHECK_THROWS_WITH_AS(parse_text(text), doctest::Contains("row 2"), ParseError);
}

TEST_CASE("skip-invalid counts rejected rows instead of failing") {
  const std::string text = std::string(kHeader) +
                           "1,b,3,0,F,2\n"
                           "2,b,11,0,F,2\n"
                           "3,w,5,1,M,0\n"
                           "4,w,5,2,M,0\n";
  auto result = parse_text(text, /*strict=*/false);
  CHECK(result.accepted == 2);
  CHECK(result.rejected == 2);
  CHECK(result.accepted + result.rejected == 4);
  REQUIRE(result.diagnostics.size() == 2);
  CHECK(result.diagnostics[0].find("row 3") != std::string::npos);
  CHECK(result.diagnostics[1].find("row 5") != std::string::npos);
}

TEST_CASE("missing mapped column is a schema error naming the column") {
  const std::string text = "id,race,two_year_recid,c_charge_degree,priors_count\n";
  CHECK_THROWS_WITH_AS(parse_text(text), doctest::Contains("decile_score"), SchemaError);
}

TEST_CASE("empty input is a distinct schema error") {
  CHECK_THROWS_AS(parse_text(""), SchemaError);
}

TEST_CASE("quoted fields with embedded commas and newlines parse") {
  const std::string text =
      "id,race,decile_score,two_year_recid,c_charge_degree,priors_count,desc\n"
      "1,b,3,0,F,2,\"theft, petty\n(second line)\"\n";
  std::istringstream in(text);
  ParseOptions opts;
  opts.keep_extra = true;
  auto result = parse_dataset(in, ColumnMapping{}, opts);
  REQUIRE(result.accepted == 1);
  CHECK(result.dataset.records[0].extra.at("desc") == "theft, petty\n(second line)");
}

TEST_CASE("filter_cohort keeps only requested groups, in order") {
  Dataset d;
  d.records = {testutil::make_record("b", 5, 1), testutil::make_record("w", 3, 0),
               testutil::make_record("other", 2, 0)};
  auto filtered = filter_cohort(d, {"b", "w"});
  REQUIRE(filtered.size() == 2);
  CHECK(filtered.records[0].group == "b");
  CHECK(filtered.records[1].group == "w");
  CHECK(d.size() == 3);  // input unmodified

  auto all = filter_cohort(d, {"b", "w", "other"});
  CHECK(all.size() == d.size());
  CHECK_THROWS_AS(filter_cohort(d, {}), DomainError);
}

TEST_CASE("parse/serialize round-trip is stable on the mapped fields") {
  const Dataset original = testutil::random_dataset(11, 200);
  std::ostringstream csv;
  write_csv(Dataset{original.records, ColumnMapping{}}, csv);
  std::istringstream in(csv.str());
  auto parsed = parse_dataset(in, ColumnMapping{});
  REQUIRE(parsed.accepted == original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    const Record& a = original.records[i];
    const Record& b = parsed.dataset.records[i];
    CHECK(a.id == b.id);
    CHECK(a.group == b.group);
    CHECK(a.score == b.score);
    CHECK(a.outcome == b.outcome);
    CHECK(a.charge_degree == b.charge_degree);
    CHECK(a.priors == b.priors);
  }
  // Second round trip is byte-identical.
  std::ostringstream csv2;
  write_csv(parsed.dataset, csv2);
  CHECK(csv.str() == csv2.str());
}

TEST_CASE("cohort filter over disjoint group sets partitions the records") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Dataset d;
    const std::size_t n = 1 + rng.next() % 100;
    for (std::size_t i = 0; i < n; ++i) {
      const char* groups[] = {"b", "w", "h", "o"};
      d.records.push_back(testutil::make_record(groups[rng.next() % 4],
                                                1 + static_cast<int>(rng.next() % 10),
                                                static_cast<int>(rng.next() % 2)));
    }
    auto g1 = filter_cohort(d, {"b", "h"});
    auto g2 = filter_cohort(d, {"w"});
    auto both = filter_cohort(d, {"b", "h", "w"});
    CHECK(both.size() == g1.size() + g2.size());
    // Same multiset: both preserves source order, so ids must interleave g1/g2.
    std::size_t i1 = 0, i2 = 0;
    for (const Record& r : both.records) {
      if (i1 < g1.size() && g1.records[i1].id == r.id && g1.records[i1].group == r.group)
        ++i1;
      else {
        REQUIRE(i2 < g2.size());
        CHECK(g2.records[i2].id == r.id);
        ++i2;
      }
    }
  }
}
