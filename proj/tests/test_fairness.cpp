#include <doctest.h>

#include "fairaudit/errors.hpp"
#include "fairaudit/fairness.hpp"
#include "test_util.hpp"

using namespace fairaudit;

TEST_CASE("calibration point is the direct proportion") {
  Dataset d;
  for (int outcome : {1, 1, 0, 0})
    d.records.push_back(testutil::make_record("b", 5, outcome));
  const auto curve = calibration_curve(d, "b", 0.95);
  REQUIRE(curve.points.size() == 1);
  CHECK(curve.points[0].score == 5);
  CHECK(curve.points[0].rate == 0.5);
  CHECK(curve.points[0].n == 4);
  CHECK(curve.empty_deciles.size() == 9);
}

TEST_CASE("all-recidivist slice gives rate 1 everywhere") {
  Dataset d;
  for (int s = 1; s <= 10; ++s)
    d.records.push_back(testutil::make_record("b", s, 1));
  const auto curve = calibration_curve(d, "b", 0.95);
  REQUIRE(curve.points.size() == 10);
  for (const auto& p : curve.points) CHECK(p.rate == 1.0);
  CHECK(curve.empty_deciles.empty());
}

TEST_CASE("absent group raises a named error") {
  Dataset d;
  d.records = {testutil::make_record("b", 5, 1)};
  CHECK_THROWS_WITH_AS(calibration_curve(d, "nope", 0.95), doctest::Contains("nope"),
                       EmptySliceError);
}

TEST_CASE("point counts per decile sum to the group slice size") {
  const auto d = testutil::random_dataset(31, 700);
  std::int64_t n_b = 0;
  for (const auto& r : d.records)
    if (r.group == "b") ++n_b;
  const auto curve = calibration_curve(d, "b", 0.95);
  std::int64_t sum = 0;
  for (const auto& p : curve.points) sum += p.n;
  CHECK(sum == n_b);
}

TEST_CASE("identical curves produce zero gaps and full overlap") {
  const auto d = testutil::random_dataset(5, 400);
  const auto curve = calibration_curve(d, "b", 0.95);
  const auto report = test_fairness_report(curve, curve);
  CHECK(report.non_overlapping == 0);
  CHECK(report.incomparable == 0);
  for (const auto& cmp : report.deciles) {
    CHECK(cmp.comparable);
    CHECK(cmp.gap == 0.0);
    CHECK(cmp.intervals_overlap);
  }
}

TEST_CASE("constructed separation at one decile is flagged") {
  Dataset d;
  // Decile 7: group b all recidivate, group w none, 50 records each.
  for (int i = 0; i < 50; ++i) {
    d.records.push_back(testutil::make_record("b", 7, 1));
    d.records.push_back(testutil::make_record("w", 7, 0));
    // Decile 2 agrees between the groups.
    d.records.push_back(testutil::make_record("b", 2, i % 2));
    d.records.push_back(testutil::make_record("w", 2, i % 2));
  }
  const auto report = test_fairness_report(calibration_curve(d, "b", 0.95),
                                           calibration_curve(d, "w", 0.95));
  CHECK(report.non_overlapping == 1);
  for (const auto& cmp : report.deciles) {
    if (cmp.score == 7) {
      CHECK_FALSE(cmp.intervals_overlap);
      CHECK(cmp.gap == 1.0);
    }
    if (cmp.score == 2) CHECK(cmp.intervals_overlap);
  }
}

TEST_CASE("deciles present in only one curve are incomparable, not dropped") {
  Dataset d;
  for (int i = 0; i < 20; ++i) {
    d.records.push_back(testutil::make_record("b", 3, i % 2));
    d.records.push_back(testutil::make_record("w", 3, i % 2));
    d.records.push_back(testutil::make_record("b", 8, i % 2));  // b only
  }
  const auto report = test_fairness_report(calibration_curve(d, "b", 0.95),
                                           calibration_curve(d, "w", 0.95));
  CHECK(report.incomparable == 1);
  bool saw_8 = false;
  for (const auto& cmp : report.deciles) {
    if (cmp.score == 8) {
      saw_8 = true;
      CHECK_FALSE(cmp.comparable);
      CHECK(cmp.n_w == 0);
    }
  }
  CHECK(saw_8);
}

TEST_CASE("small deciles are flagged low-confidence") {
  Dataset d;
  for (int i = 0; i < 5; ++i) {
    d.records.push_back(testutil::make_record("b", 4, i % 2));
    d.records.push_back(testutil::make_record("w", 4, i % 2));
  }
  const auto report = test_fairness_report(calibration_curve(d, "b", 0.95),
                                           calibration_curve(d, "w", 0.95), 10);
  REQUIRE(report.deciles.size() == 1);
  CHECK(report.deciles[0].low_confidence);
}

TEST_CASE("frontier: equal prevalence means zero gap everywhere") {
  for (const auto& row : impossibility_frontier(0.4, 0.4, 0.6, default_fnr_grid()))
    CHECK(row.gap == 0.0);
}

TEST_CASE("frontier matches the identity ratio at the worked point") {
  const auto rows = impossibility_frontier(0.51, 0.39, 0.5, {0.5});
  REQUIRE(rows.size() == 1);
  const double expected_ratio = (0.51 / 0.49) / (0.39 / 0.61);
  CHECK(rows[0].fpr_b / rows[0].fpr_w == doctest::Approx(expected_ratio).epsilon(1e-12));
  CHECK(rows[0].gap > 0.0);
}

TEST_CASE("frontier: fnr = 1 collapses both rates to zero") {
  const auto rows = impossibility_frontier(0.51, 0.39, 0.5, {1.0});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].fpr_b == 0.0);
  CHECK(rows[0].fpr_w == 0.0);
  CHECK(rows[0].gap == 0.0);
}

TEST_CASE("strict gap sign across the whole grid when p_b > p_w") {
  SplitMix64 rng(86);
  for (int trial = 0; trial < 200; ++trial) {
    const double p_w = 0.05 + 0.4 * rng.uniform();
    const double p_b = p_w + 0.05 + 0.4 * rng.uniform();
    const double ppv = 0.05 + 0.9 * rng.uniform();
    for (const auto& row : impossibility_frontier(p_b, p_w, ppv, default_fnr_grid())) {
      if (row.fnr >= 1.0) continue;
      CHECK(row.fpr_b > row.fpr_w);
    }
  }
}
