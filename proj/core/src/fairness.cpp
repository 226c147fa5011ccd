#include "fairaudit/fairness.hpp"

#include <array>

#include "fairaudit/errors.hpp"

namespace fairaudit {

CalibrationCurve calibration_curve(const Dataset& d, const std::string& group,
                                   double level) {
  std::array<std::int64_t, 10> total{};
  std::array<std::int64_t, 10> positive{};
  bool seen = false;
  for (const Record& r : d.records) {
    if (r.group != group) continue;
    seen = true;
    total[static_cast<size_t>(r.score - 1)]++;
    if (r.outcome == 1) positive[static_cast<size_t>(r.score - 1)]++;
  }
  if (!seen) throw EmptySliceError("calibration_curve: no records for group '" + group + "'");

  CalibrationCurve curve;
  curve.group = group;
  curve.level = level;
  for (int s = 1; s <= 10; ++s) {
    const auto i = static_cast<size_t>(s - 1);
    if (total[i] == 0) {
      curve.empty_deciles.push_back(s);
      continue;
    }
    CalibrationPoint point;
    point.score = s;
    point.n = total[i];
    point.rate = static_cast<double>(positive[i]) / static_cast<double>(total[i]);
    point.interval = wilson_interval(positive[i], total[i], level);
    curve.points.push_back(point);
  }
  return curve;
}

FairnessReport test_fairness_report(const CalibrationCurve& curve_b,
                                    const CalibrationCurve& curve_w,
                                    std::int64_t min_n) {
  FairnessReport report;
  report.group_b = curve_b.group;
  report.group_w = curve_w.group;

  auto find_point = [](const CalibrationCurve& c, int s) -> const CalibrationPoint* {
    for (const CalibrationPoint& p : c.points)
      if (p.score == s) return &p;
    return nullptr;
  };

  for (int s = 1; s <= 10; ++s) {
    const CalibrationPoint* pb = find_point(curve_b, s);
    const CalibrationPoint* pw = find_point(curve_w, s);
    if (!pb && !pw) continue;  // decile absent from both, nothing to say
    DecileComparison cmp;
    cmp.score = s;
    cmp.n_b = pb ? pb->n : 0;
    cmp.n_w = pw ? pw->n : 0;
    if (pb && pw) {
      cmp.comparable = true;
      cmp.gap = pb->rate - pw->rate;
      cmp.intervals_overlap = pb->interval.lower <= pw->interval.upper &&
                              pw->interval.lower <= pb->interval.upper;
      cmp.low_confidence = pb->n < min_n || pw->n < min_n;
      if (!cmp.intervals_overlap) report.non_overlapping++;
    } else {
      report.incomparable++;
    }
    report.deciles.push_back(cmp);
  }
  return report;
}

std::vector<double> default_fnr_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
  return grid;
}

std::vector<FrontierRow> impossibility_frontier(double p_b, double p_w, double ppv,
                                                const std::vector<double>& fnr_grid) {
  std::vector<FrontierRow> rows;
  rows.reserve(fnr_grid.size());
  for (double fnr : fnr_grid) {
    FrontierRow row;
    row.fnr = fnr;
    row.fpr_b = fpr_from_identity(p_b, ppv, fnr);
    row.fpr_w = fpr_from_identity(p_w, ppv, fnr);
    row.gap = row.fpr_b - row.fpr_w;
    row.infeasible = row.fpr_b > 1.0 || row.fpr_w > 1.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fairaudit
