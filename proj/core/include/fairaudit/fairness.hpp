#pragma once

#include <string>
#include <vector>

#include "fairaudit/dataset.hpp"
#include "fairaudit/rates.hpp"

namespace fairaudit {

struct CalibrationPoint {
  int score = 0;
  double rate = 0.0;  // P(Y = 1 | S = score, group)
  Interval interval;
  std::int64_t n = 0;
};

struct CalibrationCurve {
  std::string group;
  std::vector<CalibrationPoint> points;  // ordered by score, n > 0 only
  std::vector<int> empty_deciles;        // deciles with no records
  double level = 0.95;
};

/// Observed recidivism rate per decile for one group, with Wilson intervals.
/// Throws EmptySliceError when the group is absent from the dataset.
CalibrationCurve calibration_curve(const Dataset& d, const std::string& group,
                                   double level);

struct DecileComparison {
  int score = 0;
  bool comparable = false;       // both curves have a point at this decile
  double gap = 0.0;              // rate_b - rate_w, when comparable
  bool intervals_overlap = true;
  bool low_confidence = false;   // either side below the minimum n
  std::int64_t n_b = 0;
  std::int64_t n_w = 0;
};

struct FairnessReport {
  std::string group_b;
  std::string group_w;
  std::vector<DecileComparison> deciles;
  int non_overlapping = 0;       // count of comparable deciles with disjoint intervals
  int incomparable = 0;
};

/// Per-decile comparison of two calibration curves. Deciles present in only
/// one curve are reported as incomparable, not dropped.
FairnessReport test_fairness_report(const CalibrationCurve& curve_b,
                                    const CalibrationCurve& curve_w,
                                    std::int64_t min_n = 10);

struct FrontierRow {
  double fnr = 0.0;
  double fpr_b = 0.0;
  double fpr_w = 0.0;
  double gap = 0.0;        // fpr_b - fpr_w
  bool infeasible = false; // either implied FPR exceeds 1
};

/// Eq-4 sweep demonstrating that equal PPV and FNR force unequal FPR when
/// group prevalences differ.
std::vector<FrontierRow> impossibility_frontier(double p_b, double p_w, double ppv,
                                                const std::vector<double>& fnr_grid);

/// 0.05-step grid over [0, 1].
std::vector<double> default_fnr_grid();

}  // namespace fairaudit
