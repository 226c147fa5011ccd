#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fairaudit/dataset.hpp"

namespace fairaudit {

enum class RiskClass { LowRisk, HighRisk };

/// Coarsen a decile score at threshold s_HR: HighRisk iff score > threshold.
inline RiskClass coarsen(int score, int threshold) {
  return score > threshold ? RiskClass::HighRisk : RiskClass::LowRisk;
}

struct ConfusionMatrix {
  std::int64_t tn = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tp = 0;

  std::int64_t total() const { return tn + fp + fn + tp; }
};

/// Tally the confusion matrix of the coarsened score against the two-year
/// outcome. Throws EmptySliceError on an empty dataset.
ConfusionMatrix confusion_matrix(const Dataset& d, int threshold);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Wilson score interval for a binomial proportion.
/// Throws DomainError when trials == 0 or successes > trials.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double level);

/// Upper-tail critical value z for a two-sided interval at `level`,
/// e.g. level = 0.95 -> z ~ 1.959964.
double normal_quantile_two_sided(double level);

/// A rate that may be undefined (zero denominator). Undefined rates carry a
/// reason instead of silently propagating NaN.
struct RateEstimate {
  std::optional<double> value;
  Interval interval;
  std::int64_t numerator = 0;
  std::int64_t denominator = 0;
  std::string undefined_reason;

  bool defined() const { return value.has_value(); }
  double require(const std::string& what) const;
};

struct GroupRates {
  double prevalence = 0.0;  // (tp + fn) / total
  Interval prevalence_interval;
  RateEstimate ppv;
  RateEstimate npv;
  RateEstimate fpr;
  RateEstimate fnr;
  std::int64_t n = 0;
  double level = 0.95;
};

/// All confusion-matrix-derived rates with Wilson intervals.
/// Throws DomainError when m.total() == 0.
GroupRates rates_from_matrix(const ConfusionMatrix& m, double level);

/// FPR implied by prevalence, PPV and FNR:
///   FPR = p/(1-p) * (1-PPV)/PPV * (1-FNR)
/// Returned unclamped; values above 1 signal infeasible inputs.
/// Throws DomainError unless prevalence and ppv lie in the open interval (0,1)
/// and fnr in [0,1].
double fpr_from_identity(double prevalence, double ppv, double fnr);

}  // namespace fairaudit
