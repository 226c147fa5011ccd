#pragma once

#include <string>

#include "fairaudit/dataset.hpp"
#include "fairaudit/rates.hpp"

namespace fairaudit {

/// The MinMax policy: t_low for low-risk, t_high for high-risk, with the
/// coarsening threshold it is applied at.
struct PenaltyPolicy {
  double t_low = 0.0;
  double t_high = 1.0;
  int threshold = 4;

  double spread() const { return t_high - t_low; }
};

inline double minmax_penalty(RiskClass rc, const PenaltyPolicy& policy) {
  return rc == RiskClass::HighRisk ? policy.t_high : policy.t_low;
}

struct ImpactReport {
  double delta = 0.0;        // (t_high - t_low) * (hr_prob_b - hr_prob_w)
  double hr_prob_b = 0.0;    // P(S_c = HR | R = b, Y = y1)
  double hr_prob_w = 0.0;    // P(S_c = HR | R = w, Y = y2)
  PenaltyPolicy policy;
  int y1 = 0;
  int y2 = 0;
  std::string group_b;
  std::string group_w;
  std::int64_t n_b = 0;
  std::int64_t n_w = 0;
};

/// Expected penalty difference between the (group_b, y1) and (group_w, y2)
/// slices under the MinMax policy, from empirical conditional frequencies.
/// Throws EmptySliceError naming the empty (group, outcome) slice.
ImpactReport delta_general(const Dataset& d, const PenaltyPolicy& policy, int y1,
                           int y2, const std::string& group_b,
                           const std::string& group_w);

/// Among non-recidivators: delta = (t_high - t_low) * (FPR_b - FPR_w).
/// Throws DomainError when either FPR is undefined.
double delta_nonrecidivators(const GroupRates& rates_b, const GroupRates& rates_w,
                             const PenaltyPolicy& policy);

/// Among recidivators: delta = (t_high - t_low) * (FNR_w - FNR_b).
double delta_recidivators(const GroupRates& rates_b, const GroupRates& rates_w,
                          const PenaltyPolicy& policy);

/// FPR_b / FPR_w: how much more likely a non-recidivating b-group defendant is
/// to be incarcerated under the t_low = 0, t_high = 1 policy.
/// Throws DomainError when FPR_w is zero or either FPR is undefined.
double incarceration_ratio(const GroupRates& rates_b, const GroupRates& rates_w);

}  // namespace fairaudit
