#include "fairaudit/impact.hpp"

#include "fairaudit/errors.hpp"

namespace fairaudit {

namespace {

// P(S_c = HR | group, Y = y), empirical. Throws on an empty slice.
double hr_probability(const Dataset& d, const std::string& group, int y,
                      int threshold, std::int64_t& n_out) {
  std::int64_t n = 0;
  std::int64_t high = 0;
  for (const Record& r : d.records) {
    if (r.group != group || r.outcome != y) continue;
    ++n;
    if (coarsen(r.score, threshold) == RiskClass::HighRisk) ++high;
  }
  if (n == 0)
    throw EmptySliceError("delta_general: empty slice (group '" + group +
                          "', outcome " + std::to_string(y) + ")");
  n_out = n;
  return static_cast<double>(high) / static_cast<double>(n);
}

}  // namespace

ImpactReport delta_general(const Dataset& d, const PenaltyPolicy& policy, int y1,
                           int y2, const std::string& group_b,
                           const std::string& group_w) {
  ImpactReport report;
  report.policy = policy;
  report.y1 = y1;
  report.y2 = y2;
  report.group_b = group_b;
  report.group_w = group_w;
  report.hr_prob_b = hr_probability(d, group_b, y1, policy.threshold, report.n_b);
  report.hr_prob_w = hr_probability(d, group_w, y2, policy.threshold, report.n_w);
  report.delta = policy.spread() * (report.hr_prob_b - report.hr_prob_w);
  return report;
}

double delta_nonrecidivators(const GroupRates& rates_b, const GroupRates& rates_w,
                             const PenaltyPolicy& policy) {
  return policy.spread() *
         (rates_b.fpr.require("FPR_b") - rates_w.fpr.require("FPR_w"));
}

double delta_recidivators(const GroupRates& rates_b, const GroupRates& rates_w,
                          const PenaltyPolicy& policy) {
  return policy.spread() *
         (rates_w.fnr.require("FNR_w") - rates_b.fnr.require("FNR_b"));
}

double incarceration_ratio(const GroupRates& rates_b, const GroupRates& rates_w) {
  const double fpr_b = rates_b.fpr.require("FPR_b");
  const double fpr_w = rates_w.fpr.require("FPR_w");
  if (fpr_w == 0.0)
    throw DomainError("incarceration_ratio undefined: FPR_w = 0");
  return fpr_b / fpr_w;
}

}  // namespace fairaudit
