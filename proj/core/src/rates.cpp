#include "fairaudit/rates.hpp"

#include <cmath>

#include "fairaudit/errors.hpp"

namespace fairaudit {

ConfusionMatrix confusion_matrix(const Dataset& d, int threshold) {
  if (d.empty()) throw EmptySliceError("confusion_matrix: empty dataset");
  ConfusionMatrix m;
  for (const Record& r : d.records) {
    const bool high = coarsen(r.score, threshold) == RiskClass::HighRisk;
    if (r.outcome == 1)
      (high ? m.tp : m.fn)++;
    else
      (high ? m.fp : m.tn)++;
  }
  return m;
}

namespace {

// Inverse standard normal CDF, Acklam's rational approximation
// (relative error < 1.15e-9 over (0, 1)).
double normal_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double q, r;
  if (p < p_low) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p <= 1 - p_low) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  }
  q = std::sqrt(-2 * std::log(1 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

}  // namespace

double normal_quantile_two_sided(double level) {
  if (!(level > 0.0 && level < 1.0))
    throw DomainError("confidence level must lie in (0, 1)");
  return normal_quantile(0.5 + level / 2.0);
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double level) {
  if (trials <= 0) throw DomainError("wilson_interval: trials must be positive");
  if (successes < 0 || successes > trials)
    throw DomainError("wilson_interval: successes out of range");
  const double z = normal_quantile_two_sided(level);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  Interval iv{center - half, center + half};
  if (successes == 0) iv.lower = 0.0;
  if (successes == trials) iv.upper = 1.0;
  iv.lower = std::max(0.0, iv.lower);
  iv.upper = std::min(1.0, iv.upper);
  return iv;
}

double RateEstimate::require(const std::string& what) const {
  if (!value) throw DomainError(what + " undefined: " + undefined_reason);
  return *value;
}

namespace {

RateEstimate make_rate(std::int64_t numerator, std::int64_t denominator,
                       double level, const std::string& empty_reason) {
  RateEstimate rate;
  rate.numerator = numerator;
  rate.denominator = denominator;
  if (denominator == 0) {
    rate.undefined_reason = empty_reason;
    return rate;
  }
  rate.value = static_cast<double>(numerator) / static_cast<double>(denominator);
  rate.interval = wilson_interval(numerator, denominator, level);
  return rate;
}

}  // namespace

GroupRates rates_from_matrix(const ConfusionMatrix& m, double level) {
  if (m.total() <= 0) throw DomainError("rates_from_matrix: empty confusion matrix");
  if (m.tn < 0 || m.fp < 0 || m.fn < 0 || m.tp < 0)
    throw DomainError("rates_from_matrix: negative cell count");
  GroupRates out;
  out.n = m.total();
  out.level = level;
  out.prevalence = static_cast<double>(m.tp + m.fn) / static_cast<double>(out.n);
  out.prevalence_interval = wilson_interval(m.tp + m.fn, out.n, level);
  out.ppv = make_rate(m.tp, m.tp + m.fp, level, "no high-risk classifications");
  out.npv = make_rate(m.tn, m.tn + m.fn, level, "no low-risk classifications");
  out.fpr = make_rate(m.fp, m.fp + m.tn, level, "no negatives (Y = 0)");
  out.fnr = make_rate(m.fn, m.fn + m.tp, level, "no positives (Y = 1)");
  return out;
}

double fpr_from_identity(double prevalence, double ppv, double fnr) {
  if (!(prevalence > 0.0 && prevalence < 1.0))
    throw DomainError("fpr_from_identity: prevalence must lie in (0, 1)");
  if (!(ppv > 0.0 && ppv < 1.0))
    throw DomainError("fpr_from_identity: ppv must lie in (0, 1)");
  if (!(fnr >= 0.0 && fnr <= 1.0))
    throw DomainError("fpr_from_identity: fnr must lie in [0, 1]");
  return prevalence / (1.0 - prevalence) * (1.0 - ppv) / ppv * (1.0 - fnr);
}

}  // namespace fairaudit
