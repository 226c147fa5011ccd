#include "fairaudit/effect_size.hpp"

#include <cmath>

#include "fairaudit/errors.hpp"

namespace fairaudit {

ScoreDistribution score_histogram(const Dataset& d, const std::string& group,
                                  std::optional<int> outcome) {
  ScoreDistribution dist;
  dist.group = group;
  dist.outcome = outcome;
  std::array<std::int64_t, 10> counts{};
  for (const Record& r : d.records) {
    if (r.group != group) continue;
    if (outcome && r.outcome != *outcome) continue;
    counts[static_cast<size_t>(r.score - 1)]++;
    dist.n++;
  }
  if (dist.n == 0)
    throw EmptySliceError(
        "score_histogram: empty slice (group '" + group + "', outcome " +
        (outcome ? std::to_string(*outcome) : std::string("any")) + ")");
  for (size_t i = 0; i < 10; ++i)
    dist.mass[i] = static_cast<double>(counts[i]) / static_cast<double>(dist.n);
  return dist;
}

double cohens_d(const std::vector<double>& scores_a, const std::vector<double>& scores_b) {
  const auto na = static_cast<double>(scores_a.size());
  const auto nb = static_cast<double>(scores_b.size());
  if (scores_a.size() < 2 || scores_b.size() < 2)
    throw DomainError("cohens_d: each sample needs at least 2 values");
  auto mean = [](const std::vector<double>& v, double n) {
    double s = 0;
    for (double x : v) s += x;
    return s / n;
  };
  auto ss = [](const std::vector<double>& v, double m) {
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s;
  };
  const double ma = mean(scores_a, na);
  const double mb = mean(scores_b, nb);
  // Pooled SD with the classical n_a + n_b - 2 denominator.
  const double pooled_var = (ss(scores_a, ma) + ss(scores_b, mb)) / (na + nb - 2);
  if (pooled_var <= 0.0) throw DomainError("cohens_d: zero pooled standard deviation");
  return (ma - mb) / std::sqrt(pooled_var);
}

double tv_distance(const ScoreDistribution& p, const ScoreDistribution& q) {
  double l1 = 0;
  for (size_t i = 0; i < 10; ++i) l1 += std::abs(p.mass[i] - q.mass[i]);
  return l1 / 2.0;
}

EffectSizeReport overlap_bound_check(const Dataset& d, const PenaltyPolicy& policy,
                                     int outcome, const std::string& group_b,
                                     const std::string& group_w) {
  EffectSizeReport report;
  report.outcome = outcome;
  report.policy = policy;

  const ScoreDistribution fb = score_histogram(d, group_b, outcome);
  const ScoreDistribution fw = score_histogram(d, group_w, outcome);
  report.tv_distance = tv_distance(fb, fw);
  report.bound = policy.spread() * report.tv_distance;
  report.measured_delta = delta_general(d, policy, outcome, outcome, group_b, group_w).delta;
  report.bound_holds = report.measured_delta <= report.bound + 1e-12;

  std::vector<double> sb, sw;
  for (const Record& r : d.records) {
    if (outcome != -1 && r.outcome != outcome) continue;
    if (r.group == group_b) sb.push_back(r.score);
    if (r.group == group_w) sw.push_back(r.score);
  }
  try {
    report.cohens_d = cohens_d(sb, sw);
  } catch (const DomainError&) {
    // Slice too small or constant; the bound itself does not need d.
  }
  return report;
}

}  // namespace fairaudit
