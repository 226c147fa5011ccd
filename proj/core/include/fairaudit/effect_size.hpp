#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/dataset.hpp"
#include "fairaudit/impact.hpp"

namespace fairaudit {

/// Normalized decile histogram f_{r,y}(s) for one group/outcome slice.
struct ScoreDistribution {
  std::string group;
  std::optional<int> outcome;   // nullopt = all outcomes
  std::array<double, 10> mass{};  // index 0 = decile 1
  std::int64_t n = 0;

  double operator()(int score) const { return mass[static_cast<size_t>(score - 1)]; }
};

/// Throws EmptySliceError when the slice is empty.
ScoreDistribution score_histogram(const Dataset& d, const std::string& group,
                                  std::optional<int> outcome);

/// Standardized mean difference (mean_a - mean_b) / pooled SD, with the
/// classical (n_a + n_b - 2) pooling denominator.
/// Throws DomainError for lists shorter than 2 or zero pooled SD.
double cohens_d(const std::vector<double>& scores_a, const std::vector<double>& scores_b);

/// Total variation distance: half the L1 distance between the mass vectors.
double tv_distance(const ScoreDistribution& p, const ScoreDistribution& q);

struct EffectSizeReport {
  std::optional<double> cohens_d;  // absent when a slice is too small or constant
  double tv_distance = 0.0;     // on the outcome-conditional histograms
  double bound = 0.0;           // (t_high - t_low) * tv_distance
  double measured_delta = 0.0;  // delta_general at y1 = y2 = outcome
  bool bound_holds = false;     // measured_delta <= bound + 1e-12
  int outcome = 0;
  PenaltyPolicy policy;
};

/// Verify the percent-overlap bound delta <= (t_high - t_low) * d_TV on the
/// outcome-conditional score distributions.
EffectSizeReport overlap_bound_check(const Dataset& d, const PenaltyPolicy& policy,
                                     int outcome, const std::string& group_b,
                                     const std::string& group_w);

}  // namespace fairaudit
