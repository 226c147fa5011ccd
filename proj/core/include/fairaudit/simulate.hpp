#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fairaudit/dataset.hpp"
#include "fairaudit/impact.hpp"

namespace fairaudit {

/// Generative model that is test-fair by construction: both groups share the
/// per-decile recidivism probability q(s); the groups differ only in their
/// decile mass vectors, which are tilted to hit the target prevalences.
struct SimConfig {
  std::string group_b = "b";
  std::string group_w = "w";
  std::int64_t n_b = 100000;
  std::int64_t n_w = 100000;
  double p_b = 0.51;
  double p_w = 0.39;
  std::array<double, 10> q{0.1, 0.18888888888888888, 0.27777777777777779,
                           0.36666666666666667, 0.45555555555555555,
                           0.54444444444444440, 0.63333333333333330,
                           0.72222222222222221, 0.81111111111111112, 0.9};
  std::uint64_t seed = 0;

  /// Throws ConfigError if q is not nondecreasing in [0,1] or a target
  /// prevalence is unreachable by tilting.
  void validate() const;
};

/// Decile mass vector for a target prevalence: an exponentially tilted uniform
/// base, with the tilt solved so that sum_s m(s) q(s) = target.
/// Throws ConfigError when the target lies outside (min q, max q).
std::array<double, 10> solve_group_mass(const std::array<double, 10>& q, double target);

/// Sample the population: scores from each group's tilted mass, outcomes from
/// Bernoulli(q(score)). Identical config (including seed) gives a bit-identical
/// dataset.
Dataset generate_population(const SimConfig& cfg);

/// Exact P(S_c = HR | group, Y = y) under the generative model, at the policy
/// threshold. Used as the analytic oracle for Monte Carlo checks.
double analytic_hr_probability(const SimConfig& cfg, const std::string& group,
                               int outcome, int threshold);

/// Prop-1 delta implied by the generative model itself.
double analytic_delta(const SimConfig& cfg, const PenaltyPolicy& policy, int y1, int y2);

struct MonteCarloResult {
  double mean = 0.0;
  double se = 0.0;
  std::vector<double> per_rep;  // stored so aggregation is order-independent
};

/// Mean and standard error of delta_general over independent replicates;
/// replicate r uses derive_seed(cfg.seed, r).
MonteCarloResult monte_carlo_delta(const SimConfig& cfg, const PenaltyPolicy& policy,
                                   int y1, int y2, int reps);

}  // namespace fairaudit
