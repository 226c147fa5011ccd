#include "fairaudit/simulate.hpp"

#include <cmath>
#include <numeric>

#include "fairaudit/errors.hpp"
#include "fairaudit/rng.hpp"

namespace fairaudit {

void SimConfig::validate() const {
  if (n_b <= 0 || n_w <= 0) throw ConfigError("sim: group sizes must be positive");
  for (size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] >= 0.0 && q[i] <= 1.0))
      throw ConfigError("sim: q(" + std::to_string(i + 1) + ") outside [0, 1]");
    if (i > 0 && q[i] < q[i - 1])
      throw ConfigError("sim: q must be nondecreasing in the decile");
  }
  solve_group_mass(q, p_b);  // throws ConfigError when unreachable
  solve_group_mass(q, p_w);
}

namespace {

// Prevalence implied by tilting a uniform base mass by exp(theta * s).
std::array<double, 10> tilted_mass(double theta) {
  std::array<double, 10> m;
  double total = 0;
  for (int s = 1; s <= 10; ++s) {
    m[static_cast<size_t>(s - 1)] = std::exp(theta * s);
    total += m[static_cast<size_t>(s - 1)];
  }
  for (double& x : m) x /= total;
  return m;
}

double implied_prevalence(const std::array<double, 10>& mass,
                          const std::array<double, 10>& q) {
  return std::inner_product(mass.begin(), mass.end(), q.begin(), 0.0);
}

}  // namespace

std::array<double, 10> solve_group_mass(const std::array<double, 10>& q, double target) {
  // implied_prevalence(tilted_mass(theta), q) is nondecreasing in theta when q
  // is nondecreasing, with limits q(1) and q(10).
  const double lo_limit = q.front();
  const double hi_limit = q.back();
  if (lo_limit == hi_limit && target == lo_limit) {
    // Flat q: every mass vector yields the same prevalence.
    std::array<double, 10> uniform;
    uniform.fill(0.1);
    return uniform;
  }
  if (!(target > lo_limit && target < hi_limit))
    throw ConfigError("sim: target prevalence " + std::to_string(target) +
                      " unreachable; must lie strictly between q(1) = " +
                      std::to_string(lo_limit) + " and q(10) = " +
                      std::to_string(hi_limit));
  double lo = -50.0, hi = 50.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = (lo + hi) / 2;
    if (implied_prevalence(tilted_mass(mid), q) < target)
      lo = mid;
    else
      hi = mid;
  }
  return tilted_mass((lo + hi) / 2);
}

namespace {

int sample_decile(const std::array<double, 10>& mass, double u) {
  double cum = 0;
  for (int s = 1; s <= 10; ++s) {
    cum += mass[static_cast<size_t>(s - 1)];
    if (u < cum) return s;
  }
  return 10;
}

void append_group(Dataset& d, const std::string& group, std::int64_t n,
                  const std::array<double, 10>& mass, const std::array<double, 10>& q,
                  SplitMix64& rng) {
  for (std::int64_t i = 0; i < n; ++i) {
    Record r;
    r.id = group + "-" + std::to_string(i);
    r.group = group;
    r.score = sample_decile(mass, rng.uniform());
    r.outcome = rng.uniform() < q[static_cast<size_t>(r.score - 1)] ? 1 : 0;
    r.charge_degree = ChargeDegree::Felony;
    r.priors = 0;
    d.records.push_back(std::move(r));
  }
}

}  // namespace

Dataset generate_population(const SimConfig& cfg) {
  cfg.validate();
  const auto mass_b = solve_group_mass(cfg.q, cfg.p_b);
  const auto mass_w = solve_group_mass(cfg.q, cfg.p_w);
  Dataset d;
  // Separate streams per group so changing one group's size leaves the other
  // group's draw sequence unchanged.
  SplitMix64 rng_b(derive_seed(cfg.seed, 0));
  SplitMix64 rng_w(derive_seed(cfg.seed, 1));
  append_group(d, cfg.group_b, cfg.n_b, mass_b, cfg.q, rng_b);
  append_group(d, cfg.group_w, cfg.n_w, mass_w, cfg.q, rng_w);
  return d;
}

double analytic_hr_probability(const SimConfig& cfg, const std::string& group,
                               int outcome, int threshold) {
  const auto mass = solve_group_mass(cfg.q, group == cfg.group_b ? cfg.p_b : cfg.p_w);
  // P(HR | Y = y) = sum_{s > t} m(s) w(s) / sum_s m(s) w(s),
  // with w(s) = q(s) for y = 1 and 1 - q(s) for y = 0.
  double num = 0, den = 0;
  for (int s = 1; s <= 10; ++s) {
    const auto i = static_cast<size_t>(s - 1);
    const double w = outcome == 1 ? cfg.q[i] : 1.0 - cfg.q[i];
    den += mass[i] * w;
    if (s > threshold) num += mass[i] * w;
  }
  if (den == 0.0)
    throw DomainError("analytic_hr_probability: outcome slice has zero mass");
  return num / den;
}

double analytic_delta(const SimConfig& cfg, const PenaltyPolicy& policy, int y1, int y2) {
  return policy.spread() *
         (analytic_hr_probability(cfg, cfg.group_b, y1, policy.threshold) -
          analytic_hr_probability(cfg, cfg.group_w, y2, policy.threshold));
}

MonteCarloResult monte_carlo_delta(const SimConfig& cfg, const PenaltyPolicy& policy,
                                   int y1, int y2, int reps) {
  if (reps < 1) throw ConfigError("monte_carlo_delta: reps must be >= 1");
  MonteCarloResult result;
  result.per_rep.reserve(static_cast<size_t>(reps));
  for (int rep = 0; rep < reps; ++rep) {
    SimConfig rep_cfg = cfg;
    rep_cfg.seed = derive_seed(cfg.seed, 100 + static_cast<std::uint64_t>(rep));
    const Dataset d = generate_population(rep_cfg);
    result.per_rep.push_back(
        delta_general(d, policy, y1, y2, cfg.group_b, cfg.group_w).delta);
  }
  double sum = 0;
  for (double x : result.per_rep) sum += x;
  result.mean = sum / static_cast<double>(reps);
  if (reps > 1) {
    double ss = 0;
    for (double x : result.per_rep) ss += (x - result.mean) * (x - result.mean);
    result.se = std::sqrt(ss / (static_cast<double>(reps) * (reps - 1)));
  }
  return result;
}

}  // namespace fairaudit
