#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairaudit/dataset.hpp"
#include "fairaudit/rates.hpp"

namespace fairaudit {

/// Inclusive prior-count range; no upper bound means a catch-all tail.
struct PriorBin {
  int lo = 0;
  std::optional<int> hi;

  bool contains(int priors) const {
    return priors >= lo && (!hi || priors <= *hi);
  }
  std::string label() const;
};

/// [0], [1-3], [4-6], [7-10], [>10]
std::vector<PriorBin> default_prior_bins();

struct StratumCell {
  std::optional<ChargeDegree> degree;  // nullopt = combined run
  PriorBin bin;
  std::string group;
  RateEstimate fpr;        // among outcome-0 records in the cell
  ConfusionMatrix counts;
  std::int64_t n = 0;      // all records in the cell
};

struct StratifiedRates {
  std::vector<StratumCell> cells;
  int threshold = 4;
  double level = 0.95;
};

/// FPR per (prior-count bin, group) among records at the given charge degree.
/// Bins must be disjoint, ordered, and end in a catch-all; otherwise
/// ConfigError. Cells with no outcome-0 records come back undefined with a
/// reason, never dropped.
StratifiedRates stratified_fpr(const Dataset& d, std::optional<ChargeDegree> degree,
                               const std::vector<PriorBin>& bins, int threshold,
                               double level);

}  // namespace fairaudit
