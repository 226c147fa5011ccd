#include "fairaudit/subgroup.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "fairaudit/errors.hpp"

namespace fairaudit {

std::string PriorBin::label() const {
  if (!hi) return lo == 0 ? "any" : ">" + std::to_string(lo - 1);
  if (lo == *hi) return std::to_string(lo);
  return std::to_string(lo) + "-" + std::to_string(*hi);
}

std::vector<PriorBin> default_prior_bins() {
  return {{0, 0}, {1, 3}, {4, 6}, {7, 10}, {11, std::nullopt}};
}

namespace {

void validate_bins(const std::vector<PriorBin>& bins) {
  if (bins.empty()) throw ConfigError("prior bins: empty bin list");
  int expected_lo = 0;
  for (size_t i = 0; i < bins.size(); ++i) {
    const PriorBin& b = bins[i];
    if (b.lo != expected_lo)
      throw ConfigError("prior bins: gap or overlap at bin '" + b.label() + "'");
    if (b.hi) {
      if (*b.hi < b.lo)
        throw ConfigError("prior bins: bin '" + b.label() + "' is inverted");
      expected_lo = *b.hi + 1;
    } else if (i + 1 != bins.size()) {
      throw ConfigError("prior bins: unbounded bin must be last");
    }
  }
  if (bins.back().hi)
    throw ConfigError("prior bins: last bin must be a catch-all (no upper bound)");
}

}  // namespace

StratifiedRates stratified_fpr(const Dataset& d, std::optional<ChargeDegree> degree,
                               const std::vector<PriorBin>& bins, int threshold,
                               double level) {
  validate_bins(bins);
  StratifiedRates out;
  out.threshold = threshold;
  out.level = level;

  // Deterministic group order: first appearance in the dataset.
  std::vector<std::string> groups;
  for (const Record& r : d.records)
    if (std::find(groups.begin(), groups.end(), r.group) == groups.end())
      groups.push_back(r.group);

  for (const PriorBin& bin : bins) {
    for (const std::string& group : groups) {
      StratumCell cell;
      cell.degree = degree;
      cell.bin = bin;
      cell.group = group;
      for (const Record& r : d.records) {
        if (r.group != group || !bin.contains(r.priors)) continue;
        if (degree && r.charge_degree != *degree) continue;
        cell.n++;
        const bool high = coarsen(r.score, threshold) == RiskClass::HighRisk;
        if (r.outcome == 1)
          (high ? cell.counts.tp : cell.counts.fn)++;
        else
          (high ? cell.counts.fp : cell.counts.tn)++;
      }
      const std::int64_t negatives = cell.counts.fp + cell.counts.tn;
      if (cell.n == 0) {
        cell.fpr.undefined_reason = "empty cell";
      } else if (negatives == 0) {
        cell.fpr.undefined_reason = "no negatives";
      } else {
        cell.fpr.numerator = cell.counts.fp;
        cell.fpr.denominator = negatives;
        cell.fpr.value = static_cast<double>(cell.counts.fp) /
                         static_cast<double>(negatives);
        cell.fpr.interval = wilson_interval(cell.counts.fp, negatives, level);
      }
      out.cells.push_back(std::move(cell));
    }
  }
  return out;
}

}  // namespace fairaudit
