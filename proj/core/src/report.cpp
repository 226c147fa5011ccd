#include "fairaudit/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fairaudit/errors.hpp"

namespace fairaudit {

double round_sig(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const double mag = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::fabs(x)))));
  return std::round(x * mag) / mag;
}

namespace {

using json = nlohmann::ordered_json;

json num(double x) { return round_sig(x); }

json interval_json(const Interval& iv) {
  return json{{"lower", num(iv.lower)}, {"upper", num(iv.upper)}};
}

json rate_json(const RateEstimate& r) {
  json j;
  j["defined"] = r.defined();
  if (r.defined()) {
    j["value"] = num(*r.value);
    j["interval"] = interval_json(r.interval);
    j["numerator"] = r.numerator;
    j["denominator"] = r.denominator;
  } else {
    j["reason"] = r.undefined_reason;
  }
  return j;
}

json matrix_json(const ConfusionMatrix& m) {
  return json{{"tn", m.tn}, {"fp", m.fp}, {"fn", m.fn}, {"tp", m.tp}};
}

json policy_json(const PenaltyPolicy& p) {
  return json{{"t_low", num(p.t_low)}, {"t_high", num(p.t_high)}, {"threshold", p.threshold}};
}

json impact_json(const ImpactReport& r) {
  json j;
  j["delta"] = num(r.delta);
  j["hr_prob_b"] = num(r.hr_prob_b);
  j["hr_prob_w"] = num(r.hr_prob_w);
  j["y1"] = r.y1;
  j["y2"] = r.y2;
  j["n_b"] = r.n_b;
  j["n_w"] = r.n_w;
  j["policy"] = policy_json(r.policy);
  return j;
}

json effect_json(const EffectSizeReport& r) {
  json j;
  j["outcome"] = r.outcome;
  j["cohens_d"] = r.cohens_d ? json(num(*r.cohens_d)) : json(nullptr);
  j["tv_distance"] = num(r.tv_distance);
  j["bound"] = num(r.bound);
  j["measured_delta"] = num(r.measured_delta);
  j["bound_holds"] = r.bound_holds;
  return j;
}

json histogram_json(const ScoreDistribution& h) {
  json j;
  j["group"] = h.group;
  j["outcome"] = h.outcome ? json(*h.outcome) : json("any");
  j["n"] = h.n;
  json mass = json::array();
  for (double m : h.mass) mass.push_back(num(m));
  j["mass"] = mass;
  return j;
}

}  // namespace

json to_json(const GroupRates& r) {
  json j;
  j["n"] = r.n;
  j["level"] = num(r.level);
  j["prevalence"] = num(r.prevalence);
  j["prevalence_interval"] = interval_json(r.prevalence_interval);
  j["ppv"] = rate_json(r.ppv);
  j["npv"] = rate_json(r.npv);
  j["fpr"] = rate_json(r.fpr);
  j["fnr"] = rate_json(r.fnr);
  return j;
}

json to_json(const CalibrationCurve& c) {
  json j;
  j["group"] = c.group;
  j["level"] = num(c.level);
  json points = json::array();
  for (const CalibrationPoint& p : c.points) {
    points.push_back(json{{"score", p.score},
                          {"rate", num(p.rate)},
                          {"interval", interval_json(p.interval)},
                          {"n", p.n}});
  }
  j["points"] = points;
  j["empty_deciles"] = c.empty_deciles;
  return j;
}

json to_json(const FairnessReport& r) {
  json j;
  j["group_b"] = r.group_b;
  j["group_w"] = r.group_w;
  json deciles = json::array();
  for (const DecileComparison& d : r.deciles) {
    json dj;
    dj["score"] = d.score;
    dj["comparable"] = d.comparable;
    if (d.comparable) {
      dj["gap"] = num(d.gap);
      dj["intervals_overlap"] = d.intervals_overlap;
      dj["low_confidence"] = d.low_confidence;
    }
    dj["n_b"] = d.n_b;
    dj["n_w"] = d.n_w;
    deciles.push_back(dj);
  }
  j["deciles"] = deciles;
  j["non_overlapping"] = r.non_overlapping;
  j["incomparable"] = r.incomparable;
  return j;
}

json to_json(const StratifiedRates& s) {
  json j;
  j["threshold"] = s.threshold;
  j["level"] = num(s.level);
  json cells = json::array();
  for (const StratumCell& c : s.cells) {
    json cj;
    cj["degree"] = c.degree ? json(to_string(*c.degree)) : json("any");
    cj["bin"] = c.bin.label();
    cj["group"] = c.group;
    cj["n"] = c.n;
    cj["counts"] = matrix_json(c.counts);
    cj["fpr"] = rate_json(c.fpr);
    cells.push_back(cj);
  }
  j["cells"] = cells;
  return j;
}

json to_json(const std::vector<FrontierRow>& frontier) {
  json rows = json::array();
  for (const FrontierRow& r : frontier) {
    rows.push_back(json{{"fnr", num(r.fnr)},
                        {"fpr_b", num(r.fpr_b)},
                        {"fpr_w", num(r.fpr_w)},
                        {"gap", num(r.gap)},
                        {"infeasible", r.infeasible}});
  }
  return rows;
}

AuditBundle build_audit_bundle(const Dataset& cohort, const AuditParams& params,
                               std::size_t accepted, std::size_t rejected) {
  AuditBundle b;
  b.params = params;
  b.accepted = accepted;
  b.rejected = rejected;

  PenaltyPolicy policy = params.policy;
  policy.threshold = params.threshold;

  const Dataset slice_b = slice(cohort, params.group_b, -1);
  const Dataset slice_w = slice(cohort, params.group_w, -1);
  b.rates_b = rates_from_matrix(confusion_matrix(slice_b, params.threshold), params.level);
  b.rates_w = rates_from_matrix(confusion_matrix(slice_w, params.threshold), params.level);

  b.curve_b = calibration_curve(cohort, params.group_b, params.level);
  b.curve_w = calibration_curve(cohort, params.group_w, params.level);
  b.fairness = test_fairness_report(b.curve_b, b.curve_w);

  b.impact_nonrecid = delta_general(cohort, policy, 0, 0, params.group_b, params.group_w);
  b.impact_recid = delta_general(cohort, policy, 1, 1, params.group_b, params.group_w);
  b.corollary_nonrecid = delta_nonrecidivators(b.rates_b, b.rates_w, policy);
  b.corollary_recid = delta_recidivators(b.rates_b, b.rates_w, policy);
  try {
    b.incarceration_ratio = incarceration_ratio(b.rates_b, b.rates_w);
  } catch (const DomainError& e) {
    b.incarceration_ratio_reason = e.what();
  }

  b.effect_y0 = overlap_bound_check(cohort, policy, 0, params.group_b, params.group_w);
  b.effect_y1 = overlap_bound_check(cohort, policy, 1, params.group_b, params.group_w);

  b.hist_b = score_histogram(cohort, params.group_b, std::nullopt);
  b.hist_w = score_histogram(cohort, params.group_w, std::nullopt);
  b.tv_all = tv_distance(b.hist_b, b.hist_w);
  std::vector<double> sb, sw;
  for (const Record& r : cohort.records) {
    if (r.group == params.group_b) sb.push_back(r.score);
    if (r.group == params.group_w) sw.push_back(r.score);
  }
  b.cohens_d_all = cohens_d(sb, sw);

  b.strata = stratified_fpr(cohort, ChargeDegree::Misdemeanor,
                            params.bins.empty() ? default_prior_bins() : params.bins,
                            params.threshold, params.level);
  return b;
}

json to_json(const AuditBundle& b) {
  json j;
  json meta;
  meta["tool_version"] = kToolVersion;
  meta["dataset_path"] = b.params.dataset_path;
  meta["threshold"] = b.params.threshold;
  meta["group_b"] = b.params.group_b;
  meta["group_w"] = b.params.group_w;
  meta["confidence_level"] = num(b.params.level);
  meta["policy"] = policy_json(b.params.policy);
  meta["accepted_rows"] = b.accepted;
  meta["rejected_rows"] = b.rejected;
  j["metadata"] = meta;

  j["rates"] = json{{"group_b", to_json(b.rates_b)}, {"group_w", to_json(b.rates_w)}};
  j["calibration"] = json{{"group_b", to_json(b.curve_b)},
                          {"group_w", to_json(b.curve_w)},
                          {"report", to_json(b.fairness)}};
  json impact;
  impact["nonrecidivators"] = impact_json(b.impact_nonrecid);
  impact["recidivators"] = impact_json(b.impact_recid);
  impact["corollary_nonrecid"] = num(b.corollary_nonrecid);
  impact["corollary_recid"] = num(b.corollary_recid);
  if (b.incarceration_ratio)
    impact["incarceration_ratio"] = num(*b.incarceration_ratio);
  else
    impact["incarceration_ratio_reason"] = b.incarceration_ratio_reason;
  j["impact"] = impact;

  json effect;
  effect["nonrecidivators"] = effect_json(b.effect_y0);
  effect["recidivators"] = effect_json(b.effect_y1);
  effect["cohens_d_all"] = num(b.cohens_d_all);
  effect["tv_distance_all"] = num(b.tv_all);
  effect["histogram_b"] = histogram_json(b.hist_b);
  effect["histogram_w"] = histogram_json(b.hist_w);
  j["effect_size"] = effect;

  j["stratified"] = to_json(b.strata);
  return j;
}

std::vector<TableRow> figure1_table(const CalibrationCurve& b, const CalibrationCurve& w) {
  std::vector<TableRow> rows;
  for (const CalibrationCurve* c : {&b, &w}) {
    for (const CalibrationPoint& p : c->points) {
      rows.push_back({c->group, std::to_string(p.score), p.rate, p.interval.lower,
                      p.interval.upper, p.n});
    }
  }
  return rows;
}

std::vector<TableRow> figure2_table(const StratifiedRates& strata) {
  std::vector<TableRow> rows;
  for (const StratumCell& c : strata.cells) {
    TableRow row;
    row.series = c.group;
    row.x = c.bin.label();
    row.n = c.n;
    if (c.fpr.defined()) {
      row.y = *c.fpr.value;
      row.ci_low = c.fpr.interval.lower;
      row.ci_high = c.fpr.interval.upper;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TableRow> figure3_table(const ScoreDistribution& b, const ScoreDistribution& w) {
  std::vector<TableRow> rows;
  for (const ScoreDistribution* h : {&b, &w}) {
    for (int s = 1; s <= 10; ++s) {
      const double mass = (*h)(s);
      rows.push_back({h->group, std::to_string(s), mass, std::nullopt, std::nullopt,
                      static_cast<std::int64_t>(std::llround(mass * h->n))});
    }
  }
  return rows;
}

namespace {

std::string format_cell(std::optional<double> v) {
  if (!v) return "";
  std::ostringstream os;
  os.precision(9);
  os << round_sig(*v);
  return os.str();
}

}  // namespace

void write_table_csv(const std::vector<TableRow>& rows, std::ostream& out) {
  out << "series,x,y,ci_low,ci_high,n\n";
  for (const TableRow& r : rows) {
    out << r.series << ',' << r.x << ',' << format_cell(r.y) << ','
        << format_cell(r.ci_low) << ',' << format_cell(r.ci_high) << ',' << r.n << '\n';
  }
}

json table_to_json(const std::vector<TableRow>& rows) {
  json arr = json::array();
  for (const TableRow& r : rows) {
    json rj;
    rj["series"] = r.series;
    rj["x"] = r.x;
    rj["y"] = r.y ? json(num(*r.y)) : json(nullptr);
    rj["ci_low"] = r.ci_low ? json(num(*r.ci_low)) : json(nullptr);
    rj["ci_high"] = r.ci_high ? json(num(*r.ci_high)) : json(nullptr);
    rj["n"] = r.n;
    arr.push_back(rj);
  }
  return arr;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write to " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

}  // namespace fairaudit
