#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairaudit/dataset.hpp"
#include "fairaudit/effect_size.hpp"
#include "fairaudit/fairness.hpp"
#include "fairaudit/impact.hpp"
#include "fairaudit/rates.hpp"
#include "fairaudit/subgroup.hpp"

namespace fairaudit {

inline constexpr const char* kToolVersion = "0.1.0";

/// Parameters every bundle number is reproducible from.
struct AuditParams {
  std::string dataset_path;
  ColumnMapping schema;
  int threshold = 4;
  std::string group_b = "African-American";
  std::string group_w = "Caucasian";
  double level = 0.95;
  PenaltyPolicy policy{0.0, 1.0, 4};
  std::vector<PriorBin> bins;  // empty = default bins
};

struct AuditBundle {
  AuditParams params;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  GroupRates rates_b;
  GroupRates rates_w;
  CalibrationCurve curve_b;
  CalibrationCurve curve_w;
  FairnessReport fairness;
  ImpactReport impact_nonrecid;   // delta_general at y1 = y2 = 0
  ImpactReport impact_recid;      // delta_general at y1 = y2 = 1
  double corollary_nonrecid = 0;  // (t_H - t_L)(FPR_b - FPR_w)
  double corollary_recid = 0;     // (t_H - t_L)(FNR_w - FNR_b)
  std::optional<double> incarceration_ratio;
  std::string incarceration_ratio_reason;  // set when the ratio is undefined
  EffectSizeReport effect_y0;
  EffectSizeReport effect_y1;
  double cohens_d_all = 0;  // full group histograms, no outcome conditioning
  double tv_all = 0;
  ScoreDistribution hist_b;
  ScoreDistribution hist_w;
  StratifiedRates strata;
};

/// Run every analysis at the recorded parameters. `cohort` must already be
/// filtered to {group_b, group_w}.
AuditBundle build_audit_bundle(const Dataset& cohort, const AuditParams& params,
                               std::size_t accepted, std::size_t rejected);

nlohmann::ordered_json to_json(const AuditBundle& bundle);
nlohmann::ordered_json to_json(const GroupRates& rates);
nlohmann::ordered_json to_json(const CalibrationCurve& curve);
nlohmann::ordered_json to_json(const FairnessReport& report);
nlohmann::ordered_json to_json(const StratifiedRates& strata);
nlohmann::ordered_json to_json(const std::vector<FrontierRow>& frontier);

/// One tidy long-format row of a figure data table.
struct TableRow {
  std::string series;
  std::string x;
  std::optional<double> y;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::int64_t n = 0;
};

/// Figure tables: calibration curves, stratified FPRs, score histograms.
std::vector<TableRow> figure1_table(const CalibrationCurve& b, const CalibrationCurve& w);
std::vector<TableRow> figure2_table(const StratifiedRates& strata);
std::vector<TableRow> figure3_table(const ScoreDistribution& b, const ScoreDistribution& w);

void write_table_csv(const std::vector<TableRow>& rows, std::ostream& out);
nlohmann::ordered_json table_to_json(const std::vector<TableRow>& rows);

/// Round to `digits` significant digits; applied to every double that enters
/// a serialized report so output is diffable.
double round_sig(double x, int digits = 9);

/// Write content atomically (temp file in the same directory + rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fairaudit
