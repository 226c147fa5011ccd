// fairaudit: audit recidivism-style risk scores for calibration, error-rate
// imbalance, and disparate impact of threshold penalty policies.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairaudit/effect_size.hpp"
#include "fairaudit/errors.hpp"
#include "fairaudit/fairness.hpp"
#include "fairaudit/report.hpp"
#include "fairaudit/simulate.hpp"

namespace {

using fairaudit::AuditParams;
using json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitEmpty = 4;

struct CommonOpts {
  std::string data;
  std::string schema_file;
  fairaudit::ColumnMapping schema;
  int threshold = 4;
  std::vector<std::string> groups{"African-American", "Caucasian"};
  double confidence = 0.95;
  std::string out;
  std::string format = "json";
  bool skip_invalid = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool needs_data = true) {
  auto* data = cmd->add_option("--data", o.data, "Path to the scored-defendant CSV");
  if (needs_data) data->required();
  cmd->add_option("--schema", o.schema_file,
                  "JSON file mapping {group, score, outcome, charge_degree, priors, id} "
                  "to column names");
  cmd->add_option("--col-group", o.schema.group, "Group/race column name");
  cmd->add_option("--col-score", o.schema.score, "Decile score column name");
  cmd->add_option("--col-outcome", o.schema.outcome, "Two-year outcome column name");
  cmd->add_option("--col-degree", o.schema.charge_degree, "Charge degree column name");
  cmd->add_option("--col-priors", o.schema.priors, "Prior count column name");
  cmd->add_option("--col-id", o.schema.id, "Id column name");
  cmd->add_option("--threshold", o.threshold, "High-risk cutoff: HR iff score > threshold")
      ->default_val(4);
  cmd->add_option("--groups", o.groups, "Two group labels: audited group, reference group")
      ->expected(2);
  cmd->add_option("--confidence", o.confidence, "Confidence level for intervals")
      ->default_val(0.95);
  cmd->add_option("--out", o.out, "Output file (or directory for CSV bundles); stdout if omitted");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_val("json");
  cmd->add_flag("--skip-invalid", o.skip_invalid,
                "Count and skip invalid rows instead of failing");
}

void load_schema_file(CommonOpts& o) {
  if (o.schema_file.empty()) return;
  std::ifstream in(o.schema_file);
  if (!in) throw fairaudit::SchemaError("cannot open schema file: " + o.schema_file);
  json j = json::parse(in);
  auto get = [&](const char* key, std::string& field) {
    if (j.contains(key)) field = j.at(key).get<std::string>();
  };
  get("group", o.schema.group);
  get("score", o.schema.score);
  get("outcome", o.schema.outcome);
  get("charge_degree", o.schema.charge_degree);
  get("priors", o.schema.priors);
  get("id", o.schema.id);
}

fairaudit::ParseResult load_cohort(const CommonOpts& o) {
  load_schema_file(const_cast<CommonOpts&>(o));
  fairaudit::ParseOptions popts;
  popts.strict = !o.skip_invalid;
  fairaudit::ParseResult parsed = fairaudit::parse_dataset_file(o.data, o.schema, popts);
  for (const std::string& diag : parsed.diagnostics) std::cerr << diag << '\n';
  std::set<std::string> groups(o.groups.begin(), o.groups.end());
  parsed.dataset = fairaudit::filter_cohort(parsed.dataset, groups);
  if (parsed.dataset.empty())
    std::cerr << "warning: cohort filter produced an empty dataset\n";
  return parsed;
}

void emit(const std::string& content, const std::string& out) {
  if (out.empty())
    std::cout << content;
  else
    fairaudit::write_file_atomic(out, content);
}

void emit_json(const json& j, const std::string& out) {
  emit(j.dump(2) + "\n", out);
}

AuditParams make_params(const CommonOpts& o, double t_low = 0.0, double t_high = 1.0) {
  AuditParams p;
  p.dataset_path = o.data;
  p.schema = o.schema;
  p.threshold = o.threshold;
  p.group_b = o.groups.at(0);
  p.group_w = o.groups.at(1);
  p.level = o.confidence;
  p.policy = {t_low, t_high, o.threshold};
  return p;
}

int run_audit(const CommonOpts& o, double t_low, double t_high) {
  const fairaudit::ParseResult parsed = load_cohort(o);
  const fairaudit::AuditBundle bundle = fairaudit::build_audit_bundle(
      parsed.dataset, make_params(o, t_low, t_high), parsed.accepted, parsed.rejected);
  if (o.format == "json") {
    emit_json(fairaudit::to_json(bundle), o.out);
    return 0;
  }
  // CSV bundle: one tidy table per figure plus the rate summary.
  if (o.out.empty())
    throw fairaudit::ConfigError("--format csv requires --out DIRECTORY for audit");
  std::filesystem::create_directories(o.out);
  auto write_table = [&](const std::string& name, const std::vector<fairaudit::TableRow>& rows) {
    std::ostringstream os;
    fairaudit::write_table_csv(rows, os);
    fairaudit::write_file_atomic(o.out + "/" + name, os.str());
  };
  write_table("figure1.csv", fairaudit::figure1_table(bundle.curve_b, bundle.curve_w));
  write_table("figure2.csv", fairaudit::figure2_table(bundle.strata));
  write_table("figure3.csv", fairaudit::figure3_table(bundle.hist_b, bundle.hist_w));
  std::ostringstream rates;
  rates << "group,n,prevalence,ppv,npv,fpr,fnr\n";
  for (const auto* gr : {&bundle.rates_b, &bundle.rates_w}) {
    rates << (gr == &bundle.rates_b ? bundle.params.group_b : bundle.params.group_w) << ','
          << gr->n << ',' << fairaudit::round_sig(gr->prevalence);
    for (const fairaudit::RateEstimate* r : {&gr->ppv, &gr->npv, &gr->fpr, &gr->fnr}) {
      rates << ',';
      if (r->defined()) rates << fairaudit::round_sig(*r->value);
    }
    rates << '\n';
  }
  fairaudit::write_file_atomic(o.out + "/rates.csv", rates.str());
  return 0;
}

int run_calibration(const CommonOpts& o) {
  const fairaudit::ParseResult parsed = load_cohort(o);
  const auto curve_b =
      fairaudit::calibration_curve(parsed.dataset, o.groups.at(0), o.confidence);
  const auto curve_w =
      fairaudit::calibration_curve(parsed.dataset, o.groups.at(1), o.confidence);
  if (o.format == "csv") {
    std::ostringstream os;
    fairaudit::write_table_csv(fairaudit::figure1_table(curve_b, curve_w), os);
    emit(os.str(), o.out);
    return 0;
  }
  json j;
  j["group_b"] = fairaudit::to_json(curve_b);
  j["group_w"] = fairaudit::to_json(curve_w);
  j["report"] = fairaudit::to_json(fairaudit::test_fairness_report(curve_b, curve_w));
  emit_json(j, o.out);
  return 0;
}

int run_impact(const CommonOpts& o, double t_low, double t_high, int y1, int y2) {
  const fairaudit::ParseResult parsed = load_cohort(o);
  const fairaudit::PenaltyPolicy policy{t_low, t_high, o.threshold};
  const auto report = fairaudit::delta_general(parsed.dataset, policy, y1, y2,
                                               o.groups.at(0), o.groups.at(1));
  const auto rates_b = fairaudit::rates_from_matrix(
      fairaudit::confusion_matrix(fairaudit::slice(parsed.dataset, o.groups.at(0), -1),
                                  o.threshold),
      o.confidence);
  const auto rates_w = fairaudit::rates_from_matrix(
      fairaudit::confusion_matrix(fairaudit::slice(parsed.dataset, o.groups.at(1), -1),
                                  o.threshold),
      o.confidence);
  json j;
  j["delta_general"] = json{{"delta", fairaudit::round_sig(report.delta)},
                            {"hr_prob_b", fairaudit::round_sig(report.hr_prob_b)},
                            {"hr_prob_w", fairaudit::round_sig(report.hr_prob_w)},
                            {"y1", y1},
                            {"y2", y2}};
  j["corollary_nonrecid"] =
      fairaudit::round_sig(fairaudit::delta_nonrecidivators(rates_b, rates_w, policy));
  j["corollary_recid"] =
      fairaudit::round_sig(fairaudit::delta_recidivators(rates_b, rates_w, policy));
  try {
    j["incarceration_ratio"] =
        fairaudit::round_sig(fairaudit::incarceration_ratio(rates_b, rates_w));
  } catch (const fairaudit::DomainError& e) {
    j["incarceration_ratio_reason"] = e.what();
  }
  emit_json(j, o.out);
  return 0;
}

int run_figures(const CommonOpts& o, int figure) {
  const fairaudit::ParseResult parsed = load_cohort(o);
  std::vector<fairaudit::TableRow> rows;
  switch (figure) {
    case 1:
      rows = fairaudit::figure1_table(
          fairaudit::calibration_curve(parsed.dataset, o.groups.at(0), o.confidence),
          fairaudit::calibration_curve(parsed.dataset, o.groups.at(1), o.confidence));
      break;
    case 2:
      rows = fairaudit::figure2_table(fairaudit::stratified_fpr(
          parsed.dataset, fairaudit::ChargeDegree::Misdemeanor,
          fairaudit::default_prior_bins(), o.threshold, o.confidence));
      break;
    case 3:
      rows = fairaudit::figure3_table(
          fairaudit::score_histogram(parsed.dataset, o.groups.at(0), std::nullopt),
          fairaudit::score_histogram(parsed.dataset, o.groups.at(1), std::nullopt));
      break;
    default:
      throw CLI::ValidationError("--figure must be 1, 2 or 3");
  }
  if (o.format == "csv") {
    std::ostringstream os;
    fairaudit::write_table_csv(rows, os);
    emit(os.str(), o.out);
  } else {
    emit_json(fairaudit::table_to_json(rows), o.out);
  }
  return 0;
}

int run_identity_check(const CommonOpts& o) {
  const fairaudit::ParseResult parsed = load_cohort(o);
  json rows = json::array();
  double max_diff = 0.0;
  for (const std::string& group : o.groups) {
    const fairaudit::Dataset gslice = fairaudit::slice(parsed.dataset, group, -1);
    for (int t = 0; t <= 10; ++t) {
      const auto rates = fairaudit::rates_from_matrix(
          fairaudit::confusion_matrix(gslice, t), o.confidence);
      json row;
      row["group"] = group;
      row["threshold"] = t;
      const bool applicable = rates.fpr.defined() && rates.fnr.defined() &&
                              rates.ppv.defined() && rates.prevalence > 0 &&
                              rates.prevalence < 1 && *rates.ppv.value > 0 &&
                              *rates.ppv.value < 1;
      row["applicable"] = applicable;
      if (applicable) {
        const double direct = *rates.fpr.value;
        const double implied = fairaudit::fpr_from_identity(
            rates.prevalence, *rates.ppv.value, *rates.fnr.value);
        row["fpr_direct"] = fairaudit::round_sig(direct);
        row["fpr_identity"] = fairaudit::round_sig(implied);
        row["abs_diff"] = std::abs(direct - implied);
        max_diff = std::max(max_diff, std::abs(direct - implied));
      }
      rows.push_back(row);
    }
  }
  json j;
  j["rows"] = rows;
  j["max_abs_diff"] = max_diff;
  j["closure_holds"] = max_diff <= 1e-12;

  // Impossibility demonstration: with the observed group prevalences and a
  // shared PPV, the implied FPRs cannot agree at any FNR below 1.
  const auto rates_b = fairaudit::rates_from_matrix(
      fairaudit::confusion_matrix(fairaudit::slice(parsed.dataset, o.groups.at(0), -1),
                                  o.threshold),
      o.confidence);
  const auto rates_w = fairaudit::rates_from_matrix(
      fairaudit::confusion_matrix(fairaudit::slice(parsed.dataset, o.groups.at(1), -1),
                                  o.threshold),
      o.confidence);
  const auto pooled = fairaudit::rates_from_matrix(
      fairaudit::confusion_matrix(parsed.dataset, o.threshold), o.confidence);
  if (pooled.ppv.defined() && *pooled.ppv.value > 0 && *pooled.ppv.value < 1 &&
      rates_b.prevalence > 0 && rates_b.prevalence < 1 && rates_w.prevalence > 0 &&
      rates_w.prevalence < 1) {
    json frontier;
    frontier["p_b"] = fairaudit::round_sig(rates_b.prevalence);
    frontier["p_w"] = fairaudit::round_sig(rates_w.prevalence);
    frontier["shared_ppv"] = fairaudit::round_sig(*pooled.ppv.value);
    frontier["rows"] = fairaudit::to_json(fairaudit::impossibility_frontier(
        rates_b.prevalence, rates_w.prevalence, *pooled.ppv.value,
        fairaudit::default_fnr_grid()));
    j["frontier"] = frontier;
  }
  emit_json(j, o.out);
  return 0;
}

fairaudit::SimConfig read_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fairaudit::ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw fairaudit::ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  fairaudit::SimConfig cfg;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) {
      try {
        field = j.at(key).get<std::decay_t<decltype(field)>>();
      } catch (const json::exception&) {
        throw fairaudit::ConfigError(std::string("config field '") + key +
                                     "': wrong type");
      }
    }
  };
  get("group_b", cfg.group_b);
  get("group_w", cfg.group_w);
  get("n_b", cfg.n_b);
  get("n_w", cfg.n_w);
  get("p_b", cfg.p_b);
  get("p_w", cfg.p_w);
  get("seed", cfg.seed);
  if (j.contains("q")) {
    auto q = j.at("q").get<std::vector<double>>();
    if (q.size() != 10)
      throw fairaudit::ConfigError("config field 'q': expected 10 per-decile values");
    std::copy(q.begin(), q.end(), cfg.q.begin());
  }
  return cfg;
}

int run_simulate(const std::string& config_path, std::uint64_t seed, bool seed_set,
                 int reps, double t_low, double t_high, int threshold, int y1, int y2,
                 const std::string& export_path, const std::string& out) {
  fairaudit::SimConfig cfg;
  if (!config_path.empty()) cfg = read_sim_config(config_path);
  if (seed_set) cfg.seed = seed;
  cfg.validate();
  const fairaudit::PenaltyPolicy policy{t_low, t_high, threshold};
  const auto mc = fairaudit::monte_carlo_delta(cfg, policy, y1, y2, reps);
  const double analytic = fairaudit::analytic_delta(cfg, policy, y1, y2);

  json j;
  j["config"] = json{{"group_b", cfg.group_b}, {"group_w", cfg.group_w},
                     {"n_b", cfg.n_b},         {"n_w", cfg.n_w},
                     {"p_b", cfg.p_b},         {"p_w", cfg.p_w},
                     {"seed", cfg.seed}};
  j["policy"] = json{{"t_low", t_low}, {"t_high", t_high}, {"threshold", threshold}};
  j["y1"] = y1;
  j["y2"] = y2;
  j["reps"] = reps;
  j["delta_mean"] = fairaudit::round_sig(mc.mean);
  j["delta_se"] = fairaudit::round_sig(mc.se);
  j["delta_analytic"] = fairaudit::round_sig(analytic);
  j["within_3se"] = std::abs(mc.mean - analytic) <= 3 * mc.se + 1e-15;

  // Error-rate gap of one generated population, against the Eq-4 prediction.
  const fairaudit::Dataset pop = fairaudit::generate_population(cfg);
  json thresholds = json::array();
  for (int t = 0; t <= 10; ++t) {
    const auto rb = fairaudit::rates_from_matrix(
        fairaudit::confusion_matrix(fairaudit::slice(pop, cfg.group_b, -1), t), 0.95);
    const auto rw = fairaudit::rates_from_matrix(
        fairaudit::confusion_matrix(fairaudit::slice(pop, cfg.group_w, -1), t), 0.95);
    if (!rb.fpr.defined() || !rw.fpr.defined()) continue;
    json row;
    row["threshold"] = t;
    row["fpr_b"] = fairaudit::round_sig(*rb.fpr.value);
    row["fpr_w"] = fairaudit::round_sig(*rw.fpr.value);
    row["gap"] = fairaudit::round_sig(*rb.fpr.value - *rw.fpr.value);
    thresholds.push_back(row);
  }
  j["fpr_gap_by_threshold"] = thresholds;

  if (!export_path.empty()) {
    std::ostringstream os;
    fairaudit::write_csv(pop, os);
    fairaudit::write_file_atomic(export_path, os.str());
    j["exported_dataset"] = export_path;
  }
  emit_json(j, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-score fairness and disparate-impact auditor"};
  app.require_subcommand(1);

  CommonOpts audit_o, calib_o, impact_o, figures_o, identity_o;
  double audit_tlow = 0.0, audit_thigh = 1.0;
  auto* audit = app.add_subcommand("audit", "Run the full audit bundle");
  add_common_flags(audit, audit_o);
  audit->add_option("--t-low", audit_tlow, "Low-risk penalty")->default_val(0.0);
  audit->add_option("--t-high", audit_thigh, "High-risk penalty")->default_val(1.0);

  auto* calib = app.add_subcommand("calibration", "Calibration curves and fairness report");
  add_common_flags(calib, calib_o);

  auto* impact = app.add_subcommand("impact", "MinMax-policy disparate impact");
  add_common_flags(impact, impact_o);
  double t_low = 0.0, t_high = 1.0;
  int y1 = 0, y2 = 0;
  impact->add_option("--t-low", t_low, "Low-risk penalty")->default_val(0.0);
  impact->add_option("--t-high", t_high, "High-risk penalty")->default_val(1.0);
  impact->add_option("--y1", y1, "Outcome conditioning for the audited group")->default_val(0);
  impact->add_option("--y2", y2, "Outcome conditioning for the reference group")->default_val(0);

  auto* figures = app.add_subcommand("figures", "Export figure data tables");
  add_common_flags(figures, figures_o);
  int figure = 0;
  figures->add_option("--figure", figure, "Figure id: 1 calibration, 2 stratified FPR, 3 histograms")
      ->required()
      ->check(CLI::Range(1, 3));

  auto* identity = app.add_subcommand("identity-check", "FPR identity closure sweep");
  add_common_flags(identity, identity_o);

  auto* simulate = app.add_subcommand("simulate", "Synthetic-population Monte Carlo");
  std::string sim_config, sim_export, sim_out;
  std::uint64_t sim_seed = 0;
  int sim_reps = 10, sim_threshold = 4, sim_y1 = 0, sim_y2 = 0;
  double sim_tlow = 0.0, sim_thigh = 1.0;
  simulate->add_option("--config", sim_config, "SimConfig JSON file");
  auto* seed_opt = simulate->add_option("--seed", sim_seed, "Override the config seed");
  simulate->add_option("--reps", sim_reps, "Monte Carlo replicates")->default_val(10);
  simulate->add_option("--threshold", sim_threshold, "High-risk cutoff")->default_val(4);
  simulate->add_option("--t-low", sim_tlow, "Low-risk penalty")->default_val(0.0);
  simulate->add_option("--t-high", sim_thigh, "High-risk penalty")->default_val(1.0);
  simulate->add_option("--y1", sim_y1)->default_val(0);
  simulate->add_option("--y2", sim_y2)->default_val(0);
  simulate->add_option("--export-data", sim_export, "Write one generated population as CSV");
  simulate->add_option("--out", sim_out, "Output file; stdout if omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*audit) return run_audit(audit_o, audit_tlow, audit_thigh);
    if (*calib) return run_calibration(calib_o);
    if (*impact) return run_impact(impact_o, t_low, t_high, y1, y2);
    if (*figures) return run_figures(figures_o, figure);
    if (*identity) return run_identity_check(identity_o);
    if (*simulate)
      return run_simulate(sim_config, sim_seed, seed_opt->count() > 0, sim_reps,
                          sim_tlow, sim_thigh, sim_threshold, sim_y1, sim_y2,
                          sim_export, sim_out);
  } catch (const fairaudit::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const fairaudit::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const fairaudit::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fairaudit::EmptySliceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const fairaudit::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
