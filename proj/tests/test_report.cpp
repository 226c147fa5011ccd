#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fairaudit/report.hpp"
#include "fairaudit/simulate.hpp"
#include "schema_check.hpp"
#include "test_util.hpp"

using namespace fairaudit;

#ifndef FAIRAUDIT_SOURCE_DIR
#define FAIRAUDIT_SOURCE_DIR "."
#endif

namespace {

Dataset bundle_fixture() {
  SimConfig cfg;
  cfg.group_b = "African-American";
  cfg.group_w = "Caucasian";
  cfg.n_b = cfg.n_w = 3000;
  cfg.seed = 404;
  Dataset d = generate_population(cfg);
  // Give the strata something to chew on.
  SplitMix64 rng(405);
  for (auto& r : d.records) {
    r.charge_degree = rng.uniform() < 0.5 ? ChargeDegree::Felony : ChargeDegree::Misdemeanor;
    r.priors = static_cast<int>(rng.next() % 15);
  }
  return d;
}

}  // namespace

TEST_CASE("round_sig keeps 9 significant digits") {
  CHECK(round_sig(0.123456789123) == 0.123456789);
  CHECK(round_sig(123456789123.0) == 123456789000.0);
  CHECK(round_sig(0.0) == 0.0);
  CHECK(round_sig(-0.123456789123) == -0.123456789);
  CHECK(round_sig(1.0 / 3.0, 3) == 0.333);
}

TEST_CASE("audit bundle serializes against the published schema") {
  const Dataset d = bundle_fixture();
  AuditParams params;
  params.group_b = "African-American";
  params.group_w = "Caucasian";
  const AuditBundle bundle = build_audit_bundle(d, params, d.size(), 0);
  const auto j = to_json(bundle);

  std::ifstream schema_in(std::string(FAIRAUDIT_SOURCE_DIR) +
                          "/schema/audit_bundle.schema.json");
  REQUIRE(schema_in.good());
  const auto schema = nlohmann::json::parse(schema_in);
  const auto errors = schemacheck::validate(nlohmann::json::parse(j.dump()), schema);
  for (const auto& e : errors) MESSAGE(e);
  CHECK(errors.empty());
}

TEST_CASE("bundle invariants: delta decomposition and corollary match") {
  const Dataset d = bundle_fixture();
  AuditParams params;
  params.group_b = "African-American";
  params.group_w = "Caucasian";
  const AuditBundle b = build_audit_bundle(d, params, d.size(), 0);
  CHECK(b.impact_nonrecid.delta ==
        doctest::Approx(b.params.policy.spread() *
                        (b.impact_nonrecid.hr_prob_b - b.impact_nonrecid.hr_prob_w))
            .epsilon(1e-15));
  CHECK(std::abs(b.corollary_nonrecid - b.impact_nonrecid.delta) <= 1e-12);
  CHECK(std::abs(b.corollary_recid - b.impact_recid.delta) <= 1e-12);
  CHECK(b.effect_y0.bound_holds);
  CHECK(b.effect_y1.bound_holds);
}

TEST_CASE("figure tables have the contracted shapes") {
  const Dataset d = bundle_fixture();
  AuditParams params;
  params.group_b = "African-American";
  params.group_w = "Caucasian";
  const AuditBundle b = build_audit_bundle(d, params, d.size(), 0);

  const auto fig1 = figure1_table(b.curve_b, b.curve_w);
  CHECK(fig1.size() == b.curve_b.points.size() + b.curve_w.points.size());
  CHECK(fig1.size() <= 20);

  const auto fig3 = figure3_table(b.hist_b, b.hist_w);
  REQUIRE(fig3.size() == 20);
  double mass_b = 0, mass_w = 0;
  for (const auto& row : fig3)
    (row.series == b.hist_b.group ? mass_b : mass_w) += *row.y;
  CHECK(mass_b == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mass_w == doctest::Approx(1.0).epsilon(1e-9));

  const auto fig2 = figure2_table(b.strata);
  CHECK(fig2.size() == b.strata.cells.size());

  std::ostringstream csv;
  write_table_csv(fig1, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "series,x,y,ci_low,ci_high,n");
}

TEST_CASE("serialization is deterministic") {
  const Dataset d = bundle_fixture();
  AuditParams params;
  params.group_b = "African-American";
  params.group_w = "Caucasian";
  const auto a = to_json(build_audit_bundle(d, params, d.size(), 0)).dump(2);
  const auto b = to_json(build_audit_bundle(d, params, d.size(), 0)).dump(2);
  CHECK(a == b);
}

TEST_CASE("atomic write replaces the target completely") {
  const std::string path = "test_atomic_out.json";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), {});
  CHECK(content == "second");
  std::remove(path.c_str());
}
