#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

#ifndef FAIRAUDIT_CLI_PATH
#error "FAIRAUDIT_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path =
      (fs::temp_directory_path() / "fairaudit_cli_test_out.txt").string();
  const std::string cmd =
      std::string(FAIRAUDIT_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  r.out.assign((std::istreambuf_iterator<char>(in)), {});
  return r;
}

// 4-row fixture: per group one high/low scorer with each outcome arrangement.
std::string write_fixture() {
  const std::string path = (fs::temp_directory_path() / "fairaudit_tiny.csv").string();
  std::ofstream out(path);
  out << "id,race,decile_score,two_year_recid,c_charge_degree,priors_count\n"
         "1,b,9,1,F,0\n"
         "2,b,2,0,M,1\n"
         "3,w,9,0,F,2\n"
         "4,w,2,1,M,3\n";
  return path;
}

}  // namespace

TEST_CASE("audit on the tiny fixture matches hand-computed rates") {
  const std::string data = write_fixture();
  const auto r = run_cli("audit --data " + data + " --groups b w");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  // Group b: tp=1 (score 9, y=1), tn=1 (score 2, y=0): perfect classifier.
  CHECK(j["/rates/group_b/prevalence"_json_pointer] == 0.5);
  CHECK(j["/rates/group_b/fpr/value"_json_pointer] == 0.0);
  CHECK(j["/rates/group_b/ppv/value"_json_pointer] == 1.0);
  // Group w: fp=1, fn=1: everything wrong.
  CHECK(j["/rates/group_w/fpr/value"_json_pointer] == 1.0);
  CHECK(j["/rates/group_w/fnr/value"_json_pointer] == 1.0);
  // Non-recidivators: hr_prob_b = 0, hr_prob_w = 1, unit spread.
  CHECK(j["/impact/nonrecidivators/delta"_json_pointer] == -1.0);
  CHECK(j["/metadata/accepted_rows"_json_pointer] == 4);
}

TEST_CASE("missing file exits with the parse/schema code and no output") {
  const auto r = run_cli("audit --data /nonexistent/file.csv");
  CHECK(r.exit_code == 3);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  const std::string data = write_fixture();
  CHECK(run_cli("figures --data " + data + " --figure 9").exit_code == 2);
  CHECK(run_cli("figures --data " + data).exit_code == 2);
}

TEST_CASE("empty slice exits with code 4") {
  const std::string data = write_fixture();
  // Cohort filter removes everything: downstream slices are empty.
  const auto r = run_cli("audit --data " + data + " --groups x y");
  CHECK(r.exit_code == 4);
}

TEST_CASE("audit output is byte-identical across runs") {
  const std::string data = write_fixture();
  const std::string args = "audit --data " + data + " --groups b w";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("figure tables: figure 3 masses sum to 1 per series") {
  const std::string data = write_fixture();
  const auto r = run_cli("figures --data " + data + " --groups b w --figure 3");
  REQUIRE(r.exit_code == 0);
  const auto rows = nlohmann::json::parse(r.out);
  REQUIRE(rows.size() == 20);
  double mass_b = 0, mass_w = 0;
  for (const auto& row : rows)
    (row["series"] == "b" ? mass_b : mass_w) += row["y"].get<double>();
  CHECK(mass_b == doctest::Approx(1.0));
  CHECK(mass_w == doctest::Approx(1.0));
}

TEST_CASE("figure 2 CSV equals the audit bundle's stratified cells") {
  const std::string data = write_fixture();
  const auto fig = run_cli("figures --data " + data + " --groups b w --figure 2 --format csv");
  REQUIRE(fig.exit_code == 0);
  const std::string out_dir = (fs::temp_directory_path() / "fairaudit_csv_bundle").string();
  const auto audit = run_cli("audit --data " + data + " --groups b w --format csv --out " + out_dir);
  REQUIRE(audit.exit_code == 0);
  std::ifstream f2(out_dir + "/figure2.csv");
  std::string bundled((std::istreambuf_iterator<char>(f2)), {});
  CHECK(fig.out == bundled);
}

TEST_CASE("simulate with a fixed seed is byte-identical and config-driven") {
  const std::string cfg_path = (fs::temp_directory_path() / "fairaudit_sim.json").string();
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"n_b": 2000, "n_w": 2000, "p_b": 0.51, "p_w": 0.39, "seed": 9})";
  }
  const std::string args = "simulate --config " + cfg_path + " --reps 3";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["config"]["seed"] == 9);
  // Impossibility: positive FPR gap at every interior threshold.
  for (const auto& row : j["fpr_gap_by_threshold"]) {
    const int t = row["threshold"].get<int>();
    if (t >= 1 && t <= 9) CHECK(row["gap"].get<double>() > 0.0);
  }
}

TEST_CASE("simulate config errors use field-level messages and exit 2") {
  const std::string cfg_path = (fs::temp_directory_path() / "fairaudit_sim_bad.json").string();
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"q": [0.1, 0.2]})";
  }
  CHECK(run_cli("simulate --config " + cfg_path).exit_code == 2);
}

TEST_CASE("identity-check reports closure on the fixture") {
  const std::string data = write_fixture();
  const auto r = run_cli("identity-check --data " + data + " --groups b w");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["closure_holds"] == true);
  CHECK(j["max_abs_diff"].get<double>() <= 1e-12);
}
