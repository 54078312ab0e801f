#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "biphoton/config.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/report_io.hpp"
#include "biphoton/scenario.hpp"

using namespace biphoton;
namespace fs = std::filesystem;

namespace {

nlohmann::json base_config() {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["scenario"] = "biphoton_coincidence";
  j["params"]["lambda"] = 1.0;
  j["params"]["sigma"] = 0.5;
  j["params"]["omega_big"] = 50.0;
  j["params"]["slit_sep"] = 5.0;
  j["params"]["slit_width"] = 0.2;
  j["params"]["dist_source_slit"] = 100.0;
  j["params"]["dist_slit_screen"] = 1000.0;
  return j;
}

RunConfig parse(const nlohmann::json& j,
                const std::optional<std::string>& scenario_override = std::nullopt,
                const std::optional<std::string>& sweep_override = std::nullopt) {
  return parse_run_config(j.dump(), "test", scenario_override, sweep_override);
}

ErrorCode code_of(const nlohmann::json& j) {
  try {
    (void)parse(j);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ZeroNorm;  // sentinel: "did not throw"
}

// One small pipeline run shared by the file-writing cases.
const Report& sample_report() {
  static const Report rep = [] {
    ScenarioSpec s;
    s.kind = ScenarioKind::BiphotonCoincidence;
    s.params.dist_source_slit = 0.5;
    s.slit_grid = Grid1D::symmetric(3.2, 512);
    s.screen_grid = Grid1D::centered_on_zero(800.0 / 256.0, 256);
    s.beam_diagnostics = false;
    return run_scenario(s);
  }();
  return rep;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream buf;
  buf << is.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("a minimal config fills in every optional piece") {
  const RunConfig rc = parse(base_config());
  CHECK(rc.spec.kind == ScenarioKind::BiphotonCoincidence);
  CHECK(rc.spec.params.sigma == 0.5);
  CHECK(rc.spec.params.scenario == ScenarioGeometry::Colocated);
  CHECK_FALSE(rc.spec.slit_grid.has_value());
  CHECK_FALSE(rc.spec.screen_grid.has_value());
  CHECK(rc.spec.beam_diagnostics);
  CHECK_FALSE(rc.sweep.has_value());
  CHECK(rc.outputs.csv);
  CHECK(rc.outputs.svg);
  CHECK(rc.outputs.report);
}

TEST_CASE("grids, toggles and output selection parse") {
  nlohmann::json j = base_config();
  j["slit_grid"] = {{"half_width", 3.2}, {"n", 512}};
  j["screen_grid"] = {{"half_width", 400.0}, {"n", 512}};
  j["beam_diagnostics"] = false;
  j["outputs"] = {{"csv", false}, {"report", false}};

  const RunConfig rc = parse(j);
  REQUIRE(rc.spec.slit_grid.has_value());
  CHECK(rc.spec.slit_grid->n == 512);
  CHECK(rc.spec.slit_grid->x_max == doctest::Approx(3.2).epsilon(1e-12));
  // The slit grid keeps zero on a cell boundary, the screen grid on a node.
  CHECK(rc.spec.slit_grid->node(256) == doctest::Approx(rc.spec.slit_grid->dx() / 2));
  REQUIRE(rc.spec.screen_grid.has_value());
  CHECK(rc.spec.screen_grid->dx() == doctest::Approx(1.5625).epsilon(1e-12));
  CHECK(rc.spec.screen_grid->node(256) == 0.0);
  CHECK_FALSE(rc.spec.beam_diagnostics);
  CHECK_FALSE(rc.outputs.csv);
  CHECK(rc.outputs.svg);
  CHECK_FALSE(rc.outputs.report);
}

TEST_CASE("scenario override and the detector-geometry cross-check") {
  const RunConfig rc = parse(base_config(), std::string("conditional_single"));
  CHECK(rc.spec.kind == ScenarioKind::ConditionalSingle);
  CHECK(rc.spec.params.scenario == ScenarioGeometry::Colocated);

  nlohmann::json nl = base_config();
  nl["scenario"] = "nonlocal_coincidence";
  nl["params"]["scenario"] = "Nonlocal";
  CHECK(parse(nl).spec.params.scenario == ScenarioGeometry::Nonlocal);

  nlohmann::json clash = base_config();
  clash["params"]["scenario"] = "Nonlocal";
  try {
    (void)parse(clash);
    FAIL("expected the geometry clash to be refused");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(std::string(e.what()).find("contradicts") != std::string::npos);
  }

  nlohmann::json junk = base_config();
  junk["params"]["scenario"] = "Sideways";
  CHECK(code_of(junk) == ErrorCode::ConfigError);
}

TEST_CASE("typos, wrong types and bad values are all config errors") {
  nlohmann::json j = base_config();
  j["scren_grid"] = {{"half_width", 3.2}, {"n", 512}};
  CHECK(code_of(j) == ErrorCode::ConfigError);

  j = base_config();
  j["params"]["sigma_big"] = 1.0;
  CHECK(code_of(j) == ErrorCode::ConfigError);

  j = base_config();
  j["params"].erase("sigma");
  CHECK(code_of(j) == ErrorCode::ConfigError);

  j = base_config();
  j["params"]["sigma"] = "0.5";
  CHECK(code_of(j) == ErrorCode::ConfigError);

  j = base_config();
  j["params"]["sigma"] = -0.5;
  CHECK(code_of(j) == ErrorCode::ConfigError);

  j = base_config();
  j["schema_version"] = 2;
  CHECK(code_of(j) == ErrorCode::ConfigError);

  j = base_config();
  j["slit_grid"] = {{"half_width", 3.2}, {"n", 500}};  // not a power of two
  CHECK(code_of(j) == ErrorCode::ConfigError);

  CHECK_THROWS_AS((void)parse_run_config("{nope", "test", std::nullopt, std::nullopt), Error);
  CHECK_THROWS_AS((void)parse_run_config("[1,2]", "test", std::nullopt, std::nullopt), Error);
  CHECK_THROWS_AS((void)load_run_config("no_such_config.json", std::nullopt, std::nullopt),
                  Error);
}

TEST_CASE("sweeps come from the config or the command line") {
  nlohmann::json j = base_config();
  j["sweep"] = {{"param", "sigma"}, {"values", {1.0, 2.0}}};
  const RunConfig rc = parse(j);
  REQUIRE(rc.sweep.has_value());
  CHECK(rc.sweep->param == "sigma");
  CHECK(rc.sweep->values == std::vector<double>{1.0, 2.0});

  // A command-line sweep wins over the one in the file.
  const RunConfig over = parse(j, std::nullopt, std::string("slit_sep=2,5,10"));
  REQUIRE(over.sweep.has_value());
  CHECK(over.sweep->param == "slit_sep");
  CHECK(over.sweep->values == std::vector<double>{2.0, 5.0, 10.0});

  CHECK_THROWS_AS((void)parse_sweep_option("sigma"), Error);
  CHECK_THROWS_AS((void)parse_sweep_option("=1,2"), Error);
  CHECK_THROWS_AS((void)parse_sweep_option("sigma=1,up"), Error);
  CHECK_THROWS_AS((void)parse_sweep_option("sigma=1,,2"), Error);

  j["sweep"] = {{"param", "sigma"}, {"values", {1.0, "two"}}};
  CHECK(code_of(j) == ErrorCode::ConfigError);
}

TEST_CASE("csv holds both densities against the shared axis") {
  const Report& rep = sample_report();
  const std::string csv = csv_text(rep.screen.law, rep.screen.oracle);
  CHECK(csv.rfind("x,density_analytic,density_numeric\n", 0) == 0);
  const auto rows = static_cast<std::size_t>(
      std::count(csv.begin(), csv.end(), '\n'));
  CHECK(rows == rep.screen.grid.n + 1);

  Pattern other = rep.screen.oracle;
  other.axis = Grid1D::centered_on_zero(1.0, 256);
  CHECK_THROWS_AS((void)csv_text(rep.screen.law, other), Error);
}

TEST_CASE("svg embeds both curves and refuses empty ones") {
  const Report& rep = sample_report();
  const std::string svg = svg_text(rep.screen.law, rep.screen.oracle, "check");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find(rep.screen.oracle.label) != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  Pattern hollow = rep.screen.law;
  hollow.density.assign(hollow.density.size(), 0.0);
  CHECK_THROWS_AS((void)svg_text(hollow, hollow, "empty"), Error);
}

TEST_CASE("the run report serializes every stage") {
  const Report& rep = sample_report();
  const nlohmann::json j = nlohmann::json::parse(report_json_text(rep));
  CHECK(j["schema_version"] == 1);
  CHECK(j["scenario"] == "biphoton_coincidence");
  CHECK(j["params"]["scenario"] == "Colocated");
  CHECK(j["derived"]["pair_fringe_spacing"].get<double>() == doctest::Approx(100.0));
  CHECK(j["beam_diagnostics"].is_null());
  CHECK(j["regime"]["all_ok"].get<bool>());
  CHECK(j["term_weights"]["same_slit"].get<double>() > 0.99);
  CHECK(j["slit_stage"]["case_weights"]["p_same"].get<double>() > 0.0);
  CHECK(j["screen_stage"]["patterns"]["oracle"]["metrics"]["spacing"].get<double>() ==
        doctest::Approx(100.0).epsilon(0.02));
  CHECK(j["screen_stage"]["comparisons"]["law_vs_oracle"]["l2_err"].get<double>() < 0.05);
}

TEST_CASE("report files land in the requested directory") {
  const Report& rep = sample_report();
  const fs::path dir = fs::temp_directory_path() / "biphoton_report_io_test";
  fs::remove_all(dir);

  const auto all = write_report_files(rep, dir, OutputOptions{});
  REQUIRE(all.size() == 3);
  CHECK(all[0].filename() == "biphoton_coincidence.csv");
  CHECK(all[1].filename() == "biphoton_coincidence.svg");
  CHECK(all[2].filename() == "biphoton_coincidence.report.json");
  for (const fs::path& p : all) CHECK(fs::exists(p));
  CHECK(slurp(all[0]) == csv_text(rep.screen.law, rep.screen.oracle));
  // No stray temp files from the atomic-rename dance.
  std::size_t count = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir)) ++count;
  CHECK(count == 3);

  // Rewriting in place replaces content rather than appending.
  const auto again = write_report_files(rep, dir, OutputOptions{});
  CHECK(slurp(again[2]) == report_json_text(rep));

  fs::remove_all(dir);
  OutputOptions only_csv;
  only_csv.svg = false;
  only_csv.report = false;
  const auto one = write_report_files(rep, dir, only_csv);
  REQUIRE(one.size() == 1);
  CHECK(one[0].filename() == "biphoton_coincidence.csv");
  CHECK_FALSE(fs::exists(dir / "biphoton_coincidence.svg"));
  fs::remove_all(dir);
}

TEST_CASE("sweep files keep good points and failures side by side") {
  ScenarioSpec base;
  base.kind = ScenarioKind::BiphotonCoincidence;
  base.params.dist_source_slit = 0.5;
  base.slit_grid = Grid1D::symmetric(3.2, 512);
  base.screen_grid = Grid1D::centered_on_zero(800.0 / 256.0, 256);
  base.beam_diagnostics = false;

  SweepRequest req{"slit_sep", {5.0, -1.0}};
  const SweepReport sweep = run_sweep(base, req, 1);

  const fs::path dir = fs::temp_directory_path() / "biphoton_sweep_io_test";
  fs::remove_all(dir);
  const auto files = write_sweep_files(sweep, dir, OutputOptions{});
  CHECK(fs::exists(dir / "slit_sep_00_5" / "biphoton_coincidence.report.json"));
  CHECK(fs::exists(dir / "slit_sep_01_-1" / "error.json"));
  CHECK(fs::exists(dir / "sweep_summary.json"));
  CHECK(fs::exists(dir / "sweep_summary.csv"));

  const nlohmann::json sj = nlohmann::json::parse(slurp(dir / "sweep_summary.json"));
  CHECK(sj["sweep_param"] == "slit_sep");
  REQUIRE(sj["points"].size() == 2);
  CHECK(sj["points"][0]["ok"].get<bool>());
  CHECK(sj["points"][0]["summary"]["spacing_oracle"].get<double>() ==
        doctest::Approx(100.0).epsilon(0.02));
  CHECK_FALSE(sj["points"][1]["ok"].get<bool>());
  CHECK_FALSE(sj["points"][1]["error"].get<std::string>().empty());

  const std::string table = sweep_summary_csv(sweep);
  CHECK(table.rfind("value,ok,", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);

  (void)files;
  fs::remove_all(dir);
}
