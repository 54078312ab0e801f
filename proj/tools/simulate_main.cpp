// Command-line front end: one scenario run or a one-parameter sweep, driven by
// a JSON config, writing CSV / SVG / JSON reports.
//
// Exit codes: 0 success, 1 configuration or usage problem, 2 numerical or
// pipeline failure, 3 acceptance criteria failed under --check.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "biphoton/acceptance.hpp"
#include "biphoton/config.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/report_io.hpp"
#include "biphoton/scenario.hpp"

namespace {

void print_headline(const biphoton::Report& r, std::ostream& os) {
  const biphoton::ScreenStage& s = r.screen;
  os << biphoton::scenario_kind_name(r.kind) << ": law spacing "
     << s.law_metrics.spacing << ", recorded spacing "
     << s.oracle_metrics.spacing << ", recorded visibility "
     << s.oracle_metrics.visibility << ", l2(law vs recorded) "
     << s.law_vs_oracle.l2_err << "\n";
  if (!r.regime.all_ok) {
    for (const biphoton::RegimeCheck& c : r.regime.checks)
      if (!c.ok)
        os << "  regime warning: " << c.name << " = " << c.value << " (" << c.note
           << ")\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entangled photon pair double-slit simulator"};
  std::string config_path;
  std::string scenario_name;
  std::string sweep_text;
  std::string out_dir = "out";
  int jobs = 1;
  bool check = false;

  app.add_option("--config", config_path, "JSON run configuration file");
  app.add_option("--scenario", scenario_name,
                 "override the scenario kind from the config "
                 "(biphoton_coincidence, nonlocal_coincidence, "
                 "conditional_single)");
  app.add_option("--sweep", sweep_text,
                 "sweep one parameter, e.g. sigma=0.1,0.5,1");
  app.add_option("--out", out_dir, "output directory (default: out)");
  app.add_option("--jobs", jobs, "concurrent sweep points")
      ->check(CLI::PositiveNumber);
  app.add_flag("--check", check,
               "run the built-in reproduction criteria and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (check) {
      const int failures = biphoton::run_acceptance(std::cout);
      return failures == 0 ? 0 : 3;
    }
    if (config_path.empty()) {
      std::cerr << "error: --config is required unless --check is given\n";
      return 1;
    }
    std::optional<std::string> scenario_override;
    if (!scenario_name.empty()) scenario_override = scenario_name;
    std::optional<std::string> sweep_override;
    if (!sweep_text.empty()) sweep_override = sweep_text;

    const biphoton::RunConfig rc =
        biphoton::load_run_config(config_path, scenario_override, sweep_override);

    if (rc.sweep) {
      const biphoton::SweepReport sweep =
          biphoton::run_sweep(rc.spec, *rc.sweep, jobs);
      int failed = 0;
      for (const biphoton::SweepPoint& pt : sweep.points) {
        if (pt.report) {
          std::cout << rc.sweep->param << " = " << pt.value << "  ";
          print_headline(*pt.report, std::cout);
        } else {
          std::cout << rc.sweep->param << " = " << pt.value
                    << "  failed: " << pt.error << "\n";
          ++failed;
        }
      }
      for (const auto& path :
           biphoton::write_sweep_files(sweep, out_dir, rc.outputs))
        std::cout << "wrote " << path.string() << "\n";
      if (failed == static_cast<int>(sweep.points.size())) {
        std::cerr << "error: every sweep point failed\n";
        return 2;
      }
    } else {
      const biphoton::Report report = biphoton::run_scenario(rc.spec);
      print_headline(report, std::cout);
      for (const auto& path :
           biphoton::write_report_files(report, out_dir, rc.outputs))
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
  } catch (const biphoton::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.code() == biphoton::ErrorCode::ConfigError ||
            e.code() == biphoton::ErrorCode::SweepError)
               ? 1
               : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
