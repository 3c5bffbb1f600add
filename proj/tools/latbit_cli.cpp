#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latbit/benchmark.hpp"
#include "latbit/outputs.hpp"
#include "latbit/scenario.hpp"
#include "latbit/suite.hpp"

namespace fs = std::filesystem;
using namespace latbit;

namespace {

// Exit codes: 0 success, 2 any unsolved seed, 1 error.
constexpr int kExitUnsolved = 2;

fs::path resolve_out_dir(const std::string& cli_value) {
  if (const char* env = std::getenv("LATBIT_OUT_DIR")) {
    return fs::path(env);
  }
  return fs::path(cli_value);
}

int emit_and_report(const fs::path& out_dir, const std::vector<Scenario>& scenarios,
                    const std::vector<MetricsReport>& reports) {
  fs::create_directories(out_dir);
  write_results_csv(out_dir / "results.csv", reports);
  write_cost_vs_time_csv(out_dir / "cost_vs_time.csv", reports);
  for (const MetricsReport& report : reports) {
    for (const Scenario& scenario : scenarios) {
      if (scenario.name == report.scenario) {
        write_scenario_svg(out_dir / (report.scenario + "_" +
                                      std::string(to_string(report.mode)) + ".svg"),
                           scenario, report);
        break;
      }
    }
  }

  std::size_t unsolved = 0;
  std::vector<double> first_ms;
  for (const MetricsReport& report : reports) {
    unsolved += report.unsolved;
    for (const SeedRun& run : report.runs) {
      if (run.first_solution_ms >= 0.0) {
        first_ms.push_back(run.first_solution_ms);
      }
    }
  }
  if (!first_ms.empty()) {
    std::sort(first_ms.begin(), first_ms.end());
    std::cout << "median first-solution time: " << format_double(first_ms[first_ms.size() / 2])
              << " ms\n";
  }
  std::cout << "outputs written to " << out_dir.string() << "\n";
  if (unsolved > 0) {
    std::cerr << unsolved << " seed(s) unsolved\n";
    return kExitUnsolved;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lateral BIT*: path-following planner benchmarks in curvilinear space"};
  app.require_subcommand(1);

  std::string scenario_file;
  std::string suite_dir;
  std::string mode_str = "lateral";
  std::size_t n_seeds = 5;
  double budget_ms = 0.0;
  std::string out_dir_str = "out";
  std::string gen_dir = "scenarios";

  CLI::App* plan = app.add_subcommand("plan", "run one scenario");
  plan->add_option("scenario", scenario_file, "scenario JSON file")->required();
  plan->add_option("--mode", mode_str, "lateral|euclidean")
      ->check(CLI::IsMember({"lateral", "euclidean"}));
  plan->add_option("--seeds", n_seeds, "number of seeds");
  plan->add_option("--budget-ms", budget_ms, "wall-clock budget per seed");
  plan->add_option("--out", out_dir_str, "output directory (env LATBIT_OUT_DIR overrides)");

  CLI::App* bench = app.add_subcommand("bench", "run every scenario in a directory, both modes");
  bench->add_option("suite", suite_dir, "directory of scenario JSON files")->required();
  bench->add_option("--seeds", n_seeds, "number of seeds per scenario");
  bench->add_option("--budget-ms", budget_ms, "wall-clock budget per seed");
  bench->add_option("--out", out_dir_str, "output directory (env LATBIT_OUT_DIR overrides)");

  CLI::App* gen = app.add_subcommand("gen-suite", "regenerate the shipped scenario files");
  gen->add_option("dir", gen_dir, "destination directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) {
      const Scenario scenario = load_scenario(scenario_file);
      for (const std::string& w : scenario.warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      const PlanMode mode =
          mode_str == "euclidean" ? PlanMode::euclidean : PlanMode::lateral;
      std::vector<MetricsReport> reports{run_benchmark(scenario, mode, n_seeds, budget_ms)};
      const MetricsReport& r = reports.front();
      std::cout << scenario.name << " [" << to_string(mode) << "] trans RMSE "
                << format_double(r.mean_trans_rmse) << " m, rot RMSE "
                << format_double(r.mean_rot_rmse) << " rad, max lateral deviation "
                << format_double(r.mean_max_lat_dev) << " m\n";
      return emit_and_report(resolve_out_dir(out_dir_str), {scenario}, reports);
    }

    if (bench->parsed()) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(suite_dir)) {
        if (entry.path().extension() == ".json") {
          files.push_back(entry.path());
        }
      }
      std::sort(files.begin(), files.end());
      if (files.empty()) {
        std::cerr << "no scenario files in " << suite_dir << "\n";
        return 1;
      }
      std::vector<Scenario> scenarios;
      std::vector<MetricsReport> reports;
      for (const fs::path& file : files) {
        Scenario scenario = load_scenario(file);
        for (const std::string& w : scenario.warnings) {
          std::cerr << "warning: " << w << "\n";
        }
        for (PlanMode mode : {PlanMode::lateral, PlanMode::euclidean}) {
          reports.push_back(run_benchmark(scenario, mode, n_seeds, budget_ms));
        }
        scenarios.push_back(std::move(scenario));
      }
      std::cout << render_summary_table(reports);
      const fs::path out_dir = resolve_out_dir(out_dir_str);
      const int rc = emit_and_report(out_dir, scenarios, reports);
      write_summary_csv(out_dir / "summary.csv", reports);
      return rc;
    }

    if (gen->parsed()) {
      for (const fs::path& file : write_suite(gen_dir)) {
        std::cout << "wrote " << file.string() << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
