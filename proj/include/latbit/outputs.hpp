#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "latbit/benchmark.hpp"
#include "latbit/scenario.hpp"

namespace latbit {

/// Fixed-format double for CSV/SVG output: locale-independent, '.' decimal.
std::string format_double(double v);

/// results.csv: one row per seed per mode. Deterministic for a fixed
/// scenario + seed + config (no wall-clock columns).
void write_results_csv(const std::filesystem::path& file,
                       const std::vector<MetricsReport>& reports);

/// cost_vs_time.csv: per-batch anytime cost trace, plus first-solution times.
void write_cost_vs_time_csv(const std::filesystem::path& file,
                            const std::vector<MetricsReport>& reports);

/// Two-panel SVG: the curvilinear planning space (corridor, occupied
/// region, tree, solution) above the Euclidean frame (reference path,
/// obstacles, solution). Uses the first solved run of the report.
void write_scenario_svg(const std::filesystem::path& file, const Scenario& scenario,
                        const MetricsReport& report);

/// Table-1 style summary: per-scenario trans/rot RMSE for both modes plus a
/// mean row. Expects reports paired per scenario (lateral, euclidean).
void write_summary_csv(const std::filesystem::path& file,
                       const std::vector<MetricsReport>& reports);
std::string render_summary_table(const std::vector<MetricsReport>& reports);

}  // namespace latbit
