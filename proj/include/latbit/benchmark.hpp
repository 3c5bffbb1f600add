#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latbit/metrics.hpp"
#include "latbit/planner.hpp"
#include "latbit/scenario.hpp"

namespace latbit {

enum class PlanMode { lateral, euclidean };

const char* to_string(PlanMode mode);

/// Outcome of one seed of one scenario in one mode.
struct SeedRun {
  std::uint64_t seed = 0;
  bool solved = false;
  double cost = 0.0;
  RmseResult rmse;  // over the scenario's metric segment
  /// RMSE per consecutive segment-length window along the path.
  std::vector<std::pair<std::array<double, 2>, RmseResult>> segment_breakdown;
  double max_lat_dev = 0.0;
  std::size_t batches = 0;
  std::size_t samples = 0;
  double first_solution_ms = -1.0;
  /// (elapsed seconds, best cost) recorded after every batch with a solution.
  std::vector<std::pair<double, double>> cost_vs_time;
  std::optional<PlanSolution> solution;
  std::vector<std::pair<CurvilinearPoint, CurvilinearPoint>> tree;
};

/// Aggregated metrics for one scenario and mode across seeds.
struct MetricsReport {
  std::string scenario;
  PlanMode mode = PlanMode::lateral;
  std::vector<SeedRun> runs;
  std::size_t unsolved = 0;
  double mean_trans_rmse = 0.0;
  double stddev_trans_rmse = 0.0;
  double mean_rot_rmse = 0.0;
  double stddev_rot_rmse = 0.0;
  double mean_max_lat_dev = 0.0;
  double median_first_solution_ms = -1.0;
};

/// Runs the scenario for each seed: plan to the batch/time budget, extract
/// the best solution, map to Euclidean and score against the reference.
/// "euclidean" mode zeroes alpha, so both the edge metric and the informed
/// bound reduce to plain distance. budget_ms_override > 0 replaces the
/// scenario's wall-clock cap.
MetricsReport run_benchmark(const Scenario& scenario, PlanMode mode,
                            std::size_t n_seeds, double budget_ms_override = 0.0);

/// Seeds used for a request of n runs: the scenario's list, extended
/// deterministically when n exceeds it.
std::vector<std::uint64_t> benchmark_seeds(const Scenario& scenario, std::size_t n);

}  // namespace latbit
