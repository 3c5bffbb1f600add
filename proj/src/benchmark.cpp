#include "latbit/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace latbit {

const char* to_string(PlanMode mode) {
  return mode == PlanMode::lateral ? "lateral" : "euclidean";
}

std::vector<std::uint64_t> benchmark_seeds(const Scenario& scenario, std::size_t n) {
  std::vector<std::uint64_t> seeds = scenario.seeds;
  if (seeds.empty()) {
    seeds.push_back(1);
  }
  while (seeds.size() < n) {
    seeds.push_back(seeds.back() + 1);
  }
  seeds.resize(n);
  return seeds;
}

namespace {

void aggregate(MetricsReport& report) {
  std::vector<double> trans, rot, first_ms;
  for (const SeedRun& run : report.runs) {
    if (!run.solved) {
      ++report.unsolved;
      continue;
    }
    trans.push_back(run.rmse.trans_rmse);
    rot.push_back(run.rmse.rot_rmse);
    report.mean_max_lat_dev += run.max_lat_dev;
    if (run.first_solution_ms >= 0.0) {
      first_ms.push_back(run.first_solution_ms);
    }
  }
  if (!trans.empty()) {
    const double n = static_cast<double>(trans.size());
    for (double v : trans) report.mean_trans_rmse += v;
    for (double v : rot) report.mean_rot_rmse += v;
    report.mean_trans_rmse /= n;
    report.mean_rot_rmse /= n;
    report.mean_max_lat_dev /= n;
    for (double v : trans) {
      report.stddev_trans_rmse += (v - report.mean_trans_rmse) * (v - report.mean_trans_rmse);
    }
    for (double v : rot) {
      report.stddev_rot_rmse += (v - report.mean_rot_rmse) * (v - report.mean_rot_rmse);
    }
    report.stddev_trans_rmse = trans.size() > 1 ? std::sqrt(report.stddev_trans_rmse / (n - 1)) : 0.0;
    report.stddev_rot_rmse = rot.size() > 1 ? std::sqrt(report.stddev_rot_rmse / (n - 1)) : 0.0;
  }
  if (!first_ms.empty()) {
    std::sort(first_ms.begin(), first_ms.end());
    report.median_first_solution_ms = first_ms[first_ms.size() / 2];
  }
}

}  // namespace

MetricsReport run_benchmark(const Scenario& scenario, PlanMode mode,
                            std::size_t n_seeds, double budget_ms_override) {
  MetricsReport report;
  report.scenario = scenario.name;
  report.mode = mode;

  const ReferencePath path = scenario.build_path();
  const OccupancyGrid grid = scenario.build_grid();

  PlannerConfig cfg = scenario.planner;
  if (mode == PlanMode::euclidean) {
    cfg.alpha = 0.0;
  }
  double budget_s = cfg.max_time_s;
  if (budget_ms_override > 0.0) {
    budget_s = budget_ms_override / 1000.0;
  }

  const CurvilinearPoint start{0.0, 0.0};
  const CurvilinearPoint goal{path.length(), 0.0};

  for (std::uint64_t seed : benchmark_seeds(scenario, n_seeds)) {
    SeedRun run;
    run.seed = seed;
    cfg.rng_seed = seed;

    Planner planner(path, grid, start, goal, cfg);
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_s = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    for (std::size_t b = 0; b < cfg.max_batches; ++b) {
      const BatchReport batch = planner.run_batch();
      if (planner.has_solution()) {
        if (run.first_solution_ms < 0.0) {
          run.first_solution_ms = elapsed_s() * 1000.0;
        }
        run.cost_vs_time.emplace_back(elapsed_s(), batch.best_cost);
      }
      if (budget_s > 0.0 && elapsed_s() >= budget_s) {
        break;
      }
    }
    run.batches = planner.batches_run();
    run.samples = planner.total_samples();

    if (auto sol = planner.best_solution()) {
      run.solved = true;
      run.cost = sol->cost;
      run.rmse = compute_rmse(sol->euclidean_waypoints, path, scenario.metric_segment[0],
                              scenario.metric_segment[1]);
      // Tile segment-length windows along the path for the breakdown.
      const double window = scenario.metric_segment[1] - scenario.metric_segment[0];
      for (double lo = scenario.metric_segment[0]; lo + window <= path.length() + 1e-9;
           lo += window) {
        const double hi = std::min(lo + window, path.length());
        run.segment_breakdown.emplace_back(
            std::array<double, 2>{lo, hi},
            compute_rmse(sol->euclidean_waypoints, path, lo, hi));
      }
      run.max_lat_dev = max_lateral_deviation(sol->euclidean_waypoints, path);
      run.tree = planner.tree_edges();
      run.solution = std::move(sol);
    }
    report.runs.push_back(std::move(run));
  }

  aggregate(report);
  return report;
}

}  // namespace latbit
