#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "latbit/costmap.hpp"
#include "latbit/planner.hpp"
#include "latbit/reference_path.hpp"
#include "latbit/types.hpp"

namespace latbit {

struct GridSpec {
  Vec2 origin;
  double resolution = 0.1;
  int width = 1;
  int height = 1;
  double inflation_radius = 0.3;
};

using Obstacle = std::variant<Circle, AxisBox>;

/// A benchmark scenario: reference path, corridor bounds, obstacles, grid
/// geometry, planner configuration and the metric segment. Round-trips
/// losslessly through its JSON form; unknown fields are rejected at load.
struct Scenario {
  std::string name;
  double yaw_weight_a = 0.1;
  std::vector<Pose> reference_poses;
  std::vector<QBounds> q_bounds;
  GridSpec grid;
  std::vector<Obstacle> obstacles;
  PlannerConfig planner;
  std::vector<std::uint64_t> seeds;
  std::array<double, 2> metric_segment{0.0, 15.0};

  /// Load-time diagnostics (e.g. an obstacle outside the grid); not serialized.
  std::vector<std::string> warnings;

  ReferencePath build_path() const;
  OccupancyGrid build_grid() const;
};

/// Parses and validates a scenario file. Parse errors carry line info;
/// validation errors name the offending field.
Scenario load_scenario(const std::filesystem::path& file);
Scenario scenario_from_json_text(const std::string& text);

std::string scenario_to_json_text(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& file);

}  // namespace latbit
