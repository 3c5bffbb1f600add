#include "latbit/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace latbit {

namespace {

Scenario straight_base(const std::string& name) {
  Scenario s;
  s.name = name;
  s.yaw_weight_a = 0.1;
  for (int i = 0; i <= 15; ++i) {
    s.reference_poses.emplace_back(static_cast<double>(i), 0.0, 0.0);
  }
  s.q_bounds = {{-2.0, 2.0}};
  s.grid = {{-1.0, -2.5}, 0.1, 170, 50, 0.3};
  s.planner = {};  // defaults: alpha 0.5, 150/batch, eta 1.1, step 0.2
  s.planner.max_batches = 25;  // enough for converged solutions
  s.seeds = {1, 2, 3, 4, 5};
  s.metric_segment = {0.0, 15.0};
  return s;
}

}  // namespace

Scenario make_straight_scenario(int index) {
  char name[32];
  std::snprintf(name, sizeof(name), "straight_%02d", index);
  Scenario s = straight_base(name);

  // Layouts are frozen by seed. Diameters span 0.4-1.8 m biased toward the
  // small end. Centers sit off the centerline (while still straddling it)
  // so the blocked lateral extent after 0.3 m inflation stays in a band the
  // corridor absorbs with a modest bypass. Three-obstacle layouts alternate
  // sides, which makes the shortest-distance planner weave across the
  // reference while the lateral metric returns to it between obstacles.
  std::mt19937_64 rng(9000 + static_cast<std::uint64_t>(index));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n_obstacles = index <= 4 ? 3 : (index <= 8 ? 2 : 1);

  int side = unit(rng) < 0.5 ? 1 : -1;
  for (int k = 0; k < n_obstacles; ++k) {
    // Scenario 4 carries one large disc so the suite spans the full
    // diameter range; everything else stays small.
    const bool large = index == 4 && k == 2;
    const double diameter = large ? 1.3 + 0.5 * unit(rng) : 0.4 + 0.2 * unit(rng);
    const double radius = 0.5 * diameter;

    // Offset chosen from a target blocked extent on the passing side.
    const double extent = 0.315 + 0.02 * unit(rng);
    const double magnitude = std::min(radius + 0.3 - extent, 0.9 * radius);

    double p_base = 0.0;
    if (n_obstacles == 3) {
      p_base = 3.2 + k * 4.3;  // 3.2, 7.5, 11.8
    } else if (n_obstacles == 2) {
      p_base = 4.5 + k * 6.0;
    } else {
      p_base = 6.5 + 2.0 * unit(rng);
    }
    const double p = p_base + (unit(rng) - 0.5) * (n_obstacles == 3 ? 1.0 : 1.4);
    s.obstacles.emplace_back(Circle{{p, side * magnitude}, radius});
    if (n_obstacles == 3) {
      side = -side;
    }
  }
  return s;
}

std::vector<Scenario> make_straight_suite() {
  std::vector<Scenario> suite;
  for (int i = 1; i <= 10; ++i) {
    suite.push_back(make_straight_scenario(i));
  }
  return suite;
}

Scenario make_clear_scenario() {
  return straight_base("straight_clear");
}

Scenario make_curve_cross_scenario() {
  Scenario s;
  s.name = "curve_cross";
  s.yaw_weight_a = 0.1;

  // Lead-in along the x-axis, one full counter-clockwise loop of radius
  // 1.8 m tangent at (4, 0), then a straight exit. The loop revisits (4, 0),
  // so the Euclidean path crosses itself.
  const double r = 1.8;
  const Vec2 center{4.0, r};
  for (double x = 0.0; x < 4.0 - 1e-9; x += 0.5) {
    s.reference_poses.emplace_back(x, 0.0, 0.0);
  }
  const int loop_steps = 32;
  for (int k = 0; k <= loop_steps; ++k) {
    const double theta =
        -std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * k / loop_steps;
    s.reference_poses.emplace_back(center.x + r * std::cos(theta),
                                   center.y + r * std::sin(theta),
                                   theta + std::numbers::pi / 2.0);
  }
  for (double x = 4.5; x <= 9.0 + 1e-9; x += 0.5) {
    s.reference_poses.emplace_back(x, 0.0, 0.0);
  }

  s.q_bounds = {{-1.2, 1.2}};
  s.grid = {{-1.0, -2.0}, 0.1, 110, 65, 0.3};
  s.planner = {};
  s.planner.max_batches = 15;
  s.seeds = {1, 2, 3, 4, 5};

  s.obstacles = {
      Circle{{2.0, 0.15}, 0.3},   // lead-in
      Circle{{5.85, 1.75}, 0.25}, // loop right
      Circle{{4.1, 3.65}, 0.3},   // loop top
      Circle{{2.15, 1.85}, 0.25}, // loop left
      Circle{{6.5, -0.1}, 0.3},   // exit
      Circle{{8.0, 0.15}, 0.2},   // exit, late
  };

  s.metric_segment = {0.0, 15.0};
  return s;
}

std::vector<std::filesystem::path> write_suite(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  const std::filesystem::path suite_dir = dir / "suite";
  std::filesystem::create_directories(suite_dir);

  for (const Scenario& s : make_straight_suite()) {
    const std::filesystem::path file = suite_dir / (s.name + ".json");
    save_scenario(s, file);
    written.push_back(file);
  }
  for (const Scenario& s : {make_clear_scenario(), make_curve_cross_scenario()}) {
    const std::filesystem::path file = dir / (s.name + ".json");
    save_scenario(s, file);
    written.push_back(file);
  }
  return written;
}

}  // namespace latbit
