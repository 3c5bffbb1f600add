#pragma once

#include <filesystem>
#include <vector>

#include "latbit/scenario.hpp"

namespace latbit {

/// The shipped simulation benchmark: ten straight-line 15 m problems with
/// seeded obstacle layouts (1-3 circles intersecting the path).
std::vector<Scenario> make_straight_suite();
Scenario make_straight_scenario(int index);

/// Obstacle-free straight scenario; the converged solution must sit on the
/// reference path.
Scenario make_clear_scenario();

/// Curved, self-crossing reference (lead-in, full loop, exit) with several
/// obstacles; exercises planning across the revisited region.
Scenario make_curve_cross_scenario();

/// Writes the straight suite into dir/suite/ and the two extra scenarios
/// into dir/. Returns the list of files written.
std::vector<std::filesystem::path> write_suite(const std::filesystem::path& dir);

}  // namespace latbit
