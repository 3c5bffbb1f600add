#include "latbit/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace latbit {

namespace {

using nlohmann::json;

[[noreturn]] void fail_field(const std::string& field, const std::string& why) {
  throw std::invalid_argument("scenario field '" + field + "': " + why);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) {
      fail_field(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

double get_number(const json& obj, const std::string& field) {
  if (!obj.contains(field) || !obj[field].is_number()) {
    fail_field(field, "expected a number");
  }
  return obj[field].get<double>();
}

}  // namespace

ReferencePath Scenario::build_path() const {
  return ReferencePath(reference_poses, yaw_weight_a, q_bounds);
}

OccupancyGrid Scenario::build_grid() const {
  OccupancyGrid g(grid.origin, grid.resolution, grid.width, grid.height,
                  grid.inflation_radius);
  for (const Obstacle& obs : obstacles) {
    std::visit([&](const auto& shape) { g.insert(shape); }, obs);
  }
  return g;
}

Scenario scenario_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario parse error: ") + e.what());
  }

  require_keys(doc, "",
               {"name", "yaw_weight_a", "reference_path", "q_bounds", "grid",
                "obstacles", "planner", "seeds", "metric_segment"});

  Scenario s;
  s.name = doc.value("name", std::string("unnamed"));

  if (doc.contains("yaw_weight_a")) {
    s.yaw_weight_a = get_number(doc, "yaw_weight_a");
    if (s.yaw_weight_a < 0.0) {
      fail_field("yaw_weight_a", "must be >= 0");
    }
  }

  if (!doc.contains("reference_path") || !doc["reference_path"].is_array() ||
      doc["reference_path"].size() < 2) {
    fail_field("reference_path", "expected an array of at least 2 [x, y, psi] poses");
  }
  for (const auto& entry : doc["reference_path"]) {
    if (!entry.is_array() || entry.size() != 3) {
      fail_field("reference_path", "each pose must be [x, y, psi]");
    }
    s.reference_poses.emplace_back(entry[0].get<double>(), entry[1].get<double>(),
                                   entry[2].get<double>());
  }

  if (!doc.contains("q_bounds") || !doc["q_bounds"].is_array() || doc["q_bounds"].empty()) {
    fail_field("q_bounds", "expected an array of [q_min, q_max] pairs");
  }
  for (const auto& entry : doc["q_bounds"]) {
    if (!entry.is_array() || entry.size() != 2) {
      fail_field("q_bounds", "each entry must be [q_min, q_max]");
    }
    const QBounds b{entry[0].get<double>(), entry[1].get<double>()};
    if (b.lo > 0.0 || b.hi < 0.0) {
      fail_field("q_bounds", "must satisfy q_min <= 0 <= q_max");
    }
    s.q_bounds.push_back(b);
  }

  if (!doc.contains("grid") || !doc["grid"].is_object()) {
    fail_field("grid", "expected an object");
  }
  {
    const json& g = doc["grid"];
    require_keys(g, "grid", {"origin", "resolution", "width", "height", "inflation_radius"});
    if (!g.contains("origin") || !g["origin"].is_array() || g["origin"].size() != 2) {
      fail_field("grid.origin", "expected [x, y]");
    }
    s.grid.origin = {g["origin"][0].get<double>(), g["origin"][1].get<double>()};
    s.grid.resolution = get_number(g, "resolution");
    if (!(s.grid.resolution > 0.0)) {
      fail_field("grid.resolution", "must be > 0");
    }
    s.grid.width = static_cast<int>(get_number(g, "width"));
    s.grid.height = static_cast<int>(get_number(g, "height"));
    if (s.grid.width < 1 || s.grid.height < 1) {
      fail_field("grid.width/height", "must be >= 1");
    }
    s.grid.inflation_radius = get_number(g, "inflation_radius");
    if (s.grid.inflation_radius < 0.0) {
      fail_field("grid.inflation_radius", "must be >= 0");
    }
  }

  if (doc.contains("obstacles")) {
    if (!doc["obstacles"].is_array()) {
      fail_field("obstacles", "expected an array");
    }
    const double gx0 = s.grid.origin.x;
    const double gy0 = s.grid.origin.y;
    const double gx1 = gx0 + s.grid.width * s.grid.resolution;
    const double gy1 = gy0 + s.grid.height * s.grid.resolution;
    std::size_t index = 0;
    for (const auto& entry : doc["obstacles"]) {
      const std::string where = "obstacles[" + std::to_string(index) + "]";
      if (!entry.is_object() || !entry.contains("type")) {
        fail_field(where, "expected an object with a 'type'");
      }
      const std::string type = entry["type"].get<std::string>();
      if (type == "circle") {
        require_keys(entry, where, {"type", "center", "radius"});
        if (!entry.contains("center") || entry["center"].size() != 2) {
          fail_field(where + ".center", "expected [x, y]");
        }
        Circle c;
        c.center = {entry["center"][0].get<double>(), entry["center"][1].get<double>()};
        c.radius = get_number(entry, "radius");
        if (!(c.radius > 0.0)) {
          fail_field(where + ".radius", "must be > 0");
        }
        if (c.center.x + c.radius < gx0 || c.center.x - c.radius > gx1 ||
            c.center.y + c.radius < gy0 || c.center.y - c.radius > gy1) {
          s.warnings.push_back(where + ": circle lies outside the grid bounds");
        }
        s.obstacles.emplace_back(c);
      } else if (type == "box") {
        require_keys(entry, where, {"type", "min", "max"});
        AxisBox b;
        b.min = {entry["min"][0].get<double>(), entry["min"][1].get<double>()};
        b.max = {entry["max"][0].get<double>(), entry["max"][1].get<double>()};
        if (b.min.x > b.max.x || b.min.y > b.max.y) {
          fail_field(where, "box min must not exceed max");
        }
        if (b.max.x < gx0 || b.min.x > gx1 || b.max.y < gy0 || b.min.y > gy1) {
          s.warnings.push_back(where + ": box lies outside the grid bounds");
        }
        s.obstacles.emplace_back(b);
      } else {
        fail_field(where + ".type", "unknown obstacle type '" + type + "'");
      }
      ++index;
    }
  }

  if (doc.contains("planner")) {
    const json& p = doc["planner"];
    require_keys(p, "planner",
                 {"alpha", "samples_per_batch", "rgg_eta", "collision_step",
                  "max_batches", "max_time_s", "rng_seed", "use_pruning",
                  "use_informed_rejection"});
    if (p.contains("alpha")) {
      s.planner.alpha = get_number(p, "alpha");
      if (s.planner.alpha < 0.0) {
        fail_field("planner.alpha", "must be >= 0");
      }
    }
    if (p.contains("samples_per_batch")) {
      s.planner.samples_per_batch = p["samples_per_batch"].get<std::size_t>();
      if (s.planner.samples_per_batch < 1) {
        fail_field("planner.samples_per_batch", "must be >= 1");
      }
    }
    if (p.contains("rgg_eta")) {
      s.planner.rgg_eta = get_number(p, "rgg_eta");
      if (s.planner.rgg_eta < 1.0) {
        fail_field("planner.rgg_eta", "must be >= 1");
      }
    }
    if (p.contains("collision_step")) {
      s.planner.collision_step = get_number(p, "collision_step");
      if (!(s.planner.collision_step > 0.0)) {
        fail_field("planner.collision_step", "must be > 0");
      }
    }
    if (p.contains("max_batches")) {
      s.planner.max_batches = p["max_batches"].get<std::size_t>();
    }
    if (p.contains("max_time_s")) {
      s.planner.max_time_s = get_number(p, "max_time_s");
    }
    if (p.contains("rng_seed")) {
      s.planner.rng_seed = p["rng_seed"].get<std::uint64_t>();
    }
    if (p.contains("use_pruning")) {
      s.planner.use_pruning = p["use_pruning"].get<bool>();
    }
    if (p.contains("use_informed_rejection")) {
      s.planner.use_informed_rejection = p["use_informed_rejection"].get<bool>();
    }
  }

  if (doc.contains("seeds")) {
    if (!doc["seeds"].is_array() || doc["seeds"].empty()) {
      fail_field("seeds", "expected a non-empty array");
    }
    for (const auto& entry : doc["seeds"]) {
      s.seeds.push_back(entry.get<std::uint64_t>());
    }
  } else {
    s.seeds = {1, 2, 3, 4, 5};
  }

  // Validate the path before the segment default needs its length.
  const ReferencePath path = s.build_path();

  if (doc.contains("metric_segment")) {
    if (!doc["metric_segment"].is_array() || doc["metric_segment"].size() != 2) {
      fail_field("metric_segment", "expected [p_lo, p_hi]");
    }
    s.metric_segment = {doc["metric_segment"][0].get<double>(),
                        doc["metric_segment"][1].get<double>()};
    if (!(s.metric_segment[1] > s.metric_segment[0]) || s.metric_segment[0] < 0.0 ||
        s.metric_segment[1] > path.length() + 1e-9) {
      fail_field("metric_segment", "must satisfy 0 <= p_lo < p_hi <= path length");
    }
  } else {
    s.metric_segment = {0.0, std::min(15.0, path.length())};
  }

  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::invalid_argument("cannot open scenario file: " + file.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return scenario_from_json_text(buffer.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(file.string() + ": " + e.what());
  }
}

std::string scenario_to_json_text(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["yaw_weight_a"] = s.yaw_weight_a;
  json poses = json::array();
  for (const Pose& p : s.reference_poses) {
    poses.push_back({p.x, p.y, p.psi});
  }
  doc["reference_path"] = poses;
  json bounds = json::array();
  for (const QBounds& b : s.q_bounds) {
    bounds.push_back({b.lo, b.hi});
  }
  doc["q_bounds"] = bounds;
  doc["grid"] = {{"origin", {s.grid.origin.x, s.grid.origin.y}},
                 {"resolution", s.grid.resolution},
                 {"width", s.grid.width},
                 {"height", s.grid.height},
                 {"inflation_radius", s.grid.inflation_radius}};
  json obstacles = json::array();
  for (const Obstacle& obs : s.obstacles) {
    if (const Circle* c = std::get_if<Circle>(&obs)) {
      obstacles.push_back(
          {{"type", "circle"}, {"center", {c->center.x, c->center.y}}, {"radius", c->radius}});
    } else {
      const AxisBox& b = std::get<AxisBox>(obs);
      obstacles.push_back(
          {{"type", "box"}, {"min", {b.min.x, b.min.y}}, {"max", {b.max.x, b.max.y}}});
    }
  }
  doc["obstacles"] = obstacles;
  doc["planner"] = {{"alpha", s.planner.alpha},
                    {"samples_per_batch", s.planner.samples_per_batch},
                    {"rgg_eta", s.planner.rgg_eta},
                    {"collision_step", s.planner.collision_step},
                    {"max_batches", s.planner.max_batches},
                    {"max_time_s", s.planner.max_time_s},
                    {"rng_seed", s.planner.rng_seed},
                    {"use_pruning", s.planner.use_pruning},
                    {"use_informed_rejection", s.planner.use_informed_rejection}};
  doc["seeds"] = s.seeds;
  doc["metric_segment"] = {s.metric_segment[0], s.metric_segment[1]};
  return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write scenario file: " + file.string());
  }
  out << scenario_to_json_text(s);
}

}  // namespace latbit
