#include "latbit/outputs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace latbit {

namespace {

std::ofstream open_or_throw(const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write output file: " + file.string());
  }
  return out;
}

struct Frame {
  double min_x, min_y, max_x, max_y;
  double scale;
  double offset_y;  // svg-space top of this panel

  double sx(double x) const { return (x - min_x) * scale + 10.0; }
  double sy(double y) const { return offset_y + (max_y - y) * scale + 10.0; }
  double w() const { return (max_x - min_x) * scale + 20.0; }
  double h() const { return (max_y - min_y) * scale + 20.0; }
};

void svg_polyline(std::ostream& out, const Frame& f,
                  const std::vector<Vec2>& pts, const std::string& cls) {
  out << "<polyline class=\"" << cls << "\" points=\"";
  for (const Vec2& p : pts) {
    out << format_double(f.sx(p.x)) << "," << format_double(f.sy(p.y)) << " ";
  }
  out << "\"/>\n";
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_results_csv(const std::filesystem::path& file,
                       const std::vector<MetricsReport>& reports) {
  std::ofstream out = open_or_throw(file);
  out << "scenario,mode,seed,solved,cost,trans_rmse,rot_rmse,max_lateral_deviation,"
         "batches,samples\n";
  for (const MetricsReport& report : reports) {
    for (const SeedRun& run : report.runs) {
      out << report.scenario << "," << to_string(report.mode) << "," << run.seed << ","
          << (run.solved ? 1 : 0) << "," << format_double(run.cost) << ","
          << format_double(run.rmse.trans_rmse) << "," << format_double(run.rmse.rot_rmse)
          << "," << format_double(run.max_lat_dev) << "," << run.batches << ","
          << run.samples << "\n";
    }
  }
}

void write_cost_vs_time_csv(const std::filesystem::path& file,
                            const std::vector<MetricsReport>& reports) {
  std::ofstream out = open_or_throw(file);
  out << "scenario,mode,seed,elapsed_ms,best_cost\n";
  for (const MetricsReport& report : reports) {
    for (const SeedRun& run : report.runs) {
      for (const auto& [elapsed_s, cost] : run.cost_vs_time) {
        out << report.scenario << "," << to_string(report.mode) << "," << run.seed << ","
            << format_double(elapsed_s * 1000.0) << "," << format_double(cost) << "\n";
      }
    }
  }
}

void write_scenario_svg(const std::filesystem::path& file, const Scenario& scenario,
                        const MetricsReport& report) {
  const ReferencePath path = scenario.build_path();
  const OccupancyGrid grid = scenario.build_grid();

  const SeedRun* run = nullptr;
  for (const SeedRun& r : report.runs) {
    if (r.solved) {
      run = &r;
      break;
    }
  }

  // Curvilinear frame bounds.
  double q_lo = 0.0, q_hi = 0.0;
  for (const QBounds& b : path.q_bounds()) {
    q_lo = std::min(q_lo, b.lo);
    q_hi = std::max(q_hi, b.hi);
  }
  const double scale = 40.0;
  Frame pq_frame{0.0, q_lo, path.length(), q_hi, scale, 0.0};

  // Euclidean frame bounds from the grid.
  Frame xy_frame{grid.origin().x, grid.origin().y,
                 grid.origin().x + grid.width() * grid.resolution(),
                 grid.origin().y + grid.height() * grid.resolution(), scale,
                 pq_frame.h() + 20.0};

  std::ofstream out = open_or_throw(file);
  const double total_w = std::max(pq_frame.w(), xy_frame.w());
  const double total_h = pq_frame.h() + xy_frame.h() + 20.0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(total_w)
      << "\" height=\"" << format_double(total_h) << "\">\n";
  out << "<style>\n"
         ".corridor{fill:#f4f6f4;stroke:#999;}\n"
         ".occ{fill:#b44;stroke:none;}\n"
         ".tree{stroke:#9ac;stroke-width:0.6;fill:none;}\n"
         ".reference{stroke:#2a2;stroke-width:2;fill:none;}\n"
         ".solution{stroke:#d22;stroke-width:2;fill:none;}\n"
         ".solution-pq{stroke:#d22;stroke-width:2;fill:none;}\n"
         ".obstacle{fill:#733;stroke:none;opacity:0.8;}\n"
         "</style>\n";

  // ---- Curvilinear panel ----
  out << "<g id=\"curvilinear\">\n";
  out << "<rect class=\"corridor\" x=\"" << format_double(pq_frame.sx(0.0)) << "\" y=\""
      << format_double(pq_frame.sy(q_hi)) << "\" width=\""
      << format_double(path.length() * scale) << "\" height=\""
      << format_double((q_hi - q_lo) * scale) << "\"/>\n";

  // Occupied region rasterized through the pq -> xy map.
  const double raster = grid.resolution();
  for (double p = 0.0; p <= path.length(); p += raster) {
    const QBounds b = path.q_bounds_at(p);
    for (double q = b.lo; q <= b.hi; q += raster) {
      const Vec2 xy = path.pq_to_xy({p, q});
      if (grid.is_occupied(xy.x, xy.y)) {
        out << "<rect class=\"occ\" x=\"" << format_double(pq_frame.sx(p)) << "\" y=\""
            << format_double(pq_frame.sy(q)) << "\" width=\""
            << format_double(raster * scale) << "\" height=\""
            << format_double(raster * scale) << "\"/>\n";
      }
    }
  }

  // Reference path is the p-axis.
  svg_polyline(out, pq_frame, {{0.0, 0.0}, {path.length(), 0.0}}, "reference");

  if (run) {
    out << "<g class=\"tree\">\n";
    for (const auto& [a, b] : run->tree) {
      out << "<line x1=\"" << format_double(pq_frame.sx(a.p)) << "\" y1=\""
          << format_double(pq_frame.sy(a.q)) << "\" x2=\"" << format_double(pq_frame.sx(b.p))
          << "\" y2=\"" << format_double(pq_frame.sy(b.q)) << "\"/>\n";
    }
    out << "</g>\n";
    std::vector<Vec2> sol_pq;
    for (const CurvilinearPoint& w : run->solution->waypoints) {
      sol_pq.push_back({w.p, w.q});
    }
    svg_polyline(out, pq_frame, sol_pq, "solution-pq");
  }
  out << "</g>\n";

  // ---- Euclidean panel ----
  out << "<g id=\"euclidean\">\n";
  std::vector<Vec2> ref_xy;
  for (const Pose& p : path.poses()) {
    ref_xy.push_back({p.x, p.y});
  }
  svg_polyline(out, xy_frame, ref_xy, "reference");

  for (const Obstacle& obs : scenario.obstacles) {
    if (const Circle* c = std::get_if<Circle>(&obs)) {
      out << "<circle class=\"obstacle\" cx=\"" << format_double(xy_frame.sx(c->center.x))
          << "\" cy=\"" << format_double(xy_frame.sy(c->center.y)) << "\" r=\""
          << format_double(c->radius * scale) << "\"/>\n";
    } else {
      const AxisBox& b = std::get<AxisBox>(obs);
      out << "<rect class=\"obstacle\" x=\"" << format_double(xy_frame.sx(b.min.x))
          << "\" y=\"" << format_double(xy_frame.sy(b.max.y)) << "\" width=\""
          << format_double((b.max.x - b.min.x) * scale) << "\" height=\""
          << format_double((b.max.y - b.min.y) * scale) << "\"/>\n";
    }
  }

  if (run) {
    svg_polyline(out, xy_frame, run->solution->euclidean_waypoints, "solution");
  }
  out << "</g>\n";
  out << "</svg>\n";
}

void write_summary_csv(const std::filesystem::path& file,
                       const std::vector<MetricsReport>& reports) {
  std::ofstream out = open_or_throw(file);
  out << "scenario,trans_rmse_lateral,trans_rmse_euclidean,rot_rmse_lateral,"
         "rot_rmse_euclidean\n";

  std::map<std::string, std::array<const MetricsReport*, 2>> by_scenario;
  for (const MetricsReport& r : reports) {
    by_scenario[r.scenario][r.mode == PlanMode::lateral ? 0 : 1] = &r;
  }
  double mean[4] = {0, 0, 0, 0};
  std::size_t count = 0;
  for (const auto& [name, pair] : by_scenario) {
    const double values[4] = {pair[0] ? pair[0]->mean_trans_rmse : 0.0,
                              pair[1] ? pair[1]->mean_trans_rmse : 0.0,
                              pair[0] ? pair[0]->mean_rot_rmse : 0.0,
                              pair[1] ? pair[1]->mean_rot_rmse : 0.0};
    out << name;
    for (double v : values) {
      out << "," << format_double(v);
    }
    out << "\n";
    for (int i = 0; i < 4; ++i) {
      mean[i] += values[i];
    }
    ++count;
  }
  if (count > 0) {
    out << "mean";
    for (double m : mean) {
      out << "," << format_double(m / count);
    }
    out << "\n";
  }
}

std::string render_summary_table(const std::vector<MetricsReport>& reports) {
  std::map<std::string, std::array<const MetricsReport*, 2>> by_scenario;
  for (const MetricsReport& r : reports) {
    by_scenario[r.scenario][r.mode == PlanMode::lateral ? 0 : 1] = &r;
  }

  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-18s %14s %14s %14s %14s\n", "scenario",
                "trans[m] lat", "trans[m] euc", "rot[rad] lat", "rot[rad] euc");
  out << line;
  double mean[4] = {0, 0, 0, 0};
  std::size_t count = 0;
  for (const auto& [name, pair] : by_scenario) {
    const double values[4] = {pair[0] ? pair[0]->mean_trans_rmse : 0.0,
                              pair[1] ? pair[1]->mean_trans_rmse : 0.0,
                              pair[0] ? pair[0]->mean_rot_rmse : 0.0,
                              pair[1] ? pair[1]->mean_rot_rmse : 0.0};
    std::snprintf(line, sizeof(line), "%-18s %14.3f %14.3f %14.3f %14.3f\n", name.c_str(),
                  values[0], values[1], values[2], values[3]);
    out << line;
    for (int i = 0; i < 4; ++i) {
      mean[i] += values[i];
    }
    ++count;
  }
  if (count > 0) {
    std::snprintf(line, sizeof(line), "%-18s %14.3f %14.3f %14.3f %14.3f\n", "mean",
                  mean[0] / count, mean[1] / count, mean[2] / count, mean[3] / count);
    out << line;
  }
  return out.str();
}

}  // namespace latbit
