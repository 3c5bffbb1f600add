#include "latbit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace latbit {

std::vector<Vec2> resample_polyline(const std::vector<Vec2>& polyline, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("resample step must be > 0");
  }
  if (polyline.size() < 2) {
    return polyline;
  }
  std::vector<double> cum(polyline.size(), 0.0);
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    cum[i] = cum[i - 1] + distance(polyline[i - 1], polyline[i]);
  }
  const double total = cum.back();
  if (total == 0.0) {
    return {polyline.front()};
  }

  std::vector<Vec2> out;
  const int n = std::max(1, static_cast<int>(std::ceil(total / step)));
  out.reserve(n + 1);
  std::size_t seg = 0;
  for (int k = 0; k <= n; ++k) {
    const double s = total * static_cast<double>(k) / n;
    while (seg + 2 < polyline.size() && cum[seg + 1] < s) {
      ++seg;
    }
    const double seg_len = cum[seg + 1] - cum[seg];
    const double t = seg_len > 0.0 ? (s - cum[seg]) / seg_len : 0.0;
    out.push_back({polyline[seg].x + t * (polyline[seg + 1].x - polyline[seg].x),
                   polyline[seg].y + t * (polyline[seg + 1].y - polyline[seg].y)});
  }
  return out;
}

RmseResult compute_rmse(const std::vector<Vec2>& solution_xy, const ReferencePath& path,
                        double seg_lo, double seg_hi, double resample_step) {
  if (solution_xy.size() < 2) {
    throw std::invalid_argument("solution polyline needs at least 2 points");
  }
  if (!(seg_hi > seg_lo)) {
    throw std::invalid_argument("segment must have positive length");
  }

  const std::vector<Vec2> samples = resample_polyline(solution_xy, resample_step);

  double p_min = std::numeric_limits<double>::infinity();
  double p_max = -std::numeric_limits<double>::infinity();
  double sum_sq_trans = 0.0;
  double sum_sq_rot = 0.0;
  std::size_t n = 0;

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const CurvilinearPoint pq = path.xy_to_pq(samples[i].x, samples[i].y);
    p_min = std::min(p_min, pq.p);
    p_max = std::max(p_max, pq.p);
    if (pq.p < seg_lo || pq.p > seg_hi) {
      continue;
    }
    sum_sq_trans += pq.q * pq.q;

    // Discrete tangent of the resampled polyline vs the reference yaw.
    const Vec2& a = samples[i > 0 ? i - 1 : i];
    const Vec2& b = samples[i + 1 < samples.size() ? i + 1 : i];
    if (a.x != b.x || a.y != b.y) {
      const double heading = std::atan2(b.y - a.y, b.x - a.x);
      const double err = wrap_angle(heading - path.interpolate(pq.p).psi);
      sum_sq_rot += err * err;
    }
    ++n;
  }

  constexpr double kCoverTol = 1e-6;
  if (p_min > seg_lo + kCoverTol || p_max < seg_hi - kCoverTol) {
    throw std::invalid_argument("solution does not cover the metric segment");
  }
  if (n == 0) {
    throw std::invalid_argument("no solution samples fall inside the segment");
  }

  RmseResult r;
  r.trans_rmse = std::sqrt(sum_sq_trans / n);
  r.rot_rmse = std::sqrt(sum_sq_rot / n);
  r.n_samples = n;
  return r;
}

double max_lateral_deviation(const std::vector<Vec2>& solution_xy,
                             const ReferencePath& path, double resample_step) {
  double worst = 0.0;
  for (const Vec2& s : resample_polyline(solution_xy, resample_step)) {
    worst = std::max(worst, std::abs(path.xy_to_pq(s.x, s.y).q));
  }
  return worst;
}

}  // namespace latbit
