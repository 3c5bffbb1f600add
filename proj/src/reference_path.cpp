#include "latbit/reference_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace latbit {

namespace {

bool finite_pose(const Pose& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.psi);
}

}  // namespace

ReferencePath::ReferencePath(std::vector<Pose> poses, double yaw_weight_a,
                             std::vector<QBounds> q_bounds)
    : poses_(std::move(poses)), yaw_weight_a_(yaw_weight_a) {
  if (poses_.size() < 2) {
    throw std::invalid_argument("reference path needs at least 2 poses");
  }
  if (!std::isfinite(yaw_weight_a_) || yaw_weight_a_ < 0.0) {
    throw std::invalid_argument("yaw weight a must be finite and >= 0");
  }

  const std::size_t n_segments = poses_.size() - 1;
  if (q_bounds.size() == 1) {
    q_bounds_.assign(n_segments, q_bounds.front());
  } else if (q_bounds.size() == n_segments) {
    q_bounds_ = std::move(q_bounds);
  } else {
    throw std::invalid_argument("q_bounds must have one entry or one per segment");
  }
  for (const QBounds& b : q_bounds_) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > 0.0 || b.hi < 0.0) {
      throw std::invalid_argument("q bounds must satisfy q_min <= 0 <= q_max");
    }
  }

  cum_p_.resize(poses_.size());
  cum_p_[0] = 0.0;
  for (std::size_t i = 0; i + 1 < poses_.size(); ++i) {
    const Pose& a = poses_[i];
    const Pose& b = poses_[i + 1];
    if (!finite_pose(a) || !finite_pose(b)) {
      throw std::invalid_argument("reference path poses must be finite");
    }
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dpsi = wrap_angle(b.psi - a.psi);
    const double dp = std::sqrt(dx * dx + dy * dy + yaw_weight_a_ * dpsi * dpsi);
    if (dp <= 0.0) {
      throw std::invalid_argument("degenerate segment at pose " + std::to_string(i) +
                                  ": consecutive poses are identical");
    }
    cum_p_[i + 1] = cum_p_[i] + dp;
  }
}

std::size_t ReferencePath::segment_index(double p) const {
  // upper_bound finds the first cum_p strictly greater than p; the segment
  // starts one entry earlier.
  auto it = std::upper_bound(cum_p_.begin(), cum_p_.end(), p);
  if (it == cum_p_.begin()) {
    return 0;
  }
  std::size_t idx = static_cast<std::size_t>(it - cum_p_.begin()) - 1;
  return std::min(idx, poses_.size() - 2);
}

QBounds ReferencePath::q_bounds_at(double p) const {
  return q_bounds_[segment_index(p)];
}

Pose ReferencePath::interpolate(double p) const {
  constexpr double kSlack = 1e-9;
  if (!std::isfinite(p) || p < -kSlack || p > length() + kSlack) {
    throw std::domain_error("p outside [0, p_len]");
  }
  p = std::clamp(p, 0.0, length());
  const std::size_t i = segment_index(p);
  const Pose& a = poses_[i];
  const Pose& b = poses_[i + 1];
  const double t = (p - cum_p_[i]) / (cum_p_[i + 1] - cum_p_[i]);
  const double dpsi = wrap_angle(b.psi - a.psi);
  return Pose(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.psi + t * dpsi);
}

Vec2 ReferencePath::pq_to_xy(const CurvilinearPoint& pt) const {
  const Pose on_path = interpolate(pt.p);
  return {on_path.x - pt.q * std::sin(on_path.psi),
          on_path.y + pt.q * std::cos(on_path.psi)};
}

CurvilinearPoint ReferencePath::xy_to_pq(double x, double y) const {
  // Inverting pq_to_xy means finding p such that the query sits purely
  // laterally of the on-path pose: (query - pos(p)) . heading(p) = 0. The
  // along-track residual is sampled per segment and sign changes are
  // refined by bisection. Perpendicular-foot roots invert the map exactly
  // and take precedence; the clamped path endpoints only serve queries
  // beyond the ends, where no root exists.
  constexpr int kScanSamples = 16;
  constexpr double kTieTol = 1e-9;

  double best_dist = std::numeric_limits<double>::infinity();
  CurvilinearPoint best{0.0, 0.0};
  bool found = false;

  auto offer = [&](double p, double q, double dist) {
    if (!found) {
      best_dist = dist;
      best = {p, q};
      found = true;
      return;
    }
    if (dist < best_dist - kTieTol) {
      best_dist = dist;
      best = {p, q};
    } else if (dist <= best_dist + kTieTol && p < best.p) {
      // Equally near (singularity): the smaller p wins.
      best_dist = std::min(best_dist, dist);
      best = {p, q};
    }
  };

  auto eval = [&](std::size_t seg, double t, double& along, double& lateral) {
    const Pose& a = poses_[seg];
    const Pose& b = poses_[seg + 1];
    const double dpsi = wrap_angle(b.psi - a.psi);
    const double psi = a.psi + t * dpsi;
    const double px = a.x + t * (b.x - a.x);
    const double py = a.y + t * (b.y - a.y);
    const double rx = x - px;
    const double ry = y - py;
    along = rx * std::cos(psi) + ry * std::sin(psi);
    lateral = -rx * std::sin(psi) + ry * std::cos(psi);
  };

  for (std::size_t seg = 0; seg + 1 < poses_.size(); ++seg) {
    const double p0 = cum_p_[seg];
    const double p1 = cum_p_[seg + 1];

    double prev_along = 0.0;
    for (int k = 0; k <= kScanSamples; ++k) {
      const double t = static_cast<double>(k) / kScanSamples;
      double along = 0.0;
      double lat = 0.0;
      eval(seg, t, along, lat);

      if (std::abs(along) < 1e-12) {
        offer(p0 + t * (p1 - p0), lat, std::abs(lat));
      } else if (k > 0 && std::signbit(along) != std::signbit(prev_along)) {
        // Bisect the bracketing interval for the perpendicular foot.
        double lo = static_cast<double>(k - 1) / kScanSamples;
        double hi = t;
        double f_lo = prev_along;
        for (int iter = 0; iter < 60 && hi - lo > 1e-14; ++iter) {
          const double mid = 0.5 * (lo + hi);
          double f_mid = 0.0;
          double lat_mid = 0.0;
          eval(seg, mid, f_mid, lat_mid);
          if (f_mid == 0.0) {
            lo = hi = mid;
            break;
          }
          if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
          } else {
            hi = mid;
          }
        }
        const double t_root = 0.5 * (lo + hi);
        double along_root = 0.0;
        double lat_root = 0.0;
        eval(seg, t_root, along_root, lat_root);
        offer(p0 + t_root * (p1 - p0), lat_root, std::abs(lat_root));
      }
      prev_along = along;
    }
  }

  // Endpoint fallbacks cover queries ahead of the start or past the goal.
  if (!found) {
    for (const double p_end : {0.0, length()}) {
      double along = 0.0;
      double lat = 0.0;
      const std::size_t seg = segment_index(p_end);
      const double t = (p_end - cum_p_[seg]) / (cum_p_[seg + 1] - cum_p_[seg]);
      eval(seg, t, along, lat);
      offer(p_end, lat, std::hypot(along, lat));
    }
  }

  const QBounds bounds = q_bounds_at(best.p);
  if (best.q < bounds.lo - 1e-9 || best.q > bounds.hi + 1e-9) {
    throw std::domain_error("query projects outside the lateral corridor");
  }
  return best;
}

double ReferencePath::corridor_area() const {
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < poses_.size(); ++i) {
    area += (cum_p_[i + 1] - cum_p_[i]) * (q_bounds_[i].hi - q_bounds_[i].lo);
  }
  return area;
}

double ReferencePath::max_corridor_width() const {
  double w = 0.0;
  for (const QBounds& b : q_bounds_) {
    w = std::max(w, b.hi - b.lo);
  }
  return w;
}

}  // namespace latbit
