#pragma once

#include <cmath>
#include <numbers>

namespace latbit {

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) {
    w += 2.0 * std::numbers::pi;
  }
  return w;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

/// A 3-DOF state (position and yaw). Yaw is wrapped to (-pi, pi] on
/// construction.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;

  Pose() = default;
  Pose(double x_, double y_, double psi_) : x(x_), y(y_), psi(wrap_angle(psi_)) {}

  Vec2 position() const { return {x, y}; }
};

/// A point in the curvilinear planning space: longitudinal arc-length p
/// along the reference path and signed lateral offset q (positive-left).
struct CurvilinearPoint {
  double p = 0.0;
  double q = 0.0;
};

inline double pq_distance(const CurvilinearPoint& a, const CurvilinearPoint& b) {
  return std::hypot(b.p - a.p, b.q - a.q);
}

/// Lateral corridor bounds for one path segment, lo <= 0 <= hi.
struct QBounds {
  double lo = -1.0;
  double hi = 1.0;
};

}  // namespace latbit
