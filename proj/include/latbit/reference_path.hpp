#pragma once

#include <cstddef>
#include <vector>

#include "latbit/types.hpp"

namespace latbit {

/// The taught reference path: an ordered chain of poses with precomputed
/// cumulative arc-length p. Provides the bidirectional mapping between
/// curvilinear (p,q) and Euclidean (x,y) coordinates.
///
/// The distance between subsequent poses is
///   dp = sqrt(dx^2 + dy^2 + a * dpsi^2),
/// where the yaw term (weight a) keeps rotation-on-the-spot segments from
/// collapsing to zero length.
///
/// Immutable after construction; safe for concurrent reads.
class ReferencePath {
 public:
  /// q_bounds holds one entry per segment (poses.size() - 1), or a single
  /// entry applied to every segment.
  ///
  /// Throws std::invalid_argument on fewer than 2 poses, non-finite input,
  /// a degenerate (zero-length) segment, or bounds that do not straddle 0.
  ReferencePath(std::vector<Pose> poses, double yaw_weight_a,
                std::vector<QBounds> q_bounds);

  double length() const { return cum_p_.back(); }
  double yaw_weight() const { return yaw_weight_a_; }
  const std::vector<Pose>& poses() const { return poses_; }
  const std::vector<double>& cumulative_p() const { return cum_p_; }
  std::size_t segment_count() const { return poses_.size() - 1; }

  /// Index of the segment containing arc-length p (last segment at p = length()).
  std::size_t segment_index(double p) const;
  QBounds q_bounds_at(double p) const;
  const std::vector<QBounds>& q_bounds() const { return q_bounds_; }

  /// On-path pose at arc-length p: linear interpolation of position,
  /// shortest-arc interpolation of yaw. Throws std::domain_error if p is
  /// outside [0, length()].
  Pose interpolate(double p) const;

  /// Maps a curvilinear point to Euclidean coordinates by offsetting the
  /// interpolated on-path pose laterally (q > 0 is left of travel):
  ///   x = x_p - q sin(psi_p),  y = y_p + q cos(psi_p).
  Vec2 pq_to_xy(const CurvilinearPoint& pt) const;

  /// Nearest-point projection of (x,y) onto the interpolated path. Among
  /// equally near candidates the smallest p wins. Throws std::domain_error
  /// if the projection falls outside the segment's lateral bounds.
  CurvilinearPoint xy_to_pq(double x, double y) const;

  /// Area of the corridor [0, p_len] x [q_lo(p), q_hi(p)].
  double corridor_area() const;
  double max_corridor_width() const;

 private:
  std::vector<Pose> poses_;
  std::vector<double> cum_p_;
  double yaw_weight_a_;
  std::vector<QBounds> q_bounds_;
};

}  // namespace latbit
