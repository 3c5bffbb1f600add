#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "latbit/costmap.hpp"
#include "latbit/reference_path.hpp"
#include "latbit/types.hpp"

namespace latbit {

/// The informed sampling region induced by the weighted edge metric after a
/// solution of cost c_best has been found, conservatively bounded by a
/// rectangle. The estimated total cost through a state (p,q) is
///   f_hat = (1 + (alpha/3) q^2) (sqrt((p-p_start)^2 + q^2)
///                                + sqrt((p-p_goal)^2 + q^2)),
/// and every state with f_hat <= c_best lies inside
/// [p_lo, p_hi] x [-q_bound, q_bound].
struct InformedRegion {
  double p_start = 0.0;
  double p_goal = 0.0;
  double c_best = 0.0;
  double c_min = 0.0;
  double alpha = 0.0;
  double q_bound = 0.0;
  double p_lo = 0.0;
  double p_hi = 0.0;

  double f_hat(const CurvilinearPoint& x) const;
  bool rect_contains(const CurvilinearPoint& x) const;
};

/// Computes the conservative bounding rectangle for {f_hat <= c_best}.
///
/// The minimum focal sum at lateral height q is sqrt(c_min^2 + 4 q^2)
/// (attained midway between the foci), so the rectangle half-height is the
/// unique root of
///   g(q) = (1 + (alpha/3) q^2) sqrt(c_min^2 + 4 q^2) - c_best,  q >= 0,
/// found by bisection (g is strictly increasing). The p-extent uses the
/// alpha-free ellipse bound, which is conservative since the lateral factor
/// is >= 1. Throws std::invalid_argument if c_best < c_min.
InformedRegion compute_bounding_rect(double p_start, double p_goal, double c_best,
                                     double alpha);

struct SampleBatch {
  std::vector<CurvilinearPoint> points;
  /// Set when the attempt budget ran out before n points were accepted
  /// (e.g. a zero-area or fully blocked region).
  bool exhausted = false;
};

/// Free-space sampler over the curvilinear corridor. Without a region it
/// draws uniformly over [0, p_len] x [q_min(p), q_max(p)]; with a region it
/// draws from the bounding rectangle intersected with the corridor,
/// rejecting states with f_hat > c_best (when rejection is enabled) and
/// states whose mapped Euclidean point is occupied.
///
/// Owns its RNG; streams are reproducible from the seed. One sampler per
/// planner instance, not shared across threads.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  void set_region(std::optional<InformedRegion> region) { region_ = std::move(region); }
  const std::optional<InformedRegion>& region() const { return region_; }
  void set_rejection(bool enabled) { reject_by_f_hat_ = enabled; }

  SampleBatch sample_free(const ReferencePath& path, const OccupancyGrid& grid,
                          std::size_t n);

 private:
  std::mt19937_64 rng_;
  std::optional<InformedRegion> region_;
  bool reject_by_f_hat_ = true;
};

}  // namespace latbit
