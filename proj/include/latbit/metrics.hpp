#pragma once

#include <cstddef>
#include <vector>

#include "latbit/reference_path.hpp"
#include "latbit/types.hpp"

namespace latbit {

struct RmseResult {
  double trans_rmse = 0.0;  // meters, lateral |q| error
  double rot_rmse = 0.0;    // radians, tangent heading vs reference yaw
  std::size_t n_samples = 0;
};

/// Resamples a polyline at fixed arc intervals (endpoints included).
std::vector<Vec2> resample_polyline(const std::vector<Vec2>& polyline, double step);

/// Path-relative RMSE of a Euclidean solution polyline over the reference
/// segment [seg_lo, seg_hi] in arc-length. The solution is resampled at
/// fixed arc intervals; each sample maps through xy_to_pq for the lateral
/// error and the discrete tangent supplies the heading error. Throws
/// std::invalid_argument if the solution does not cover the segment.
RmseResult compute_rmse(const std::vector<Vec2>& solution_xy, const ReferencePath& path,
                        double seg_lo, double seg_hi, double resample_step = 0.05);

/// Largest |q| of the resampled solution along the whole path.
double max_lateral_deviation(const std::vector<Vec2>& solution_xy,
                             const ReferencePath& path, double resample_step = 0.05);

}  // namespace latbit
