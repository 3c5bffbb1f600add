#include "latbit/informed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latbit {

double InformedRegion::f_hat(const CurvilinearPoint& x) const {
  const double d_start = std::hypot(x.p - p_start, x.q);
  const double d_goal = std::hypot(x.p - p_goal, x.q);
  return (1.0 + (alpha / 3.0) * x.q * x.q) * (d_start + d_goal);
}

bool InformedRegion::rect_contains(const CurvilinearPoint& x) const {
  return x.p >= p_lo && x.p <= p_hi && std::abs(x.q) <= q_bound;
}

InformedRegion compute_bounding_rect(double p_start, double p_goal, double c_best,
                                     double alpha) {
  const double c_min = p_goal - p_start;
  if (!(c_min > 0.0)) {
    throw std::invalid_argument("informed region requires p_goal > p_start");
  }
  if (c_best < c_min) {
    throw std::invalid_argument("c_best below c_min: region is infeasible");
  }

  InformedRegion region;
  region.p_start = p_start;
  region.p_goal = p_goal;
  region.c_best = c_best;
  region.c_min = c_min;
  region.alpha = alpha;

  // g(q) = (1 + alpha/3 q^2) sqrt(c_min^2 + 4 q^2) - c_best, strictly
  // increasing with g(0) <= 0.
  auto g = [&](double q) {
    return (1.0 + (alpha / 3.0) * q * q) * std::sqrt(c_min * c_min + 4.0 * q * q) -
           c_best;
  };

  if (c_best == c_min) {
    region.q_bound = 0.0;
  } else {
    // The alpha = 0 semi-minor axis bounds the root from above.
    double hi = 0.5 * std::sqrt(c_best * c_best - c_min * c_min) + 1e-12;
    double lo = 0.0;
    while (g(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    region.q_bound = 0.5 * (lo + hi);
  }

  const double spill = 0.5 * (c_best - c_min);
  region.p_lo = p_start - spill;
  region.p_hi = p_goal + spill;
  return region;
}

SampleBatch Sampler::sample_free(const ReferencePath& path, const OccupancyGrid& grid,
                                 std::size_t n) {
  if (n < 1) {
    throw std::invalid_argument("sample count must be >= 1");
  }
  SampleBatch batch;
  batch.points.reserve(n);

  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double p_lo = 0.0;
  double p_hi = path.length();
  if (region_) {
    p_lo = std::max(p_lo, region_->p_lo);
    p_hi = std::min(p_hi, region_->p_hi);
  }
  if (p_hi < p_lo) {
    batch.exhausted = true;
    return batch;
  }

  const std::size_t max_attempts = std::max<std::size_t>(10000, 500 * n);
  std::size_t attempts = 0;
  while (batch.points.size() < n && attempts < max_attempts) {
    ++attempts;
    const double p = p_lo + unit(rng_) * (p_hi - p_lo);
    QBounds bounds = path.q_bounds_at(p);
    if (region_) {
      bounds.lo = std::max(bounds.lo, -region_->q_bound);
      bounds.hi = std::min(bounds.hi, region_->q_bound);
      if (bounds.lo > bounds.hi) {
        continue;
      }
    }
    const double q = bounds.lo + unit(rng_) * (bounds.hi - bounds.lo);
    const CurvilinearPoint pt{p, q};
    if (region_ && reject_by_f_hat_ && region_->f_hat(pt) > region_->c_best) {
      continue;
    }
    const Vec2 xy = path.pq_to_xy(pt);
    if (grid.is_occupied(xy.x, xy.y)) {
      continue;
    }
    batch.points.push_back(pt);
  }

  batch.exhausted = batch.points.size() < n;
  return batch;
}

}  // namespace latbit
