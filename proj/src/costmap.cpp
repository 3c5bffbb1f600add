#include "latbit/costmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace latbit {

OccupancyGrid::OccupancyGrid(Vec2 origin, double resolution, int width, int height,
                             double inflation_radius)
    : origin_(origin),
      resolution_(resolution),
      width_(width),
      height_(height),
      inflation_radius_(inflation_radius) {
  if (!(resolution_ > 0.0) || !std::isfinite(resolution_)) {
    throw std::invalid_argument("grid resolution must be > 0");
  }
  if (width_ < 1 || height_ < 1) {
    throw std::invalid_argument("grid must be at least 1x1 cells");
  }
  if (inflation_radius_ < 0.0 || !std::isfinite(inflation_radius_)) {
    throw std::invalid_argument("inflation radius must be >= 0");
  }
  seed_.assign(static_cast<std::size_t>(width_) * height_, 0);
}

Vec2 OccupancyGrid::cell_center(int ix, int iy) const {
  return {origin_.x + (ix + 0.5) * resolution_, origin_.y + (iy + 0.5) * resolution_};
}

void OccupancyGrid::insert(const Circle& circle) {
  if (!(circle.radius > 0.0)) {
    throw std::invalid_argument("circle radius must be > 0");
  }
  const double r2 = circle.radius * circle.radius;
  const int ix_lo = std::max(0, static_cast<int>(std::floor(
                                    (circle.center.x - circle.radius - origin_.x) / resolution_)));
  const int ix_hi = std::min(width_ - 1, static_cast<int>(std::ceil(
                                             (circle.center.x + circle.radius - origin_.x) / resolution_)));
  const int iy_lo = std::max(0, static_cast<int>(std::floor(
                                    (circle.center.y - circle.radius - origin_.y) / resolution_)));
  const int iy_hi = std::min(height_ - 1, static_cast<int>(std::ceil(
                                              (circle.center.y + circle.radius - origin_.y) / resolution_)));
  for (int iy = iy_lo; iy <= iy_hi; ++iy) {
    for (int ix = ix_lo; ix <= ix_hi; ++ix) {
      const Vec2 c = cell_center(ix, iy);
      const double dx = c.x - circle.center.x;
      const double dy = c.y - circle.center.y;
      if (dx * dx + dy * dy <= r2) {
        seed_[static_cast<std::size_t>(iy) * width_ + ix] = 1;
      }
    }
  }
  inflated_dirty_ = true;
}

void OccupancyGrid::insert(const AxisBox& box) {
  if (box.min.x > box.max.x || box.min.y > box.max.y) {
    throw std::invalid_argument("box min must not exceed max");
  }
  for (int iy = 0; iy < height_; ++iy) {
    for (int ix = 0; ix < width_; ++ix) {
      const Vec2 c = cell_center(ix, iy);
      if (c.x >= box.min.x && c.x <= box.max.x && c.y >= box.min.y && c.y <= box.max.y) {
        seed_[static_cast<std::size_t>(iy) * width_ + ix] = 1;
      }
    }
  }
  inflated_dirty_ = true;
}

void OccupancyGrid::ensure_inflated() const {
  if (!inflated_dirty_) {
    return;
  }
  inflated_ = seed_;
  if (inflation_radius_ > 0.0) {
    // Dilate by the disc of cell offsets whose center-to-center distance is
    // within the inflation radius. Boundary offsets sit exactly at the
    // radius, so the squared comparison carries a small slack.
    const int reach = static_cast<int>(std::ceil(inflation_radius_ / resolution_));
    std::vector<std::pair<int, int>> disc;
    const double r2 = inflation_radius_ * inflation_radius_ + 1e-9;
    for (int dy = -reach; dy <= reach; ++dy) {
      for (int dx = -reach; dx <= reach; ++dx) {
        const double ox = dx * resolution_;
        const double oy = dy * resolution_;
        if (ox * ox + oy * oy <= r2) {
          disc.emplace_back(dx, dy);
        }
      }
    }
    for (int iy = 0; iy < height_; ++iy) {
      for (int ix = 0; ix < width_; ++ix) {
        if (!seed_[static_cast<std::size_t>(iy) * width_ + ix]) {
          continue;
        }
        for (const auto& [dx, dy] : disc) {
          const int jx = ix + dx;
          const int jy = iy + dy;
          if (jx >= 0 && jx < width_ && jy >= 0 && jy < height_) {
            inflated_[static_cast<std::size_t>(jy) * width_ + jx] = 1;
          }
        }
      }
    }
  }
  inflated_dirty_ = false;
}

bool OccupancyGrid::is_occupied(double x, double y) const {
  const int ix = static_cast<int>(std::floor((x - origin_.x) / resolution_));
  const int iy = static_cast<int>(std::floor((y - origin_.y) / resolution_));
  if (ix < 0 || ix >= width_ || iy < 0 || iy >= height_) {
    return false;
  }
  ensure_inflated();
  return inflated_[static_cast<std::size_t>(iy) * width_ + ix] != 0;
}

bool OccupancyGrid::seed_occupied(int ix, int iy) const {
  if (ix < 0 || ix >= width_ || iy < 0 || iy >= height_) {
    return false;
  }
  return seed_[static_cast<std::size_t>(iy) * width_ + ix] != 0;
}

std::size_t OccupancyGrid::occupied_seed_count() const {
  return static_cast<std::size_t>(
      std::count(seed_.begin(), seed_.end(), std::uint8_t{1}));
}

void OccupancyGrid::write_pgm(std::ostream& out) const {
  ensure_inflated();
  out << "P5\n" << width_ << " " << height_ << "\n255\n";
  for (int iy = height_ - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < width_; ++ix) {
      const char byte = inflated_[static_cast<std::size_t>(iy) * width_ + ix] ? '\0' : '\xff';
      out.put(byte);
    }
  }
}

bool edge_collides(const OccupancyGrid& grid, const ReferencePath& path,
                   const CurvilinearPoint& a, const CurvilinearPoint& b,
                   double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("collision step must be > 0");
  }
  const double len = pq_distance(a, b);
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    const CurvilinearPoint s{a.p + t * (b.p - a.p), a.q + t * (b.q - a.q)};
    const Vec2 xy = path.pq_to_xy(s);
    if (grid.is_occupied(xy.x, xy.y)) {
      return true;
    }
  }
  return false;
}

}  // namespace latbit
