#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "latbit/reference_path.hpp"
#include "latbit/types.hpp"

namespace latbit {

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

struct AxisBox {
  Vec2 min;
  Vec2 max;
};

/// 2D Euclidean occupancy grid with obstacle inflation. Cells are marked by
/// shape insertion; the inflated map is rebuilt lazily on the first query
/// after a mutation. Queries outside the grid return free (unknown space is
/// optimistically traversable).
///
/// Mutation and query must not interleave across threads; once mutation
/// stops the grid is safe for concurrent reads.
class OccupancyGrid {
 public:
  OccupancyGrid(Vec2 origin, double resolution, int width, int height,
                double inflation_radius);

  void insert(const Circle& circle);
  void insert(const AxisBox& box);

  /// True iff the containing cell is occupied after inflation.
  bool is_occupied(double x, double y) const;

  /// Occupied state of a cell in the raw (pre-inflation) seed layer.
  bool seed_occupied(int ix, int iy) const;
  std::size_t occupied_seed_count() const;

  Vec2 origin() const { return origin_; }
  double resolution() const { return resolution_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double inflation_radius() const { return inflation_radius_; }
  Vec2 cell_center(int ix, int iy) const;

  /// P5 PGM dump: one byte per cell, 255 = free, 0 = occupied, row 0 = max y.
  void write_pgm(std::ostream& out) const;

 private:
  void ensure_inflated() const;

  Vec2 origin_;
  double resolution_;
  int width_;
  int height_;
  double inflation_radius_;
  std::vector<std::uint8_t> seed_;
  mutable std::vector<std::uint8_t> inflated_;
  mutable bool inflated_dirty_ = true;
};

/// Discretizes the straight (p,q) segment from a to b at arc intervals
/// <= step (endpoints always included), maps each sample to Euclidean space
/// and returns true iff any mapped point is occupied.
bool edge_collides(const OccupancyGrid& grid, const ReferencePath& path,
                   const CurvilinearPoint& a, const CurvilinearPoint& b,
                   double step);

}  // namespace latbit
