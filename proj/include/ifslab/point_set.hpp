#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "ifslab/space.hpp"

namespace ifslab {

/// A finite point cloud standing for a nonempty compact set as an eps-net.
///
/// Immutable and cheap to copy (the points are shared). Construction rejects
/// empty clouds and nonpositive resolutions; sets produced by grid_snap also
/// satisfy the separation invariant (no two points closer than eps/2).
class CompactSet {
 public:
  CompactSet(Space space, std::vector<Point> points, double resolution);

  /// grid_snap of the given points at the given resolution.
  static CompactSet snapped(Space space, std::vector<Point> points, double resolution);

  const Space& space() const { return space_; }
  std::span<const Point> points() const { return *points_; }
  const Point& operator[](std::size_t i) const { return (*points_)[i]; }
  std::size_t size() const { return points_->size(); }
  double resolution() const { return resolution_; }

  CompactSet with_resolution(double eps) const;

 private:
  Space space_;
  std::shared_ptr<const std::vector<Point>> points_;
  double resolution_;
};

/// Nearest-neighbour index over a point cloud, exact in the space's metric.
///
/// 1-D spaces use a sorted chart coordinate (with wrap-around on periodic
/// charts); planar spaces use a uniform bucket grid with ring search.
class PointIndex {
 public:
  PointIndex(const Space& space, std::span<const Point> points);

  /// Distance to the nearest indexed point and its index.
  std::pair<double, std::size_t> nearest(const Point& q) const;
  double distance(const Point& q) const { return nearest(q).first; }
  std::size_t size() const { return points_.size(); }

 private:
  std::pair<double, std::size_t> nearest_1d(const Point& q) const;
  std::pair<double, std::size_t> nearest_2d(const Point& q) const;

  Space space_;
  std::vector<Point> points_;
  // 1-D
  std::vector<std::pair<double, std::size_t>> sorted_;
  // 2-D
  double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
  long nx_ = 1, ny_ = 1;
  std::vector<std::size_t> cell_start_;
  std::vector<std::size_t> cell_items_;
};

/// Greedy deduplication at resolution eps: points are visited in order and a
/// point is kept unless it lies closer than eps/2 to an already kept one.
/// The result is a subset of the input, pairwise separated by at least eps/2,
/// and within Hausdorff distance eps/2 of the input.
CompactSet grid_snap(const CompactSet& set, double eps);
std::vector<Point> grid_snap_points(const Space& space, std::span<const Point> points, double eps);

/// Sup over a in A of d(a, B).
double directed_hausdorff(const CompactSet& a, const CompactSet& b);

/// Hausdorff distance. Uses brute force when |A||B| <= 1e6 and the spatial
/// index above that; the two paths agree to rounding.
double hausdorff_distance(const CompactSet& a, const CompactSet& b);
double hausdorff_distance_brute(const CompactSet& a, const CompactSet& b);
double hausdorff_distance_indexed(const CompactSet& a, const CompactSet& b);

/// d(p, S).
double point_set_distance(const Point& p, const CompactSet& set);

/// Union of two clouds on compatible spaces, snapped at eps.
CompactSet set_union(const CompactSet& a, const CompactSet& b, double eps);

}  // namespace ifslab
