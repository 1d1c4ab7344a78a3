#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "ifslab/point_set.hpp"
#include "ifslab/space.hpp"

namespace ifslab {

namespace region {

/// Closed interval of a line chart. Either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// Closed arc of the circle, counterclockwise from alpha to beta.
/// alpha == beta denotes the full circle.
struct Arc {
  double alpha = 0.0;
  double beta = 0.0;
};

struct Singleton {
  Point point;
};

struct Box {
  double x_lo = 0.0, y_lo = 0.0, x_hi = 1.0, y_hi = 1.0;
};

struct Disc {
  double cx = 0.0, cy = 0.0, r = 1.0;
};

/// Closed circle curve |z - c| = r.
struct CircleCurve {
  double cx = 0.0, cy = 0.0, r = 1.0;
};

/// Closed convex polygon, vertices in counterclockwise order.
struct Polygon {
  std::vector<Point> vertices;
};

struct PointList {
  std::vector<Point> points;
};

}  // namespace region

using Region = std::variant<region::Interval, region::Arc, region::Singleton, region::Box, region::Disc,
                            region::CircleCurve, region::Polygon, region::PointList>;

/// Arc length of an arc region (2 pi when alpha == beta).
double arc_length(const region::Arc& arc);

/// Offset of angle theta along the arc, measured counterclockwise from alpha.
double arc_offset(const region::Arc& arc, double theta);

bool region_contains(const Space& space, const Region& region, const Point& p, double tol = 1e-12);

/// Nearest point of the region (arcs: nearest endpoint when outside;
/// point lists: nearest listed point).
Point region_nearest(const Space& space, const Region& region, const Point& p);

/// Finite net with covering radius at most eps.
CompactSet epsilon_net(const Space& space, const Region& region, double eps);

/// Nearest point of a closed convex polygon (the point itself when inside).
Point polygon_nearest(const region::Polygon& poly, const Point& p);
bool polygon_contains(const region::Polygon& poly, const Point& p, double tol = 1e-12);

std::string region_name(const Region& region);

}  // namespace ifslab
