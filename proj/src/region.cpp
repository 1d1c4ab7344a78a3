#include "ifslab/region.hpp"

#include <algorithm>
#include <cmath>

#include "ifslab/detail/overloaded.hpp"

namespace ifslab {

using detail::overloaded;

double arc_length(const region::Arc& arc) {
  const double a = wrap_angle(arc.alpha);
  const double b = wrap_angle(arc.beta);
  if (a == b) return kTwoPi;
  return wrap_angle(b - a);
}

double arc_offset(const region::Arc& arc, double theta) {
  return wrap_angle(theta - wrap_angle(arc.alpha));
}

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Point segment_nearest(const Point& a, const Point& b, const Point& p) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return a;
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return Point::plane(a.x + t * dx, a.y + t * dy);
}

void require_nonempty(const Region& r) {
  std::visit(overloaded{
                 [](const region::Interval& i) {
                   if (!(i.lo <= i.hi)) throw Error("empty region: interval with lo > hi");
                 },
                 [](const region::Box& b) {
                   if (!(b.x_lo <= b.x_hi) || !(b.y_lo <= b.y_hi)) throw Error("empty region: inverted box");
                 },
                 [](const region::Disc& d) {
                   if (!(d.r >= 0.0)) throw Error("empty region: negative disc radius");
                 },
                 [](const region::CircleCurve& c) {
                   if (!(c.r >= 0.0)) throw Error("empty region: negative circle radius");
                 },
                 [](const region::Polygon& p) {
                   if (p.vertices.empty()) throw Error("empty region: polygon without vertices");
                 },
                 [](const region::PointList& l) {
                   if (l.points.empty()) throw Error("empty region: empty point list");
                 },
                 [](const auto&) {},
             },
             r);
}

}  // namespace

bool polygon_contains(const region::Polygon& poly, const Point& p, double tol) {
  const auto& v = poly.vertices;
  if (v.size() < 3) {
    if (v.empty()) return false;
    const Point q = polygon_nearest(poly, p);
    return std::hypot(q.x - p.x, q.y - p.y) <= tol;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (cross(a, b, p) < -tol * len) return false;
  }
  return true;
}

Point polygon_nearest(const region::Polygon& poly, const Point& p) {
  const auto& v = poly.vertices;
  if (v.empty()) throw Error("polygon without vertices");
  if (v.size() >= 3 && polygon_contains(poly, p, 0.0)) return p;
  if (v.size() == 1) return v.front();
  Point best = v.front();
  double best_d = std::hypot(best.x - p.x, best.y - p.y);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point q = segment_nearest(v[i], v[(i + 1) % v.size()], p);
    const double d = std::hypot(q.x - p.x, q.y - p.y);
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  }
  return best;
}

bool region_contains(const Space& space, const Region& region, const Point& p, double tol) {
  return std::visit(
      overloaded{
          [&](const region::Interval& i) {
            if (p.at_infinity) return std::isinf(i.lo) || std::isinf(i.hi);
            return p.x >= i.lo - tol && p.x <= i.hi + tol;
          },
          [&](const region::Arc& a) {
            const double off = arc_offset(a, p.x);
            return off <= arc_length(a) + tol || off >= kTwoPi - tol;
          },
          [&](const region::Singleton& s) { return space.distance(s.point, p) <= tol; },
          [&](const region::Box& b) {
            return p.x >= b.x_lo - tol && p.x <= b.x_hi + tol && p.y >= b.y_lo - tol && p.y <= b.y_hi + tol;
          },
          [&](const region::Disc& d) { return std::hypot(p.x - d.cx, p.y - d.cy) <= d.r + tol; },
          [&](const region::CircleCurve& c) {
            return std::fabs(std::hypot(p.x - c.cx, p.y - c.cy) - c.r) <= tol;
          },
          [&](const region::Polygon& poly) { return polygon_contains(poly, p, tol); },
          [&](const region::PointList& l) {
            for (const Point& q : l.points)
              if (space.distance(p, q) <= tol) return true;
            return false;
          },
      },
      region);
}

Point region_nearest(const Space& space, const Region& region, const Point& p) {
  return std::visit(
      overloaded{
          [&](const region::Interval& i) -> Point {
            if (p.at_infinity) {
              if (std::isinf(i.lo) || std::isinf(i.hi)) return p;
              const Point lo = Point::real(i.lo), hi = Point::real(i.hi);
              return space.distance(p, lo) <= space.distance(p, hi) ? lo : hi;
            }
            return Point::real(std::clamp(p.x, i.lo, i.hi));
          },
          [&](const region::Arc& a) -> Point {
            if (region_contains(space, a, p, 0.0)) return p;
            const Point lo = Point::angle(a.alpha), hi = Point::angle(a.beta);
            return space.distance(p, lo) <= space.distance(p, hi) ? lo : hi;
          },
          [&](const region::Singleton& s) -> Point { return s.point; },
          [&](const region::Box& b) -> Point {
            return Point::plane(std::clamp(p.x, b.x_lo, b.x_hi), std::clamp(p.y, b.y_lo, b.y_hi));
          },
          [&](const region::Disc& d) -> Point {
            const double r = std::hypot(p.x - d.cx, p.y - d.cy);
            if (r <= d.r) return p;
            return Point::plane(d.cx + (p.x - d.cx) * d.r / r, d.cy + (p.y - d.cy) * d.r / r);
          },
          [&](const region::CircleCurve& c) -> Point {
            const double r = std::hypot(p.x - c.cx, p.y - c.cy);
            if (r == 0.0) return Point::plane(c.cx + c.r, c.cy);
            return Point::plane(c.cx + (p.x - c.cx) * c.r / r, c.cy + (p.y - c.cy) * c.r / r);
          },
          [&](const region::Polygon& poly) -> Point { return polygon_nearest(poly, p); },
          [&](const region::PointList& l) -> Point {
            Point best = l.points.front();
            for (const Point& q : l.points)
              if (space.distance(p, q) < space.distance(p, best)) best = q;
            return best;
          },
      },
      region);
}

namespace {

// Interior lattice of spacing eps / sqrt(2) clipped to a convex shape, plus
// boundary samples every eps / 2. Covering radius <= eps / 2 + eps / 4.
template <typename Inside>
void planar_lattice(double x_lo, double y_lo, double x_hi, double y_hi, double eps, Inside inside,
                    std::vector<Point>& out) {
  const double h = eps / std::sqrt(2.0);
  const auto nx = static_cast<long>(std::ceil((x_hi - x_lo) / h));
  const auto ny = static_cast<long>(std::ceil((y_hi - y_lo) / h));
  for (long j = 0; j <= ny; ++j)
    for (long i = 0; i <= nx; ++i) {
      const Point q = Point::plane(x_lo + static_cast<double>(i) * h, y_lo + static_cast<double>(j) * h);
      if (inside(q)) out.push_back(q);
    }
}

}  // namespace

CompactSet epsilon_net(const Space& space, const Region& region, double eps) {
  if (!(eps > 0.0)) throw Error("epsilon_net: eps must be positive");
  require_nonempty(region);
  std::vector<Point> pts;
  std::visit(
      overloaded{
          [&](const region::Interval& i) {
            if (!std::isfinite(i.lo) || !std::isfinite(i.hi)) throw Error("epsilon_net: unbounded interval");
            const double len = i.hi - i.lo;
            // The compactified metric is at most twice the x-distance.
            const double step_budget = space.kind() == SpaceKind::CompactifiedLine ? 0.5 * eps : eps;
            const auto n = static_cast<long>(std::ceil(len / step_budget));
            if (n == 0) {
              pts.push_back(Point::real(i.lo));
              return;
            }
            for (long k = 0; k <= n; ++k)
              pts.push_back(Point::real(k == n ? i.hi : i.lo + len * static_cast<double>(k) / static_cast<double>(n)));
          },
          [&](const region::Arc& a) {
            const double len = arc_length(a);
            const bool full = len == kTwoPi;
            const auto n = std::max(1L, static_cast<long>(std::ceil(len / eps)));
            const long last = full ? n - 1 : n;
            for (long k = 0; k <= last; ++k)
              pts.push_back(Point::angle(a.alpha + len * static_cast<double>(k) / static_cast<double>(n)));
          },
          [&](const region::Singleton& s) { pts.push_back(s.point); },
          [&](const region::Box& b) {
            const auto nx = static_cast<long>(std::ceil((b.x_hi - b.x_lo) / eps));
            const auto ny = static_cast<long>(std::ceil((b.y_hi - b.y_lo) / eps));
            for (long j = 0; j <= ny; ++j)
              for (long i = 0; i <= nx; ++i) {
                const double x = nx == 0 ? b.x_lo : b.x_lo + (b.x_hi - b.x_lo) * static_cast<double>(i) / static_cast<double>(nx);
                const double y = ny == 0 ? b.y_lo : b.y_lo + (b.y_hi - b.y_lo) * static_cast<double>(j) / static_cast<double>(ny);
                pts.push_back(Point::plane(x, y));
              }
          },
          [&](const region::Disc& d) {
            planar_lattice(d.cx - d.r, d.cy - d.r, d.cx + d.r, d.cy + d.r, eps,
                           [&](const Point& q) { return std::hypot(q.x - d.cx, q.y - d.cy) <= d.r; }, pts);
            const auto n = std::max(1L, static_cast<long>(std::ceil(kTwoPi * d.r / (0.5 * eps))));
            for (long k = 0; k < n; ++k) {
              const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
              pts.push_back(Point::plane(d.cx + d.r * std::cos(th), d.cy + d.r * std::sin(th)));
            }
          },
          [&](const region::CircleCurve& c) {
            const auto n = std::max(1L, static_cast<long>(std::ceil(kTwoPi * c.r / eps)));
            for (long k = 0; k < n; ++k) {
              const double th = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
              pts.push_back(Point::plane(c.cx + c.r * std::cos(th), c.cy + c.r * std::sin(th)));
            }
          },
          [&](const region::Polygon& poly) {
            double x_lo = poly.vertices.front().x, x_hi = x_lo, y_lo = poly.vertices.front().y, y_hi = y_lo;
            for (const Point& v : poly.vertices) {
              x_lo = std::min(x_lo, v.x);
              x_hi = std::max(x_hi, v.x);
              y_lo = std::min(y_lo, v.y);
              y_hi = std::max(y_hi, v.y);
            }
            planar_lattice(x_lo, y_lo, x_hi, y_hi, eps, [&](const Point& q) { return polygon_contains(poly, q); },
                           pts);
            const auto& v = poly.vertices;
            for (std::size_t i = 0; i < v.size(); ++i) {
              const Point& a = v[i];
              const Point& b = v[(i + 1) % v.size()];
              const auto n = std::max(1L, static_cast<long>(std::ceil(std::hypot(b.x - a.x, b.y - a.y) / (0.5 * eps))));
              for (long k = 0; k < n; ++k) {
                const double t = static_cast<double>(k) / static_cast<double>(n);
                pts.push_back(Point::plane(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)));
              }
            }
          },
          [&](const region::PointList& l) { pts = grid_snap_points(space, l.points, eps); },
      },
      region);
  return CompactSet(space, std::move(pts), eps);
}

std::string region_name(const Region& region) {
  return std::visit(overloaded{
                        [](const region::Interval&) { return std::string("interval"); },
                        [](const region::Arc&) { return std::string("arc"); },
                        [](const region::Singleton&) { return std::string("point"); },
                        [](const region::Box&) { return std::string("box"); },
                        [](const region::Disc&) { return std::string("disc"); },
                        [](const region::CircleCurve&) { return std::string("circle"); },
                        [](const region::Polygon&) { return std::string("polygon"); },
                        [](const region::PointList&) { return std::string("points"); },
                    },
                    region);
}

}  // namespace ifslab
