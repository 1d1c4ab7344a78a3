#include "ifslab/space.hpp"

#include <algorithm>
#include <cmath>

namespace ifslab {

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

namespace {

double arc_between(double a, double b) {
  double d = std::fabs(a - b);
  d = std::fmod(d, kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

Space::Space(SpaceKind kind, std::optional<Bounds> bounds) : kind_(kind), bounds_(bounds) {
  if (bounds_) {
    if (!(bounds_->x_lo <= bounds_->x_hi)) throw Error("space bounds: x_lo > x_hi");
    if (dimension() == 2 && !(bounds_->y_lo <= bounds_->y_hi))
      throw Error("space bounds: y_lo > y_hi");
  }
}

Space Space::real_interval(double lo, double hi) {
  return Space(SpaceKind::RealLine, Bounds{lo, hi, 0.0, 0.0});
}

int Space::dimension() const {
  switch (kind_) {
    case SpaceKind::RealLine:
    case SpaceKind::CompactifiedLine:
    case SpaceKind::Circle:
      return 1;
    case SpaceKind::UnitDisc:
    case SpaceKind::PlaneRegion:
      return 2;
  }
  return 1;
}

bool Space::periodic() const {
  return kind_ == SpaceKind::Circle || kind_ == SpaceKind::CompactifiedLine;
}

double Space::chart(const Point& p) const {
  switch (kind_) {
    case SpaceKind::CompactifiedLine:
      return p.at_infinity ? kPi : 2.0 * std::atan(p.x);
    case SpaceKind::Circle:
      return p.x;
    default:
      return p.x;
  }
}

Point Space::from_chart(double t) const {
  switch (kind_) {
    case SpaceKind::CompactifiedLine: {
      double th = wrap_angle(t);
      if (th > kPi) th -= kTwoPi;
      if (th == kPi) return Point::infinity();
      return Point::real(std::tan(0.5 * th));
    }
    case SpaceKind::Circle:
      return Point::angle(t);
    default:
      return Point::real(t);
  }
}

double Space::distance(const Point& a, const Point& b) const {
  switch (kind_) {
    case SpaceKind::RealLine:
      return std::fabs(a.x - b.x);
    case SpaceKind::CompactifiedLine:
      return arc_between(chart(a), chart(b));
    case SpaceKind::Circle:
      return arc_between(a.x, b.x);
    case SpaceKind::UnitDisc:
    case SpaceKind::PlaneRegion:
      return std::hypot(a.x - b.x, a.y - b.y);
  }
  return 0.0;
}

bool Space::contains(const Point& p, double tol) const {
  if (p.at_infinity) return kind_ == SpaceKind::CompactifiedLine;
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  switch (kind_) {
    case SpaceKind::RealLine:
    case SpaceKind::CompactifiedLine:
      if (bounds_) return p.x >= bounds_->x_lo - tol && p.x <= bounds_->x_hi + tol;
      return true;
    case SpaceKind::Circle:
      return p.x >= 0.0 && p.x < kTwoPi;
    case SpaceKind::UnitDisc:
      return std::hypot(p.x, p.y) <= 1.0 + tol;
    case SpaceKind::PlaneRegion:
      if (bounds_)
        return p.x >= bounds_->x_lo - tol && p.x <= bounds_->x_hi + tol &&
               p.y >= bounds_->y_lo - tol && p.y <= bounds_->y_hi + tol;
      return true;
  }
  return false;
}

Point Space::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind_) {
    case SpaceKind::RealLine: {
      const double lo = bounds_ ? bounds_->x_lo : -10.0;
      const double hi = bounds_ ? bounds_->x_hi : 10.0;
      return Point::real(lo + (hi - lo) * unit(rng));
    }
    case SpaceKind::CompactifiedLine: {
      if (bounds_) return Point::real(bounds_->x_lo + (bounds_->x_hi - bounds_->x_lo) * unit(rng));
      const double th = -kPi + kTwoPi * unit(rng);
      return Point::real(std::tan(0.5 * th));
    }
    case SpaceKind::Circle:
      return Point::angle(kTwoPi * unit(rng));
    case SpaceKind::UnitDisc: {
      const double r = std::sqrt(unit(rng));
      const double th = kTwoPi * unit(rng);
      return Point::plane(r * std::cos(th), r * std::sin(th));
    }
    case SpaceKind::PlaneRegion: {
      const Bounds b = bounds_.value_or(Bounds{-10.0, 10.0, -10.0, 10.0});
      const double x = b.x_lo + (b.x_hi - b.x_lo) * unit(rng);
      const double y = b.y_lo + (b.y_hi - b.y_lo) * unit(rng);
      return Point::plane(x, y);
    }
  }
  return {};
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::RealLine: return "RealLine";
    case SpaceKind::CompactifiedLine: return "CompactifiedLine";
    case SpaceKind::Circle: return "Circle";
    case SpaceKind::UnitDisc: return "UnitDisc";
    case SpaceKind::PlaneRegion: return "PlaneRegion";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& name) {
  for (SpaceKind k : {SpaceKind::RealLine, SpaceKind::CompactifiedLine, SpaceKind::Circle,
                      SpaceKind::UnitDisc, SpaceKind::PlaneRegion})
    if (to_string(k) == name) return k;
  throw Error("unknown space kind '" + name + "'");
}

std::string Space::name() const { return to_string(kind_); }

}  // namespace ifslab
