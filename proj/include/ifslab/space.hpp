#pragma once

#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace ifslab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduces an angle to [0, 2pi).
double wrap_angle(double theta);

/// A point in one of the supported charts.
///
/// Line spaces use `x`; the circle stores its angle in `x` (always in
/// [0, 2pi)); planar spaces use `x` and `y`. `at_infinity` is only meaningful
/// on the compactified line.
struct Point {
  double x = 0.0;
  double y = 0.0;
  bool at_infinity = false;

  static Point real(double v) { return {v, 0.0, false}; }
  static Point plane(double px, double py) { return {px, py, false}; }
  static Point angle(double theta) { return {wrap_angle(theta), 0.0, false}; }
  static Point infinity() { return {0.0, 0.0, true}; }

  friend bool operator==(const Point&, const Point&) = default;
};

enum class SpaceKind { RealLine, CompactifiedLine, Circle, UnitDisc, PlaneRegion };

/// Axis-aligned chart box. For 1-D spaces only the x range is used.
struct Bounds {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
};

/// A metric chart.
///
/// The compactified line is charted by theta = 2 atan(x) with infinity at
/// theta = pi; its metric is arc length on that circle, so x -> x + 1 is a
/// continuous self-map whose orbits approach infinity. The circle also uses
/// arc length. Disc and plane use the Euclidean metric.
///
/// Bounds are metadata for sampling and rendering. Two spaces are compatible
/// when their kinds agree.
class Space {
 public:
  explicit Space(SpaceKind kind, std::optional<Bounds> bounds = std::nullopt);

  static Space real_line() { return Space(SpaceKind::RealLine); }
  static Space real_interval(double lo, double hi);
  static Space compactified_line() { return Space(SpaceKind::CompactifiedLine); }
  static Space circle() { return Space(SpaceKind::Circle); }
  static Space unit_disc() { return Space(SpaceKind::UnitDisc); }
  static Space plane(std::optional<Bounds> bounds = std::nullopt) {
    return Space(SpaceKind::PlaneRegion, bounds);
  }

  SpaceKind kind() const { return kind_; }
  const std::optional<Bounds>& bounds() const { return bounds_; }
  int dimension() const;
  bool periodic() const;
  bool compatible(const Space& other) const { return kind_ == other.kind_; }

  double distance(const Point& a, const Point& b) const;

  /// 1-D chart coordinate: x on the real line, the angle on the circle and
  /// 2 atan(x) in (-pi, pi] on the compactified line.
  double chart(const Point& p) const;
  Point from_chart(double t) const;

  bool contains(const Point& p, double tol = 1e-12) const;

  /// Draws a point from the bounds when declared, otherwise from a default
  /// window ([-10, 10] on the line, [-10, 10]^2 in the plane).
  Point sample(std::mt19937_64& rng) const;

  std::string name() const;

 private:
  SpaceKind kind_;
  std::optional<Bounds> bounds_;
};

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

}  // namespace ifslab
