#include "ifslab/map.hpp"

#include <cmath>
#include <utility>

namespace ifslab {

Map::Map(Space space, PointFn eval, std::string label, Json descriptor) {
  if (!eval) throw Error("Map: empty evaluation function");
  auto s = std::make_shared<State>(State{std::move(space), std::move(eval), std::move(label), std::move(descriptor),
                                         std::nullopt, {}, {}, false});
  state_ = std::move(s);
}

CompactSet Map::fixed_net(double eps) const {
  if (!state_->fixed) throw Error("map '" + label() + "' declares no fixed set");
  std::vector<Point> pts;
  for (const Region& r : *state_->fixed) {
    CompactSet net = epsilon_net(space(), r, eps);
    pts.insert(pts.end(), net.points().begin(), net.points().end());
  }
  if (pts.empty()) throw Error("map '" + label() + "' declares an empty fixed set");
  return CompactSet::snapped(space(), std::move(pts), eps);
}

Map Map::with_fixed_set(std::vector<Region> fixed) const {
  return modified([&](State& s) { s.fixed = std::move(fixed); });
}

Map Map::with_branches(std::vector<MonotoneBranch> branches) const {
  return modified([&](State& s) { s.branches = std::move(branches); });
}

Map Map::with_inverse(PointFn inverse) const {
  return modified([&](State& s) { s.inverse = std::move(inverse); });
}

Map Map::with_space(Space space) const {
  return modified([&](State& s) { s.space = std::move(space); });
}

Map Map::with_label(std::string label) const {
  return modified([&](State& s) { s.label = std::move(label); });
}

Map Map::with_descriptor(Json descriptor) const {
  return modified([&](State& s) { s.descriptor = std::move(descriptor); });
}

Map Map::as_identity() const {
  return modified([](State& s) { s.identity = true; });
}

Homeomorphism homeo_identity(const Space& space) {
  PointFn id = [](const Point& p) { return p; };
  return {space, space, id, id, "id", Json{{"kind", "identity"}}};
}

Homeomorphism homeo_affine(double scale, double offset) {
  if (scale == 0.0 || !std::isfinite(scale) || !std::isfinite(offset))
    throw Error("homeo_affine: scale must be finite and nonzero");
  return {Space::real_line(),
          Space::real_line(),
          [=](const Point& p) { return Point::real(scale * p.x + offset); },
          [=](const Point& p) { return Point::real((p.x - offset) / scale); },
          "affine",
          Json{{"kind", "affine"}, {"scale", scale}, {"offset", offset}}};
}

Homeomorphism homeo_arc_chart(double alpha) {
  const double a = wrap_angle(alpha);
  return {Space::real_line(),
          Space::circle(),
          [](const Point& p) { return Point::angle(p.x); },
          [a](const Point& p) { return Point::real(a + wrap_angle(p.x - a)); },
          "arc_chart",
          Json{{"kind", "arc_chart"}, {"alpha", alpha}}};
}

}  // namespace ifslab
