#include "ifslab/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "ifslab/detail/format.hpp"
#include "ifslab/detail/overloaded.hpp"
#include "ifslab/serialize.hpp"

namespace ifslab {

using detail::num;
using detail::overloaded;
using detail::point_str;

namespace {

Json describe(const std::string& kind, Json params, Json children = Json::array()) {
  return Json{{"kind", kind}, {"params", std::move(params)}, {"children", std::move(children)}};
}

bool is_line(const Space& s) {
  return s.kind() == SpaceKind::RealLine || s.kind() == SpaceKind::CompactifiedLine;
}

// The whole space as a region, when it is bounded.
std::optional<Region> whole_space(const Space& s) {
  switch (s.kind()) {
    case SpaceKind::Circle: return region::Arc{0.0, 0.0};
    case SpaceKind::UnitDisc: return region::Disc{0.0, 0.0, 1.0};
    default: break;
  }
  if (!s.bounds()) return std::nullopt;
  const Bounds& b = *s.bounds();
  if (s.dimension() == 1) return region::Interval{b.x_lo, b.x_hi};
  return region::Box{b.x_lo, b.y_lo, b.x_hi, b.y_hi};
}

PointFn identity_fn() {
  return [](const Point& p) { return p; };
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 1 || lo == hi) return {lo};
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out.push_back(k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1));
  return out;
}

// Sample points of region a lying in region b.
std::vector<Point> overlap_samples(const Space& space, const Region& a, const Region& b) {
  std::vector<Point> out;
  if (const auto* ia = std::get_if<region::Interval>(&a)) {
    if (const auto* ib = std::get_if<region::Interval>(&b)) {
      double lo = std::max(ia->lo, ib->lo), hi = std::min(ia->hi, ib->hi);
      if (lo > hi) return out;
      if (!std::isfinite(lo)) lo = std::min(hi, 0.0) - 100.0;
      if (!std::isfinite(hi)) hi = std::max(lo, 0.0) + 100.0;
      for (double x : linspace(lo, hi, 51)) out.push_back(Point::real(x));
      return out;
    }
  }
  if (const auto* arc = std::get_if<region::Arc>(&a)) {
    const double len = arc_length(*arc);
    for (double t : linspace(0.0, len, 401)) {
      const Point p = Point::angle(arc->alpha + t);
      if (region_contains(space, b, p, 1e-12)) out.push_back(p);
    }
    return out;
  }
  try {
    CompactSet net = epsilon_net(space, a, 0.02);
    for (const Point& p : net.points())
      if (region_contains(space, b, p, 1e-12)) out.push_back(p);
  } catch (const Error&) {
    // Unbounded region; the other direction covers the overlap.
  }
  return out;
}

std::optional<Space> hull_space(const Space& base, const std::vector<MapPiece>& pieces) {
  if (base.kind() != SpaceKind::RealLine) return std::nullopt;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const MapPiece& pc : pieces) {
    const auto* iv = std::get_if<region::Interval>(&pc.region);
    if (iv == nullptr) {
      if (const auto* s = std::get_if<region::Singleton>(&pc.region)) {
        lo = std::min(lo, s->point.x);
        hi = std::max(hi, s->point.x);
        continue;
      }
      return std::nullopt;
    }
    lo = std::min(lo, iv->lo);
    hi = std::max(hi, iv->hi);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) return Space::real_line();
  return Space::real_interval(lo, hi);
}

}  // namespace

std::string to_string(AlrVariant v) { return v == AlrVariant::Square ? "square" : "sqrt"; }

AlrVariant alr_variant_from_string(const std::string& name) {
  if (name == "square") return AlrVariant::Square;
  if (name == "sqrt") return AlrVariant::Sqrt;
  throw Error("unknown ALR variant '" + name + "' (expected square or sqrt)");
}

Map make_identity(const Space& space) {
  Map m = Map(space, identity_fn(), "id", describe("identity", {{"space", space_to_json(space)}}))
              .with_inverse(identity_fn())
              .as_identity();
  if (auto whole = whole_space(space)) m = m.with_fixed_set({*whole});
  return m;
}

Map make_constant(const Space& space, const Point& value) {
  return Map(space, [value](const Point&) { return value; }, "const" + point_str(value),
             describe("constant", {{"space", space_to_json(space)}, {"value", point_to_json(value, space.dimension())}}))
      .with_fixed_set({region::Singleton{value}});
}

Map make_affine(const Space& space, double scale, const Point& offset) {
  if (!std::isfinite(scale)) throw Error("make_affine: scale must be finite");
  const bool line = space.dimension() == 1;
  if (line && space.kind() != SpaceKind::RealLine) throw Error("make_affine: 1-D affine maps need the real line");
  if (space.kind() == SpaceKind::Circle) throw Error("make_affine: not defined on the circle");
  PointFn f = line ? PointFn([=](const Point& p) { return Point::real(scale * p.x + offset.x); })
                   : PointFn([=](const Point& p) {
                       return Point::plane(scale * p.x + offset.x, scale * p.y + offset.y);
                     });
  Json params = {{"space", space_to_json(space)}, {"scale", scale}, {"offset", point_to_json(offset, space.dimension())}};
  Map m(space, std::move(f), line ? num(scale) + "x+" + num(offset.x) : num(scale) + "z+" + point_str(offset),
        describe("affine", std::move(params)));
  if (scale != 0.0) {
    m = m.with_inverse(line ? PointFn([=](const Point& p) { return Point::real((p.x - offset.x) / scale); })
                            : PointFn([=](const Point& p) {
                                return Point::plane((p.x - offset.x) / scale, (p.y - offset.y) / scale);
                              }));
  }
  if (scale != 1.0) {
    const Point fix = line ? Point::real(offset.x / (1.0 - scale))
                           : Point::plane(offset.x / (1.0 - scale), offset.y / (1.0 - scale));
    m = m.with_fixed_set({region::Singleton{fix}});
  } else if (offset.x == 0.0 && offset.y == 0.0) {
    m = m.as_identity();
    if (auto whole = whole_space(space)) m = m.with_fixed_set({*whole});
  } else {
    m = m.with_fixed_set({});
  }
  return m;
}

Map make_rotation(double angle) {
  if (!std::isfinite(angle)) throw Error("make_rotation: angle must be finite");
  Map m(Space::circle(), [angle](const Point& p) { return Point::angle(p.x + angle); }, "rot(" + num(angle) + ")",
        describe("rotation", {{"angle", angle}}));
  m = m.with_inverse([angle](const Point& p) { return Point::angle(p.x - angle); });
  if (wrap_angle(angle) == 0.0) return m.as_identity().with_fixed_set({region::Arc{0.0, 0.0}});
  return m.with_fixed_set({});
}

Map make_interval_alr(double a, double b, AlrVariant variant) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw Error("make_interval_alr: requires finite a < b");
  const double len = b - a;
  const bool square = variant == AlrVariant::Square;
  auto f = [=](double x) {
    if (x <= a || x >= b) return x;
    const double v = square ? a + (x - a) * (x - a) / len : a + std::sqrt((x - a) * len);
    return std::clamp(v, a, b);
  };
  auto finv = [=](double y) {
    if (y <= a || y >= b) return y;
    const double v = square ? a + std::sqrt((y - a) * len) : a + (y - a) * (y - a) / len;
    return std::clamp(v, a, b);
  };
  MonotoneBranch branch{a,
                        b,
                        true,
                        f,
                        [](double t) { return Point::real(t); },
                        [](const Point& p) { return p.x; }};
  const std::string label = "alr_" + to_string(variant) + "[" + num(a) + "," + num(b) + "]";
  return Map(Space::real_interval(a, b), [f](const Point& p) { return Point::real(f(p.x)); }, label,
             describe("interval_alr", {{"a", a}, {"b", b}, {"variant", to_string(variant)}}))
      .with_fixed_set({region::Singleton{Point::real(a)}, region::Singleton{Point::real(b)}})
      .with_branches({branch})
      .with_inverse([finv](const Point& p) { return Point::real(finv(p.x)); });
}

Map make_arc_alr(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha < kTwoPi) || !(beta >= 0.0 && beta < kTwoPi))
    throw Error("make_arc_alr: angles must lie in [0, 2pi)");
  const region::Arc arc{alpha, beta};
  const double len = arc_length(arc);
  MonotoneBranch branch{alpha,
                        alpha + len,
                        true,
                        [=](double t) { return alpha + (t - alpha) * (t - alpha) / len; },
                        [](double t) { return Point::angle(t); },
                        [=](const Point& p) { return alpha + arc_offset(arc, p.x); }};
  return Map(
             Space::circle(),
             [=](const Point& p) {
               const double u = arc_offset(arc, p.x);
               if (u > len) return p;
               return Point::angle(alpha + u * u / len);
             },
             "arc_alr[" + num(alpha) + "," + num(beta) + "]", describe("arc_alr", {{"alpha", alpha}, {"beta", beta}}))
      .with_fixed_set({region::Singleton{Point::angle(alpha)}, region::Singleton{Point::angle(beta)}})
      .with_branches({branch})
      .with_inverse([=](const Point& p) {
        const double u = arc_offset(arc, p.x);
        if (u > len) return p;
        return Point::angle(alpha + std::sqrt(u * len));
      });
}

Map make_disc_alr() {
  auto f = [](const Point& z) {
    const double x = z.x;
    if (std::fabs(x) >= 1.0) return z;
    const double half = std::sqrt(1.0 - x * x);
    const double up = z.y + half;  // z - a(z) along the chord
    const double s = std::fabs(up) / (2.0 * half);
    return Point::plane(x, -half + s * up);
  };
  auto finv = [](const Point& z) {
    const double x = z.x;
    if (std::fabs(x) >= 1.0) return z;
    const double half = std::sqrt(1.0 - x * x);
    const double up = z.y + half;
    const double s = std::fabs(up) / (2.0 * half);
    if (s == 0.0) return z;
    return Point::plane(x, -half + up / std::sqrt(s));
  };
  return Map(Space::unit_disc(), f, "disc_alr", describe("disc_alr", Json::object()))
      .with_fixed_set({region::CircleCurve{0.0, 0.0, 1.0}})
      .with_inverse(finv);
}

Map make_kwietniak_map() {
  MonotoneBranch branch{-kPi,
                        kPi,
                        true,
                        [](double t) {
                          if (t <= -kPi) return -kPi;
                          if (t >= kPi) return kPi;
                          return 2.0 * std::atan(std::tan(0.5 * t) + 1.0);
                        },
                        [](double t) {
                          if (t <= -kPi || t >= kPi) return Point::infinity();
                          return Point::real(std::tan(0.5 * t));
                        },
                        [](const Point& p) { return p.at_infinity ? kPi : 2.0 * std::atan(p.x); }};
  return Map(Space::compactified_line(),
             [](const Point& p) { return p.at_infinity ? p : Point::real(p.x + 1.0); }, "x+1",
             describe("kwietniak", Json::object()))
      .with_fixed_set({region::Singleton{Point::infinity()}})
      .with_branches({branch})
      .with_inverse([](const Point& p) { return p.at_infinity ? p : Point::real(p.x - 1.0); });
}

Map union_maps(std::vector<MapPiece> pieces, double overlap_tol) {
  if (pieces.empty()) throw Error("union_maps: no pieces");
  if (pieces.size() == 1) return pieces.front().map;
  const Space base = pieces.front().map.space();
  for (const MapPiece& pc : pieces)
    if (!pc.map.space().compatible(base)) throw Error("union_maps: pieces live on different spaces");

  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      auto samples = overlap_samples(base, pieces[i].region, pieces[j].region);
      auto back = overlap_samples(base, pieces[j].region, pieces[i].region);
      samples.insert(samples.end(), back.begin(), back.end());
      for (const Point& p : samples)
        for (std::size_t k : {i, j})
          if (base.distance(pieces[k].map(p), p) > overlap_tol)
            throw Error("union_maps: overlap point " + point_str(p) + " is moved by piece " + std::to_string(k) +
                        " (" + pieces[k].map.label() + ")");
    }

  std::optional<std::vector<Region>> fixed = std::vector<Region>{};
  std::vector<MonotoneBranch> branches;
  Json regions = Json::array(), children = Json::array();
  bool serializable = true;
  std::string label = "union(";
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const MapPiece& pc = pieces[k];
    if (fixed) {
      if (pc.map.is_identity())
        fixed->push_back(pc.region);
      else if (pc.map.fixed_set())
        fixed->insert(fixed->end(), pc.map.fixed_set()->begin(), pc.map.fixed_set()->end());
      else
        fixed.reset();
    }
    for (const MonotoneBranch& br : pc.map.branches())
      if (region_contains(base, pc.region, br.to_point(br.lo), 1e-9) &&
          region_contains(base, pc.region, br.to_point(br.hi), 1e-9))
        branches.push_back(br);
    serializable = serializable && pc.map.serializable();
    if (serializable) {
      regions.push_back(region_to_json(pc.region));
      children.push_back(pc.map.descriptor());
    }
    label += (k ? "," : "") + pc.map.label();
  }
  label += ")";

  const Space space = hull_space(base, pieces).value_or(Space(base.kind()));
  auto shared = std::make_shared<const std::vector<MapPiece>>(std::move(pieces));
  Map m(space,
        [shared, base](const Point& p) {
          for (const MapPiece& pc : *shared)
            if (region_contains(base, pc.region, p, 1e-12)) return pc.map(p);
          throw Error("union_maps: point " + point_str(p) + " lies in no piece");
        },
        label, serializable ? describe("union", {{"regions", regions}}, children) : Json(nullptr));
  if (fixed) m = m.with_fixed_set(std::move(*fixed));
  return m.with_branches(std::move(branches));
}

Map conjugate_map(const Map& phi, const Homeomorphism& h) {
  if (!h.forward || !h.inverse) throw Error("conjugate_map: homeomorphism needs both directions");
  const Space& src = phi.space();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Point x = src.sample(rng);
    if (src.distance(h.inverse(h.forward(x)), x) > 1e-9)
      throw Error("conjugate_map: h_inv(h(x)) != x at sample " + std::to_string(i) + " x=" + point_str(x));
  }

  Space target = h.target;
  if (src.bounds() && target.dimension() == 1 && target.kind() == SpaceKind::RealLine) {
    const double u = h.forward(Point::real(src.bounds()->x_lo)).x;
    const double v = h.forward(Point::real(src.bounds()->x_hi)).x;
    target = Space::real_interval(std::min(u, v), std::max(u, v));
  }

  PointFn fwd = h.forward, inv = h.inverse;
  Map m(target, [phi, fwd, inv](const Point& y) { return fwd(phi(inv(y))); }, "conj(" + phi.label() + ")",
        phi.serializable() && !h.descriptor.is_null()
            ? describe("conjugate", {{"homeo", h.descriptor}}, Json::array({phi.descriptor()}))
            : Json(nullptr));

  if (phi.fixed_set()) {
    std::vector<Region> image;
    for (const Region& r : *phi.fixed_set()) {
      if (const auto* s = std::get_if<region::Singleton>(&r)) {
        image.push_back(region::Singleton{fwd(s->point)});
        continue;
      }
      CompactSet net = epsilon_net(src, r, 1e-3);
      region::PointList pl;
      for (const Point& p : net.points()) pl.points.push_back(fwd(p));
      image.push_back(std::move(pl));
    }
    m = m.with_fixed_set(std::move(image));
  }

  std::vector<MonotoneBranch> branches;
  for (const MonotoneBranch& b : phi.branches()) {
    MonotoneBranch c = b;
    c.to_point = [tp = b.to_point, fwd](double t) { return fwd(tp(t)); };
    c.to_param = [tq = b.to_param, inv](const Point& p) { return tq(inv(p)); };
    branches.push_back(std::move(c));
  }
  m = m.with_branches(std::move(branches));
  if (phi.has_inverse())
    m = m.with_inverse([pinv = phi.inverse(), fwd, inv](const Point& y) { return fwd(pinv(inv(y))); });
  if (phi.is_identity()) m = m.as_identity();
  return m;
}

Map make_retraction(const Space& space, const Region& region) {
  const bool supported = std::visit(overloaded{
                                        [](const region::PointList&) { return false; },
                                        [](const region::CircleCurve&) { return false; },
                                        [](const auto&) { return true; },
                                    },
                                    region);
  if (!supported) throw Error("make_retraction: unsupported region shape '" + region_name(region) + "'");
  if (const auto* iv = std::get_if<region::Interval>(&region)) {
    if (!is_line(space)) throw Error("make_retraction: interval regions need a line space");
    if (!(iv->lo <= iv->hi)) throw Error("make_retraction: empty interval");
  }
  if (const auto* arc = std::get_if<region::Arc>(&region); arc && space.kind() != SpaceKind::Circle)
    throw Error("make_retraction: arc regions need the circle");
  return Map(space, [space, region](const Point& p) { return region_nearest(space, region, p); },
             "retract(" + region_name(region) + ")",
             describe("retraction", {{"space", space_to_json(space)}, {"region", region_to_json(region)}}))
      .with_fixed_set({region});
}

Map make_arc_retraction(double alpha, double beta) {
  const region::Arc arc{alpha, beta};
  const double len = arc_length(arc);
  if (len == kTwoPi) return make_identity(Space::circle());
  const double rest = kTwoPi - len;
  return Map(
             Space::circle(),
             [=](const Point& p) {
               const double u = arc_offset(arc, p.x);
               if (u <= len) return p;
               return Point::angle(alpha + len * (1.0 - (u - len) / rest));
             },
             "fold(" + num(alpha) + "," + num(beta) + ")",
             describe("arc_retraction", {{"alpha", alpha}, {"beta", beta}}))
      .with_fixed_set({arc});
}

Map compose(const Map& outer, const Map& inner) {
  if (!outer.space().compatible(inner.space()))
    throw Error("compose: space mismatch (" + outer.space().name() + " vs " + inner.space().name() + ")");
  Map m(inner.space(), [outer, inner](const Point& p) { return outer(inner(p)); }, outer.label() + "∘" + inner.label(),
        outer.serializable() && inner.serializable()
            ? describe("compose", Json::object(), Json::array({outer.descriptor(), inner.descriptor()}))
            : Json(nullptr));
  if (outer.is_identity() && inner.is_identity()) m = m.as_identity();
  return m;
}

Point preimage_on_branch(const Map& phi, const Point& y, const MonotoneBranch& branch, double tol) {
  if (!(tol > 0.0)) throw Error("preimage_on_branch: tol must be positive");
  const Space& space = phi.space();
  const double target = branch.to_param(y);
  double lo = branch.lo, hi = branch.hi;
  const double g_lo = branch.chart_eval(lo) - target;
  const double g_hi = branch.chart_eval(hi) - target;
  if (g_lo == 0.0) return branch.to_point(lo);
  if (g_hi == 0.0) return branch.to_point(hi);
  if ((g_lo < 0.0) == (g_hi < 0.0)) throw Error("y not attained on branch");
  const bool lo_below = g_lo < 0.0;
  constexpr double kChartTol = 1e-12;
  auto residual = [&](double t) { return space.distance(phi(branch.to_point(t)), y); };
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    t = 0.5 * (lo + hi);
    const double g = branch.chart_eval(t) - target;
    if (g == 0.0) break;
    if ((g < 0.0) == lo_below)
      lo = t;
    else
      hi = t;
    if (hi - lo <= kChartTol && residual(t) <= tol) break;
  }
  const double r = residual(t);
  if (r > tol) throw Error("preimage_on_branch: residual " + num(r) + " exceeds tol " + num(tol));
  return branch.to_point(t);
}

MapCheck check_map(const Map& map, std::size_t samples, std::uint64_t seed) {
  const Space& space = map.space();
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Point p = space.sample(rng);
    const Point q = map(p);
    if (!space.contains(q, 1e-9))
      return {false, "sample " + std::to_string(i) + " " + point_str(p) + " maps outside the space to " + point_str(q)};
  }
  if (map.fixed_set()) {
    for (const Region& r : *map.fixed_set()) {
      std::optional<CompactSet> net;
      try {
        net = epsilon_net(space, r, 1e-2);
      } catch (const Error&) {
        continue;  // unbounded fixed region
      }
      for (const Point& p : net->points()) {
        const double d = space.distance(map(p), p);
        if (d > 1e-9)
          return {false, "declared fixed point " + point_str(p) + " moves by " + num(d)};
      }
    }
  }
  return {};
}

bool check_branch(const MonotoneBranch& branch, int pairs) {
  if (pairs < 1) return true;
  const auto ts = linspace(branch.lo, branch.hi, pairs + 1);
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double a = branch.chart_eval(ts[k]), b = branch.chart_eval(ts[k + 1]);
    if (branch.increasing ? !(a < b) : !(a > b)) return false;
  }
  return true;
}

}  // namespace ifslab
