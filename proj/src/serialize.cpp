#include "ifslab/serialize.hpp"

#include <cmath>
#include <limits>

#include "ifslab/detail/overloaded.hpp"
#include "ifslab/gallery.hpp"
#include "ifslab/maps.hpp"

namespace ifslab {

using detail::overloaded;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json number_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw Error("expected a number, got \"" + s + "\"");
  }
  if (!j.is_number()) throw Error("expected a number, got " + j.dump());
  return j.get<double>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "' in " + j.dump());
  return j.at(key);
}

const Json& params_of(const Json& j) {
  static const Json empty = Json::object();
  if (j.contains("params")) return j.at("params");
  return empty;
}

Map child(const Json& j, std::size_t i) {
  if (!j.contains("children") || j.at("children").size() <= i)
    throw Error("map descriptor '" + j.value("kind", std::string("?")) + "' is missing child " + std::to_string(i));
  return map_from_json(j.at("children").at(i));
}

}  // namespace

Json point_to_json(const Point& p, int dimension) {
  if (p.at_infinity) return "inf";
  if (dimension == 1) return p.x;
  return Json::array({p.x, p.y});
}

Point point_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Point::infinity();
    throw Error("bad point " + j.dump());
  }
  if (j.is_number()) return Point::real(j.get<double>());
  if (j.is_array() && j.size() == 1) return Point::real(number_from_json(j[0]));
  if (j.is_array() && j.size() == 2) return Point::plane(number_from_json(j[0]), number_from_json(j[1]));
  throw Error("bad point " + j.dump());
}

Json space_to_json(const Space& space) {
  Json j = {{"kind", to_string(space.kind())}};
  if (const auto& b = space.bounds()) {
    if (space.dimension() == 1)
      j["bounds"] = Json::array({b->x_lo, b->x_hi});
    else
      j["bounds"] = Json::array({b->x_lo, b->x_hi, b->y_lo, b->y_hi});
  }
  return j;
}

Space space_from_json(const Json& j) {
  if (j.is_string()) return Space(space_kind_from_string(j.get<std::string>()));
  const SpaceKind kind = space_kind_from_string(field(j, "kind").get<std::string>());
  if (!j.contains("bounds") || j.at("bounds").is_null()) return Space(kind);
  const Json& b = j.at("bounds");
  if (b.size() == 2) return Space(kind, Bounds{b[0].get<double>(), b[1].get<double>(), 0.0, 0.0});
  if (b.size() == 4) return Space(kind, Bounds{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()});
  throw Error("space bounds need 2 or 4 numbers, got " + b.dump());
}

Json region_to_json(const Region& region) {
  return std::visit(
      overloaded{
          [](const region::Interval& i) -> Json {
            return {{"type", "interval"}, {"lo", number_to_json(i.lo)}, {"hi", number_to_json(i.hi)}};
          },
          [](const region::Arc& a) -> Json { return {{"type", "arc"}, {"alpha", a.alpha}, {"beta", a.beta}}; },
          [](const region::Singleton& s) -> Json {
            // Singletons on a line carry y == 0; keep the pair form only when needed.
            const int dim = s.point.y == 0.0 ? 1 : 2;
            return {{"type", "point"}, {"point", point_to_json(s.point, dim)}};
          },
          [](const region::Box& b) -> Json {
            return {{"type", "box"}, {"x_lo", b.x_lo}, {"y_lo", b.y_lo}, {"x_hi", b.x_hi}, {"y_hi", b.y_hi}};
          },
          [](const region::Disc& d) -> Json { return {{"type", "disc"}, {"cx", d.cx}, {"cy", d.cy}, {"r", d.r}}; },
          [](const region::CircleCurve& c) -> Json {
            return {{"type", "circle"}, {"cx", c.cx}, {"cy", c.cy}, {"r", c.r}};
          },
          [](const region::Polygon& p) -> Json {
            Json v = Json::array();
            for (const Point& q : p.vertices) v.push_back(point_to_json(q, 2));
            return {{"type", "polygon"}, {"vertices", v}};
          },
          [](const region::PointList& l) -> Json {
            Json v = Json::array();
            for (const Point& q : l.points) v.push_back(point_to_json(q, q.y == 0.0 ? 1 : 2));
            return {{"type", "points"}, {"points", v}};
          },
      },
      region);
}

Region region_from_json(const Json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "interval") return region::Interval{number_from_json(field(j, "lo")), number_from_json(field(j, "hi"))};
  if (type == "arc") return region::Arc{field(j, "alpha").get<double>(), field(j, "beta").get<double>()};
  if (type == "point") return region::Singleton{point_from_json(field(j, "point"))};
  if (type == "box")
    return region::Box{field(j, "x_lo").get<double>(), field(j, "y_lo").get<double>(), field(j, "x_hi").get<double>(),
                       field(j, "y_hi").get<double>()};
  if (type == "disc")
    return region::Disc{j.value("cx", 0.0), j.value("cy", 0.0), field(j, "r").get<double>()};
  if (type == "circle")
    return region::CircleCurve{j.value("cx", 0.0), j.value("cy", 0.0), field(j, "r").get<double>()};
  if (type == "polygon") {
    region::Polygon p;
    for (const Json& v : field(j, "vertices")) p.vertices.push_back(point_from_json(v));
    return p;
  }
  if (type == "points") {
    region::PointList l;
    for (const Json& v : field(j, "points")) l.points.push_back(point_from_json(v));
    return l;
  }
  throw Error("unknown region type '" + type + "'");
}

Json homeo_to_json(const Homeomorphism& h) {
  if (h.descriptor.is_null()) throw Error("homeomorphism '" + h.label + "' has no descriptor");
  return h.descriptor;
}

Homeomorphism homeo_from_json(const Json& j, const Space& space_hint) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "identity") return homeo_identity(space_hint);
  if (kind == "affine") return homeo_affine(field(j, "scale").get<double>(), j.value("offset", 0.0));
  if (kind == "arc_chart") return homeo_arc_chart(field(j, "alpha").get<double>());
  throw Error("unknown homeomorphism kind '" + kind + "'");
}

Json map_to_json(const Map& map) {
  if (!map.serializable()) throw Error("map '" + map.label() + "' was built from a callable and has no descriptor");
  return map.descriptor();
}

Map map_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  const Json& p = params_of(j);
  if (kind == "identity") return make_identity(space_from_json(field(p, "space")));
  if (kind == "constant") return make_constant(space_from_json(field(p, "space")), point_from_json(field(p, "value")));
  if (kind == "affine") {
    const Space space = space_from_json(field(p, "space"));
    const Json& off = p.contains("offset") ? p.at("offset") : Json(0.0);
    return make_affine(space, field(p, "scale").get<double>(), point_from_json(off));
  }
  if (kind == "rotation") return make_rotation(field(p, "angle").get<double>());
  if (kind == "interval_alr")
    return make_interval_alr(field(p, "a").get<double>(), field(p, "b").get<double>(),
                             alr_variant_from_string(p.value("variant", std::string("square"))));
  if (kind == "arc_alr") return make_arc_alr(field(p, "alpha").get<double>(), field(p, "beta").get<double>());
  if (kind == "disc_alr") return make_disc_alr();
  if (kind == "kwietniak") return make_kwietniak_map();
  if (kind == "union") {
    const Json& regions = field(p, "regions");
    const Json& children = field(j, "children");
    if (regions.size() != children.size()) throw Error("union descriptor: regions and children differ in length");
    std::vector<MapPiece> pieces;
    for (std::size_t i = 0; i < regions.size(); ++i)
      pieces.push_back({region_from_json(regions[i]), map_from_json(children[i])});
    return union_maps(std::move(pieces));
  }
  if (kind == "conjugate") {
    Map phi = child(j, 0);
    return conjugate_map(phi, homeo_from_json(field(p, "homeo"), phi.space()));
  }
  if (kind == "retraction") return make_retraction(space_from_json(field(p, "space")), region_from_json(field(p, "region")));
  if (kind == "arc_retraction")
    return make_arc_retraction(field(p, "alpha").get<double>(), field(p, "beta").get<double>());
  if (kind == "compose") return compose(child(j, 0), child(j, 1));
  if (kind == "gallery_phi") return gallery_phi_from_json(p);
  throw Error("unknown map kind '" + kind + "'");
}

}  // namespace ifslab
