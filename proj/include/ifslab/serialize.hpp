#pragma once

#include "ifslab/map.hpp"
#include "ifslab/region.hpp"
#include "ifslab/space.hpp"

namespace ifslab {

/// Points are written as a number (1-D), a pair [x, y] (2-D) or "inf".
Json point_to_json(const Point& p, int dimension);
Point point_from_json(const Json& j);

/// {"kind": "RealLine", "bounds": [lo, hi]} or the bare kind name.
Json space_to_json(const Space& space);
Space space_from_json(const Json& j);

/// {"type": "interval" | "arc" | "point" | "box" | "disc" | "circle" |
///  "polygon" | "points", ...}. Infinite interval ends are "-inf" / "inf".
Json region_to_json(const Region& region);
Region region_from_json(const Json& j);

Json homeo_to_json(const Homeomorphism& h);
/// Identity homeomorphisms take their space from `space_hint`.
Homeomorphism homeo_from_json(const Json& j, const Space& space_hint);

/// The map's descriptor. Throws for maps built from arbitrary callables.
Json map_to_json(const Map& map);
/// Rebuilds a map from a {kind, params, children} descriptor.
Map map_from_json(const Json& j);

}  // namespace ifslab
