#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifslab/map.hpp"

namespace ifslab {

enum class AlrVariant { Square, Sqrt };

std::string to_string(AlrVariant v);
AlrVariant alr_variant_from_string(const std::string& name);

Map make_identity(const Space& space);
Map make_constant(const Space& space, const Point& value);
/// x -> scale * x + offset.x on a line, z -> scale * z + offset in the plane.
Map make_affine(const Space& space, double scale, const Point& offset);
/// Rotation of the circle by a fixed angle.
Map make_rotation(double angle);

/// Attracting map with a local repellor on [a, b]:
///   square: (x - a)^2 / (b - a) + a   (repellor b)
///   sqrt:   sqrt((x - a)(b - a)) + a  (repellor a)
/// Outside [a, b] the map is the identity.
Map make_interval_alr(double a, double b, AlrVariant variant);

/// The square-variant map carried onto the counterclockwise arc from alpha to
/// beta: angle -> alpha + (angle - alpha)^2 / (beta - alpha), differences
/// taken mod 2 pi and beta - alpha := 2 pi when alpha == beta. The endpoint
/// at beta is the local repellor. Identity off the arc.
Map make_arc_alr(double alpha, double beta);

/// Map of the closed unit disc moving each point along its vertical chord
/// towards the lower endpoint a(z): phi(z) = |(z - a)/(b - a)| (z - a) + a.
/// Every boundary point is fixed.
Map make_disc_alr();

/// x -> x + 1 on the compactified line, infinity fixed.
Map make_kwietniak_map();

struct MapPiece {
  Region region;
  Map map;
};

/// Piecewise map equal to pieces[i].map on pieces[i].region. Points shared by
/// two regions must be fixed by both maps (checked on samples to overlap_tol).
Map union_maps(std::vector<MapPiece> pieces, double overlap_tol = 1e-9);

/// h o phi o h^{-1}. Requires h^{-1}(h(x)) = x on 1000 samples of phi's
/// space to 1e-9.
Map conjugate_map(const Map& phi, const Homeomorphism& h);

/// Nearest-point retraction onto an interval, arc, point, box, disc or convex
/// polygon.
Map make_retraction(const Space& space, const Region& region);

/// Continuous retraction of the circle onto the arc from alpha to beta: the
/// complementary arc is folded back linearly, its start going to beta and its
/// end to alpha.
Map make_arc_retraction(double alpha, double beta);

/// outer o inner.
Map compose(const Map& outer, const Map& inner);

/// Solves phi(x) = y along a monotone branch by bisection on the branch
/// parameter. Throws when y is not attained on the branch.
Point preimage_on_branch(const Map& phi, const Point& y, const MonotoneBranch& branch, double tol = 1e-12);

struct MapCheck {
  bool ok = true;
  std::string failure;
};

/// Sampled check that the map sends its space into itself and fixes its
/// declared fixed set (to 1e-9). Reports the lowest-index failing sample.
MapCheck check_map(const Map& map, std::size_t samples = 10000, std::uint64_t seed = 1);

/// Sampled strict monotonicity of a branch over `pairs` ordered pairs.
bool check_branch(const MonotoneBranch& branch, int pairs = 100);

}  // namespace ifslab
