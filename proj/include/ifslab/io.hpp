#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "ifslab/hutchinson.hpp"

namespace ifslab {

/// "%.17g"; "inf" / "-inf" / "nan" for non-finite values.
std::string format_double(double v);

/// Columns step,point_count,distance_to_target (the last empty without a target).
void write_orbit_csv(std::ostream& out, const OrbitRecord& orbit);
void write_orbit_csv(std::ostream& out, std::span<const std::size_t> point_counts, std::span<const double> distances);

/// A `# epsilon=<eps>` line, a header `x,flag` (1-D) or `x,y,flag` (2-D),
/// then one row per point. flag is 1 for the point at infinity, else 0.
void write_point_cloud_csv(std::ostream& out, const CompactSet& set);
CompactSet read_point_cloud_csv(std::istream& in, const Space& space);

/// Plane-coordinate window of a render. Circle points are drawn at
/// (cos t, sin t); 1-D sets use only the x range.
struct Viewport {
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
};

/// The chart bounds of a set, padded by 5 percent.
Viewport default_viewport(const CompactSet& set);

struct RenderResult {
  std::string bytes;
  /// Points that landed inside the viewport.
  std::size_t drawn = 0;
};

/// Binary PGM (P5, maxval 255): white marks on black. 1-D sets become
/// full-height ticks on a strip of `height` rows.
RenderResult render_pgm(const CompactSet& set, const Viewport& view, int width, int height);

/// SVG using only rect, circle and line elements, points sorted by (x, y).
RenderResult render_svg(const CompactSet& set, const Viewport& view, int width, int height);

}  // namespace ifslab
