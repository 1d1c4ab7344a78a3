#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ifslab/analysis.hpp"

namespace ifslab {

enum class FractalKind { Cantor, Triangle, Carpet };
std::string to_string(FractalKind kind);

/// Word u = [u_1, ..., u_k] naming the gap w_{u_1} o ... o w_{u_k}(I_0).
struct GapAddress {
  std::vector<int> word;
  bool in_fractal = false;

  int depth() const { return static_cast<int>(word.size()); }
  friend bool operator==(const GapAddress&, const GapAddress&) = default;
};

/// A self-similar fractal A with hull D, central gap I_0 and the map phi that
/// is the identity on A, w_I o phi0 o w_I^{-1} on each gap I and a retraction
/// onto D outside D.
///
/// Every map of W is z -> ratio * z + offsets[i]. Gap addresses are read to
/// `membership_depth`; phi reads them to `phi_depth`, which is deep enough
/// that an unaddressed gap moves by less than 1e-13.
struct GapSystem {
  FractalKind kind;
  std::string name;
  IfsSystem W;
  Region hull;
  /// Closure of the central gap.
  Region central_gap;
  CompactSet fractal_ref;
  Map phi;
  Map phi0;
  int membership_depth;
  int phi_depth;
  bool simplified;
  double ratio;
  std::vector<Point> offsets;
  /// A point of the open central gap (its centre).
  Point gap_center;
};

/// W = {x/3, (x+2)/3}, D = [0, 1], phi0 the square-variant ALR on [1/3, 2/3].
GapSystem cantor_system(int membership_depth = 14, bool simplified = false);
/// Three half-scale maps on (0,0), (1,0), (1/2, sqrt(3)/2).
GapSystem sierpinski_triangle_system(int membership_depth = 10, bool simplified = false);
/// Eight third-scale maps on the unit square, row-major without the centre.
GapSystem sierpinski_carpet_system(int membership_depth = 6, bool simplified = false);
GapSystem gap_system(FractalKind kind, int membership_depth, bool simplified);

/// Rebuilds the phi of a gallery fractal from {fractal, membership_depth, simplified}.
Map gallery_phi_from_json(const Json& params);

/// Address of x in D, read to `depth` levels (membership_depth when < 0).
/// Throws when x is outside D.
GapAddress gap_address(const Point& x, const GapSystem& system, int depth = -1);

Point apply_word(const GapSystem& system, std::span<const int> word, const Point& p);
Point apply_word_inverse(const GapSystem& system, std::span<const int> word, const Point& p);

/// Every gap word of length at most `depth`, shortest first.
std::vector<GapAddress> gap_words(const GapSystem& system, int depth);

struct ConjugationReport {
  bool passed = true;
  std::size_t checked = 0;
  double max_error = 0.0;
  std::string failure;
};

/// For each gap word u and the map w = W[w_index]: the address of w(I) is
/// [w_index] + u, and w o w_u agrees with w_{w(I)} on 100 points.
ConjugationReport conjugation_identity_check(const GapSystem& system, const std::vector<GapAddress>& words,
                                             std::size_t w_index);

struct CommutativityReport {
  bool passed = true;
  /// Samples inside the hull (the others are skipped).
  std::size_t checked = 0;
  double max_defect = 0.0;
  std::size_t worst_sample = 0;
  std::size_t worst_map = 0;
};

/// max over samples x in D and w in W of d(phi(w(x)), w(phi(x))).
CommutativityReport commutativity_check(const GapSystem& system, const CompactSet& samples, double tol);

/// A system built from pieces of a line or circle with its variants.
struct PiecewiseExample {
  /// W + {phi} (or W alone when phi is the identity), targeting A.
  IfsSystem F;
  IfsSystem W;
  Map phi;
  CompactSet A;
  /// Line: the clamp-then-ALR variant on the first gap, and W + {that map}.
  std::optional<Map> phi_simplified;
  std::optional<IfsSystem> F_simplified;
  /// Circle with a finite A: {phi, phi o w} with w shifting each gap onto the next.
  std::optional<IfsSystem> two_map;
  std::optional<Map> shift;
  /// Start of a witnessing sequence in the first gap and its repellor.
  std::optional<Point> witness_x0;
  std::optional<Point> witness_repellor;
};

/// Parts are disjoint arcs (region::Arc) or points (region::Singleton with an
/// angle) of the circle.
PiecewiseExample circle_example(const std::vector<Region>& parts, double eps);
/// Parts are at least two sorted, disjoint closed intervals or points.
PiecewiseExample line_example(const std::vector<Region>& parts, double eps);

/// A ready-to-run configuration.
struct Preset {
  std::string name;
  /// F with its target A.
  IfsSystem system;
  Map phi;
  /// Absent when A has no gap to witness in (the full circle).
  std::optional<Point> witness_x0;
  std::optional<Point> witness_repellor;
  int witness_length = 20;
  double epsilon = 1e-3;
  double tol = 0.02;
  int n_max = 40;
  std::vector<Point> seeds;
  std::optional<GapSystem> gap;
  std::optional<PiecewiseExample> piecewise;
};

/// Names: cantor, sierpinski-triangle, sierpinski-carpet (each optionally
/// followed by ":{...}" with simplified / membership_depth), kwietniak,
/// circle:<JSON parts>, line:<JSON parts>. Parts are numbers (points) or
/// pairs (arcs / intervals).
/// `epsilon` overrides the preset resolution (and any "epsilon" option).
Preset make_preset(const std::string& preset_text, std::optional<double> epsilon = std::nullopt);
std::vector<std::string> preset_names();

/// Parses the JSON parts list of circle: and line: presets.
std::vector<Region> parse_parts(const Json& parts, bool circle);

}  // namespace ifslab
