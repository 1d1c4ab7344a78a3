#include "ifslab/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ifslab/detail/format.hpp"
#include "ifslab/parallel.hpp"
#include "ifslab/serialize.hpp"

namespace ifslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt3 = std::sqrt(3.0);

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Located {
  std::vector<int> word;
  Point local;
  bool gap = false;
};

struct Geometry {
  FractalKind kind;
  double ratio;
  std::vector<Point> offsets;
};

Point scale_add(const Geometry& g, const Point& p, int i) {
  const Point& o = g.offsets[static_cast<std::size_t>(i)];
  if (g.kind == FractalKind::Cantor) return Point::real(g.ratio * p.x + o.x);
  return Point::plane(g.ratio * p.x + o.x, g.ratio * p.y + o.y);
}

Point unscale(const Geometry& g, const Point& p, int i) {
  const Point& o = g.offsets[static_cast<std::size_t>(i)];
  if (g.kind == FractalKind::Cantor) return Point::real((p.x - o.x) / g.ratio);
  return Point::plane((p.x - o.x) / g.ratio, (p.y - o.y) / g.ratio);
}

Point word_image(const Geometry& g, std::span<const int> word, Point p) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) p = scale_add(g, p, *it);
  return p;
}

// Reads the address of p (assumed inside the hull) for up to `depth` levels.
Located locate(const Geometry& g, const Point& p, int depth) {
  Located out;
  constexpr double t1 = 1.0 / 3.0, t2 = 2.0 / 3.0;
  switch (g.kind) {
    case FractalKind::Cantor: {
      double y = p.x;
      for (int d = 0; d < depth; ++d) {
        if (y > t1 && y < t2) {
          out.gap = true;
          break;
        }
        if (y <= t1) {
          out.word.push_back(0);
          y = 3.0 * y;
        } else {
          out.word.push_back(1);
          y = 3.0 * y - 2.0;
        }
      }
      out.local = Point::real(y);
      break;
    }
    case FractalKind::Carpet: {
      double u = p.x, v = p.y;
      auto cell = [](double t) { return t <= t1 ? 0 : (t >= t2 ? 2 : 1); };
      for (int d = 0; d < depth; ++d) {
        if (u > t1 && u < t2 && v > t1 && v < t2) {
          out.gap = true;
          break;
        }
        const int i = cell(u), j = cell(v);
        int idx = j * 3 + i;
        if (idx > 4) --idx;
        out.word.push_back(idx);
        u = 3.0 * u - i;
        v = 3.0 * v - j;
      }
      out.local = Point::plane(u, v);
      break;
    }
    case FractalKind::Triangle: {
      double l2 = p.y / (kSqrt3 / 2.0);
      double l1 = p.x - l2 / 2.0;
      double l0 = 1.0 - l1 - l2;
      for (int d = 0; d < depth; ++d) {
        if (l0 < 0.5 && l1 < 0.5 && l2 < 0.5) {
          out.gap = true;
          break;
        }
        double* l[3] = {&l0, &l1, &l2};
        int i = 0;
        for (int k = 1; k < 3; ++k)
          if (*l[k] > *l[i]) i = k;
        for (int k = 0; k < 3; ++k) *l[k] = k == i ? 2.0 * *l[k] - 1.0 : 2.0 * *l[k];
        out.word.push_back(i);
      }
      out.local = Point::plane(l1 + l2 / 2.0, l2 * kSqrt3 / 2.0);
      break;
    }
  }
  return out;
}

bool in_hull(const GapSystem& s, const Point& p, double tol = 1e-12) {
  return region_contains(s.W.space(), s.hull, p, tol);
}

// Homeomorphism of the unit disc onto a convex polygon, radial about c, using
// the polygon's gauge g(v) = max_e (n_e . v) / h_e.
Homeomorphism disc_to_polygon(const region::Polygon& poly, const Point& c, const Space& target) {
  struct Edge {
    double nx, ny, h;
  };
  std::vector<Edge> edges;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    const double dx = b.x - a.x, dy = b.y - a.y, len = std::hypot(dx, dy);
    const double nx = dy / len, ny = -dx / len;
    edges.push_back({nx, ny, nx * (a.x - c.x) + ny * (a.y - c.y)});
  }
  auto gauge = [edges](double x, double y) {
    double g = 0.0;
    for (const Edge& e : edges) g = std::max(g, (e.nx * x + e.ny * y) / e.h);
    return g;
  };
  PointFn forward = [gauge, c](const Point& p) {
    const double r = std::hypot(p.x, p.y);
    if (r == 0.0) return Point::plane(c.x, c.y);
    const double k = r / gauge(p.x, p.y);
    return Point::plane(c.x + k * p.x, c.y + k * p.y);
  };
  PointFn inverse = [gauge, c](const Point& q) {
    const double ux = q.x - c.x, uy = q.y - c.y, r = std::hypot(ux, uy);
    if (r == 0.0) return Point::plane(0.0, 0.0);
    const double k = gauge(ux, uy) / r;
    return Point::plane(k * ux, k * uy);
  };
  return Homeomorphism{Space::unit_disc(), target, std::move(forward), std::move(inverse), "disc->polygon", nullptr};
}

region::Polygon as_polygon(const Region& r) {
  if (const auto* p = std::get_if<region::Polygon>(&r)) return *p;
  const auto& b = std::get<region::Box>(r);
  return region::Polygon{{Point::plane(b.x_lo, b.y_lo), Point::plane(b.x_hi, b.y_lo), Point::plane(b.x_hi, b.y_hi),
                          Point::plane(b.x_lo, b.y_hi)}};
}

std::vector<Point> hull_vertices(const GapSystem& s) {
  if (s.kind == FractalKind::Cantor) return {Point::real(0.0), Point::real(1.0)};
  return as_polygon(s.hull).vertices;
}

CompactSet reference_net(const GapSystem& s, int depth) {
  CompactSet set(s.W.space(), hull_vertices(s), 1e-12);
  for (int d = 0; d < depth; ++d) set = apply_operator(s.W, set, 1e-12);
  return CompactSet(s.W.space(), std::vector<Point>(set.points().begin(), set.points().end()),
                    std::pow(s.ratio, depth));
}

Map build_phi(const GapSystem& s) {
  const Geometry g{s.kind, s.ratio, s.offsets};
  const Map phi0 = s.phi0;
  const Region hull = s.hull;
  const Region gap = s.central_gap;
  const Space space = s.W.space();
  const int depth = s.phi_depth;
  const Json desc = {{"kind", "gallery_phi"},
                     {"params",
                      {{"fractal", to_string(s.kind)}, {"membership_depth", s.membership_depth}, {"simplified", s.simplified}}}};
  const std::string label = std::string(s.simplified ? "phi_simplified[" : "phi[") + s.name + "]";

  if (s.simplified) {
    Map m(space, [phi0, gap, space](const Point& p) { return phi0(region_nearest(space, gap, p)); }, label, desc);
    m = m.with_fixed_set(phi0.fixed_set().value_or(std::vector<Region>{})).with_branches(phi0.branches());
    if (phi0.has_inverse()) {
      const PointFn inv = phi0.inverse();
      m = m.with_inverse([inv, gap, space](const Point& p) { return inv(region_nearest(space, gap, p)); });
    }
    return m;
  }

  Map m(
      space,
      [g, phi0, hull, space, depth](const Point& p) {
        if (!region_contains(space, hull, p, 0.0)) return region_nearest(space, hull, p);
        const Located at = locate(g, p, depth);
        if (!at.gap) return p;
        return word_image(g, at.word, phi0(at.local));
      },
      label, desc);
  m = m.with_fixed_set({region::PointList{std::vector<Point>(s.fractal_ref.points().begin(), s.fractal_ref.points().end())}})
          .with_branches(phi0.branches());
  const PointFn inv = phi0.inverse();
  m = m.with_inverse([g, inv, hull, space, depth](const Point& p) {
    if (!region_contains(space, hull, p, 0.0)) return p;
    const Located at = locate(g, p, depth);
    if (!at.gap) return p;
    return word_image(g, at.word, inv(at.local));
  });
  return m;
}

GapSystem finish(GapSystem s) {
  if (s.membership_depth < 1) throw Error("gap system: membership_depth must be at least 1");
  s.fractal_ref = reference_net(s, s.membership_depth);
  s.phi = build_phi(s);
  return s;
}

GapSystem skeleton(FractalKind kind, int membership_depth, bool simplified) {
  const Space line = Space(SpaceKind::RealLine, Bounds{-1.0, 2.0, 0.0, 0.0});
  const Space plane = Space::plane(Bounds{-1.0, 2.0, -1.0, 2.0});
  const Space& space = kind == FractalKind::Cantor ? line : plane;
  double ratio = 0.0;
  std::vector<Point> offsets;
  Region hull, gap;
  Point center;
  switch (kind) {
    case FractalKind::Cantor:
      ratio = 1.0 / 3.0;
      offsets = {Point::real(0.0), Point::real(2.0 / 3.0)};
      hull = region::Interval{0.0, 1.0};
      gap = region::Interval{1.0 / 3.0, 2.0 / 3.0};
      center = Point::real(0.5);
      break;
    case FractalKind::Carpet:
      ratio = 1.0 / 3.0;
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
          if (i != 1 || j != 1) offsets.push_back(Point::plane(i / 3.0, j / 3.0));
      hull = region::Box{0.0, 0.0, 1.0, 1.0};
      gap = region::Box{1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
      center = Point::plane(0.5, 0.5);
      break;
    case FractalKind::Triangle:
      ratio = 0.5;
      offsets = {Point::plane(0.0, 0.0), Point::plane(0.5, 0.0), Point::plane(0.25, kSqrt3 / 4.0)};
      hull = region::Polygon{{Point::plane(0.0, 0.0), Point::plane(1.0, 0.0), Point::plane(0.5, kSqrt3 / 2.0)}};
      gap = region::Polygon{{Point::plane(0.5, 0.0), Point::plane(0.75, kSqrt3 / 4.0), Point::plane(0.25, kSqrt3 / 4.0)}};
      center = Point::plane(0.5, kSqrt3 / 6.0);
      break;
  }
  std::vector<Map> W;
  for (const Point& o : offsets) W.push_back(make_affine(space, ratio, o));
  Map phi0 = kind == FractalKind::Cantor
                 ? make_interval_alr(1.0 / 3.0, 2.0 / 3.0, AlrVariant::Square)
                 : conjugate_map(make_disc_alr(), disc_to_polygon(as_polygon(gap), center, space));
  const std::string name = kind == FractalKind::Cantor ? "cantor"
                           : kind == FractalKind::Carpet ? "sierpinski-carpet"
                                                         : "sierpinski-triangle";
  return GapSystem{kind,
                   name,
                   IfsSystem(space, std::move(W)),
                   hull,
                   gap,
                   CompactSet(space, {center}, 1.0),
                   phi0,
                   phi0,
                   membership_depth,
                   kind == FractalKind::Triangle ? 45 : 30,
                   simplified,
                   ratio,
                   offsets,
                   center};
}

Geometry geometry(const GapSystem& s) { return {s.kind, s.ratio, s.offsets}; }

}  // namespace

std::string to_string(FractalKind kind) {
  switch (kind) {
    case FractalKind::Cantor: return "cantor";
    case FractalKind::Triangle: return "sierpinski-triangle";
    case FractalKind::Carpet: return "sierpinski-carpet";
  }
  return "?";
}

GapSystem cantor_system(int membership_depth, bool simplified) {
  return finish(skeleton(FractalKind::Cantor, membership_depth, simplified));
}

GapSystem sierpinski_triangle_system(int membership_depth, bool simplified) {
  return finish(skeleton(FractalKind::Triangle, membership_depth, simplified));
}

GapSystem sierpinski_carpet_system(int membership_depth, bool simplified) {
  return finish(skeleton(FractalKind::Carpet, membership_depth, simplified));
}

GapSystem gap_system(FractalKind kind, int membership_depth, bool simplified) {
  return finish(skeleton(kind, membership_depth, simplified));
}

Map gallery_phi_from_json(const Json& params) {
  const std::string fractal = params.value("fractal", std::string("cantor"));
  FractalKind kind;
  if (fractal == "cantor")
    kind = FractalKind::Cantor;
  else if (fractal == "sierpinski-triangle")
    kind = FractalKind::Triangle;
  else if (fractal == "sierpinski-carpet")
    kind = FractalKind::Carpet;
  else
    throw Error("unknown gallery fractal '" + fractal + "'");
  const int fallback = kind == FractalKind::Cantor ? 14 : (kind == FractalKind::Triangle ? 10 : 6);
  return gap_system(kind, params.value("membership_depth", fallback), params.value("simplified", false)).phi;
}

GapAddress gap_address(const Point& x, const GapSystem& system, int depth) {
  if (!in_hull(system, x)) throw Error("gap_address: " + detail::point_str(x) + " lies outside the hull");
  const Located at = locate(geometry(system), x, depth < 0 ? system.membership_depth : depth);
  return GapAddress{at.word, !at.gap};
}

Point apply_word(const GapSystem& system, std::span<const int> word, const Point& p) {
  return word_image(geometry(system), word, p);
}

Point apply_word_inverse(const GapSystem& system, std::span<const int> word, const Point& p) {
  const Geometry g = geometry(system);
  Point q = p;
  for (int i : word) q = unscale(g, q, i);
  return q;
}

std::vector<GapAddress> gap_words(const GapSystem& system, int depth) {
  std::vector<GapAddress> out{GapAddress{{}, false}};
  const int k = static_cast<int>(system.W.size());
  std::size_t level_begin = 0;
  for (int d = 1; d <= depth; ++d) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (int c = 0; c < k; ++c) {
        GapAddress next = out[i];
        next.word.push_back(c);
        out.push_back(std::move(next));
      }
    level_begin = level_end;
  }
  return out;
}

ConjugationReport conjugation_identity_check(const GapSystem& system, const std::vector<GapAddress>& words,
                                             std::size_t w_index) {
  if (w_index >= system.W.size()) throw Error("conjugation_identity_check: map index out of range");
  const Map& w = system.W[w_index];
  ConjugationReport rep;
  std::mt19937_64 rng(3);
  std::vector<Point> probes;
  for (int i = 0; i < 100; ++i) {
    const double a = uniform01(rng), b = uniform01(rng);
    probes.push_back(system.kind == FractalKind::Cantor ? Point::real(a) : Point::plane(a, b));
  }
  for (const GapAddress& addr : words) {
    if (addr.in_fractal) continue;
    ++rep.checked;
    const Point q = w(apply_word(system, addr.word, system.gap_center));
    const GapAddress got = gap_address(q, system, addr.depth() + 2);
    std::vector<int> expected{static_cast<int>(w_index)};
    expected.insert(expected.end(), addr.word.begin(), addr.word.end());
    if (got.in_fractal || got.word != expected) {
      rep.passed = false;
      if (rep.failure.empty()) rep.failure = "gap address of w(I) differs for a word of length " + std::to_string(addr.depth());
      continue;
    }
    for (const Point& s : probes) {
      const double err = system.W.space().distance(w(apply_word(system, addr.word, s)), apply_word(system, got.word, s));
      rep.max_error = std::max(rep.max_error, err);
      if (err > 1e-12 && rep.passed) {
        rep.passed = false;
        rep.failure = "w o w_u differs from w_{w(I)} by " + detail::num(err);
      }
    }
  }
  return rep;
}

CommutativityReport commutativity_check(const GapSystem& system, const CompactSet& samples, double tol) {
  struct Worst {
    double d = -1.0;
    std::size_t sample = 0, map = 0, checked = 0;
  };
  const std::size_t n = samples.size();
  constexpr std::size_t kMinChunk = 256;
  std::vector<Worst> slots(chunk_count(n, kMinChunk));
  const auto pts = samples.points();
  const Space& space = system.W.space();
  parallel_chunks(
      n,
      [&](std::size_t b, std::size_t e, std::size_t c) {
        Worst w;
        for (std::size_t i = b; i < e; ++i) {
          if (!in_hull(system, pts[i])) continue;
          ++w.checked;
          const Point px = system.phi(pts[i]);
          for (std::size_t k = 0; k < system.W.size(); ++k) {
            const double d = space.distance(system.phi(system.W[k](pts[i])), system.W[k](px));
            if (d > w.d) {
              w.d = d;
              w.sample = i;
              w.map = k;
            }
          }
        }
        slots[c] = w;
      },
      kMinChunk);
  Worst best;
  std::size_t checked = 0;
  for (const Worst& w : slots) {
    checked += w.checked;
    if (w.d > best.d) best = w;
  }
  CommutativityReport rep;
  rep.checked = checked;
  rep.max_defect = std::max(0.0, best.d);
  rep.worst_sample = best.sample;
  rep.worst_map = best.map;
  rep.passed = rep.max_defect <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Piecewise examples

namespace {

struct CirclePart {
  double start;
  double len;
};

Map half_arc_map(double start, double len, int half) {
  const region::Arc arc{start, wrap_angle(start + len)};
  return Map(Space::circle(),
             [arc, start, len, half](const Point& p) {
               const double u = std::min(arc_offset(arc, p.x), len);
               return Point::angle(start + (half * len + u) / 2.0);
             },
             "half" + std::to_string(half) + "[" + detail::num(start) + "]");
}

// Piecewise-linear circle map sending the gap after point k onto the gap
// after point k+1.
Map gap_shift(const std::vector<double>& pts) {
  const std::size_t m = pts.size();
  std::vector<double> lens(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double l = wrap_angle(pts[(k + 1) % m] - pts[k]);
    lens[k] = l == 0.0 ? kTwoPi : l;
  }
  return Map(Space::circle(),
             [pts, lens](const Point& p) {
               const std::size_t m = pts.size();
               for (std::size_t k = 0; k < m; ++k) {
                 const double u = wrap_angle(p.x - pts[k]);
                 if (u < lens[k]) {
                   const std::size_t n = (k + 1) % m;
                   return Point::angle(pts[n] + u / lens[k] * lens[n]);
                 }
               }
               return p;
             },
             "gap_shift");
}

}  // namespace

PiecewiseExample circle_example(const std::vector<Region>& parts, double eps) {
  if (parts.empty()) throw Error("circle_example: needs at least one part");
  const Space circle = Space::circle();
  std::vector<CirclePart> ps;
  bool full = false;
  for (const Region& r : parts) {
    if (const auto* a = std::get_if<region::Arc>(&r)) {
      const double len = arc_length(*a);
      if (len == kTwoPi) full = true;
      ps.push_back({wrap_angle(a->alpha), len});
    } else if (const auto* s = std::get_if<region::Singleton>(&r)) {
      ps.push_back({wrap_angle(s->point.x), 0.0});
    } else {
      throw Error("circle_example: parts must be arcs or points, got " + region_name(r));
    }
  }
  if (full) {
    if (ps.size() > 1) throw Error("circle_example: the full circle overlaps every other part");
    const CompactSet A = epsilon_net(circle, region::Arc{0.0, 0.0}, eps);
    const IfsSystem W(circle, {make_identity(circle), make_rotation(kTwoPi * (std::sqrt(5.0) - 1.0) / 2.0)}, A);
    return PiecewiseExample{W, W, make_identity(circle), A, {}, {}, {}, {}, {}, {}};
  }
  std::sort(ps.begin(), ps.end(), [](const CirclePart& a, const CirclePart& b) { return a.start < b.start; });
  const std::size_t m = ps.size();
  for (std::size_t k = 0; k < m && m > 1; ++k) {
    const CirclePart& a = ps[k];
    const CirclePart& b = ps[(k + 1) % m];
    if (!(wrap_angle(b.start - a.start) > a.len)) throw Error("circle_example: parts overlap or touch");
  }

  std::vector<MapPiece> pieces;
  std::vector<RetractPart> rparts;
  for (std::size_t k = 0; k < m; ++k) {
    const CirclePart& p = ps[k];
    const double end = wrap_angle(p.start + p.len);
    const double next = ps[(k + 1) % m].start;
    pieces.push_back({region::Arc{end, next}, make_arc_alr(end, next)});
    if (p.len > 0.0) {
      const region::Arc arc{p.start, end};
      pieces.push_back({arc, make_identity(circle)});
      rparts.push_back({epsilon_net(circle, arc, eps), make_arc_retraction(p.start, end),
                        IfsSystem(circle, {half_arc_map(p.start, p.len, 0), half_arc_map(p.start, p.len, 1)})});
    } else {
      const Point q = Point::angle(p.start);
      rparts.push_back({CompactSet(circle, {q}, eps), make_constant(circle, q), IfsSystem(circle, {make_identity(circle)})});
    }
  }
  const Map phi = union_maps(std::move(pieces));
  const IfsSystem W = build_retract_ifs(rparts, eps);
  const CompactSet A = *W.target();

  PiecewiseExample ex{W.with_map(phi), W, phi, A, {}, {}, {}, {}, {}, {}};
  const double gap_start = wrap_angle(ps[0].start + ps[0].len);
  double gap_len = wrap_angle(ps[1 % m].start - gap_start);
  if (gap_len == 0.0) gap_len = kTwoPi;
  ex.witness_x0 = Point::angle(gap_start + gap_len / 2.0);
  ex.witness_repellor = Point::angle(gap_start + gap_len);

  const bool finite = std::all_of(ps.begin(), ps.end(), [](const CirclePart& p) { return p.len == 0.0; });
  if (finite) {
    std::vector<double> pts;
    for (const CirclePart& p : ps) pts.push_back(p.start);
    ex.shift = gap_shift(pts);
    ex.two_map = IfsSystem(circle, {phi, compose(phi, *ex.shift)}, A);
  }
  return ex;
}

PiecewiseExample line_example(const std::vector<Region>& parts, double eps) {
  if (parts.size() < 2) throw Error("line_example: needs at least two parts");
  const Space line = Space::real_line();
  std::vector<region::Interval> iv;
  for (const Region& r : parts) {
    if (const auto* i = std::get_if<region::Interval>(&r)) {
      if (!std::isfinite(i->lo) || !std::isfinite(i->hi) || i->lo > i->hi)
        throw Error("line_example: parts must be bounded intervals lo <= hi");
      iv.push_back(*i);
    } else if (const auto* s = std::get_if<region::Singleton>(&r)) {
      iv.push_back({s->point.x, s->point.x});
    } else {
      throw Error("line_example: parts must be intervals or points, got " + region_name(r));
    }
  }
  for (std::size_t k = 0; k + 1 < iv.size(); ++k)
    if (!(iv[k].hi < iv[k + 1].lo)) throw Error("line_example: parts must be sorted and disjoint");

  std::vector<MapPiece> pieces;
  std::vector<RetractPart> rparts;
  pieces.push_back({region::Interval{-kInf, iv.front().lo}, make_constant(line, Point::real(iv.front().lo))});
  for (std::size_t k = 0; k < iv.size(); ++k) {
    const region::Interval& p = iv[k];
    pieces.push_back({p, make_identity(line)});
    if (k + 1 < iv.size())
      pieces.push_back({region::Interval{p.hi, iv[k + 1].lo}, make_interval_alr(p.hi, iv[k + 1].lo, AlrVariant::Square)});
    if (p.lo == p.hi) {
      const Point q = Point::real(p.lo);
      rparts.push_back({CompactSet(line, {q}, eps), make_constant(line, q), IfsSystem(line, {make_identity(line)})});
    } else {
      rparts.push_back({epsilon_net(line, p, eps), make_retraction(line, p),
                        IfsSystem(line, {make_affine(line, 0.5, Point::real(p.lo / 2.0)),
                                         make_affine(line, 0.5, Point::real(p.hi / 2.0))})});
    }
  }
  pieces.push_back({region::Interval{iv.back().hi, kInf}, make_constant(line, Point::real(iv.back().hi))});
  const Map phi = union_maps(std::move(pieces));
  const IfsSystem W = build_retract_ifs(rparts, eps);
  const CompactSet A = *W.target();

  const double a1 = iv[0].hi, b1 = iv[1].lo;
  const Map simple = union_maps({{region::Interval{-kInf, a1}, make_constant(line, Point::real(a1))},
                                 {region::Interval{a1, b1}, make_interval_alr(a1, b1, AlrVariant::Square)},
                                 {region::Interval{b1, kInf}, make_constant(line, Point::real(b1))}});
  PiecewiseExample ex{W.with_map(phi), W, phi, A, simple, W.with_map(simple), {}, {}, {}, {}};
  ex.witness_x0 = Point::real((a1 + b1) / 2.0);
  ex.witness_repellor = Point::real(b1);
  return ex;
}

// ---------------------------------------------------------------------------
// Presets

std::vector<Region> parse_parts(const Json& parts, bool circle) {
  if (!parts.is_array() || parts.empty()) throw Error("parts must be a nonempty JSON array");
  auto point = [circle](double v) { return circle ? Point::angle(v) : Point::real(v); };
  std::vector<Region> out;
  for (const Json& p : parts) {
    if (p.is_number()) {
      out.push_back(region::Singleton{point(p.get<double>())});
    } else if (p.is_array() && p.size() == 1 && p[0].is_number()) {
      out.push_back(region::Singleton{point(p[0].get<double>())});
    } else if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
      const double a = p[0].get<double>(), b = p[1].get<double>();
      if (circle)
        out.push_back(region::Arc{a, b});
      else
        out.push_back(region::Interval{a, b});
    } else {
      throw Error("bad part " + p.dump() + " (expected a number or a pair)");
    }
  }
  return out;
}

std::vector<std::string> preset_names() {
  return {"cantor", "sierpinski-triangle", "sierpinski-carpet", "kwietniak", "circle:<parts>", "line:<parts>"};
}

Preset make_preset(const std::string& preset_text, std::optional<double> epsilon) {
  const auto colon = preset_text.find(':');
  const std::string name = preset_text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : preset_text.substr(colon + 1);
  Json opts = Json::object();
  if (!rest.empty()) {
    try {
      opts = Json::parse(rest);
    } catch (const Json::parse_error& e) {
      throw Error("preset '" + name + "': bad JSON options: " + e.what());
    }
  }
  std::mt19937_64 rng(20240601);

  if (name == "cantor" || name == "sierpinski-triangle" || name == "sierpinski-carpet") {
    if (!opts.is_object()) throw Error("preset '" + name + "': options must be a JSON object");
    const FractalKind kind = name == "cantor"                ? FractalKind::Cantor
                             : name == "sierpinski-triangle" ? FractalKind::Triangle
                                                             : FractalKind::Carpet;
    const int fallback = kind == FractalKind::Cantor ? 14 : (kind == FractalKind::Triangle ? 10 : 6);
    GapSystem gs = gap_system(kind, opts.value("membership_depth", fallback), opts.value("simplified", false));
    const double eps = epsilon.value_or(
        opts.value("epsilon", kind == FractalKind::Cantor ? 1e-4 : (kind == FractalKind::Triangle ? 0.005 : 0.01)));
    const CompactSet A = grid_snap(gs.fractal_ref, eps);
    Preset p{name, gs.W.with_map(gs.phi).with_target(A), gs.phi, {}, {}, 20, eps, 0.02, 20, {}, gs, {}};
    if (kind == FractalKind::Cantor) {
      p.witness_x0 = Point::real(0.5);
      p.witness_repellor = Point::real(2.0 / 3.0);
      for (int i = 0; i < 50; ++i) p.seeds.push_back(Point::real(uniform01(rng)));
    } else {
      p.tol = 0.05;
      p.n_max = 16;
      p.witness_x0 = gs.gap_center;
      p.witness_repellor = kind == FractalKind::Carpet ? Point::plane(0.5, 2.0 / 3.0) : Point::plane(0.5, kSqrt3 / 4.0);
      const auto& hull = gs.hull;
      while (p.seeds.size() < 20) {
        const double x = uniform01(rng);
        const double y = uniform01(rng) * (kind == FractalKind::Triangle ? kSqrt3 / 2.0 : 1.0);
        const Point q = Point::plane(x, y);
        if (region_contains(gs.W.space(), hull, q, 0.0)) p.seeds.push_back(q);
      }
    }
    return p;
  }

  if (name == "kwietniak") {
    const Map phi = make_kwietniak_map();
    const Space space = Space::compactified_line();
    const double eps = epsilon.value_or(0.02);
    const CompactSet A(space, {Point::infinity()}, eps);
    Preset p{name, IfsSystem(space, {phi}, A), phi, Point::real(-5.0), Point::infinity(), 20, eps, 0.05, 200, {}, {}, {}};
    for (int i = 0; i < 50; ++i) p.seeds.push_back(Point::real(-10.0 + 20.0 * uniform01(rng)));
    return p;
  }

  if (name == "circle" || name == "line") {
    if (rest.empty()) throw Error("preset '" + name + "' needs a JSON parts list, e.g. " + name + ":[0, [1, 2]]");
    const bool circle = name == "circle";
    const double eps = epsilon.value_or(1e-3);
    PiecewiseExample ex = circle ? circle_example(parse_parts(opts, true), eps) : line_example(parse_parts(opts, false), eps);
    Preset p{preset_text, ex.F, ex.phi, ex.witness_x0, ex.witness_repellor, 20, eps, 0.02, 40, {}, {}, ex};
    for (int i = 0; i < 50; ++i)
      p.seeds.push_back(circle ? Point::angle(kTwoPi * uniform01(rng)) : Point::real(-10.0 + 20.0 * uniform01(rng)));
    return p;
  }

  throw Error("unknown preset '" + name + "' (known: cantor, sierpinski-triangle, sierpinski-carpet, kwietniak, circle:<parts>, line:<parts>)");
}

}  // namespace ifslab
