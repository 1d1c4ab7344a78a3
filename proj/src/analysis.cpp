#include "ifslab/analysis.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "ifslab/detail/format.hpp"
#include "ifslab/limits.hpp"

namespace ifslab {

using detail::num;
using detail::point_str;

double WitnessingSequence::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

double WitnessingSequence::distance_to_repellor(std::size_t k) const {
  return map.space().distance(points.at(k), repellor);
}

double WitnessingSequence::terminal_distance() const { return distance_to_repellor(points.size() - 1); }

namespace {

struct BackwardOrbit {
  std::vector<Point> points;
  std::vector<double> residuals;
};

// Extends x0 backwards with step(y) until `length` steps or a failure.
template <typename Step>
BackwardOrbit backward_orbit(const Map& phi, const Point& x0, int length, double tol, Step step) {
  BackwardOrbit out{{x0}, {}};
  for (int k = 0; k < length; ++k) {
    const Point& y = out.points.back();
    Point x;
    try {
      x = step(y);
    } catch (const Error& e) {
      throw WitnessError(std::string("witnessing_sequence: step ") + std::to_string(k + 1) + ": " + e.what(),
                         out.points, k + 1);
    }
    const double r = phi.space().distance(phi(x), y);
    if (r > tol)
      throw WitnessError("witnessing_sequence: step " + std::to_string(k + 1) + " residual " + num(r) +
                             " exceeds tol " + num(tol),
                         out.points, k + 1);
    out.points.push_back(x);
    out.residuals.push_back(r);
  }
  return out;
}

WitnessingSequence assemble(const Map& phi, BackwardOrbit orbit, const Point& repellor, double tol, double radius) {
  WitnessingSequence w{phi, std::move(orbit.points), repellor, std::move(orbit.residuals), tol, false};
  w.converged = w.terminal_distance() <= radius;
  return w;
}

// Distances to the repellor never grow and the last is below the first.
bool approaches_repellor(const WitnessingSequence& w) {
  for (std::size_t k = 1; k < w.points.size(); ++k)
    if (w.distance_to_repellor(k) > w.distance_to_repellor(k - 1)) return false;
  return w.terminal_distance() < w.distance_to_repellor(0);
}

Point nearest_fixed_point(const Map& phi, const Point& p) {
  if (!phi.fixed_set() || phi.fixed_set()->empty()) return p;
  Point best = p;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Region& r : *phi.fixed_set()) {
    const Point q = region_nearest(phi.space(), r, p);
    const double d = phi.space().distance(p, q);
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  }
  return best;
}

bool maps_agree(const Map& a, const Map& b, const std::vector<Point>& probes) {
  const Space& s = a.space();
  for (const Point& p : probes) {
    try {
      if (s.distance(a(p), b(p)) > 1e-12) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace

WitnessingSequence witnessing_sequence(const Map& phi, const Point& x0, const Point& repellor, int length,
                                       double tol, double convergence_radius) {
  if (length < 1) throw Error("witnessing_sequence: length must be at least 1");
  if (!(tol > 0.0)) throw Error("witnessing_sequence: tol must be positive");
  const Space& space = phi.space();
  if (!(space.distance(phi(x0), x0) > tol))
    throw Error("witnessing_sequence: x0 " + point_str(x0) + " is fixed by the map");

  std::optional<WitnessError> last_error;
  for (const MonotoneBranch& br : phi.branches()) {
    if (!br.contains_param(br.to_param(repellor))) continue;
    try {
      auto orbit = backward_orbit(phi, x0, length, tol,
                                  [&](const Point& y) { return preimage_on_branch(phi, y, br, tol); });
      return assemble(phi, std::move(orbit), repellor, tol, convergence_radius);
    } catch (const WitnessError& e) {
      if (!last_error || e.partial().size() > last_error->partial().size()) last_error = e;
    }
  }
  if (phi.has_inverse()) {
    auto orbit = backward_orbit(phi, x0, length, tol, phi.inverse());
    return assemble(phi, std::move(orbit), repellor, tol, convergence_radius);
  }
  if (last_error) throw *last_error;
  throw Error("witnessing_sequence: map '" + phi.label() +
              "' has no monotone branch containing the repellor and no inverse");
}

AlrReport alr_verify(const Map& phi, const CompactSet& samples, const AlrOptions& opts) {
  const Space& space = phi.space();
  AlrReport report;
  report.attracting = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Point cur = samples[i];
    bool cauchy = false;
    for (int n = 0; n < opts.n_max; ++n) {
      const Point next = phi(cur);
      const double step = space.distance(next, cur);
      cur = next;
      if (step < opts.tol) {
        cauchy = true;
        break;
      }
    }
    if (!cauchy) {
      report.attracting = false;
      report.attracting_failure = "orbit of sample " + std::to_string(i) + " " + point_str(samples[i]) +
                                  " is not Cauchy within " + std::to_string(opts.n_max) + " steps";
      break;
    }
    if (space.distance(phi(cur), cur) > opts.tol) {
      report.attracting = false;
      report.attracting_failure = "orbit limit of sample " + std::to_string(i) + " is not fixed";
      break;
    }
    report.limits.push_back(cur);
  }

  std::optional<WitnessingSequence> fallback;
  auto consider = [&](const Point& x0, const Point& rep) -> bool {
    try {
      WitnessingSequence w =
          witnessing_sequence(phi, x0, rep, opts.witness_length, opts.witness_tol, opts.convergence_radius);
      if (!approaches_repellor(w)) return false;
      if (w.converged) {
        report.witness = std::move(w);
        return true;
      }
      if (!fallback) fallback = std::move(w);
    } catch (const Error&) {
    }
    return false;
  };

  if (!phi.branches().empty()) {
    bool done = false;
    for (const MonotoneBranch& br : phi.branches()) {
      for (const double end : {br.hi, br.lo}) {
        const Point rep = br.to_point(end);
        if (space.distance(phi(rep), rep) > opts.tol) continue;
        const Point x0 = opts.witness_start.value_or(br.to_point(0.5 * (br.lo + br.hi)));
        if (consider(x0, rep)) {
          done = true;
          break;
        }
      }
      if (done) break;
    }
  } else if (phi.has_inverse()) {
    std::optional<Point> x0 = opts.witness_start;
    if (!x0) {
      for (const Point& p : samples.points())
        if (space.distance(phi(p), p) > opts.tol) {
          x0 = p;
          break;
        }
    }
    if (!x0) {
      report.repellor_note = "no sample is moved by the map";
      return report;
    }
    Point end = *x0;
    for (int k = 0; k < opts.witness_length; ++k) end = phi.inverse()(end);
    consider(*x0, nearest_fixed_point(phi, end));
  } else {
    throw Error("map lacks monotone branches");
  }

  if (!report.witness && fallback) report.witness = std::move(fallback);
  report.repellor_found = report.witness.has_value();
  if (!report.repellor_found && report.repellor_note.empty())
    report.repellor_note = "no declared fixed point admits a witnessing sequence";
  else if (report.witness && !report.witness->converged)
    report.repellor_note = "witness approaches the repellor but has not reached the convergence radius";
  return report;
}

StrictRefuteReport strict_refute(const IfsSystem& F, const CompactSet& A, const WitnessingSequence& witness,
                                 int tail_start, int n_max, double eps) {
  if (!(eps > 0.0)) throw Error("strict_refute: eps must be positive");
  if (n_max < 1) throw Error("strict_refute: n_max must be at least 1");
  const Space& space = F.space();
  const auto& xs = witness.points;
  if (xs.size() < 2) throw Error("strict_refute: witness too short");
  const int N = static_cast<int>(xs.size()) - 1;

  std::vector<Point> probes(xs.begin(), xs.end());
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) probes.push_back(space.sample(rng));
  std::optional<std::size_t> index;
  for (std::size_t i = 0; i < F.size() && !index; ++i)
    if (maps_agree(F[i], witness.map, probes)) index = i;
  if (!index) throw Error("strict_refute: the witness map is not a member of F");

  if (point_set_distance(witness.repellor, A) > eps)
    throw Error("strict_refute: repellor " + point_str(witness.repellor) + " is farther than eps from A");
  StrictRefuteReport rep;
  rep.witness_map_index = *index;
  rep.x0_distance = point_set_distance(xs.front(), A);
  if (!(rep.x0_distance > 3.0 * eps))
    throw Error("strict_refute: x0 lies within 3 eps of A (d = " + num(rep.x0_distance) + ")");

  const double near = 10.0 * eps;
  if (tail_start < 0) {
    tail_start = -1;
    for (int n = N; n >= 0 && witness.distance_to_repellor(static_cast<std::size_t>(n)) < near; --n) tail_start = n;
    if (tail_start < 0)
      throw Error("choose larger n0: the witness never comes within 10 eps of the repellor");
  } else {
    if (tail_start > N)
      throw Error("strict_refute: witness of length " + std::to_string(N) + " is shorter than tail_start " +
                  std::to_string(tail_start));
    for (int n = tail_start; n <= N; ++n)
      if (point_set_distance(xs[static_cast<std::size_t>(n)], A) > near + eps)
        throw Error("choose larger n0: witness point " + std::to_string(n) + " is not near A");
  }
  if (tail_start < 1) throw Error("choose larger n0: the tail must start after x0");

  int horizon = N;
  for (int k = 1; k <= N; ++k)
    if (space.distance(xs[static_cast<std::size_t>(k)], xs[static_cast<std::size_t>(k) - 1]) < 0.5 * eps) {
      horizon = k - 1;
      break;
    }
  if (horizon < tail_start)
    throw Error("strict_refute: witness points crowd below eps/2 before the tail starts; use a smaller eps");

  std::vector<Point> kpts(xs.begin() + tail_start, xs.begin() + horizon + 1);
  kpts.push_back(witness.repellor);
  CompactSet K = CompactSet::snapped(space, std::move(kpts), eps);

  const int n_eff = std::min(n_max, horizon);
  const IfsSystem G = F.with_first(*index).with_target(A);
  OrbitRecord orbit = iterate_orbit(G, K, n_eff, eps);
  rep.truncated = orbit.truncated;
  rep.tail_start = tail_start;
  rep.horizon = static_cast<int>(orbit.steps.size()) - 1;
  rep.distances = orbit.distances;
  for (const CompactSet& s : orbit.steps) rep.margins.push_back(point_set_distance(xs.front(), s));
  rep.K = std::move(K);

  rep.refuted = rep.horizon >= tail_start;
  rep.min_distance = std::numeric_limits<double>::infinity();
  for (int n = tail_start; n <= rep.horizon; ++n) {
    const double d = rep.distances[static_cast<std::size_t>(n)];
    rep.min_distance = std::min(rep.min_distance, d);
    if (d < rep.x0_distance - 3.0 * eps) rep.refuted = false;
  }
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Diverged: return "diverged";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

PointwiseReport pointwise_test(const IfsSystem& F, const Point& x, const CompactSet& A, int n_max, double tol,
                               double eps) {
  if (!(tol > 0.0) || !(eps > 0.0)) throw Error("pointwise_test: tol and eps must be positive");
  const IfsSystem G = F.with_target(A);
  OrbitRecord orbit = iterate_orbit(G, CompactSet(F.space(), {x}, eps), n_max, eps);
  PointwiseReport rep;
  rep.distances = orbit.distances;
  rep.truncated = orbit.truncated;
  for (const CompactSet& s : orbit.steps) rep.point_counts.push_back(s.size());

  int run = 0;
  for (std::size_t n = 0; n < rep.distances.size(); ++n) {
    run = rep.distances[n] < tol ? run + 1 : 0;
    if (run == kPersistence) {
      rep.verdict = Verdict::Converged;
      rep.converged_at = static_cast<int>(n) - (kPersistence - 1);
      return rep;
    }
  }

  const auto& d = rep.distances;
  const std::size_t window = std::min<std::size_t>(10, orbit.steps.size());
  bool diverged = false;
  if (window >= 2) {
    const auto est = estimate_li_ls(orbit.steps, static_cast<int>(window), 2.0 * eps);
    const double far = std::max(3.0 * eps, tol);
    if (est.ls)
      for (const Point& p : est.ls->points())
        if (point_set_distance(p, A) > far) {
          diverged = true;
          break;
        }
    const double running_min = *std::min_element(d.begin(), d.end());
    bool nondecreasing = true;
    for (std::size_t n = d.size() - window + 1; n < d.size(); ++n)
      if (d[n] < d[n - 1]) nondecreasing = false;
    if (d.back() > 2.0 * running_min && nondecreasing) diverged = true;
  }
  rep.verdict = diverged ? Verdict::Diverged : Verdict::Inconclusive;
  return rep;
}

SqueezeReport squeeze_check(const IfsSystem& W, const Map& phi, const Point& x, int n_max, double eps) {
  if (!(eps > 0.0)) throw Error("squeeze_check: eps must be positive");
  const Space& space = W.space();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Point s = space.sample(rng);
    for (std::size_t k = 0; k < W.size(); ++k) {
      const Point y = W[k](s);
      if (space.distance(phi(y), y) > eps)
        throw Error("squeeze_check: W(X) is not inside Fix(phi): sample " + std::to_string(i) + " " + point_str(s) +
                    " under map " + std::to_string(k) + " lands on " + point_str(y) + ", moved by phi");
    }
  }

  std::vector<Map> fmaps{phi};
  fmaps.insert(fmaps.end(), W.maps().begin(), W.maps().end());
  const IfsSystem F(space, std::move(fmaps));
  CompactSet wn(space, {x}, eps), fn(space, {x}, eps);
  Point phin = x;
  SqueezeReport rep;
  for (int n = 1; n <= n_max; ++n) {
    wn = apply_operator(W, wn, eps);
    fn = apply_operator(F, fn, eps);
    phin = phi(phin);
    const double lower = directed_hausdorff(wn, fn);
    if (lower > eps) {
      rep = {false, n, "W^n(x) leaves F^n(x) by " + num(lower)};
      return rep;
    }
    for (const Point& p : fn.points()) {
      if (space.distance(phi(p), p) <= eps || space.distance(p, phin) <= eps) continue;
      rep = {false, n, "point " + point_str(p) + " of F^n(x) is neither fixed nor phi^n(x)"};
      return rep;
    }
  }
  return rep;
}

IfsSystem build_retract_ifs(const std::vector<RetractPart>& parts, double eps, std::size_t samples) {
  if (parts.empty()) throw Error("build_retract_ifs: no parts");
  if (!(eps > 0.0)) throw Error("build_retract_ifs: eps must be positive");
  const Space space = parts.front().w.space();
  std::vector<Map> maps;
  std::vector<Point> target_pts;
  double tol = eps;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const RetractPart& part = parts[k];
    tol = std::max(tol, part.a_net.resolution());
    std::mt19937_64 rng(13 + k);
    for (std::size_t i = 0; i < samples; ++i) {
      const Point y = part.retraction(space.sample(rng));
      if (space.distance(part.retraction(y), y) > 1e-12)
        throw Error("build_retract_ifs: retraction " + std::to_string(k) + " is not idempotent at " + point_str(y));
    }
    PointIndex index(space, part.a_net.points());
    for (std::size_t j = 0; j < part.w.size(); ++j)
      for (const Point& p : part.a_net.points())
        if (index.distance(part.w[j](p)) > tol)
          throw Error("build_retract_ifs: map " + std::to_string(j) + " of part " + std::to_string(k) +
                      " sends A_k outside A_k at " + point_str(p));
    for (const Map& w : part.w.maps()) maps.push_back(compose(w, part.retraction));
    target_pts.insert(target_pts.end(), part.a_net.points().begin(), part.a_net.points().end());
  }
  CompactSet target = CompactSet::snapped(space, std::move(target_pts), eps);
  IfsSystem F(space, std::move(maps), target);
  PointIndex index(space, target.points());
  std::mt19937_64 rng(17);
  for (std::size_t i = 0; i < samples; ++i) {
    const Point s = space.sample(rng);
    for (std::size_t j = 0; j < F.size(); ++j)
      if (index.distance(F[j](s)) > tol + 0.5 * eps)
        throw Error("build_retract_ifs: sampled image escapes A: map " + std::to_string(j) + " at " + point_str(s));
  }
  return F;
}

}  // namespace ifslab
