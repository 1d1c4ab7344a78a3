// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "ifslab/gallery.hpp"
#include "ifslab/limits.hpp"
#include "ifslab/parallel.hpp"

namespace fs = std::filesystem;
using namespace ifslab;

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---- independent oracles -------------------------------------------------

// Sorted endpoints of the level-k Cantor intervals.
std::vector<double> cantor_endpoints(int k) {
  std::vector<std::pair<double, double>> iv{{0.0, 1.0}};
  for (int d = 0; d < k; ++d) {
    std::vector<std::pair<double, double>> next;
    for (auto [a, b] : iv) {
      next.push_back({a, a + (b - a) / 3});
      next.push_back({b - (b - a) / 3, b});
    }
    iv = std::move(next);
  }
  std::vector<double> out;
  for (auto [a, b] : iv) {
    out.push_back(a);
    out.push_back(b);
  }
  return out;
}

// Distance from (px, py) to the union of level-`depth` carpet cells, found by
// descending only into cells that can still beat the best distance so far.
void carpet_descend(double px, double py, double x, double y, double size, int depth, double& best) {
  const double dx = std::max({x - px, 0.0, px - (x + size)});
  const double dy = std::max({y - py, 0.0, py - (y + size)});
  const double d = std::hypot(dx, dy);
  if (d >= best) return;
  if (depth == 0) {
    best = d;
    return;
  }
  const double s = size / 3;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      if (i != 1 || j != 1) carpet_descend(px, py, x + i * s, y + j * s, s, depth - 1, best);
}

double carpet_distance(double px, double py, int depth) {
  double best = std::numeric_limits<double>::infinity();
  carpet_descend(px, py, 0, 0, 1, depth, best);
  return best;
}

// ---- criteria --------------------------------------------------------------

Outcome contraction_sanity() {
  Outcome o;
  const double eps = 1e-4;
  const Space line = Space::real_line();
  const CompactSet seed = epsilon_net(line, region::Interval{-2, 2}, eps);
  const std::vector<std::pair<std::string, IfsSystem>> systems = {
      {"{x/2}", IfsSystem(line, {make_affine(line, 0.5, Point::real(0))}, CompactSet(line, {Point::real(0)}, eps))},
      {"{x/2,(x+1)/2}",
       IfsSystem(line, {make_affine(line, 0.5, Point::real(0)), make_affine(line, 0.5, Point::real(0.5))},
                 epsilon_net(line, region::Interval{0, 1}, eps))},
  };
  for (const auto& [name, F] : systems) {
    const OrbitRecord r = iterate_orbit(F, seed, 30, eps);
    const double last = r.distances.back();
    o.require(last <= 10 * eps, name + " final distance " + fmt(last));
    double lo = 1.0, hi = 0.0;
    for (std::size_t n = 1; n < r.distances.size(); ++n) {
      const double prev = r.distances[n - 1], cur = r.distances[n];
      // Ratios are meaningful while both distances sit above the 10 eps snap floor.
      if (prev < 0.1 && cur >= 10 * eps) {
        lo = std::min(lo, cur / prev);
        hi = std::max(hi, cur / prev);
      }
    }
    o.require(lo >= 0.45 && hi <= 0.55, name + " step ratio range [" + fmt(lo) + ", " + fmt(hi) + "]");
    o.note(name + ": d30=" + fmt(last) + " ratios in [" + fmt(lo) + ", " + fmt(hi) + "]");
  }
  return o;
}

Outcome alr_verification() {
  Outcome o;
  std::mt19937_64 rng(1);
  auto samples = [&](const Map& m, int n) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back(m.space().sample(rng));
    return CompactSet(m.space(), pts, 1e-9);
  };
  struct Case {
    std::string name;
    Map map;
    Point start;
    double bound;
  };
  const std::vector<Case> cases = {
      {"square", make_interval_alr(0, 1, AlrVariant::Square), Point::real(0.5), 1e-2},
      {"sqrt", make_interval_alr(0, 1, AlrVariant::Sqrt), Point::real(0.5), 1e-2},
      {"arc", make_arc_alr(0, kPi), Point::angle(kPi / 2), 1e-2},
      {"disc", make_disc_alr(), Point::plane(0, 0), 5e-2},
      {"kwietniak", make_kwietniak_map(), Point::real(-5), -1},
  };
  for (const Case& c : cases) {
    AlrOptions opts;
    opts.witness_start = c.start;
    const AlrReport r = alr_verify(c.map, samples(c.map, 200), opts);
    o.require(r.passed(), c.name + " alr_verify (" + r.attracting_failure + r.repellor_note + ")");
    if (!r.witness) continue;
    const WitnessingSequence& w = *r.witness;
    o.require(w.length() == 20, c.name + " witness length");
    o.require(w.max_residual() <= 1e-10, c.name + " residual " + fmt(w.max_residual()));
    if (c.bound > 0) o.require(w.terminal_distance() <= c.bound, c.name + " terminal " + fmt(w.terminal_distance()));
    o.note(c.name + ": res=" + fmt(w.max_residual()) + " term=" + fmt(w.terminal_distance()));
    if (c.name == "square") {
      double worst = 0.0;
      for (std::size_t n = 0; n < w.points.size(); ++n)
        worst = std::max(worst, std::fabs(w.points[n].x - std::pow(0.5, std::ldexp(1.0, -static_cast<int>(n)))));
      o.require(worst <= 1e-9, "square witness vs closed form " + fmt(worst));
    }
  }
  return o;
}

Outcome disc_closed_form() {
  Outcome o;
  const Map d = make_disc_alr();
  std::mt19937_64 rng(3);
  double worst = 0.0, literal = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r = 0.999 * std::sqrt(unit(rng)), t = kTwoPi * unit(rng);
    const Point z0 = Point::plane(r * std::cos(t), r * std::sin(t));
    const double h = std::sqrt(1 - z0.x * z0.x);
    const double s = std::fabs((z0.y + h) / (2 * h));
    Point z = z0;
    for (int n = 1; n <= 10; ++n) {
      z = d(z);
      const double y = std::pow(s, std::ldexp(1.0, n) - 1) * (z0.y + h) - h;
      const double y_literal = std::pow(s, 2.0 * n - 1) * (z0.y + h) - h;
      worst = std::max(worst, std::hypot(z.x - z0.x, z.y - y));
      literal = std::max(literal, std::fabs(z.y - y_literal));
    }
  }
  o.require(worst <= 1e-9, "max error " + fmt(worst));
  o.note("exponent 2^n-1: max error " + fmt(worst) + "; exponent 2n-1 would differ by up to " + fmt(literal));
  return o;
}

Outcome canonical_refutations() {
  Outcome o;
  for (const std::string name : {"kwietniak", "line:[0,[2,3]]"}) {
    const Preset p = make_preset(name);
    const CompactSet& A = *p.system.target();
    const WitnessingSequence w = witnessing_sequence(p.phi, *p.witness_x0, *p.witness_repellor, p.witness_length);
    const StrictRefuteReport r = strict_refute(p.system, A, w, -1, p.n_max, p.epsilon);
    // d(x0, A) from the definition of A rather than the net.
    const double exact = name == "kwietniak" ? Space::compactified_line().distance(*p.witness_x0, Point::infinity())
                                             : std::min(std::fabs(p.witness_x0->x), std::fabs(p.witness_x0->x - 2));
    o.require(r.refuted, name + " not refuted");
    o.require(std::fabs(r.min_distance - exact) <= 3 * p.epsilon,
              name + " margin " + fmt(r.min_distance) + " vs d(x0,A) " + fmt(exact));
    int converged = 0;
    for (std::size_t i = 0; i < 50 && i < p.seeds.size(); ++i)
      converged += pointwise_test(p.system, p.seeds[i], A, p.n_max, p.tol, p.epsilon).verdict == Verdict::Converged;
    o.require(p.seeds.size() >= 50 && converged == 50, name + " pointwise " + std::to_string(converged) + "/50");
    o.note(name + ": min=" + fmt(r.min_distance) + " d(x0,A)=" + fmt(exact) + " pointwise " +
           std::to_string(converged) + "/50");
  }
  return o;
}

CompactSet uniform01(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(Point::real(unit(rng)));
  return CompactSet(Space::real_line(), pts, 1e-12);
}

// Pointwise runs and the strict refutation shared by the Cantor criteria.
void cantor_dynamics(Outcome& o, const Preset& p, const std::string& tag) {
  const double eps = 1e-4;
  const CompactSet& A = *p.system.target();
  int converged = 0;
  std::mt19937_64 rng(77);
  for (int i = 0; i < 50; ++i)
    converged += pointwise_test(p.system, Point::real(unit(rng)), A, 15, 0.02, eps).verdict == Verdict::Converged;
  o.require(converged == 50, tag + " pointwise " + std::to_string(converged) + "/50");

  double d_half = 1.0;
  for (double e : cantor_endpoints(12)) d_half = std::min(d_half, std::fabs(0.5 - e));
  const WitnessingSequence w = witnessing_sequence(p.phi, Point::real(0.5), Point::real(2.0 / 3), 20);
  const StrictRefuteReport r = strict_refute(p.system, A, w, -1, p.n_max, eps);
  o.require(r.refuted, tag + " not refuted");
  o.require(r.min_distance >= d_half - 3 * eps, tag + " min distance " + fmt(r.min_distance));
  o.note(tag + ": pointwise " + std::to_string(converged) + "/50, min H=" + fmt(r.min_distance) + " vs d(0.5,A)=" +
         fmt(d_half));
}

Outcome cantor_headline() {
  Outcome o;
  const Preset p = make_preset("cantor", 1e-4);
  const GapSystem& s = *p.gap;
  const CommutativityReport c = commutativity_check(s, uniform01(10000, 1), 1e-10);
  o.require(c.passed && c.checked == 10000 && c.max_defect <= 1e-10, "commutativity defect " + fmt(c.max_defect));
  for (std::size_t k = 0; k < s.W.size(); ++k) {
    const ConjugationReport cj = conjugation_identity_check(s, gap_words(s, 4), k);
    o.require(cj.passed, "conjugation for map " + std::to_string(k) + ": " + cj.failure);
  }
  o.note("defect=" + fmt(c.max_defect));
  cantor_dynamics(o, p, "cantor");
  return o;
}

Outcome simplified_remark() {
  Outcome o;
  const Preset p = make_preset("cantor:{\"simplified\":true}", 1e-4);
  const CommutativityReport c = commutativity_check(*p.gap, uniform01(10000, 1), 1e-10);
  o.require(!c.passed && c.max_defect > 1e-3, "commutativity defect " + fmt(c.max_defect));
  o.note("defect=" + fmt(c.max_defect));
  cantor_dynamics(o, p, "simplified");
  return o;
}

Outcome carpet() {
  Outcome o;
  const Preset p = make_preset("sierpinski-carpet");
  const GapSystem& s = *p.gap;
  const Space& space = s.W.space();
  const double eps = p.epsilon;

  // Every gap of depth <= 6 is mapped into itself.
  const std::vector<GapAddress> words = gap_words(s, 6);
  const CompactSet base = epsilon_net(space, s.central_gap, 1.0 / 12);
  std::vector<double> worst(chunk_count(words.size(), 1024), 0.0);
  parallel_chunks(
      words.size(),
      [&](std::size_t b, std::size_t e, std::size_t chunk) {
        for (std::size_t i = b; i < e; ++i)
          for (const Point& q : base.points()) {
            const Point x = apply_word(s, words[i].word, q);
            const Point back = apply_word_inverse(s, words[i].word, s.phi(x));
            const double d = space.distance(back, region_nearest(space, s.central_gap, back));
            worst[chunk] = std::max(worst[chunk], d * std::pow(s.ratio, words[i].depth()));
          }
      },
      1024);
  double gap_escape = 0.0;
  for (double w : worst) gap_escape = std::max(gap_escape, w);
  o.require(gap_escape <= eps, "gap invariance escape " + fmt(gap_escape));

  std::mt19937_64 rng(5);
  double outside = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Point x = space.sample(rng);
    const Point y = s.phi(x);
    outside = std::max(outside, space.distance(y, region_nearest(space, s.hull, y)));
  }
  o.require(outside <= eps, "phi image leaves D by " + fmt(outside));
  o.note(std::to_string(words.size()) + " gaps, escape=" + fmt(gap_escape) + ", image excess=" + fmt(outside));

  const CompactSet& A = *p.system.target();
  int converged = 0;
  for (std::size_t i = 0; i < 20; ++i)
    converged += pointwise_test(p.system, p.seeds.at(i), A, 12, 0.05, eps).verdict == Verdict::Converged;
  o.require(converged == 20, "pointwise " + std::to_string(converged) + "/20");

  const double d_center = carpet_distance(0.5, 0.5, 10);
  const WitnessingSequence w = witnessing_sequence(p.phi, *p.witness_x0, *p.witness_repellor, p.witness_length);
  const StrictRefuteReport r = strict_refute(p.system, A, w, -1, p.n_max, eps);
  o.require(r.refuted, "not refuted");
  o.require(r.min_distance >= d_center - 3 * eps, "min distance " + fmt(r.min_distance));
  o.note("pointwise " + std::to_string(converged) + "/20, min H=" + fmt(r.min_distance) +
         " vs d(centre,carpet)=" + fmt(d_center));
  return o;
}

Outcome limit_calibration() {
  Outcome o;
  const Space line = Space::real_line();
  auto reals = [&](std::vector<double> xs) {
    std::vector<Point> pts;
    for (double x : xs) pts.push_back(Point::real(x));
    return CompactSet(line, pts, 1e-9);
  };
  std::vector<CompactSet> alt;
  for (int n = 0; n < 40; ++n) alt.push_back(reals({static_cast<double>(n % 2)}));
  const LimitEstimate e = estimate_li_ls(alt, 20, 1e-6);
  o.require(e.li_empty(), "Li of the alternating orbit is not empty");
  o.require(e.ls && hausdorff_distance(*e.ls, reals({0, 1})) == 0.0, "Ls of the alternating orbit is not {0,1}");

  const double tol = 0.02;
  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double c = unit(rng);
    std::vector<CompactSet> lower, middle, upper;
    for (int n = 1; n <= 200; ++n) {
      const double s = 1.0 / n;
      lower.push_back(reals({0, c, 1}));
      middle.push_back(reals({0, c, 1, c + unit(rng) * s}));
      upper.push_back(reals({0, c, 1, c + s, 1 - s}));
    }
    const auto a = estimate_li_ls(lower, 40, tol), b = estimate_li_ls(middle, 40, tol), u = estimate_li_ls(upper, 40, tol);
    if (!a.li || !u.li || !b.li || !b.ls || hausdorff_distance(*a.li, *u.li) > tol) {
      o.require(false, "squeeze triple " + std::to_string(trial) + " has no usable bounds");
      continue;
    }
    worst = std::max({worst, hausdorff_distance(*b.li, *a.li), hausdorff_distance(*b.ls, *a.ls)});
  }
  o.require(worst <= 2 * tol, "squeeze disagreement " + fmt(worst));
  o.note("Li empty, Ls={0,1}; squeeze max disagreement " + fmt(worst));
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome determinism(const fs::path& corpus) {
  Outcome o;
  std::vector<fs::path> configs;
  for (const auto& e : fs::directory_iterator(corpus))
    if (e.path().extension() == ".json" && e.path().filename() != "expected_exit.json") configs.push_back(e.path());
  std::sort(configs.begin(), configs.end());
  o.require(configs.size() >= 10, "corpus has " + std::to_string(configs.size()) + " configs");
  const fs::path root = fs::temp_directory_path() / "ifslab-acceptance";
  std::size_t compared = 0;
  for (const fs::path& cfg : configs) {
    std::map<std::string, std::string> runs[2];
    int codes[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
      const std::string threads = k == 0 ? "1" : "4";
      const fs::path dir = root / (cfg.stem().string() + "-t" + threads);
      fs::remove_all(dir);
      std::ostringstream out, err;
      codes[k] = cli::run({"--threads", threads, "--out-dir", dir.string(), "experiment", "run", cfg.string()}, out, err);
      if (fs::exists(dir))
        for (const auto& e : fs::directory_iterator(dir)) runs[k][e.path().filename().string()] = slurp(e.path());
    }
    o.require(codes[0] == codes[1], cfg.filename().string() + " exit codes differ");
    o.require(runs[0] == runs[1], cfg.filename().string() + " artifacts differ");
    compared += runs[0].size();
  }
  set_thread_count(0);
  o.note(std::to_string(configs.size()) + " configs, " + std::to_string(compared) + " artifacts identical at 1 and 4 threads");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path corpus = argc > 1 ? fs::path(argv[1]) : fs::path(IFSLAB_FIXTURE_DIR) / "configs";
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, contraction_sanity}, {2, alr_verification}, {3, disc_closed_form},
      {4, canonical_refutations}, {5, cantor_headline}, {6, simplified_remark},
      {7, carpet}, {8, limit_calibration}, {9, [&] { return determinism(corpus); }},
  };
  int failures = 0;
  for (const auto& [k, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << " (" << fmt(secs) << " s): " << o.detail
              << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
