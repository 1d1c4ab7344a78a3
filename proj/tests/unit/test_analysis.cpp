#include <doctest.h>

#include <cmath>
#include <random>

#include "ifslab/analysis.hpp"
#include "oracles.hpp"

using namespace ifslab;

namespace {

const Space kLine = Space::real_line();
const Space kUnit = Space::real_interval(0, 1);

CompactSet reals(const Space& s, std::vector<double> xs, double eps = 1e-6) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back(Point::real(x));
  return CompactSet(s, std::move(pts), eps);
}

Map square01() { return make_interval_alr(0, 1, AlrVariant::Square); }

CompactSet uniform(const Space& s, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back(s.sample(rng));
  return CompactSet(s, pts, 1e-9);
}

// Two-map contraction of the arc [alpha, alpha + len] written in arc length.
Map arc_half(double alpha, double len, double shift) {
  const region::Arc arc{alpha, wrap_angle(alpha + len)};
  return Map(Space::circle(), [=](const Point& p) {
    const double u = std::min(arc_offset(arc, p.x), len);
    return Point::angle(alpha + 0.5 * u + shift * len);
  }, "arc_half");
}

}  // namespace

TEST_CASE("witnessing sequences") {
  SUBCASE("square map backwards from 0.5") {
    const WitnessingSequence w = witnessing_sequence(square01(), Point::real(0.5), Point::real(1), 12);
    REQUIRE(w.length() == 12);
    for (int n = 0; n <= 12; ++n)
      CHECK(w.points[static_cast<std::size_t>(n)].x == doctest::Approx(std::pow(0.5, std::ldexp(1.0, -n))).epsilon(1e-10));
    CHECK(w.points.back().x == doctest::Approx(0.99983).epsilon(1e-5));
    CHECK(w.max_residual() <= 1e-10);
  }
  SUBCASE("sqrt map backwards from 0.5") {
    const WitnessingSequence w =
        witnessing_sequence(make_interval_alr(0, 1, AlrVariant::Sqrt), Point::real(0.5), Point::real(0), 5);
    for (int n = 0; n <= 5; ++n)
      CHECK(w.points[static_cast<std::size_t>(n)].x == doctest::Approx(std::pow(0.5, std::ldexp(1.0, n))).epsilon(1e-9));
  }
  SUBCASE("disc map stays on its chord") {
    const Map d = make_disc_alr();
    const Point z0 = Point::plane(0.4, -0.2);
    const double h = std::sqrt(1 - 0.16);
    const WitnessingSequence w = witnessing_sequence(d, z0, Point::plane(0.4, h), 20);
    for (std::size_t k = 0; k + 1 < w.points.size(); ++k) {
      CHECK(w.points[k + 1].x == doctest::Approx(0.4));
      const Point back = d(w.points[k + 1]);
      CHECK(std::hypot(back.x - w.points[k].x, back.y - w.points[k].y) <= 1e-10);
    }
    CHECK(w.terminal_distance() <= 5e-2);
  }
  SUBCASE("Kwietniak map backwards from -5") {
    const WitnessingSequence w = witnessing_sequence(make_kwietniak_map(), Point::real(-5), Point::infinity(), 20);
    for (int n = 0; n <= 20; ++n) CHECK(w.points[static_cast<std::size_t>(n)].x == doctest::Approx(-5.0 - n));
  }
  SUBCASE("fixed starts are rejected") {
    CHECK_THROWS_AS(witnessing_sequence(square01(), Point::real(1), Point::real(1), 5), Error);
  }
}

TEST_CASE("witness distances decrease once close to the repellor") {
  const std::vector<std::pair<Map, std::pair<Point, Point>>> cases = {
      {square01(), {Point::real(0.3), Point::real(1)}},
      {make_interval_alr(0, 5, AlrVariant::Sqrt), {Point::real(4), Point::real(0)}},
      {make_arc_alr(1, 4), {Point::angle(2), Point::angle(4)}},
  };
  for (const auto& [phi, ends] : cases) {
    const WitnessingSequence w = witnessing_sequence(phi, ends.first, ends.second, 20);
    const double half = 0.5 * (phi.branches()[0].hi - phi.branches()[0].lo);
    std::size_t k = 0;
    while (k < w.points.size() && w.distance_to_repellor(k) >= half) ++k;
    // Below the bisection tolerance the distances may stall in floating point.
    for (; k + 1 < w.points.size() && w.distance_to_repellor(k) > 1e-12; ++k)
      REQUIRE(w.distance_to_repellor(k + 1) < w.distance_to_repellor(k));
  }
}

TEST_CASE("ALR verification") {
  SUBCASE("square map") {
    const AlrReport r = alr_verify(square01(), uniform(kUnit, 100, 1));
    CHECK(r.attracting);
    for (const Point& p : r.limits) CHECK((std::fabs(p.x) < 1e-6 || std::fabs(p.x - 1) < 1e-6));
    CHECK(r.repellor_found);
    REQUIRE(r.witness);
    CHECK(r.witness->repellor.x == doctest::Approx(1.0));
  }
  SUBCASE("identity") {
    const AlrReport r = alr_verify(make_identity(kUnit), uniform(kUnit, 100, 1));
    CHECK(r.attracting);
    CHECK_FALSE(r.repellor_found);
    CHECK_FALSE(r.passed());
  }
  SUBCASE("Kwietniak map") {
    AlrOptions o;
    o.witness_start = Point::real(-5);
    const AlrReport r = alr_verify(make_kwietniak_map(), reals(kLine, {-5, 0, 3.5, 100}), o);
    CHECK(r.attracting);
    for (const Point& p : r.limits) CHECK(Space::compactified_line().distance(p, Point::infinity()) <= 1e-3);
    CHECK(r.passed());
    REQUIRE(r.witness);
    CHECK(r.witness->points[3].x == doctest::Approx(-8));
  }
  SUBCASE("a map without a fixed limit") {
    const AlrReport r = alr_verify(make_rotation(1.0), uniform(Space::circle(), 10, 2));
    CHECK_FALSE(r.attracting);
  }
}

TEST_CASE("strict refutation of the square map with both endpoints as constants") {
  const double eps = 1e-3;
  const IfsSystem F(kUnit, {square01(), make_constant(kUnit, Point::real(0)), make_constant(kUnit, Point::real(1))});
  const CompactSet A = reals(kUnit, {0, 1}, eps);
  const WitnessingSequence w = witnessing_sequence(square01(), Point::real(0.5), Point::real(1), 20);
  const StrictRefuteReport r = strict_refute(F, A, w, -1, 30, eps);
  CHECK(r.refuted);
  CHECK(r.x0_distance == doctest::Approx(0.5));
  CHECK(std::fabs(r.min_distance - 0.5) <= 3 * eps);
  // x0 reappears in every step from the tail on.
  for (int n = r.tail_start; n <= r.horizon; ++n) CHECK(r.margins[static_cast<std::size_t>(n)] <= eps);

  CHECK_THROWS_AS(strict_refute(F, A, w, 25, 30, eps), Error);
  const WitnessingSequence w5 = witnessing_sequence(square01(), Point::real(0.5), Point::real(1), 5);
  CHECK_THROWS_AS(strict_refute(F, A, w5, 8, 30, eps), Error);
  CHECK_THROWS_AS(strict_refute(IfsSystem(kUnit, {make_constant(kUnit, Point::real(0))}), A, w, -1, 30, eps), Error);
}

TEST_CASE("strict refutation for the Kwietniak map") {
  const double eps = 0.02;
  const Map k = make_kwietniak_map();
  const IfsSystem F(Space::compactified_line(), {k});
  const CompactSet A(Space::compactified_line(), {Point::infinity()}, eps);
  const WitnessingSequence w = witnessing_sequence(k, Point::real(-5), Point::infinity(), 20);
  const StrictRefuteReport r = strict_refute(F, A, w, -1, 200, eps);
  CHECK(r.refuted);
  const double x0d = Space::compactified_line().distance(Point::real(-5), Point::infinity());
  CHECK(r.x0_distance == doctest::Approx(x0d));
  CHECK(std::fabs(r.min_distance - x0d) <= 3 * eps);
}

TEST_CASE("pointwise verdicts") {
  const double eps = 1e-6;
  CHECK(pointwise_test(IfsSystem(kLine, {make_affine(kLine, 0.5, Point::real(0))}), Point::real(1),
                       reals(kLine, {0}), 40, 1e-3, eps)
            .verdict == Verdict::Converged);
  const PointwiseReport away = pointwise_test(IfsSystem(kLine, {make_affine(kLine, 1.0, Point::real(1))}),
                                              Point::real(0), reals(kLine, {0}), 40, 1e-3, eps);
  CHECK(away.verdict == Verdict::Diverged);
  const PointwiseReport slow = pointwise_test(IfsSystem(kLine, {make_affine(kLine, 0.99, Point::real(0))}),
                                              Point::real(1), reals(kLine, {0}), 10, 1e-3, eps);
  CHECK(slow.verdict == Verdict::Inconclusive);
}

TEST_CASE("pointwise verdicts are deterministic") {
  const IfsSystem F(kUnit, {square01(), make_affine(kLine, 1.0 / 3, Point::real(0)).with_space(kUnit),
                            make_affine(kLine, 1.0 / 3, Point::real(2.0 / 3)).with_space(kUnit)});
  const CompactSet A = epsilon_net(kUnit, region::Interval{0, 1}, 1e-3);
  for (double x : {0.1, 0.5, 0.77}) {
    const PointwiseReport a = pointwise_test(F, Point::real(x), A, 20, 0.05, 1e-3);
    const PointwiseReport b = pointwise_test(F, Point::real(x), A, 20, 0.05, 1e-3);
    CHECK(a.verdict == b.verdict);
    CHECK(a.converged_at == b.converged_at);
    CHECK(a.distances == b.distances);
  }
}

TEST_CASE("squeeze inclusions") {
  const IfsSystem W(kUnit, {make_constant(kUnit, Point::real(0)), make_constant(kUnit, Point::real(1))});
  CHECK(squeeze_check(W, square01(), Point::real(0.5), 20, 1e-6).holds);
  const IfsSystem half(kUnit, {make_affine(kLine, 0.5, Point::real(0)).with_space(kUnit)});
  CHECK(squeeze_check(half, make_identity(kUnit), Point::real(0.5), 20, 1e-6).holds);
  CHECK_THROWS_AS(squeeze_check(half, square01(), Point::real(0.5), 20, 1e-6), Error);
}

TEST_CASE("retract systems") {
  const double eps = 1e-3;
  SUBCASE("one singleton part") {
    const Map c0 = make_constant(kLine, Point::real(0));
    const IfsSystem F = build_retract_ifs({{reals(kLine, {0}, eps), c0, IfsSystem(kLine, {make_identity(kLine)})}}, eps);
    REQUIRE(F.size() == 1);
    for (double x : {-4.0, 0.0, 7.0}) CHECK(F[0](Point::real(x)).x == 0.0);
  }
  SUBCASE("two singleton parts") {
    const IfsSystem id(kLine, {make_identity(kLine)});
    const IfsSystem F = build_retract_ifs({{reals(kLine, {0}, eps), make_constant(kLine, Point::real(0)), id},
                                           {reals(kLine, {1}, eps), make_constant(kLine, Point::real(1)), id}},
                                          eps);
    const OrbitRecord r = iterate_orbit(F, reals(kLine, {0.37}, eps), 5, eps);
    for (std::size_t n = 1; n < r.steps.size(); ++n) CHECK(hausdorff_distance(r.steps[n], reals(kLine, {0, 1})) == 0.0);
  }
  SUBCASE("two arcs of the circle") {
    const Space C = Space::circle();
    const double a1 = 0.2, l1 = 1.0, a2 = 3.0, l2 = 2.0;
    const region::Arc arc1{a1, a1 + l1}, arc2{a2, a2 + l2};
    const IfsSystem W1(C, {arc_half(a1, l1, 0.0), arc_half(a1, l1, 0.5)});
    const IfsSystem W2(C, {arc_half(a2, l2, 0.0), arc_half(a2, l2, 0.5)});
    const IfsSystem F = build_retract_ifs({{epsilon_net(C, arc1, eps), make_arc_retraction(a1, a1 + l1), W1},
                                           {epsilon_net(C, arc2, eps), make_arc_retraction(a2, a2 + l2), W2}},
                                          eps);
    CHECK(F.size() == 4);
    REQUIRE(F.target());
    CHECK(fixed_set_check(F, *F.target(), eps).is_fixed);
  }
}

TEST_CASE("retract system with an ALR map is pointwise but not strict") {
  const double eps = 1e-3;
  const Space X = Space::real_interval(-1, 4);
  const Map phi = union_maps({{region::Interval{-1, 0}, make_constant(kLine, Point::real(0))},
                              {region::Interval{0, 2}, make_interval_alr(0, 2, AlrVariant::Square)},
                              {region::Interval{2, 3}, make_identity(kLine)},
                              {region::Interval{3, 4}, make_constant(kLine, Point::real(3))}})
                      .with_space(X);
  std::vector<Point> probe;
  for (int i = 0; i <= 400; ++i) probe.push_back(Point::real(-1 + 5.0 * i / 400));
  AlrOptions ao;
  ao.witness_start = Point::real(1);
  REQUIRE(alr_verify(phi, CompactSet(X, probe, eps), ao).passed());

  const IfsSystem W = build_retract_ifs(
      {{reals(X, {0}, eps), make_constant(X, Point::real(0)), IfsSystem(X, {make_identity(X)})},
       {epsilon_net(X, region::Interval{2, 3}, eps), make_retraction(X, region::Interval{2, 3}),
        IfsSystem(X, {make_affine(kLine, 0.5, Point::real(1)).with_space(X),
                      make_affine(kLine, 0.5, Point::real(1.5)).with_space(X)})}},
      eps);
  CHECK(squeeze_check(W, phi, Point::real(1.3), 20, eps).holds);

  const IfsSystem F = W.with_map(phi);
  const CompactSet A = *W.target();
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Point x = Point::real(-1 + 5 * oracle::unit(rng));
    REQUIRE(pointwise_test(F, x, A, 40, 0.02, eps).verdict == Verdict::Converged);
  }
  const WitnessingSequence w = witnessing_sequence(phi, Point::real(1), Point::real(2), 20);
  const StrictRefuteReport r = strict_refute(F, A, w, -1, 40, eps);
  CHECK(r.refuted);
  CHECK(std::fabs(r.min_distance - 1.0) <= 3 * eps);
}
