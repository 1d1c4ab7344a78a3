#include <doctest.h>

#include <cmath>
#include <random>

#include "ifslab/analysis.hpp"
#include "ifslab/maps.hpp"
#include "oracles.hpp"

using namespace ifslab;

namespace {

const Space kLine = Space::real_line();

double at(const Map& f, double x) { return f(Point::real(x)).x; }

Map square01() { return make_interval_alr(0, 1, AlrVariant::Square); }

}  // namespace

TEST_CASE("interval ALR values") {
  CHECK(at(square01(), 0.5) == doctest::Approx(0.25));
  CHECK(at(square01(), 0.0) == 0.0);
  CHECK(at(square01(), 1.0) == 1.0);
  CHECK(at(make_interval_alr(1, 4, AlrVariant::Sqrt), 2.0) == doctest::Approx(std::sqrt(3.0) + 1.0).epsilon(1e-14));
  CHECK(at(square01(), 1.7) == 1.7);
  CHECK_THROWS_AS(make_interval_alr(1, 1, AlrVariant::Square), Error);
}

TEST_CASE("interval ALR moves interior points towards its attractor") {
  std::mt19937_64 rng(1);
  const Map sq = make_interval_alr(-1, 2, AlrVariant::Square);
  const Map rt = make_interval_alr(-1, 2, AlrVariant::Sqrt);
  for (int i = 0; i < 1000; ++i) {
    const double x = -1.0 + 3.0 * (0.001 + 0.998 * oracle::unit(rng));
    REQUIRE(at(sq, x) < x);
    REQUIRE(at(rt, x) > x);
    REQUIRE(at(sq, x) == doctest::Approx(oracle::square_alr(x, -1, 2)).epsilon(1e-14));
  }
}

TEST_CASE("arc ALR values") {
  const Map half = make_arc_alr(0, kPi);
  CHECK(half(Point::angle(kPi / 2)).x == doctest::Approx(kPi / 4));
  CHECK(half(Point::angle(0)).x == 0.0);
  CHECK(half(Point::angle(1.5 * kPi)).x == doctest::Approx(1.5 * kPi));
  CHECK(make_arc_alr(0, 0)(Point::angle(kPi)).x == doctest::Approx(kPi / 2));
  // An arc through angle zero uses differences mod 2 pi.
  const Map wrap = make_arc_alr(1.5 * kPi, 0.5 * kPi);
  CHECK(wrap(Point::angle(0.0)).x == doctest::Approx(1.5 * kPi + kPi / 4));
}

TEST_CASE("disc ALR values") {
  const Map d = make_disc_alr();
  const Point z = d(Point::plane(0, 0));
  CHECK(z.x == 0.0);
  CHECK(z.y == doctest::Approx(-0.5));
  for (double t = 0.0; t < kTwoPi; t += 0.1) {
    const Point b = Point::plane(std::cos(t), std::sin(t));
    const Point img = d(b);
    CHECK(std::hypot(img.x - b.x, img.y - b.y) <= 1e-12);
  }
}

TEST_CASE("disc ALR iterates follow the closed form with exponent 2^n - 1") {
  const Map d = make_disc_alr();
  Point z = Point::plane(0.3, 0.1);
  const Point z0 = z;
  for (int n = 1; n <= 5; ++n) z = d(z);
  const Point expected = oracle::disc_closed_form(z0, std::pow(2.0, 5) - 1.0);
  CHECK(std::hypot(z.x - expected.x, z.y - expected.y) <= 1e-9);
}

TEST_CASE("disc ALR keeps each chord and its endpoints") {
  std::mt19937_64 rng(3);
  const Map d = make_disc_alr();
  for (int i = 0; i < 1000; ++i) {
    const double r = std::sqrt(oracle::unit(rng)) * 0.999, t = kTwoPi * oracle::unit(rng);
    const Point z = Point::plane(r * std::cos(t), r * std::sin(t));
    const double h = std::sqrt(1 - z.x * z.x);
    const Point a = Point::plane(z.x, -h), b = Point::plane(z.x, h);
    const double cross = (z.x - a.x) * (b.y - a.y) - (z.y - a.y) * (b.x - a.x);
    REQUIRE(std::fabs(cross) <= 1e-12);
    const Point img = d(z);
    const double hi = std::sqrt(1 - img.x * img.x);
    REQUIRE(std::fabs(hi - h) <= 1e-12);
    REQUIRE(img.x == z.x);
    const Point ref = oracle::disc_alr(z);
    REQUIRE(std::hypot(img.x - ref.x, img.y - ref.y) <= 1e-12);
  }
}

TEST_CASE("Kwietniak map") {
  const Map k = make_kwietniak_map();
  CHECK(at(k, 0) == 1.0);
  CHECK(k(Point::infinity()).at_infinity);
  CHECK(k.space().chart(k(Point::real(1))) == doctest::Approx(2 * std::atan(2.0)));
}

TEST_CASE("union maps") {
  SUBCASE("ALR next to the identity") {
    const Map u = union_maps({{region::Interval{0, 1}, square01()}, {region::Interval{1, 2}, make_identity(kLine)}});
    for (double x = 0; x <= 2.0; x += 0.125) CHECK(at(u, x) == doctest::Approx(x <= 1 ? x * x : x));
  }
  SUBCASE("single piece") {
    const Map u = union_maps({{region::Interval{0, 1}, square01()}});
    CHECK(at(u, 0.3) == at(square01(), 0.3));
  }
  SUBCASE("two ALRs") {
    const Map u = union_maps({{region::Interval{0, 1}, square01()},
                              {region::Interval{1, 2}, make_interval_alr(1, 2, AlrVariant::Square)}});
    CHECK(at(u, 1.5) == doctest::Approx(1.25));
  }
  SUBCASE("overlaps must be fixed") {
    CHECK_THROWS_AS(union_maps({{region::Interval{0, 1}, square01()},
                                {region::Interval{0.5, 2}, make_identity(kLine)}}),
                    Error);
  }
  SUBCASE("uncovered points raise at evaluation") {
    const Map u = union_maps({{region::Interval{0, 1}, square01()}, {region::Interval{2, 3}, make_identity(kLine)}});
    CHECK_THROWS_AS(u(Point::real(1.5)), Error);
  }
}

TEST_CASE("fixed set of a union is the union of the fixed sets") {
  const Map u = union_maps({{region::Interval{0, 1}, square01()},
                            {region::Interval{1, 2}, make_identity(kLine)},
                            {region::Interval{2, 3}, make_interval_alr(2, 3, AlrVariant::Sqrt)}});
  const double eps = 1e-3;
  std::vector<Point> scanned;
  for (int i = 0; i <= 3000; ++i) {
    const double x = i * 1e-3;
    if (std::fabs(at(u, x) - x) <= 1e-12) scanned.push_back(Point::real(x));
  }
  const CompactSet fixed(kLine, scanned, eps);
  REQUIRE(u.fixed_set());
  CHECK(hausdorff_distance(fixed, u.fixed_net(eps)) <= eps);
}

TEST_CASE("conjugation") {
  SUBCASE("by the identity") {
    const Map c = conjugate_map(square01(), homeo_identity(square01().space()));
    for (double x = 0; x <= 1; x += 0.1) CHECK(at(c, x) == at(square01(), x));
  }
  SUBCASE("by doubling") {
    const Map c = conjugate_map(square01(), homeo_affine(2, 0));
    CHECK(at(c, 1.0) == doctest::Approx(0.5));
  }
  SUBCASE("onto an arc") {
    const Map c = conjugate_map(make_interval_alr(0, kPi, AlrVariant::Square), homeo_arc_chart(0));
    const Map arc = make_arc_alr(0, kPi);
    for (double t = 0; t < kTwoPi; t += 0.01) REQUIRE(std::fabs(c(Point::angle(t)).x - arc(Point::angle(t)).x) <= 1e-12);
  }
}

TEST_CASE("conjugation keeps the ALR property") {
  const Map base = make_interval_alr(0, 1, AlrVariant::Square);
  std::mt19937_64 rng(5);
  auto samples_on = [&](const Map& m) {
    std::vector<Point> pts;
    for (int i = 0; i < 100; ++i) pts.push_back(m.space().sample(rng));
    return CompactSet(m.space(), pts, 1e-6);
  };
  REQUIRE(alr_verify(base, samples_on(base)).passed());
  for (const Homeomorphism& h : {homeo_affine(2, 0), homeo_affine(-3, 1), homeo_affine(0.5, -4)}) {
    const Map c = conjugate_map(base, h);
    CHECK(alr_verify(c, samples_on(c)).passed());
  }
  const Map arc = conjugate_map(make_interval_alr(0, 3, AlrVariant::Sqrt), homeo_arc_chart(0));
  std::vector<Point> pts;
  for (int i = 0; i < 100; ++i) pts.push_back(Point::angle(kTwoPi * oracle::unit(rng)));
  CHECK(alr_verify(arc, CompactSet(Space::circle(), pts, 1e-6)).passed());
}

TEST_CASE("retractions") {
  const Map clamp = make_retraction(kLine, region::Interval{0, 1});
  CHECK(at(clamp, -3) == 0.0);
  CHECK(at(clamp, 0.4) == 0.4);
  CHECK(at(clamp, 7) == 1.0);
  const Map point = make_retraction(kLine, region::Singleton{Point::real(2.5)});
  CHECK(at(point, -10) == 2.5);
  CHECK(at(point, 99) == 2.5);
  const Point r = make_retraction(Space::plane(), region::Disc{0, 0, 1})(Point::plane(2, 0));
  CHECK(r.x == doctest::Approx(1.0));
  CHECK(r.y == doctest::Approx(0.0));
  CHECK_THROWS_AS(make_retraction(kLine, region::PointList{{Point::real(0)}}), Error);
}

TEST_CASE("fold retraction of the circle is continuous and fixes its arc") {
  const Map fold = make_arc_retraction(0.5, 2.0);
  double prev = fold(Point::angle(0)).x;
  for (int i = 1; i <= 10000; ++i) {
    const Point p = Point::angle(kTwoPi * i / 10000);
    const Point img = fold(p);
    REQUIRE(Space::circle().distance(img, Point::angle(prev)) < 0.01);
    REQUIRE(region_contains(Space::circle(), region::Arc{0.5, 2.0}, img, 1e-12));
    prev = img.x;
    if (region_contains(Space::circle(), region::Arc{0.5, 2.0}, p)) REQUIRE(img == p);
  }
}

TEST_CASE("composition") {
  const Map third = make_affine(kLine, 1.0 / 3, Point::real(0));
  const Map shifted = make_affine(kLine, 1.0 / 3, Point::real(2.0 / 3));
  CHECK(at(compose(third, shifted), 1.0) == doctest::Approx(1.0 / 3));
  const Map f = square01();
  for (double x = 0; x <= 1; x += 0.1) CHECK(at(compose(make_identity(kLine), f), x) == at(f, x));

  // w o r lands in w(A) for A = [0, 1], r the clamp and w = x/2.
  const Map wr = compose(make_affine(kLine, 0.5, Point::real(0)), make_retraction(kLine, region::Interval{0, 1}));
  const CompactSet image_net = epsilon_net(kLine, region::Interval{0, 0.5}, 1e-3);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double x = -5 + 10 * oracle::unit(rng);
    REQUIRE(point_set_distance(wr(Point::real(x)), image_net) <= 1e-3);
  }
}

TEST_CASE("preimages along branches") {
  const Map sq = square01();
  CHECK(preimage_on_branch(sq, Point::real(0.25), sq.branches()[0]).x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(preimage_on_branch(sq, Point::real(1.0), sq.branches()[0]).x == doctest::Approx(1.0));
  const Map arc = make_arc_alr(0, kPi);
  CHECK(std::fabs(preimage_on_branch(arc, Point::angle(kPi / 4), arc.branches()[0]).x - kPi / 2) <= 1e-10);
  CHECK_THROWS_AS(preimage_on_branch(sq, Point::real(3.0), sq.branches()[0]), Error);

  std::mt19937_64 rng(6);
  const Map k = make_kwietniak_map();
  for (int i = 0; i < 1000; ++i) {
    const double y = oracle::unit(rng);
    const Point x = preimage_on_branch(sq, Point::real(y), sq.branches()[0], 1e-12);
    REQUIRE(std::fabs(at(sq, x.x) - y) <= 1e-12);
    const Point ky = Point::real(-50 + 100 * oracle::unit(rng));
    const Point kx = preimage_on_branch(k, ky, k.branches()[0], 1e-12);
    REQUIRE(k.space().distance(k(kx), ky) <= 1e-12);
  }
}

TEST_CASE("sampled map checks") {
  CHECK(check_map(square01()).ok);
  CHECK(check_map(make_disc_alr(), 2000).ok);
  CHECK(check_branch(square01().branches()[0]));
  const Map bad = square01().with_fixed_set({region::Singleton{Point::real(0.5)}});
  CHECK_FALSE(check_map(bad, 100).ok);
}
