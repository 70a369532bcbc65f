#include <doctest.h>

#include <random>

#include "circsep/circle_space.hpp"
#include "support.hpp"

using namespace circsep;

TEST_SUITE_BEGIN("circle_space");

TEST_CASE("lift and unlift") {
    const CirclePoint p = lift_circle({{2, 3}, 1.0});
    CHECK(p.x == 2.0);
    CHECK(p.y == 3.0);
    CHECK(p.z == 1.0);
    const CirclePoint q = lift_circle({{0, 0}, 0.0});
    CHECK(q.z == 0.0);

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const Circle c{{uni(rng), uni(rng)}, std::abs(uni(rng))};
        const Circle back = unlift_circle(lift_circle(c));
        CHECK(back.center.x == c.center.x);
        CHECK(back.center.y == c.center.y);
        CHECK(back.radius == c.radius);
    }
}

TEST_CASE("cone height") {
    CHECK(cone_height({{0, 0}}, {3, 4}) == doctest::Approx(5.0));
    CHECK(cone_height({{1, 1}}, {1, 1}) == doctest::Approx(0.0));
    CHECK(cone_height({{0, 0}}, {-2, 0}) == doctest::Approx(2.0));
}

TEST_CASE("curve_from_sites: two points give the bisector hyperbola") {
    const CurveF c = curve_from_sites(Point2{-1, 0}, Point2{1, 0});
    CHECK(c.kind == CurveF::Kind::Hyperbola);
    const CirclePoint at0 = c.point_at(0.0);
    CHECK(at0.x == doctest::Approx(0.0));
    CHECK(at0.y == doctest::Approx(0.0));
    CHECK(at0.z == doctest::Approx(1.0));
    const CirclePoint at2 = c.point_at(2.0);
    CHECK(at2.z == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("curve_from_sites: point and line give the bisector parabola") {
    const OrientedLine l{{0, 0}, {1, 0}};
    const CurveF c = curve_from_sites(Point2{0, 1}, LiftingHalfplane{l, HalfplaneSide::Left});
    CHECK(c.kind == CurveF::Kind::Parabola);
    const CirclePoint v = c.point_at(0.0);
    CHECK(v.x == doctest::Approx(0.0));
    CHECK(v.y == doctest::Approx(0.5));
    CHECK(v.z == doctest::Approx(0.5));
    const CirclePoint w = c.point_at(2.0);
    CHECK(w.y == doctest::Approx((4.0 + 1.0) / 2.0));
}

TEST_CASE("curve_from_sites: two lines give the bisector line") {
    const OrientedLine lx{{0, 0}, {1, 0}};   // y = 0, left = up
    const OrientedLine ly{{0, 0}, {0, 1}};   // x = 0, left = -x, so right = +x
    const CurveF c = curve_from_sites(LiftingHalfplane{lx, HalfplaneSide::Left},
                                      LiftingHalfplane{ly, HalfplaneSide::Right});
    CHECK(c.kind == CurveF::Kind::Line3);
    const CirclePoint p = c.point_at(1.0);
    CHECK(p.x == doctest::Approx(1.0));
    CHECK(p.y == doctest::Approx(1.0));
    CHECK(p.z == doctest::Approx(1.0));
}

TEST_CASE("curve_from_sites: identical lines are degenerate") {
    const OrientedLine l{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(curve_from_sites(LiftingHalfplane{l, HalfplaneSide::Left},
                                     LiftingHalfplane{l, HalfplaneSide::Left}),
                    DegenerateCurveError);
}

TEST_CASE("random curves satisfy both defining surfaces") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> ts(-6.0, 6.0);
    for (int it = 0; it < 300; ++it) {
        const CurveF c = testsupport::random_curve(rng);
        for (int k = 0; k < 8; ++k) {
            double t = ts(rng);
            t = std::max(c.t_lo, std::min(c.t_hi, t));
            const auto res = c.surface_residuals(t);
            CHECK(res[0] <= 1e-9 * std::max(1.0, std::abs(c.point_at(t).z)));
            CHECK(res[1] <= 1e-9 * std::max(1.0, std::abs(c.point_at(t).z)));
            CHECK(c.point_at(t).z >= -1e-12);
        }
    }
}

TEST_CASE("hyperbola projections stay on the two-point bisector") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    for (int it = 0; it < 100; ++it) {
        const Point2 a{uni(rng), uni(rng)}, b{uni(rng), uni(rng)};
        if (dist(a, b) < 1e-3) continue;
        const CurveF c = curve_from_sites(a, b);
        for (double t : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
            const Point2 x = c.point_at(t).xy();
            CHECK(std::abs(dist(x, a) - dist(x, b)) <= 1e-9 * std::max(1.0, dist(x, a)));
        }
    }
}

TEST_CASE("intersect_curve_cone: single crossing checked by bisection") {
    // z = sqrt(1 + y^2) meets dist to (0,3) at |y - 3|: root y = 4/3, z = 5/3.
    const double root = testsupport::bisect(
        [](double y) { return std::sqrt(1.0 + y * y) - std::abs(y - 3.0); }, 0.0, 3.0);
    CHECK(root == doctest::Approx(4.0 / 3.0).epsilon(1e-9));

    const CurveF c = curve_from_sites(Point2{-1, 0}, Point2{1, 0});
    const auto hits = intersect_curve_cone(c, LiftingCone{{0, 3}});
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].point.x == doctest::Approx(0.0));
    CHECK(hits[0].point.y == doctest::Approx(4.0 / 3.0));
    CHECK(hits[0].point.z == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("intersect_curve_cone: apex contact on the diagonal line") {
    const OrientedLine lx{{0, 0}, {1, 0}};
    const OrientedLine ly{{0, 0}, {0, 1}};
    const CurveF c = curve_from_sites(LiftingHalfplane{lx, HalfplaneSide::Left},
                                      LiftingHalfplane{ly, HalfplaneSide::Right});
    const auto hits = intersect_curve_cone(c, LiftingCone{{0, 0}});
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].t == doctest::Approx(0.0));
}

TEST_CASE("intersect_curve_cone: defining site equals the apex") {
    const OrientedLine l{{0, 0}, {1, 0}};
    const CurveF c = curve_from_sites(Point2{0, 1}, LiftingHalfplane{l, HalfplaneSide::Left});
    CHECK_THROWS_AS(intersect_curve_cone(c, LiftingCone{{0, 1}}), CurveOnConeError);
}

TEST_CASE("intersect_curve_cone matches a dense sweep oracle") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    int verified = 0;
    for (int it = 0; it < 10000; ++it) {
        const CurveF c = testsupport::random_curve(rng);
        const Point2 apex{uni(rng), uni(rng)};

        std::vector<CurveConeHit> hits;
        try {
            hits = intersect_curve_cone(c, LiftingCone{apex});
        } catch (const CurveOnConeError&) {
            continue;
        }
        CHECK(hits.size() <= 2);

        const double lo = std::max(c.t_lo, -40.0);
        const double hi = std::min(c.t_hi, 40.0);
        auto f = [&](double t) { return dist(c.point_at(t).xy(), apex) - c.point_at(t).z; };
        const int steps = 2000;
        double prev_t = lo, prev_f = f(lo);
        std::vector<double> sweep_roots;
        for (int i = 1; i <= steps; ++i) {
            const double t = lo + (hi - lo) * i / steps;
            const double ft = f(t);
            if ((prev_f <= 0.0) != (ft <= 0.0)) {
                sweep_roots.push_back(
                    testsupport::bisect([&](double u) { return f(u); }, prev_t, t, 80));
            }
            prev_t = t;
            prev_f = ft;
        }
        for (double r : sweep_roots) {
            bool matched = false;
            for (const auto& h : hits) {
                if (std::abs(h.t - r) <= 1e-7 * std::max(1.0, std::abs(r))) matched = true;
            }
            CHECK(matched);
        }
        for (const auto& h : hits) {
            if (h.t >= lo && h.t <= hi) {
                CHECK(std::abs(f(h.t)) <= 1e-6 * std::max(1.0, c.point_at(h.t).z));
            }
        }
        ++verified;
    }
    CHECK(verified > 8000);
}

TEST_CASE("interval set clipping") {
    IntervalSet s = IntervalSet::interval(-10.0, 10.0);
    s.clip({ConeConstraint::Kind::Inside, -5.0, 7.0});
    REQUIRE(s.parts().size() == 1);
    CHECK(s.parts()[0].lo == doctest::Approx(-5.0));
    CHECK(s.parts()[0].hi == doctest::Approx(7.0));
    s.clip({ConeConstraint::Kind::Above, -1.0, 0.0});
    CHECK(s.parts()[0].lo == doctest::Approx(-1.0));
    s.clip({ConeConstraint::Kind::Outside, 0.0, 2.0});
    REQUIRE(s.parts().size() == 2);
    s.clip({ConeConstraint::Kind::Empty, 0.0, 0.0});
    CHECK(s.is_empty());
}

TEST_SUITE_END();
