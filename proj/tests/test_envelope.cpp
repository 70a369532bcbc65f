#include <doctest.h>

#include <random>

#include "circsep/envelope.hpp"
#include "support.hpp"

using namespace circsep;

TEST_SUITE_BEGIN("envelope");

TEST_CASE("convex hull basics") {
    const auto h1 = convex_hull({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}});
    CHECK(h1.vertices.size() == 3);

    const auto h2 = convex_hull({{0, 0}});
    REQUIRE(h2.vertices.size() == 1);

    const auto h3 = convex_hull({{0, 0}, {1, 0}, {2, 0}});
    REQUIRE(h3.vertices.size() == 2);
    CHECK(h3.vertices[0].x == 0.0);
    CHECK(h3.vertices[1].x == 2.0);
}

TEST_CASE("convex hull is CCW") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    std::vector<Point2> pts;
    for (int i = 0; i < 200; ++i) pts.push_back({uni(rng), uni(rng)});
    const auto h = convex_hull(pts);
    const auto& v = h.vertices;
    REQUIRE(v.size() >= 3);
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(orientation(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]) == 1);
    }
}

TEST_CASE("farthest-point triangulation circumdisks contain every vertex") {
    std::mt19937_64 rng(32);
    for (int it = 0; it < 60; ++it) {
        const int n = 3 + static_cast<int>(rng() % 38);
        const auto poly = testsupport::random_convex_polygon(n, rng);
        if (poly.size() < 3) continue;
        const auto tris = detail::farthest_point_triangulation(poly, rng());
        CHECK(tris.size() == poly.size() - 2);
        for (const auto& t : tris) {
            const Point2 a = poly[t[0]], b = poly[t[1]], c = poly[t[2]];
            CHECK(orientation(a, b, c) == 1);
            // Circumcenter via bisector solve.
            const Vec2 u = b - a, v = c - a;
            const double d = 2.0 * u.cross(v);
            const Point2 cc{a.x + (v.y * u.norm2() - u.y * v.norm2()) / d,
                            a.y + (u.x * v.norm2() - v.x * u.norm2()) / d};
            const double r = dist(cc, a);
            for (const Point2& p : poly) {
                CHECK(dist(cc, p) <= r + 1e-7 * std::max(1.0, r));
            }
        }
    }
}

TEST_CASE("furthest voronoi of an equilateral triangle") {
    const double s3 = std::sqrt(3.0);
    const auto d = furthest_voronoi(convex_hull({{0, 0}, {2, 0}, {1, s3}}));
    REQUIRE(d.vertices.size() == 1);
    CHECK(d.vertices[0].pos.x == doctest::Approx(1.0));
    CHECK(d.vertices[0].pos.y == doctest::Approx(1.0 / s3));
    CHECK(d.vertices[0].clearance == doctest::Approx(2.0 / s3));
    CHECK(d.edges.size() == 3);
}

TEST_CASE("furthest voronoi of two points") {
    const auto d = furthest_voronoi(convex_hull({{-1, 0}, {1, 0}}));
    REQUIRE(d.edges.size() == 1);
    CHECK(d.edges[0].bi_infinite);
    // The cell of (-1,0) is the far side x > 0.
    CHECK(d.farthest_site({2, 0}) == 0);
    CHECK(d.farthest_site({-2, 0}) == 1);
}

TEST_CASE("furthest voronoi of the square merges the cocircular vertex") {
    const auto d = furthest_voronoi(convex_hull({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}));
    REQUIRE(d.vertices.size() == 1);
    CHECK(d.vertices[0].pos.x == doctest::Approx(0.0));
    CHECK(d.vertices[0].pos.y == doctest::Approx(0.0));
    CHECK(d.vertices[0].owners.size() == 4);
    REQUIRE(d.edges.size() == 4);
    for (const auto& e : d.edges) {
        // Rays along the axes.
        CHECK(std::min(std::abs(e.ray_dir.x), std::abs(e.ray_dir.y)) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    // Sampled farthest vertices match the quadrant structure.
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const Point2 q{uni(rng), uni(rng)};
        const int f = d.farthest_site(q);
        for (std::size_t s = 0; s < d.sites.size(); ++s) {
            CHECK(dist(q, d.sites[f]) >= dist(q, d.sites[s]) - 1e-12);
        }
    }
}

TEST_CASE("euler relation with the point-at-infinity convention") {
    std::mt19937_64 rng(34);
    for (int it = 0; it < 40; ++it) {
        const int n = 3 + static_cast<int>(rng() % 47);
        const auto poly = testsupport::random_convex_polygon(n, rng);
        if (poly.size() < 3) continue;
        const auto d = furthest_voronoi({poly});
        const long cells = static_cast<long>(d.sites.size());
        const long edges = static_cast<long>(d.edges.size());
        const long verts = static_cast<long>(d.vertices.size());
        CHECK(cells - edges + verts == 1);
    }
}

TEST_CASE("envelope height is the farthest distance and is convex") {
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    const auto poly = testsupport::random_convex_polygon(24, rng);
    const auto d = furthest_voronoi({poly});
    const auto ue = lift_envelope(d);
    for (int i = 0; i < 100; ++i) {
        const Point2 q{uni(rng), uni(rng)};
        double expect = 0.0;
        for (const Point2& s : poly) expect = std::max(expect, dist(q, s));
        CHECK(ue.height(q) == doctest::Approx(expect).epsilon(1e-12));

        const Point2 q2{uni(rng), uni(rng)};
        const Point2 mid = (q + q2) * 0.5;
        CHECK(ue.height(mid) <= 0.5 * (ue.height(q) + ue.height(q2)) + 1e-9);

        // The circle of radius h(q) encloses every vertex and touches one.
        const double h = ue.height(q);
        double closest_slack = 1e300;
        for (const Point2& s : poly) {
            CHECK(dist(q, s) <= h + 1e-9);
            closest_slack = std::min(closest_slack, h - dist(q, s));
        }
        CHECK(closest_slack <= 1e-9);
    }
}

TEST_CASE("lift_envelope mirrors the diagram") {
    const auto d = furthest_voronoi(convex_hull({{-1, 0}, {1, 0}}));
    const auto ue = lift_envelope(d);
    CHECK(ue.height({0, 0}) == doctest::Approx(1.0));

    const double s3 = std::sqrt(3.0);
    const auto dt = furthest_voronoi(convex_hull({{0, 0}, {2, 0}, {1, s3}}));
    const auto uet = lift_envelope(dt);
    REQUIRE(uet.vertices.size() == 1);
    CHECK(uet.vertices[0].z == doctest::Approx(2.0 / s3));
    CHECK(uet.height({1.0, 1.0 / s3}) == doctest::Approx(2.0 / s3));
    CHECK(uet.edge_sites.size() == dt.edges.size());
}

TEST_SUITE_END();
