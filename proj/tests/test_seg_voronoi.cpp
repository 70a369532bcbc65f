#include <doctest.h>

#include <random>

#include "circsep/oracle.hpp"
#include "circsep/seg_voronoi.hpp"
#include "circsep/separator.hpp"
#include "support.hpp"

using namespace circsep;

TEST_SUITE_BEGIN("seg_voronoi");

TEST_CASE("two point sites") {
    const auto d = build_segment_voronoi({{{-1, 0}, {-1, 0}}, {{1, 0}, {1, 0}}});
    CHECK(d.sites.size() == 2);
    CHECK(d.vertices.empty());
    REQUIRE(d.edges.size() == 1);
    CHECK(d.edges[0].bi_infinite);
}

TEST_CASE("single segment decomposes into three cells") {
    const auto d = build_segment_voronoi({{{-1, 0}, {1, 0}}});
    CHECK(d.sites.size() == 3);
    CHECK(d.vertices.empty());
    REQUIRE(d.edges.size() == 2);
    for (const auto& e : d.edges) {
        CHECK(e.bi_infinite);
        const bool pa = is_endpoint_site(d.sites[e.site_a]);
        const bool pb = is_endpoint_site(d.sites[e.site_b]);
        CHECK(pa != pb);  // endpoint vs interior separator
        // The separators are the perpendiculars x = +-1 through the endpoints.
        const auto& ep = std::get<EndpointSite>(pa ? d.sites[e.site_a] : d.sites[e.site_b]);
        for (const auto& ec : edge_curves(d, e)) {
            for (double t : {0.25, 1.0, 3.0}) {
                CHECK(ec.curve.point_at(t).xy().x == doctest::Approx(ep.p.x));
            }
        }
    }
}

TEST_CASE("point against segment: parabolic bisector") {
    const auto d = build_segment_voronoi({{{0, 1}, {0, 1}}, {{-1, 0}, {1, 0}}});
    // The bisector of the point site and the interior: y = (x^2 + 1) / 2.
    int par_edges = 0;
    for (const auto& e : d.edges) {
        const bool a_pt = is_endpoint_site(d.sites[e.site_a]);
        const bool b_pt = is_endpoint_site(d.sites[e.site_b]);
        const ElementarySite& sa = d.sites[e.site_a];
        const ElementarySite& sb = d.sites[e.site_b];
        const bool point_vs_interior =
            (a_pt && !b_pt && std::get<EndpointSite>(sa).p == Point2{0, 1}) ||
            (b_pt && !a_pt && std::get<EndpointSite>(sb).p == Point2{0, 1});
        if (!point_vs_interior) continue;
        ++par_edges;
        for (const auto& ec : edge_curves(d, e)) {
            for (double f : {0.1, 0.35, 0.6, 0.9}) {
                const double t = ec.t0 + f * (std::min(ec.t1, ec.t0 + 1.5) - ec.t0);
                const Point2 c = ec.curve.point_at(t).xy();
                CHECK(c.y == doctest::Approx((c.x * c.x + 1.0) / 2.0).epsilon(1e-9));
            }
        }
    }
    CHECK(par_edges >= 1);
}

TEST_CASE("vertex validity on random instances") {
    std::mt19937_64 rng(51);
    for (int it = 0; it < 25; ++it) {
        const auto [p, q] = gen_random(12 + static_cast<int>(rng() % 10), rng());
        std::vector<Segment> all(p);
        all.insert(all.end(), q.begin(), q.end());
        const auto d = build_segment_voronoi(all);
        for (const auto& v : d.vertices) {
            REQUIRE(v.owners.size() >= 3);
            double closest = 1e300;
            for (const auto& s : d.sites) closest = std::min(closest, dist_point_site(v.pos, s));
            CHECK(std::abs(closest - v.clearance) <= 1e-8 * std::max(1.0, v.clearance));
            for (int o : v.owners) {
                CHECK(std::abs(dist_point_site(v.pos, d.sites[o]) - v.clearance) <=
                      1e-6 * std::max(1.0, v.clearance));
            }
        }
    }
}

TEST_CASE("edge validity: sampled points tie their two owners") {
    std::mt19937_64 rng(52);
    const auto [p, q] = gen_random(16, 77);
    std::vector<Segment> all(p);
    all.insert(all.end(), q.begin(), q.end());
    const auto d = build_segment_voronoi(all);
    int sampled = 0;
    for (const auto& e : d.edges) {
        for (const auto& ec : edge_curves(d, e)) {
            const double lo = std::max(ec.t0, -20.0), hi = std::min(ec.t1, 20.0);
            if (!(hi > lo)) continue;
            for (int k = 1; k <= 10; ++k) {
                const double t = lo + (hi - lo) * k / 11.0;
                const Point2 c = ec.curve.point_at(t).xy();
                const double da = dist_point_site(c, d.sites[e.site_a]);
                const double db = dist_point_site(c, d.sites[e.site_b]);
                CHECK(std::abs(da - db) <= 1e-6 * std::max(1.0, da));
                const auto [site, dn] = nearest_site(d, c);
                CHECK(da <= dn + 1e-6 * std::max(1.0, dn));
                ++sampled;
            }
        }
    }
    CHECK(sampled > 50);
}

TEST_CASE("size bounds in the elementary site count") {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 10; ++it) {
        const auto [p, q] = gen_random(20, rng());
        std::vector<Segment> all(p);
        all.insert(all.end(), q.begin(), q.end());
        const auto d = build_segment_voronoi(all);
        const std::size_t m = d.sites.size();
        CHECK(d.vertices.size() <= 2 * m - 5);
        CHECK(d.edges.size() <= 3 * m - 6);
    }
}

TEST_CASE("nearest_site picks the closer point site") {
    const auto d = build_segment_voronoi({{{-1, 0}, {-1, 0}}, {{1, 0}, {1, 0}}});
    const auto [site, dn] = nearest_site(d, {0.1, 0.0});
    CHECK(dn == doctest::Approx(0.9));
    CHECK(std::get<EndpointSite>(d.sites[site]).p == Point2{1, 0});
}

TEST_CASE("nearest_site agrees with the segment scan") {
    std::mt19937_64 rng(54);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    const auto [p, q] = gen_random(14, 99);
    std::vector<Segment> all(p);
    all.insert(all.end(), q.begin(), q.end());
    const auto d = build_segment_voronoi(all);
    for (int i = 0; i < 1000; ++i) {
        const Point2 pt{uni(rng), uni(rng)};
        const auto [site, dn] = nearest_site(d, pt);
        CHECK(dn == doctest::Approx(dist_point_set(pt, all)).epsilon(1e-12));
    }
}

TEST_CASE("crossing interiors are rejected") {
    CHECK_THROWS_AS(build_segment_voronoi({{{0, 0}, {2, 0}}, {{1, -1}, {1, 1}}}),
                    InvalidInputError);
}

TEST_SUITE_END();
