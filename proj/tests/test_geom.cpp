#include <doctest.h>

#include <random>

#include "circsep/geom.hpp"
#include "support.hpp"

using namespace circsep;

TEST_SUITE_BEGIN("geom");

TEST_CASE("orientation signs") {
    CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
    CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == 0);
    CHECK(orientation({0, 0}, {1, 0}, {1, -1}) == -1);
}

TEST_CASE("orientation antisymmetry under swaps") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-10.0, 10.0);
    for (int it = 0; it < 500; ++it) {
        const Point2 a{uni(rng), uni(rng)}, b{uni(rng), uni(rng)}, c{uni(rng), uni(rng)};
        const int o = orientation(a, b, c);
        CHECK(orientation(b, a, c) == -o);
        CHECK(orientation(a, c, b) == -o);
        CHECK(orientation(c, b, a) == -o);
    }
}

TEST_CASE("dist_point_segment") {
    CHECK(dist_point_segment({0, 1}, {{-1, 0}, {1, 0}}) == doctest::Approx(1.0));
    CHECK(dist_point_segment({3, 4}, {{0, 0}, {0, 0}}) == doctest::Approx(5.0));
    CHECK(dist_point_segment({2, 1}, {{0, 0}, {1, 0}}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("distance vanishes exactly on the segment") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    std::uniform_real_distribution<double> par(0.0, 1.0);
    for (int it = 0; it < 200; ++it) {
        const Segment s{{uni(rng), uni(rng)}, {uni(rng), uni(rng)}};
        const Point2 on = s.a + (s.b - s.a) * par(rng);
        CHECK(dist_point_segment(on, s) <= 1e-9);
        const Point2 off = on + (s.b - s.a).perp().normalized() * 0.01;
        if (!s.degenerate()) CHECK(dist_point_segment(off, s) > 1e-9);
    }
}

TEST_CASE("solve_equidistant: three points") {
    const auto sols = solve_equidistant(EqPoint{{0, 0}}, EqPoint{{2, 0}}, EqPoint{{1, 1}});
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].center.x == doctest::Approx(1.0));
    CHECK(sols[0].center.y == doctest::Approx(0.0));
    CHECK(sols[0].radius == doctest::Approx(1.0));
}

TEST_CASE("solve_equidistant: two lines and a point") {
    const EqLine l1{OrientedLine{{0, 0}, {1, 0}}, std::nullopt};  // y = 0
    const EqLine l2{OrientedLine{{0, 2}, {1, 0}}, std::nullopt};  // y = 2
    const auto sols = solve_equidistant(l1, l2, EqPoint{{0, 1}});
    REQUIRE(sols.size() == 2);
    CHECK(sols[0].center.x == doctest::Approx(-1.0));
    CHECK(sols[0].center.y == doctest::Approx(1.0));
    CHECK(sols[0].radius == doctest::Approx(1.0));
    CHECK(sols[1].center.x == doctest::Approx(1.0));
    CHECK(sols[1].center.y == doctest::Approx(1.0));
}

TEST_CASE("solve_equidistant: two points and a line, bisection-checked") {
    // Circle below y = 5 through (1,0) and (4,0): center (2.5, k) with
    // sqrt(2.25 + k^2) = 5 - k.
    const double k = testsupport::bisect(
        [](double t) { return std::sqrt(2.25 + t * t) - (5.0 - t); }, 0.0, 5.0);
    const double r = 5.0 - k;
    CHECK(k == doctest::Approx(2.275).epsilon(1e-9));
    CHECK(r == doctest::Approx(2.725).epsilon(1e-9));

    const EqLine roof{OrientedLine{{0, 5}, {1, 0}}, std::nullopt};
    const auto sols = solve_equidistant(EqPoint{{1, 0}}, EqPoint{{4, 0}}, roof);
    bool found = false;
    for (const auto& s : sols) {
        if (std::abs(s.center.x - 2.5) < 1e-9 && std::abs(s.center.y - k) < 1e-9 &&
            std::abs(s.radius - r) < 1e-9) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("solve_equidistant satisfies its residual bound on random triples") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    std::uniform_int_distribution<int> coin(0, 1);
    int checked = 0;
    for (int it = 0; it < 400; ++it) {
        std::array<EqSite, 3> sites;
        for (auto& s : sites) {
            if (coin(rng)) {
                s = EqPoint{{uni(rng), uni(rng)}};
            } else {
                const Point2 a{uni(rng), uni(rng)};
                const Point2 b{uni(rng), uni(rng)};
                if (dist(a, b) < 1e-6) {
                    s = EqPoint{a};
                } else {
                    s = EqLine{OrientedLine::through(a, b), std::nullopt};
                }
            }
        }
        try {
            for (const auto& sol : solve_equidistant(sites[0], sites[1], sites[2])) {
                for (const auto& s : sites) {
                    double d;
                    if (const auto* p = std::get_if<EqPoint>(&s)) {
                        d = dist(p->p, sol.center);
                    } else {
                        d = std::abs(std::get<EqLine>(s).line.signed_offset(sol.center));
                    }
                    CHECK(std::abs(d - sol.radius) <= 1e-8 * std::max(1.0, sol.radius));
                }
                ++checked;
            }
        } catch (const NoSolutionError&) {
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("solve_equidistant rejects interior feet outside the segment") {
    // Line site restricted to x in [10, 11]: the foot at x = 0 disqualifies.
    const Segment far_seg{{10, 0}, {11, 0}};
    const EqLine l{OrientedLine::through(far_seg.a, far_seg.b), far_seg};
    const auto sols = solve_equidistant(EqPoint{{-1, 1}}, EqPoint{{1, 1}}, l);
    for (const auto& s : sols) {
        const double t = (s.center.x - 10.0);
        CHECK(t >= -1e-9);
        CHECK(t <= 1.0 + 1e-9);
    }
}

TEST_CASE("interiors_disjoint") {
    const std::vector<Segment> shared{{{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}};
    CHECK(interiors_disjoint(shared).ok);

    const std::vector<Segment> crossing{{{0, 0}, {2, 0}}, {{1, -1}, {1, 1}}};
    const auto rep = interiors_disjoint(crossing);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first == 0);
    CHECK(rep.second == 1);

    const std::vector<Segment> overlap{{{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}};
    CHECK_FALSE(interiors_disjoint(overlap).ok);

    // T-junction: an endpoint on another interior is allowed.
    const std::vector<Segment> tj{{{0, 0}, {2, 0}}, {{1, 0}, {1, 1}}};
    CHECK(interiors_disjoint(tj).ok);
}

TEST_CASE("interiors_disjoint is order-invariant and matches the pairwise route") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> uni(-8.0, 8.0);
    // A grid-path-sized instance with one planted crossing.
    std::vector<Segment> segs;
    for (int i = 0; i < 90; ++i) {
        const Point2 c{uni(rng), uni(rng)};
        const Vec2 d{0.2 * uni(rng) / 8.0, 0.2 * uni(rng) / 8.0};
        segs.push_back({c - d, c + d});
    }
    segs.push_back({{-0.05, -0.05}, {0.05, 0.05}});
    segs.push_back({{-0.05, 0.05}, {0.05, -0.05}});

    bool brute_bad = false;
    for (std::size_t i = 0; i < segs.size() && !brute_bad; ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            if (segment_interiors_intersect(segs[i], segs[j])) {
                brute_bad = true;
                break;
            }
        }
    }
    CHECK(brute_bad);
    CHECK_FALSE(interiors_disjoint(segs).ok);

    std::shuffle(segs.begin(), segs.end(), rng);
    CHECK_FALSE(interiors_disjoint(segs).ok);
}

TEST_SUITE_END();
