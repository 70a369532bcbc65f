#pragma once

// Shared test-side oracles: reference algorithms kept deliberately simple so
// they can vouch for the hierarchical and incremental implementations.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "circsep/circle_space.hpp"
#include "circsep/envelope.hpp"
#include "circsep/geom.hpp"
#include "circsep/hierarchy.hpp"

namespace circsep::testsupport {

/// Naive curve-envelope intersection: clip the curve's parameter domain by
/// every cone, then read the crossings off the surviving interval.
inline std::vector<EnvelopeHit> naive_query_curve(const std::vector<Point2>& sites,
                                                  const CurveF& curve) {
    IntervalSet feas = IntervalSet::interval(curve.t_lo, curve.t_hi);
    std::vector<int> always;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        try {
            feas.clip(cone_constraint(curve, sites[i]));
        } catch (const CurveOnConeError&) {
            always.push_back(static_cast<int>(i));
        }
        if (feas.is_empty()) return {};
    }
    std::vector<EnvelopeHit> hits;
    auto emit = [&](double t) {
        if (!std::isfinite(t)) return;
        const CirclePoint cp = curve.point_at(t);
        double h = 0.0;
        for (const Point2& s : sites) h = std::max(h, dist(cp.xy(), s));
        if (std::abs(h - cp.z) > 1e-6 * std::max(1.0, cp.z)) return;  // domain end inside
        EnvelopeHit hit;
        hit.point = cp;
        hit.t = t;
        const double eps = 1e-7 * std::max(1.0, cp.z);
        for (std::size_t i = 0; i < sites.size(); ++i) {
            if (std::abs(dist(cp.xy(), sites[i]) - cp.z) <= eps) {
                hit.owners.push_back(static_cast<int>(i));
            }
        }
        hits.push_back(std::move(hit));
    };
    for (const auto& part : feas.parts()) {
        emit(part.lo);
        if (part.hi != part.lo) emit(part.hi);
    }
    return hits;
}

/// Random strictly convex CCW polygon with (almost) exactly n vertices:
/// stratified angles on an ellipse keep every point in convex position while
/// avoiding the all-cocircular degeneracy.
inline std::vector<Point2> random_convex_polygon(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double phase = 2.0 * M_PI * uni(rng);
    const double a = 1.0 + 0.6 * uni(rng);  // semi-axes; b stays 1
    std::vector<Point2> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double ang = phase + 2.0 * M_PI * (i + 0.9 * uni(rng)) / n;
        pts.push_back({a * std::cos(ang), std::sin(ang)});
    }
    return convex_hull(std::move(pts)).vertices;
}

/// Random curve of one of the three kinds, built from sites scattered around
/// the unit-ish scale.
inline CurveF random_curve(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    std::uniform_int_distribution<int> kind(0, 2);
    auto pt = [&]() { return Point2{uni(rng), uni(rng)}; };
    for (;;) {
        try {
            switch (kind(rng)) {
                case 0:
                    return curve_from_sites(pt(), pt());
                case 1: {
                    const Point2 a = pt();
                    const Point2 b = pt();
                    const OrientedLine l = OrientedLine::through(a, a + (b - a).normalized());
                    const Point2 s = pt();
                    const HalfplaneSide side = l.signed_offset(s) >= 0.0 ? HalfplaneSide::Left
                                                                         : HalfplaneSide::Right;
                    return curve_from_sites(s, LiftingHalfplane{l, side});
                }
                default: {
                    const OrientedLine l1 = OrientedLine::through(pt(), pt());
                    const OrientedLine l2 = OrientedLine::through(pt(), pt());
                    std::uniform_int_distribution<int> coin(0, 1);
                    const auto s1 = coin(rng) ? HalfplaneSide::Left : HalfplaneSide::Right;
                    const auto s2 = coin(rng) ? HalfplaneSide::Left : HalfplaneSide::Right;
                    return curve_from_sites(LiftingHalfplane{l1, s1}, LiftingHalfplane{l2, s2});
                }
            }
        } catch (const DegenerateCurveError&) {
            // resample
        }
    }
}

/// 1-D bisection for f monotone-crossing on [lo, hi]; expects f(lo), f(hi) of
/// opposite signs.
template <typename F>
double bisect(F f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm <= 0.0) == (flo <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace circsep::testsupport
