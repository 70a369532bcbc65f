#include "circsep/circle_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circsep/numeric.hpp"

namespace circsep {

CirclePoint CurveF::point_at(double t) const {
    switch (kind) {
        case Kind::Hyperbola: {
            const Point2 c = mid + dir * t;
            return {c.x, c.y, std::hypot(h, t)};
        }
        case Kind::Parabola: {
            const double r = ((t - xi) * (t - xi) + eta * eta) / (2.0 * eta);
            const Point2 c = base.point_at(t) + toward * r;
            return {c.x, c.y, r};
        }
        case Kind::Line3:
        default: {
            const Point2 c = origin + e * t;
            return {c.x, c.y, z0 + ez * t};
        }
    }
}

double CurveF::param_of_center(Point2 c) const {
    switch (kind) {
        case Kind::Hyperbola:
            return dir.dot(c - mid);
        case Kind::Parabola:
            return base.abscissa(c);
        case Kind::Line3:
        default:
            return e.dot(c - origin) / e.norm2();
    }
}

std::array<double, 2> CurveF::surface_residuals(double t) const {
    const CirclePoint p = point_at(t);
    switch (kind) {
        case Kind::Hyperbola:
            return {std::abs(p.z - dist(p.xy(), s1)), std::abs(p.z - dist(p.xy(), s2))};
        case Kind::Parabola:
            return {std::abs(p.z - dist(p.xy(), focus)),
                    std::abs(p.z - toward.dot(p.xy() - base.anchor))};
        case Kind::Line3:
        default: {
            if (through_point) {
                return {std::abs(p.z - dist(p.xy(), *through_point)), 0.0};
            }
            return {0.0, 0.0};  // both surfaces are halfplanes satisfied by construction
        }
    }
}

namespace {

CurveF make_hyperbola(Point2 a, Point2 b, const Tolerance& tol) {
    if (dist(a, b) <= tol.eps_predicate) {
        throw DegenerateCurveError("coincident points define no hyperbola");
    }
    CurveF c;
    c.kind = CurveF::Kind::Hyperbola;
    c.s1 = a;
    c.s2 = b;
    c.mid = (a + b) * 0.5;
    c.dir = (b - a).perp().normalized();
    c.h = 0.5 * dist(a, b);
    return c;
}

CurveF make_parabola_or_ray(Point2 p, const LiftingHalfplane& hp, const Tolerance& tol) {
    const double eta = hp.offset(p);
    if (eta < -tol.eps_predicate) {
        throw DegenerateCurveError("point lies strictly on the far side of the tangent line");
    }
    if (eta <= tol.eps_predicate) {
        // Point on the line: circles tangent at p; their images form a ray.
        CurveF c;
        c.kind = CurveF::Kind::Line3;
        c.origin = p;
        c.z0 = 0.0;
        c.e = hp.inward_normal();
        c.ez = 1.0;
        c.through_point = p;
        c.t_lo = 0.0;
        return c;
    }
    CurveF c;
    c.kind = CurveF::Kind::Parabola;
    c.focus = p;
    c.base = hp.line;
    c.toward = hp.inward_normal();
    c.xi = hp.line.abscissa(p);
    c.eta = eta;
    return c;
}

CurveF make_line3(const LiftingHalfplane& h1, const LiftingHalfplane& h2,
                  const Tolerance& tol) {
    const Vec2 n1 = h1.inward_normal();
    const Vec2 n2 = h2.inward_normal();
    const double d1 = n1.dot(h1.line.anchor);
    const double d2 = n2.dot(h2.line.anchor);
    const double cr = n1.cross(n2);

    if (std::abs(cr) > tol.eps_predicate) {
        // Solve n1.c = d1 + r, n2.c = d2 + r for c(r) = c0 + r * b.
        auto solve2 = [&](double b1, double b2) -> Point2 {
            return {(b1 * n2.y - b2 * n1.y) / cr, (b2 * n1.x - b1 * n2.x) / cr};
        };
        CurveF c;
        c.kind = CurveF::Kind::Line3;
        c.origin = solve2(d1, d2);
        c.e = solve2(d1 + 1.0, d2 + 1.0) - c.origin;
        c.z0 = 0.0;
        c.ez = 1.0;
        c.t_lo = 0.0;
        return c;
    }
    if (n1.dot(n2) < 0.0) {
        // Facing parallel halfplanes: constant radius along the midline.
        const double r = -0.5 * (d1 + d2);
        if (r <= tol.eps_predicate) {
            throw DegenerateCurveError("facing parallel lines with no gap");
        }
        CurveF c;
        c.kind = CurveF::Kind::Line3;
        c.origin = n1 * (d1 + r);  // n1 . origin = d1 + r
        c.z0 = r;
        c.e = n1.perp();
        c.ez = 0.0;
        return c;
    }
    throw DegenerateCurveError("parallel lines tangent on the same side");
}

}  // namespace

CurveF curve_from_sites(const CurveSite& a, const CurveSite& b, const Tolerance& tol) {
    if (const auto* pa = std::get_if<Point2>(&a)) {
        if (const auto* pb = std::get_if<Point2>(&b)) return make_hyperbola(*pa, *pb, tol);
        return make_parabola_or_ray(*pa, std::get<LiftingHalfplane>(b), tol);
    }
    const auto& ha = std::get<LiftingHalfplane>(a);
    if (const auto* pb = std::get_if<Point2>(&b)) return make_parabola_or_ray(*pb, ha, tol);
    return make_line3(ha, std::get<LiftingHalfplane>(b), tol);
}

namespace {

/// Coefficients of g(t) = |center(t) - apex|^2 - z(t)^2; the curve point is
/// inside the cone's epigraph (apex inside the circle) iff g(t) <= 0.
struct Gpoly {
    double a2 = 0.0, a1 = 0.0, a0 = 0.0;
    double scale = 1.0;  // magnitude reference for zero tests

    double eval(double t) const { return (a2 * t + a1) * t + a0; }
    double deriv(double t) const { return 2.0 * a2 * t + a1; }
};

Gpoly g_poly(const CurveF& c, Point2 apex) {
    Gpoly g;
    switch (c.kind) {
        case CurveF::Kind::Hyperbola: {
            const Vec2 w = c.mid - apex;
            g.a2 = 0.0;
            g.a1 = 2.0 * c.dir.dot(w);
            g.a0 = w.norm2() - c.h * c.h;
            g.scale = std::max({1.0, w.norm2(), c.h * c.h});
            break;
        }
        case CurveF::Kind::Parabola: {
            const Vec2 w0 = c.base.anchor - apex;
            const double beta = c.toward.dot(w0);
            const double ra = 1.0 / (2.0 * c.eta);
            const double rb = -c.xi / c.eta;
            const double rc = (c.xi * c.xi + c.eta * c.eta) / (2.0 * c.eta);
            g.a2 = 1.0 + 2.0 * beta * ra;
            g.a1 = 2.0 * c.base.direction.dot(w0) + 2.0 * beta * rb;
            g.a0 = w0.norm2() + 2.0 * beta * rc;
            g.scale = std::max({1.0, w0.norm2(), std::abs(2.0 * beta * rc)});
            break;
        }
        case CurveF::Kind::Line3:
        default: {
            const Vec2 w = c.origin - apex;
            g.a2 = c.e.norm2() - c.ez * c.ez;
            g.a1 = 2.0 * (c.e.dot(w) - c.z0 * c.ez);
            g.a0 = w.norm2() - c.z0 * c.z0;
            g.scale = std::max({1.0, w.norm2(), c.z0 * c.z0});
            break;
        }
    }
    return g;
}

bool identically_on_cone(const Gpoly& g, double eps) {
    return std::abs(g.a2) <= eps && std::abs(g.a1) <= eps * g.scale &&
           std::abs(g.a0) <= eps * g.scale;
}

}  // namespace

ConeConstraint cone_constraint(const CurveF& curve, Point2 apex, const Tolerance& tol) {
    const Gpoly g = g_poly(curve, apex);
    const double eps = tol.eps_predicate;
    if (identically_on_cone(g, eps)) {
        throw CurveOnConeError("curve lies on the query cone");
    }
    ConeConstraint out;
    if (std::abs(g.a2) <= eps) {
        // Linear.
        if (std::abs(g.a1) <= eps * g.scale) {
            out.kind = g.a0 <= 0.0 ? ConeConstraint::Kind::All : ConeConstraint::Kind::Empty;
            return out;
        }
        const double r = -g.a0 / g.a1;
        if (g.a1 > 0.0) {
            out.kind = ConeConstraint::Kind::Below;
            out.hi = r;
        } else {
            out.kind = ConeConstraint::Kind::Above;
            out.lo = r;
        }
        return out;
    }
    const QuadraticRoots qr = solve_quadratic(g.a2, g.a1, g.a0);
    if (g.a2 > 0.0) {
        if (qr.count == 0) {
            out.kind = ConeConstraint::Kind::Empty;
        } else if (qr.count == 1) {
            out.kind = ConeConstraint::Kind::Inside;
            out.lo = out.hi = qr.t[0];
        } else {
            out.kind = ConeConstraint::Kind::Inside;
            out.lo = qr.t[0];
            out.hi = qr.t[1];
        }
    } else {
        if (qr.count == 0) {
            out.kind = ConeConstraint::Kind::All;
        } else if (qr.count == 1) {
            out.kind = ConeConstraint::Kind::All;  // grazes the cone from inside
        } else {
            out.kind = ConeConstraint::Kind::Outside;
            out.lo = qr.t[0];
            out.hi = qr.t[1];
        }
    }
    return out;
}

std::vector<CurveConeHit> intersect_curve_cone(const CurveF& curve, const LiftingCone& cone,
                                               const Tolerance& tol) {
    const Gpoly g = g_poly(curve, cone.apex);
    if (identically_on_cone(g, tol.eps_predicate)) {
        throw CurveOnConeError("curve lies on the query cone");
    }
    std::vector<CurveConeHit> hits;
    const QuadraticRoots qr = solve_quadratic(g.a2, g.a1, g.a0);
    for (int i = 0; i < qr.count; ++i) {
        const double t = qr.t[i];
        if (t < curve.t_lo - tol.eps_merge || t > curve.t_hi + tol.eps_merge) continue;
        CurveConeHit hit;
        hit.t = t;
        hit.point = curve.point_at(t);
        const double d = g.deriv(t);
        const double dscale = std::max(1.0, std::abs(g.a1));
        if (qr.count == 1 || std::abs(d) <= tol.eps_predicate * dscale) {
            hit.side = CurveConeHit::Side::Tangent;
        } else {
            hit.side = d < 0.0 ? CurveConeHit::Side::Entering : CurveConeHit::Side::Leaving;
        }
        hits.push_back(hit);
    }
    return hits;
}

IntervalSet IntervalSet::all() {
    IntervalSet s;
    s.parts_.push_back({-std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity()});
    return s;
}

IntervalSet IntervalSet::empty() { return {}; }

IntervalSet IntervalSet::interval(double lo, double hi) {
    IntervalSet s;
    if (lo <= hi) s.parts_.push_back({lo, hi});
    return s;
}

void IntervalSet::clip(const ConeConstraint& c, int tag) {
    using K = ConeConstraint::Kind;
    if (c.kind == K::All) return;
    if (c.kind == K::Empty) {
        parts_.clear();
        return;
    }
    std::vector<Interval> out;
    out.reserve(parts_.size() + 1);
    auto cut_above = [&](const Interval& iv, double hi) {  // iv intersect (-inf, hi]
        if (iv.lo > hi) return;
        Interval r = iv;
        if (hi < iv.hi) {
            r.hi = hi;
            r.hi_tag = tag;
        }
        out.push_back(r);
    };
    auto cut_below = [&](const Interval& iv, double lo) {  // iv intersect [lo, inf)
        if (iv.hi < lo) return;
        Interval r = iv;
        if (lo > iv.lo) {
            r.lo = lo;
            r.lo_tag = tag;
        }
        out.push_back(r);
    };
    for (const Interval& iv : parts_) {
        switch (c.kind) {
            case K::Below:
                cut_above(iv, c.hi);
                break;
            case K::Above:
                cut_below(iv, c.lo);
                break;
            case K::Inside: {
                Interval r = iv;
                if (c.lo > r.lo) {
                    r.lo = c.lo;
                    r.lo_tag = tag;
                }
                if (c.hi < r.hi) {
                    r.hi = c.hi;
                    r.hi_tag = tag;
                }
                if (r.lo <= r.hi) out.push_back(r);
                break;
            }
            case K::Outside:
                cut_above(iv, c.lo);
                cut_below(iv, c.hi);
                break;
            default:
                break;
        }
    }
    parts_ = std::move(out);
}

}  // namespace circsep
