#include "circsep/geom.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "circsep/numeric.hpp"

namespace circsep {

int orientation(Point2 a, Point2 b, Point2 c, double eps) {
    const Vec2 u = b - a;
    const Vec2 v = c - a;
    const double cross = u.cross(v);
    const double scale = u.norm() * v.norm();
    if (std::abs(cross) <= eps * scale) return 0;
    return cross > 0.0 ? +1 : -1;
}

Point2 closest_point_on_segment(Point2 p, const Segment& s) {
    if (s.degenerate()) return s.a;
    const Vec2 d = s.b - s.a;
    const double t = clamp((p - s.a).dot(d) / d.norm2(), 0.0, 1.0);
    return s.a + d * t;
}

double dist_point_segment(Point2 p, const Segment& s) {
    return dist(p, closest_point_on_segment(p, s));
}

double dist_point_site(Point2 p, const ElementarySite& s) {
    if (const auto* e = std::get_if<EndpointSite>(&s)) return dist(p, e->p);
    return dist_point_segment(p, std::get<InteriorSite>(s).seg);
}

double dist_point_set(Point2 p, const std::vector<Segment>& Q) {
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& s : Q) best = std::min(best, dist_point_segment(p, s));
    return best;
}

namespace {

bool point_in_open_interior(Point2 p, const Segment& s, double eps) {
    if (s.degenerate()) return false;
    if (orientation(s.a, s.b, p, eps) != 0) return false;
    const Vec2 d = s.b - s.a;
    const double t = (p - s.a).dot(d) / d.norm2();
    const double slack = eps;  // parameter-space slack keeps shared endpoints legal
    return t > slack && t < 1.0 - slack;
}

bool interiors_intersect_pair(const Segment& s1, const Segment& s2, double eps) {
    const bool d1g = s1.degenerate();
    const bool d2g = s2.degenerate();
    if (d1g && d2g) return dist(s1.a, s2.a) <= eps;
    if (d1g) return point_in_open_interior(s1.a, s2, eps);
    if (d2g) return point_in_open_interior(s2.a, s1, eps);

    const int o1 = orientation(s2.a, s2.b, s1.a, eps);
    const int o2 = orientation(s2.a, s2.b, s1.b, eps);
    const int o3 = orientation(s1.a, s1.b, s2.a, eps);
    const int o4 = orientation(s1.a, s1.b, s2.b, eps);

    if (o1 * o2 < 0 && o3 * o4 < 0) return true;  // proper crossing

    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        // Collinear: overlapping interiors iff the parameter intervals overlap
        // in more than a point.
        const Vec2 d = s1.b - s1.a;
        const double len2 = d.norm2();
        double ta = (s2.a - s1.a).dot(d) / len2;
        double tb = (s2.b - s1.a).dot(d) / len2;
        if (ta > tb) std::swap(ta, tb);
        const double lo = std::max(0.0, ta);
        const double hi = std::min(1.0, tb);
        return hi - lo > eps;
    }
    return false;  // touches, if any, involve an endpoint of one of the two
}

}  // namespace

bool segment_interiors_intersect(const Segment& s1, const Segment& s2) {
    return interiors_intersect_pair(s1, s2, 1e-12);
}

DisjointnessReport interiors_disjoint(const std::vector<Segment>& S) {
    const double eps = 1e-12;
    const std::size_t n = S.size();
    if (n < 64) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (interiors_intersect_pair(S[i], S[j], eps)) return {false, i, j};
            }
        }
        return {};
    }

    // Bucket segments on a uniform grid; segments spanning many cells go to a
    // small global list checked against everything.
    double lo_x = S[0].a.x, lo_y = S[0].a.y, hi_x = lo_x, hi_y = lo_y;
    for (const Segment& s : S) {
        for (const Point2 p : {s.a, s.b}) {
            lo_x = std::min(lo_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_x = std::max(hi_x, p.x);
            hi_y = std::max(hi_y, p.y);
        }
    }
    const double cell = std::max({(hi_x - lo_x) / 512.0, (hi_y - lo_y) / 512.0, 1e-12});
    auto cx = [&](double x) { return static_cast<long>((x - lo_x) / cell); };
    auto cy = [&](double y) { return static_cast<long>((y - lo_y) / cell); };

    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> buckets;
    std::vector<std::uint32_t> global;
    for (std::size_t i = 0; i < n; ++i) {
        const Segment& s = S[i];
        const long x0 = std::min(cx(s.a.x), cx(s.b.x)), x1 = std::max(cx(s.a.x), cx(s.b.x));
        const long y0 = std::min(cy(s.a.y), cy(s.b.y)), y1 = std::max(cy(s.a.y), cy(s.b.y));
        if ((x1 - x0 + 1) * (y1 - y0 + 1) > 64) {
            global.push_back(static_cast<std::uint32_t>(i));
            continue;
        }
        for (long x = x0; x <= x1; ++x) {
            for (long y = y0; y <= y1; ++y) {
                buckets[(static_cast<std::int64_t>(x) << 32) ^ (y & 0xffffffffLL)].push_back(
                    static_cast<std::uint32_t>(i));
            }
        }
    }

    std::vector<std::uint64_t> pairs;
    for (const auto& [key, ids] : buckets) {
        (void)key;
        for (std::size_t a = 0; a < ids.size(); ++a) {
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                const std::uint32_t i = std::min(ids[a], ids[b]);
                const std::uint32_t j = std::max(ids[a], ids[b]);
                pairs.push_back((static_cast<std::uint64_t>(i) << 32) | j);
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const std::uint64_t pr : pairs) {
        const std::size_t i = pr >> 32, j = pr & 0xffffffffULL;
        if (interiors_intersect_pair(S[i], S[j], eps)) return {false, i, j};
    }
    for (const std::uint32_t gi : global) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == gi) continue;
            if (interiors_intersect_pair(S[gi], S[j], eps)) {
                return {false, std::min<std::size_t>(gi, j), std::max<std::size_t>(gi, j)};
            }
        }
    }
    return {};
}

EqSite eq_site_from_elementary(const ElementarySite& s) {
    if (const auto* e = std::get_if<EndpointSite>(&s)) return EqPoint{e->p};
    const Segment& seg = std::get<InteriorSite>(s).seg;
    return EqLine{OrientedLine::through(seg.a, seg.b), seg};
}

namespace {

struct LineEq {
    Vec2 n;      // unit left normal
    double c;    // n . anchor
    std::optional<Segment> foot_range;
};

double site_distance(const EqSite& s, Point2 x) {
    if (const auto* p = std::get_if<EqPoint>(&s)) return dist(p->p, x);
    const auto& l = std::get<EqLine>(s).line;
    return std::abs(l.signed_offset(x));
}

bool foot_ok(const LineEq& l, Point2 center, double eps) {
    if (!l.foot_range) return true;
    const Segment& seg = *l.foot_range;
    const Vec2 d = seg.b - seg.a;
    const double t = (center - seg.a).dot(d) / d.norm2();
    return t >= -eps && t <= 1.0 + eps;
}

struct Candidate {
    Point2 center;
    double radius;
};

/// Roots of |x0 + t u - p|^2 = (r0 + t g)^2 for unit u.
void append_point_vs_linear_radius(Point2 x0, Vec2 u, Point2 p, double r0, double g,
                                   std::vector<double>& roots) {
    const Vec2 e0 = x0 - p;
    const double a = 1.0 - g * g;
    const double b = 2.0 * (e0.dot(u) - r0 * g);
    const double c = e0.norm2() - r0 * r0;
    const QuadraticRoots qr = solve_quadratic(a, b, c);
    for (int i = 0; i < qr.count; ++i) roots.push_back(qr.t[i]);
}

}  // namespace

std::vector<EquidistantSolution> solve_equidistant(const EqSite& s1, const EqSite& s2,
                                                   const EqSite& s3, const Tolerance& tol) {
    std::vector<Point2> pts;
    std::vector<LineEq> lines;
    const std::array<const EqSite*, 3> sites{&s1, &s2, &s3};
    for (const EqSite* s : sites) {
        if (const auto* p = std::get_if<EqPoint>(s)) {
            pts.push_back(p->p);
        } else {
            const auto& el = std::get<EqLine>(*s);
            lines.push_back({el.line.left_normal(), el.line.left_normal().dot(el.line.anchor),
                             el.foot_range});
        }
    }

    std::vector<Candidate> cands;
    bool any_branch_consistent = false;

    auto push_candidate = [&](Point2 x, double r) {
        if (!std::isfinite(x.x) || !std::isfinite(x.y) || !std::isfinite(r)) return;
        if (r < -tol.eps_merge) return;
        r = std::max(r, 0.0);
        cands.push_back({x, r});
    };

    if (lines.empty()) {
        // Circumcenter of three points.
        const Point2 p1 = pts[0], p2 = pts[1], p3 = pts[2];
        const Vec2 u = p2 - p1, v = p3 - p1;
        const double det = 2.0 * u.cross(v);
        const double scale = u.norm() * v.norm();
        if (std::abs(det) <= 2.0 * tol.eps_predicate * scale || scale == 0.0) {
            throw NoSolutionError("collinear points have no equidistant center");
        }
        const double bu = p2.norm2() - p1.norm2();
        const double bv = p3.norm2() - p1.norm2();
        const Point2 x{(bu * 2.0 * v.y - bv * 2.0 * u.y) / (2.0 * det),
                       (bv * 2.0 * u.x - bu * 2.0 * v.x) / (2.0 * det)};
        push_candidate(x, dist(x, p1));
        any_branch_consistent = true;
    } else {
        const int L = static_cast<int>(lines.size());
        for (int mask = 0; mask < (1 << L); ++mask) {
            std::array<double, 3> sg{};
            for (int i = 0; i < L; ++i) sg[i] = (mask >> i) & 1 ? -1.0 : 1.0;
            // r(x) = sg[0] * (n0 . x - c0) defines the common radius.
            const Vec2 n0 = lines[0].n * sg[0];
            const double c0 = lines[0].c * sg[0];

            if (L == 3) {
                // Two linear conditions sg_i L_i = sg_0 L_0.
                const Vec2 a1 = lines[1].n * sg[1] - n0;
                const double b1 = lines[1].c * sg[1] - c0;
                const Vec2 a2 = lines[2].n * sg[2] - n0;
                const double b2 = lines[2].c * sg[2] - c0;
                const double det = a1.cross(a2);
                if (std::abs(det) <= tol.eps_predicate) continue;
                any_branch_consistent = true;
                const Point2 x{(b1 * a2.y - b2 * a1.y) / det, (b2 * a1.x - b1 * a2.x) / det};
                push_candidate(x, n0.dot(x) - c0);
            } else if (L == 2) {
                // One linear condition; parameterize its solution line.
                const Vec2 a1 = lines[1].n * sg[1] - n0;
                const double b1 = lines[1].c * sg[1] - c0;
                const double an = a1.norm();
                if (an <= tol.eps_predicate) continue;  // parallel, same normal
                any_branch_consistent = true;
                const Point2 x0 = Point2{0, 0} + a1 * (b1 / (an * an));
                const Vec2 u = a1.perp().normalized();
                const double r0 = n0.dot(x0) - c0;
                const double g = n0.dot(u);
                std::vector<double> roots;
                append_point_vs_linear_radius(x0, u, pts[0], r0, g, roots);
                for (double t : roots) {
                    const Point2 x = x0 + u * t;
                    push_candidate(x, r0 + g * t);
                }
            } else {  // L == 1, two points
                const Point2 p1 = pts[0], p2 = pts[1];
                const Vec2 d = p2 - p1;
                if (d.norm() <= tol.eps_predicate) continue;
                any_branch_consistent = true;
                const Point2 m = (p1 + p2) * 0.5;
                const Vec2 u = d.perp().normalized();
                const double r0 = n0.dot(m) - c0;
                const double g = n0.dot(u);
                std::vector<double> roots;
                append_point_vs_linear_radius(m, u, p1, r0, g, roots);
                for (double t : roots) {
                    const Point2 x = m + u * t;
                    push_candidate(x, r0 + g * t);
                }
            }
        }
        if (!any_branch_consistent) {
            throw NoSolutionError("tangency system inconsistent (parallel lines)");
        }
    }

    // Validate, filter by foot placement, dedupe, canonical sort.
    std::vector<EquidistantSolution> out;
    for (const Candidate& c : cands) {
        bool ok = true;
        for (const EqSite* s : sites) {
            if (std::abs(site_distance(*s, c.center) - c.radius) >
                1e-8 * std::max(1.0, c.radius)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (const LineEq& l : lines) {
            if (!foot_ok(l, c.center, tol.eps_predicate)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        bool dup = false;
        for (const auto& e : out) {
            if (dist(e.center, c.center) <= tol.eps_merge &&
                std::abs(e.radius - c.radius) <= tol.eps_merge) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back({c.center, c.radius});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.center.x != b.center.x) return a.center.x < b.center.x;
        if (a.center.y != b.center.y) return a.center.y < b.center.y;
        return a.radius < b.radius;
    });
    return out;
}

}  // namespace circsep
