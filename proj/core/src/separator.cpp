#include "circsep/separator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <future>
#include <map>

#include "circsep/circle_space.hpp"
#include "circsep/numeric.hpp"

namespace circsep {

namespace {

struct ContactPoint {
    Point2 p;
    std::vector<const Contact*> sources;
};

std::vector<ContactPoint> dedupe_points(const std::vector<const Contact*>& cs, double eps) {
    std::vector<ContactPoint> out;
    for (const Contact* c : cs) {
        bool merged = false;
        for (auto& cp : out) {
            if (dist(cp.p, c->point) <= eps) {
                cp.sources.push_back(c);
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({c->point, {c}});
    }
    return out;
}

bool parallel_interior_pair(const ContactPoint& a, const ContactPoint& b) {
    for (const Contact* ca : a.sources) {
        const auto* ia = std::get_if<InteriorSite>(&ca->site);
        if (!ia) continue;
        for (const Contact* cb : b.sources) {
            const auto* ib = std::get_if<InteriorSite>(&cb->site);
            if (!ib) continue;
            if (std::abs(ia->seg.dir().cross(ib->seg.dir())) <= 1e-7) return true;
        }
    }
    return false;
}

/// First-order analysis of sliding the center along `u` (a direction the
/// antipodal pair leaves free). True when a strictly larger separating circle
/// exists that way: no excluded-side contact loses distance, no tangency keeps
/// sliding along segment material (which caps the radius), and no enclosed
/// contact outruns the clearance.
bool improving_slide(Point2 center, double r, Vec2 u, const std::vector<ContactPoint>& O,
                     const std::vector<ContactPoint>& I) {
    const double eps = 1e-7;
    double clearance_rate = std::numeric_limits<double>::infinity();
    for (const ContactPoint& cp : O) {
        const Vec2 dhat = (cp.p - center) * (1.0 / r);
        const double rate = -u.dot(dhat);
        if (rate < -eps) return false;  // the excluded side would be entered
        if (rate <= eps) {
            for (const Contact* src : cp.sources) {
                const auto* is = std::get_if<InteriorSite>(&src->site);
                if (!is) continue;
                const Segment& s = is->seg;
                const double margin = 1e-9 * std::max(1.0, s.length());
                const double ahead =
                    std::max(u.dot(s.a - cp.p), u.dot(s.b - cp.p));
                if (ahead > margin) return false;  // tangency slides along material
            }
        }
        clearance_rate = std::min(clearance_rate, rate);
    }
    for (const ContactPoint& ip : I) {
        const Vec2 dhat = (ip.p - center) * (1.0 / r);
        if (-u.dot(dhat) > clearance_rate + eps) return false;  // enclosed point escapes
    }
    return true;
}

bool strictly_inside_hull(Point2 c, std::vector<Point2> pts, double eps) {
    const ConvexHull h = convex_hull(std::move(pts));
    const auto& v = h.vertices;
    if (v.size() < 3) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (orientation(v[i], v[(i + 1) % v.size()], c, eps) != 1) return false;
    }
    return true;
}

}  // namespace

std::optional<ConditionTag> classify_contacts(const Circle& c,
                                              const std::vector<Contact>& contacts,
                                              SideSet inside, const Tolerance& tol) {
    const double eps_pt = tol.eps_merge * std::max(1.0, c.radius);
    std::vector<const Contact*> outs, ins;
    for (const Contact& ct : contacts) {
        (ct.set == inside ? ins : outs).push_back(&ct);
    }
    const std::vector<ContactPoint> O = dedupe_points(outs, eps_pt);
    const std::vector<ContactPoint> I = dedupe_points(ins, eps_pt);
    if (O.size() + I.size() < 3) return std::nullopt;

    std::vector<std::pair<int, int>> anti;
    for (std::size_t i = 0; i < O.size(); ++i) {
        for (std::size_t j = i + 1; j < O.size(); ++j) {
            const Point2 m = (O[i].p + O[j].p) * 0.5;
            if (dist(m, c.center) <= eps_pt) anti.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    }

    // Two distinct antipodal pairs leave no free slide direction at all.
    if (anti.size() >= 2) return ConditionTag::C1pp;

    if (O.size() >= 3) {
        std::vector<Point2> pts;
        pts.reserve(O.size());
        for (const auto& cp : O) pts.push_back(cp.p);
        if (strictly_inside_hull(c.center, std::move(pts), tol.eps_predicate)) {
            return ConditionTag::C1;
        }
    }

    if (O.size() >= 2 && !I.empty()) {
        for (std::size_t i = 0; i < O.size(); ++i) {
            for (std::size_t j = i + 1; j < O.size(); ++j) {
                for (const auto& p : I) {
                    const int oc = orientation(O[i].p, O[j].p, c.center, tol.eps_predicate);
                    const int op = orientation(O[i].p, O[j].p, p.p, tol.eps_predicate);
                    if (oc * op < 0) return ConditionTag::C2;
                }
            }
        }
    }

    if (anti.size() == 1) {
        // One antipodal pair only frees the slide axis perpendicular to its
        // diameter; the circle is locally largest iff both axis directions are
        // blocked or capped.
        const auto [qi, qj] = anti.front();
        const Vec2 axis = (O[qj].p - O[qi].p).normalized().perp();
        if (improving_slide(c.center, c.radius, axis, O, I) ||
            improving_slide(c.center, c.radius, -axis, O, I)) {
            return std::nullopt;
        }
        const bool par = parallel_interior_pair(O[qi], O[qj]);
        if (par && O.size() >= 3) return ConditionTag::C1p;
        // Two enclosed-set contacts strictly on opposite sides of the diameter.
        for (std::size_t a = 0; a < I.size(); ++a) {
            for (std::size_t b = a + 1; b < I.size(); ++b) {
                const int oa = orientation(O[qi].p, O[qj].p, I[a].p, tol.eps_predicate);
                const int ob = orientation(O[qi].p, O[qj].p, I[b].p, tol.eps_predicate);
                if (oa * ob < 0) return ConditionTag::C2pp;
            }
        }
        if (par && !I.empty()) return ConditionTag::C2p;
    }
    return std::nullopt;
}

OrientationContext make_orientation_context(SideSet inside, const std::vector<Segment>& in_segs,
                                            const std::vector<Segment>& out_segs,
                                            const Tolerance& tol) {
    OrientationContext ctx;
    ctx.inside = inside;
    ctx.inside_segs = &in_segs;
    ctx.outside_segs = &out_segs;

    std::vector<Point2> pts;
    pts.reserve(2 * in_segs.size());
    for (const Segment& s : in_segs) {
        pts.push_back(s.a);
        if (!s.degenerate()) pts.push_back(s.b);
    }
    ctx.hull = convex_hull(std::move(pts));
    ctx.env = Hierarchy::build(ctx.hull.vertices);

    auto key = [](Point2 p) {
        static_assert(sizeof(double) == 8);
        std::uint64_t xb, yb;
        std::memcpy(&xb, &p.x, 8);
        std::memcpy(&yb, &p.y, 8);
        return std::pair<std::uint64_t, std::uint64_t>{xb, yb};
    };
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> first_seg;
    for (std::size_t i = 0; i < in_segs.size(); ++i) {
        first_seg.try_emplace(key(in_segs[i].a), static_cast<int>(i));
        first_seg.try_emplace(key(in_segs[i].b), static_cast<int>(i));
    }
    ctx.hull_parent.assign(ctx.hull.vertices.size(), -1);
    for (std::size_t h = 0; h < ctx.hull.vertices.size(); ++h) {
        const auto it = first_seg.find(key(ctx.hull.vertices[h]));
        if (it != first_seg.end()) ctx.hull_parent[h] = it->second;
    }

    ctx.vor = build_segment_voronoi(out_segs, tol, /*validate=*/false);
    return ctx;
}

namespace {

Point2 contact_point_on_site(Point2 center, const ElementarySite& site) {
    if (const auto* e = std::get_if<EndpointSite>(&site)) return e->p;
    return closest_point_on_segment(center, std::get<InteriorSite>(site).seg);
}

bool c1_family(ConditionTag t) {
    return t == ConditionTag::C1 || t == ConditionTag::C1p || t == ConditionTag::C1pp;
}

bool c2_family(ConditionTag t) {
    return t == ConditionTag::C2 || t == ConditionTag::C2p || t == ConditionTag::C2pp;
}

}  // namespace

std::optional<SeparatingCircle> check_vertex_candidate(const OrientationContext& ctx,
                                                       int vertex_id, const Tolerance& tol) {
    const SegVorVertex& v = ctx.vor.vertices[vertex_id];
    const double r = v.clearance;
    if (r <= tol.eps_merge) return std::nullopt;

    const EnvelopeHit hit = ctx.env.query_vertical(v.pos);
    const double h = hit.point.z;
    const double eps_sep = tol.eps_merge * std::max(1.0, r);
    if (r < h - eps_sep) return std::nullopt;

    const SideSet outside = ctx.inside == SideSet::P ? SideSet::Q : SideSet::P;
    SeparatingCircle sc;
    sc.circle = {v.pos, r};
    sc.inside = ctx.inside;
    for (int oid : v.owners) {
        Contact ct;
        ct.set = outside;
        ct.segment_index = ctx.vor.site_refs[oid].segment;
        ct.site = ctx.vor.sites[oid];
        ct.point = contact_point_on_site(v.pos, ct.site);
        sc.contacts.push_back(std::move(ct));
    }
    if (h >= r - eps_sep) {
        for (int u : hit.owners) {
            Contact ct;
            ct.set = ctx.inside;
            ct.segment_index = ctx.hull_parent[u];
            ct.site = EndpointSite{ctx.hull.vertices[u]};
            ct.point = ctx.hull.vertices[u];
            sc.contacts.push_back(std::move(ct));
        }
    }
    const auto tag = classify_contacts(sc.circle, sc.contacts, ctx.inside, tol);
    if (!tag || !c1_family(*tag)) return std::nullopt;
    sc.condition = *tag;
    sc.source = {SeparatingCircle::Source::Kind::Vertex, vertex_id, 0.0};
    return sc;
}

/// The tangency side of an interior site is recovered from the edge geometry;
/// wrong side branches are rejected because the edge endpoints do not lie on
/// them.
std::vector<EdgeCurve> edge_curves(const SegVorDiagram& vor, const SegVorEdge& e,
                                   const Tolerance& tol) {
    const ElementarySite& A = vor.sites[e.site_a];
    const ElementarySite& B = vor.sites[e.site_b];

    std::vector<CurveF> cands;
    auto try_curve = [&](const CurveSite& x, const CurveSite& y) {
        try {
            cands.push_back(curve_from_sites(x, y, tol));
        } catch (const DegenerateCurveError&) {
        }
    };
    const auto* pa = std::get_if<EndpointSite>(&A);
    const auto* pb = std::get_if<EndpointSite>(&B);
    if (pa && pb) {
        try_curve(pa->p, pb->p);
    } else if (pa || pb) {
        const Point2 pt = pa ? pa->p : pb->p;
        const Segment seg = std::get<InteriorSite>(pa ? B : A).seg;
        const OrientedLine line = OrientedLine::through(seg.a, seg.b);
        try_curve(pt, LiftingHalfplane{line, HalfplaneSide::Left});
        try_curve(pt, LiftingHalfplane{line, HalfplaneSide::Right});
    } else {
        const Segment s1 = std::get<InteriorSite>(A).seg;
        const Segment s2 = std::get<InteriorSite>(B).seg;
        const OrientedLine l1 = OrientedLine::through(s1.a, s1.b);
        const OrientedLine l2 = OrientedLine::through(s2.a, s2.b);
        for (HalfplaneSide sa : {HalfplaneSide::Left, HalfplaneSide::Right}) {
            for (HalfplaneSide sb : {HalfplaneSide::Left, HalfplaneSide::Right}) {
                try_curve(LiftingHalfplane{l1, sa}, LiftingHalfplane{l2, sb});
            }
        }
    }

    std::vector<EdgeCurve> out;
    for (CurveF& c : cands) {
        std::vector<double> bounds;
        bool reject = false;
        int unresolved_infinite = 0;

        auto add_finite_end = [&](Point2 p) {
            const double t = c.param_of_center(p);
            const double eps_res = 100.0 * tol.eps_merge * (1.0 + p.norm());
            if (t < c.t_lo - tol.eps_merge || t > c.t_hi + tol.eps_merge) {
                // The vertex belongs to the complementary piece (split rays);
                // this curve's coverage stops at its own domain boundary.
                bounds.push_back(t < c.t_lo ? c.t_lo : c.t_hi);
                return;
            }
            const CirclePoint cp = c.point_at(clamp(t, c.t_lo, c.t_hi));
            if (dist(cp.xy(), p) > eps_res) {
                reject = true;  // edge endpoint not on this curve: wrong branch
                return;
            }
            bounds.push_back(t);
        };

        if (e.bi_infinite) {
            bounds.push_back(c.t_lo);
            bounds.push_back(c.t_hi);
        } else {
            add_finite_end(e.p0);  // canonical finite end
            if (!reject) {
                if (e.v1 >= 0) {
                    add_finite_end(e.p1);
                } else {
                    ++unresolved_infinite;
                }
            }
        }
        if (reject) continue;

        if (unresolved_infinite > 0) {
            // Direction to infinity: the side of the finite vertex where the
            // vertex's third owner site falls strictly farther than the radius.
            const SegVorVertex& v = vor.vertices[e.v0];
            int third = -1;
            for (int o : v.owners) {
                if (o != e.site_a && o != e.site_b) {
                    third = o;
                    break;
                }
            }
            const double tv = bounds.empty() ? 0.0 : bounds.front();
            double chosen = c.t_hi;
            if (third >= 0) {
                const double delta = 1e-3 * (1.0 + std::abs(tv));
                auto slack = [&](double t) {
                    const CirclePoint cp = c.point_at(clamp(t, c.t_lo, c.t_hi));
                    return dist_point_site(cp.xy(), vor.sites[third]) - cp.z;
                };
                chosen = slack(tv + delta) >= slack(tv - delta) ? c.t_hi : c.t_lo;
            }
            bounds.push_back(chosen);
        }

        if (bounds.size() < 2) continue;
        double lo = std::min(bounds[0], bounds[1]);
        double hi = std::max(bounds[0], bounds[1]);
        lo = std::max(lo, c.t_lo);
        hi = std::min(hi, c.t_hi);
        if (!(hi - lo > tol.eps_predicate)) continue;
        out.push_back({std::move(c), lo, hi});
    }
    return out;
}

std::vector<SeparatingCircle> check_edge_candidate(const OrientationContext& ctx, int edge_id,
                                                   const Tolerance& tol) {
    const SegVorEdge& e = ctx.vor.edges[edge_id];
    const SideSet outside = ctx.inside == SideSet::P ? SideSet::Q : SideSet::P;
    std::vector<SeparatingCircle> out;

    for (const EdgeCurve& ec : edge_curves(ctx.vor, e, tol)) {
        std::vector<EnvelopeHit> hits;
        try {
            hits = ctx.env.query_curve(ec.curve);
        } catch (const CurveOnConeError&) {
            continue;
        }
        for (const EnvelopeHit& hit : hits) {
            const double eps_t = tol.eps_merge * (1.0 + std::abs(hit.t));
            if (hit.t < ec.t0 - eps_t || hit.t > ec.t1 + eps_t) continue;
            const Circle c = unlift_circle(hit.point);
            if (c.radius <= tol.eps_merge) continue;

            const double eps_contact = tol.eps_merge * std::max(1.0, c.radius);
            SeparatingCircle sc;
            sc.circle = c;
            sc.inside = ctx.inside;
            bool ok = true;
            for (int sid : {e.site_a, e.site_b}) {
                Contact ct;
                ct.set = outside;
                ct.segment_index = ctx.vor.site_refs[sid].segment;
                ct.site = ctx.vor.sites[sid];
                ct.point = contact_point_on_site(c.center, ct.site);
                if (std::abs(dist(c.center, ct.point) - c.radius) > eps_contact) {
                    ok = false;  // tangency not realized by the closed site
                    break;
                }
                sc.contacts.push_back(std::move(ct));
            }
            if (!ok) continue;
            for (int u : hit.owners) {
                Contact ct;
                ct.set = ctx.inside;
                ct.segment_index = ctx.hull_parent[u];
                ct.site = EndpointSite{ctx.env.sites()[u]};
                ct.point = ctx.env.sites()[u];
                sc.contacts.push_back(std::move(ct));
            }
            const auto tag = classify_contacts(sc.circle, sc.contacts, ctx.inside, tol);
            if (!tag || !c2_family(*tag)) continue;
            sc.condition = *tag;
            sc.source = {SeparatingCircle::Source::Kind::Edge, edge_id, hit.t};
            out.push_back(std::move(sc));
        }
    }
    return out;
}

namespace {

bool circle_less(const SeparatingCircle& a, const SeparatingCircle& b) {
    if (a.circle.center.x != b.circle.center.x) return a.circle.center.x < b.circle.center.x;
    if (a.circle.center.y != b.circle.center.y) return a.circle.center.y < b.circle.center.y;
    if (a.circle.radius != b.circle.radius) return a.circle.radius < b.circle.radius;
    return a.inside < b.inside;
}

/// Same circle surfacing from a vertex and from an adjacent edge: keep one,
/// vertex provenance preferred.
std::vector<SeparatingCircle> dedupe_candidates(std::vector<SeparatingCircle> cands,
                                                const Tolerance& tol) {
    std::sort(cands.begin(), cands.end(), circle_less);
    std::vector<SeparatingCircle> out;
    std::vector<char> used(cands.size(), 0);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (used[i]) continue;
        std::size_t best = i;
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
            if (cands[j].circle.center.x - cands[i].circle.center.x > tol.eps_merge) break;
            if (used[j] || cands[j].inside != cands[i].inside) continue;
            if (dist(cands[i].circle.center, cands[j].circle.center) <= tol.eps_merge &&
                std::abs(cands[i].circle.radius - cands[j].circle.radius) <= tol.eps_merge) {
                used[j] = 1;
                if (cands[best].source.kind == SeparatingCircle::Source::Kind::Edge &&
                    cands[j].source.kind == SeparatingCircle::Source::Kind::Vertex) {
                    best = j;
                }
            }
        }
        used[i] = 1;
        out.push_back(cands[best]);
    }
    return out;
}

std::size_t count_elementary_sites(const std::vector<Segment>& segs) {
    std::vector<Point2> eps;
    std::size_t interiors = 0;
    for (const Segment& s : segs) {
        eps.push_back(s.a);
        if (!s.degenerate()) {
            eps.push_back(s.b);
            ++interiors;
        }
    }
    std::sort(eps.begin(), eps.end(), lex_less);
    eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
    return eps.size() + interiors;
}

}  // namespace

std::vector<SeparatingCircle> find_all_largest(const std::vector<Segment>& P,
                                               const std::vector<Segment>& Q,
                                               const Tolerance& tol,
                                               const SeparatorOptions& opts,
                                               PhaseTimings* timings,
                                               std::vector<std::string>* warnings) {
    if (P.empty() || Q.empty()) {
        throw std::invalid_argument("both input sets must be nonempty");
    }
    if (!(tol.eps_predicate > 0.0) || tol.eps_predicate > tol.eps_merge) {
        throw std::invalid_argument("tolerance requires 0 < eps_predicate <= eps_merge");
    }
    if (opts.validate) {
        std::vector<Segment> all(P);
        all.insert(all.end(), Q.begin(), Q.end());
        const DisjointnessReport rep = interiors_disjoint(all);
        if (!rep.ok) {
            throw InvalidInputError("segment interiors intersect", rep.first, rep.second);
        }
    }

    using Clock = std::chrono::steady_clock;
    double build_ms = 0.0, query_ms = 0.0;
    std::vector<SeparatingCircle> results;

    for (const SideSet inside : {SideSet::P, SideSet::Q}) {
        const std::vector<Segment>& in_segs = inside == SideSet::P ? P : Q;
        const std::vector<Segment>& out_segs = inside == SideSet::P ? Q : P;
        if (count_elementary_sites(out_segs) < 2) {
            if (warnings) {
                warnings->push_back(std::string("orientation with ") + to_string(inside) +
                                    " inside skipped: fewer than 2 excluded elementary sites");
            }
            continue;
        }

        const auto t0 = Clock::now();
        const OrientationContext ctx = make_orientation_context(inside, in_segs, out_segs, tol);
        const auto t1 = Clock::now();
        build_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();

        std::vector<SeparatingCircle> cands;
        const int nthreads = std::max(1, opts.threads);
        const int nv = static_cast<int>(ctx.vor.vertices.size());
        const int ne = static_cast<int>(ctx.vor.edges.size());

        auto run_range = [&](int lo, int hi) {
            std::vector<SeparatingCircle> local;
            for (int i = lo; i < hi && i < nv; ++i) {
                if (auto sc = check_vertex_candidate(ctx, i, tol)) local.push_back(std::move(*sc));
            }
            for (int i = std::max(0, lo - nv); i < hi - nv && i < ne; ++i) {
                auto sl = check_edge_candidate(ctx, i, tol);
                local.insert(local.end(), std::make_move_iterator(sl.begin()),
                             std::make_move_iterator(sl.end()));
            }
            return local;
        };

        const int total = nv + ne;
        if (nthreads == 1 || total < 256) {
            cands = run_range(0, total);
        } else {
            const int chunk = (total + nthreads - 1) / nthreads;
            std::vector<std::future<std::vector<SeparatingCircle>>> futs;
            for (int t = 0; t < nthreads; ++t) {
                const int lo = t * chunk, hi = std::min(total, lo + chunk);
                if (lo >= hi) break;
                futs.push_back(std::async(std::launch::async, run_range, lo, hi));
            }
            for (auto& f : futs) {
                auto part = f.get();
                cands.insert(cands.end(), std::make_move_iterator(part.begin()),
                             std::make_move_iterator(part.end()));
            }
        }
        const auto t2 = Clock::now();
        query_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();

        auto deduped = dedupe_candidates(std::move(cands), tol);
        results.insert(results.end(), std::make_move_iterator(deduped.begin()),
                       std::make_move_iterator(deduped.end()));
    }

    std::sort(results.begin(), results.end(), circle_less);
    if (timings) {
        timings->build_ms = build_ms;
        timings->query_ms = query_ms;
    }
    return results;
}

}  // namespace circsep
