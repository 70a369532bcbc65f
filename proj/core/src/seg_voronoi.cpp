#include "circsep/seg_voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include <boost/polygon/voronoi.hpp>

namespace circsep {

namespace {

struct Snapper {
    Point2 center;
    double scale = 1.0;  // world -> grid

    static Snapper fit(const std::vector<Segment>& Q) {
        double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x;
        double hi_x = std::numeric_limits<double>::lowest(), hi_y = hi_x;
        for (const Segment& s : Q) {
            for (const Point2 p : {s.a, s.b}) {
                lo_x = std::min(lo_x, p.x);
                lo_y = std::min(lo_y, p.y);
                hi_x = std::max(hi_x, p.x);
                hi_y = std::max(hi_y, p.y);
            }
        }
        Snapper sn;
        sn.center = {(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0};
        const double half = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9}) / 2.0;
        sn.scale = static_cast<double>(1 << 26) / half;
        return sn;
    }

    std::int32_t sx(double x) const { return static_cast<std::int32_t>(std::llround((x - center.x) * scale)); }
    std::int32_t sy(double y) const { return static_cast<std::int32_t>(std::llround((y - center.y) * scale)); }
    Point2 unsnap(double gx, double gy) const {
        return {center.x + gx / scale, center.y + gy / scale};
    }
};

}  // namespace

SegVorDiagram build_segment_voronoi(const std::vector<Segment>& Q, const Tolerance& tol,
                                    bool validate) {
    if (Q.empty()) throw InvalidInputError("empty site set", 0, 0);
    if (validate) {
        const DisjointnessReport rep = interiors_disjoint(Q);
        if (!rep.ok) {
            throw InvalidInputError("segment interiors intersect", rep.first, rep.second);
        }
    }

    SegVorDiagram d;
    d.input = Q;
    const Snapper sn = Snapper::fit(Q);

    // Elementary sites, endpoint positions deduplicated on the snap grid.
    std::unordered_map<std::uint64_t, int> endpoint_id;
    auto pkey = [](std::int32_t x, std::int32_t y) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
               static_cast<std::uint32_t>(y);
    };
    auto add_endpoint = [&](Point2 p, int seg, SegSiteRef::Part part) -> int {
        const auto key = pkey(sn.sx(p.x), sn.sy(p.y));
        const auto it = endpoint_id.find(key);
        if (it != endpoint_id.end()) return it->second;
        const int id = static_cast<int>(d.sites.size());
        endpoint_id.emplace(key, id);
        d.sites.push_back(EndpointSite{p});
        d.site_refs.push_back({seg, part});
        return id;
    };

    boost::polygon::voronoi_builder<std::int32_t> builder;
    boost::polygon::voronoi_diagram<double> vd;

    // Per insertion index: site ids for (endpoint a, endpoint b, interior).
    struct InsertSites {
        int a = -1, b = -1, interior = -1;
    };
    std::vector<InsertSites> insert_sites;

    for (std::size_t i = 0; i < Q.size(); ++i) {
        const Segment& s = Q[i];
        const std::int32_t ax = sn.sx(s.a.x), ay = sn.sy(s.a.y);
        const std::int32_t bx = sn.sx(s.b.x), by = sn.sy(s.b.y);
        InsertSites is;
        if (ax == bx && ay == by) {
            is.a = is.b = add_endpoint(s.a, static_cast<int>(i), SegSiteRef::Part::Point);
            builder.insert_point(ax, ay);
        } else {
            is.a = add_endpoint(s.a, static_cast<int>(i), SegSiteRef::Part::EndpointA);
            is.b = add_endpoint(s.b, static_cast<int>(i), SegSiteRef::Part::EndpointB);
            is.interior = static_cast<int>(d.sites.size());
            d.sites.push_back(InteriorSite{s});
            d.site_refs.push_back({static_cast<int>(i), SegSiteRef::Part::Interior});
            builder.insert_segment(ax, ay, bx, by);
        }
        insert_sites.push_back(is);
    }

    builder.construct(&vd);

    using boost::polygon::SOURCE_CATEGORY_SEGMENT_END_POINT;
    using boost::polygon::SOURCE_CATEGORY_SEGMENT_START_POINT;
    using boost::polygon::SOURCE_CATEGORY_SINGLE_POINT;

    auto site_of_cell = [&](const boost::polygon::voronoi_diagram<double>::cell_type& cell) {
        const InsertSites& is = insert_sites[cell.source_index()];
        switch (cell.source_category()) {
            case SOURCE_CATEGORY_SINGLE_POINT:
            case SOURCE_CATEGORY_SEGMENT_START_POINT:
                return is.a;
            case SOURCE_CATEGORY_SEGMENT_END_POINT:
                return is.b;
            default:
                return is.interior;
        }
    };

    // Vertices: owners from the incident cells; positions re-derived from the
    // owners in full precision (the sweep ran on snapped coordinates).
    const auto& bverts = vd.vertices();
    std::vector<int> vertex_ids(bverts.size(), -1);
    auto vertex_index = [&](const boost::polygon::voronoi_diagram<double>::vertex_type* v) {
        return static_cast<int>(v - bverts.data());
    };

    for (std::size_t i = 0; i < bverts.size(); ++i) {
        const auto& bv = bverts[i];
        std::vector<int> owners;
        const auto* start = bv.incident_edge();
        const auto* e = start;
        do {
            owners.push_back(site_of_cell(*e->cell()));
            e = e->rot_next();
        } while (e != start);
        std::sort(owners.begin(), owners.end());
        owners.erase(std::unique(owners.begin(), owners.end()), owners.end());

        SegVorVertex out;
        out.pos = sn.unsnap(bv.x(), bv.y());
        out.clearance = dist_point_site(out.pos, d.sites[owners[0]]);
        if (owners.size() >= 3) {
            try {
                const auto sols =
                    solve_equidistant(eq_site_from_elementary(d.sites[owners[0]]),
                                      eq_site_from_elementary(d.sites[owners[1]]),
                                      eq_site_from_elementary(d.sites[owners[2]]), tol);
                double best = 1e-2 * std::max(1.0, out.clearance);
                for (const auto& s : sols) {
                    const double dv = dist(s.center, out.pos);
                    if (dv < best) {
                        best = dv;
                        out.pos = s.center;
                        out.clearance = s.radius;
                    }
                }
            } catch (const NoSolutionError&) {
                // Keep the sweep position.
            }
        }
        out.owners = std::move(owners);
        vertex_ids[i] = static_cast<int>(d.vertices.size());
        d.vertices.push_back(std::move(out));
    }

    // Merge refined vertices that coincide (near-degenerate configurations the
    // snap grid had pulled apart); owners are unioned.
    {
        std::vector<int> order(d.vertices.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return lex_less(d.vertices[a].pos, d.vertices[b].pos);
        });
        std::vector<int> remap(d.vertices.size());
        for (std::size_t i = 0; i < remap.size(); ++i) remap[i] = static_cast<int>(i);
        for (std::size_t ii = 0; ii < order.size(); ++ii) {
            const int i = order[ii];
            if (remap[i] != i) continue;
            for (std::size_t jj = ii + 1; jj < order.size(); ++jj) {
                const int j = order[jj];
                if (d.vertices[j].pos.x - d.vertices[i].pos.x > tol.eps_merge) break;
                if (remap[j] != j) continue;
                if (dist(d.vertices[i].pos, d.vertices[j].pos) <= tol.eps_merge &&
                    std::abs(d.vertices[i].clearance - d.vertices[j].clearance) <=
                        tol.eps_merge) {
                    remap[j] = i;
                    auto& dst = d.vertices[i].owners;
                    for (int o : d.vertices[j].owners) dst.push_back(o);
                    std::sort(dst.begin(), dst.end());
                    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
                }
            }
        }
        // Compact.
        std::vector<int> final_id(d.vertices.size(), -1);
        std::vector<SegVorVertex> merged;
        for (std::size_t i = 0; i < d.vertices.size(); ++i) {
            if (remap[i] == static_cast<int>(i)) {
                final_id[i] = static_cast<int>(merged.size());
                merged.push_back(std::move(d.vertices[i]));
            }
        }
        for (std::size_t i = 0; i < remap.size(); ++i) {
            if (final_id[i] < 0) final_id[i] = final_id[remap[i]];
        }
        d.vertices = std::move(merged);
        for (int& id : vertex_ids) {
            if (id >= 0) id = final_id[id];
        }
    }

    // Edges, one per half-edge twin pair.
    for (const auto& be : vd.edges()) {
        if (&be > be.twin()) continue;
        const int sa = site_of_cell(*be.cell());
        const int sb = site_of_cell(*be.twin()->cell());
        if (sa == sb) continue;
        SegVorEdge e;
        e.site_a = std::min(sa, sb);
        e.site_b = std::max(sa, sb);
        const auto* bv0 = be.vertex0();
        const auto* bv1 = be.vertex1();
        if (bv0) {
            e.v0 = vertex_ids[vertex_index(bv0)];
            e.p0 = d.vertices[e.v0].pos;
        }
        if (bv1) {
            e.v1 = vertex_ids[vertex_index(bv1)];
            e.p1 = d.vertices[e.v1].pos;
        }
        if (!bv0 && !bv1) e.bi_infinite = true;
        if (e.v0 >= 0 && e.v0 == e.v1 &&
            dist(e.p0, e.p1) <= tol.eps_merge) {
            continue;  // collapsed by a vertex merge
        }
        // Canonical finite end first.
        if (e.v0 < 0 && e.v1 >= 0) {
            std::swap(e.v0, e.v1);
            std::swap(e.p0, e.p1);
        }
        d.edges.push_back(e);
    }
    return d;
}

std::pair<int, double> nearest_site(const SegVorDiagram& d, Point2 q) {
    int best = 0;
    double bd = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < d.sites.size(); ++i) {
        const double dd = dist_point_site(q, d.sites[i]);
        if (dd < bd) {
            bd = dd;
            best = static_cast<int>(i);
        }
    }
    return {best, bd};
}

}  // namespace circsep
