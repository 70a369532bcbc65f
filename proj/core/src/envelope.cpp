#include "circsep/envelope.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

namespace circsep {

ConvexHull convex_hull(std::vector<Point2> points, double eps) {
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const std::size_t n = points.size();
    if (n <= 2) return {points};

    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && orientation(hull[k - 2], hull[k - 1], points[i], eps) <= 0) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && orientation(hull[k - 2], hull[k - 1], points[i], eps) <= 0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return {hull};
}

namespace detail {

namespace {

/// > 0 when d is strictly inside the circumcircle of CCW triangle (a, b, c).
double incircle_det(Point2 a, Point2 b, Point2 c, Point2 d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double ad2 = adx * adx + ady * ady;
    const double bd2 = bdx * bdx + bdy * bdy;
    const double cd2 = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) +
           ad2 * (bdx * cdy - cdx * bdy);
}

double incircle_scale(Point2 a, Point2 b, Point2 c, Point2 d) {
    const double s1 = dist2(a, d), s2 = dist2(b, d), s3 = dist2(c, d);
    return s1 * s2 + s2 * s3 + s3 * s1;
}

struct Tri {
    std::array<int, 3> v;   // CCW
    std::array<int, 3> nb;  // nb[i] across the edge opposite v[i]; -1 = none
};

int slot_of_neighbor(const Tri& t, int other) {
    for (int i = 0; i < 3; ++i)
        if (t.nb[i] == other) return i;
    return -1;
}

}  // namespace

std::vector<std::array<int, 3>> farthest_point_triangulation(const std::vector<Point2>& poly,
                                                             std::uint64_t seed) {
    const int m = static_cast<int>(poly.size());
    std::vector<std::array<int, 3>> out;
    if (m < 3) return out;

    // Random deletion order over a circular list; each removed vertex remembers
    // its neighbors at deletion time.
    std::vector<int> nxt(m), prv(m);
    for (int i = 0; i < m; ++i) {
        nxt[i] = (i + 1) % m;
        prv[i] = (i + m - 1) % m;
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<int> rprev(m, -1), rnext(m, -1);
    std::vector<int> removed;
    removed.reserve(m - 3);
    for (int i = 0; i < m - 3; ++i) {
        const int v = order[i];
        rprev[v] = prv[v];
        rnext[v] = nxt[v];
        nxt[prv[v]] = nxt[v];
        prv[nxt[v]] = prv[v];
        removed.push_back(v);
    }

    std::vector<Tri> tris;
    tris.reserve(2 * m);
    // Subpolygon hull edge (u -> w, polygon orientation) -> (triangle, slot).
    std::unordered_map<std::int64_t, std::pair<int, int>> hull_edge;
    auto ekey = [m](int u, int w) { return static_cast<std::int64_t>(u) * m + w; };

    {
        const int a = order[m - 3] , b0 = nxt[a], c = nxt[b0];
        // Normalize to polygon orientation (a, b0, c follow the circular list).
        Tri t;
        t.v = {a, b0, c};
        t.nb = {-1, -1, -1};
        tris.push_back(t);
        hull_edge[ekey(a, b0)] = {0, 2};
        hull_edge[ekey(b0, c)] = {0, 0};
        hull_edge[ekey(c, a)] = {0, 1};
    }

    const double eps = 1e-12;
    std::vector<std::pair<int, int>> stack;

    auto legalize = [&](int t0, int j0) {
        stack.clear();
        stack.push_back({t0, j0});
        while (!stack.empty()) {
            auto [ti, j] = stack.back();
            stack.pop_back();
            Tri& t = tris[ti];
            const int ni = t.nb[j];
            if (ni < 0) continue;
            Tri& nb = tris[ni];
            const int k = slot_of_neighbor(nb, ti);
            const int d = nb.v[k];
            const Point2 pa = poly[t.v[0]], pb = poly[t.v[1]], pc = poly[t.v[2]];
            const Point2 pd = poly[d];
            const double det = incircle_det(pa, pb, pc, pd);
            const double scale = incircle_scale(pa, pb, pc, pd);
            // Farthest-point rule: every circumdisk must contain all sites, so a
            // strictly outside vertex forces a flip.
            if (det >= -eps * scale) continue;

            // Flip the shared edge. t = (a, b, c) with shared edge (b, c) where
            // a = t.v[j]; nb = (c, b, d) in some rotation with d = nb.v[k].
            const int va = t.v[j];
            const int vb = t.v[(j + 1) % 3];
            const int vc = t.v[(j + 2) % 3];
            const int n_ab = t.nb[(j + 2) % 3];  // across (a, b)
            const int n_ca = t.nb[(j + 1) % 3];  // across (c, a)
            // In nb, v[k]=d, v[k+1]=c, v[k+2]=b; the edge opposite c is (b, d)
            // and the edge opposite b is (d, c).
            const int n_bd = nb.nb[(k + 1) % 3];
            const int n_dc = nb.nb[(k + 2) % 3];

            // New triangles: t' = (a, b, d), nb' = (a, d, c).
            t.v = {va, vb, d};
            nb.v = {va, d, vc};
            // t' edges: opposite a = (b, d); opposite b = (d, a) -> nb';
            // opposite d = (a, b).
            t.nb = {n_bd, ni, n_ab};
            // nb' edges: opposite a = (d, c); opposite d = (c, a); opposite
            // c = (a, d) -> t'.
            nb.nb = {n_dc, n_ca, ti};

            auto relink = [&](int tri_id, int old_nb, int new_nb) {
                if (tri_id < 0) return;
                const int s = slot_of_neighbor(tris[tri_id], old_nb);
                if (s >= 0) tris[tri_id].nb[s] = new_nb;
            };
            relink(n_bd, ni, ti);
            relink(n_ca, ti, ni);

            // Boundary edges change owners under a flip; refresh their map
            // entries so later insertions link against the live triangle.
            auto refresh = [&](int u, int w, int tri_id, int slot) {
                const auto hit = hull_edge.find(ekey(u, w));
                if (hit != hull_edge.end()) hit->second = {tri_id, slot};
            };
            refresh(va, vb, ti, 2);  // (a, b) in t', opposite d
            refresh(vb, d, ti, 0);   // (b, d) in t', opposite a
            refresh(d, vc, ni, 0);   // (d, c) in nb', opposite a
            refresh(vc, va, ni, 1);  // (c, a) in nb', opposite d

            stack.push_back({ti, 0});  // edge (b, d)
            stack.push_back({ni, 0});  // edge (d, c)
        }
    };

    for (int i = static_cast<int>(removed.size()) - 1; i >= 0; --i) {
        const int v = removed[i];
        const int p = rprev[v];
        const int n = rnext[v];
        const auto it = hull_edge.find(ekey(p, n));
        assert(it != hull_edge.end());
        const int t2 = it->second.first;
        const int s2 = it->second.second;
        hull_edge.erase(it);

        const int ti = static_cast<int>(tris.size());
        Tri t;
        t.v = {p, v, n};
        t.nb = {-1, t2, -1};  // edge opposite v=(n, p) faces t2
        tris.push_back(t);
        tris[t2].nb[s2] = ti;
        hull_edge[ekey(p, v)] = {ti, 2};
        hull_edge[ekey(v, n)] = {ti, 0};
        legalize(ti, 1);
    }

    out.reserve(tris.size());
    for (const Tri& t : tris) out.push_back(t.v);
    return out;
}

std::vector<std::vector<int>> triangulation_adjacency(int n,
                                                      const std::vector<std::array<int, 3>>& tris) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& t : tris) {
        for (int i = 0; i < 3; ++i) {
            const int u = t[i], w = t[(i + 1) % 3];
            adj[u].push_back(w);
            adj[w].push_back(u);
        }
    }
    for (auto& v : adj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return adj;
}

}  // namespace detail

namespace {

Point2 circumcenter(Point2 a, Point2 b, Point2 c) {
    const Vec2 u = b - a, v = c - a;
    const double d = 2.0 * u.cross(v);
    const double u2 = u.norm2(), v2 = v.norm2();
    return {a.x + (v.y * u2 - u.y * v2) / d, a.y + (u.x * v2 - v.x * u2) / d};
}

}  // namespace

int FVorDiagram::farthest_site(Point2 q) const {
    int best = 0;
    double bd = -1.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const double d = dist2(q, sites[i]);
        if (d > bd) {
            bd = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

double FVorDiagram::height(Point2 q) const { return dist(q, sites[farthest_site(q)]); }

FVorDiagram furthest_voronoi(const ConvexHull& hull, const Tolerance& tol) {
    FVorDiagram d;
    d.sites = hull.vertices;
    const int m = static_cast<int>(d.sites.size());
    d.cell_edges.resize(m);
    d.neighbors.resize(m);
    if (m == 1) return d;
    if (m == 2) {
        FVorEdge e;
        e.site_a = 0;
        e.site_b = 1;
        e.bi_infinite = true;
        e.p0 = (d.sites[0] + d.sites[1]) * 0.5;
        e.ray_dir = (d.sites[1] - d.sites[0]).perp().normalized();
        d.edges.push_back(e);
        d.cell_edges[0].push_back(0);
        d.cell_edges[1].push_back(0);
        d.neighbors[0].push_back(1);
        d.neighbors[1].push_back(0);
        return d;
    }

    const auto tris = detail::farthest_point_triangulation(d.sites);
    d.neighbors = detail::triangulation_adjacency(m, tris);

    // Circumcenters, merged when coincident (cocircular degeneracies produce a
    // single higher-degree diagram vertex).
    const int nt = static_cast<int>(tris.size());
    std::vector<Point2> centers(nt);
    std::vector<double> radii(nt);
    for (int i = 0; i < nt; ++i) {
        centers[i] = circumcenter(d.sites[tris[i][0]], d.sites[tris[i][1]], d.sites[tris[i][2]]);
        radii[i] = dist(centers[i], d.sites[tris[i][0]]);
    }
    std::vector<int> vid(nt, -1);
    {
        std::vector<int> by_x(nt);
        std::iota(by_x.begin(), by_x.end(), 0);
        std::sort(by_x.begin(), by_x.end(),
                  [&](int a, int b) { return lex_less(centers[a], centers[b]); });
        const double eps = tol.eps_merge;
        for (int ii = 0; ii < nt; ++ii) {
            const int i = by_x[ii];
            if (vid[i] >= 0) continue;
            const int id = static_cast<int>(d.vertices.size());
            FVorVertex v;
            v.pos = centers[i];
            v.clearance = radii[i];
            v.owners.assign(tris[i].begin(), tris[i].end());
            vid[i] = id;
            for (int jj = ii + 1; jj < nt; ++jj) {
                const int j = by_x[jj];
                if (centers[j].x - centers[i].x > eps) break;
                if (vid[j] >= 0) continue;
                if (dist(centers[i], centers[j]) <= eps) {
                    vid[j] = id;
                    v.owners.insert(v.owners.end(), tris[j].begin(), tris[j].end());
                }
            }
            std::sort(v.owners.begin(), v.owners.end());
            v.owners.erase(std::unique(v.owners.begin(), v.owners.end()), v.owners.end());
            d.vertices.push_back(std::move(v));
        }
    }

    // Bounded edges: duals of internal triangulation edges.
    std::unordered_map<std::int64_t, int> edge_tri;
    auto ukey = [m](int u, int w) {
        if (u > w) std::swap(u, w);
        return static_cast<std::int64_t>(u) * m + w;
    };
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < 3; ++j) {
            const int u = tris[i][j], w = tris[i][(j + 1) % 3];
            auto [it, inserted] = edge_tri.try_emplace(ukey(u, w), i);
            if (!inserted) {
                const int other = it->second;
                if (vid[i] == vid[other]) continue;  // collapsed by a merge
                FVorEdge e;
                e.site_a = std::min(u, w);
                e.site_b = std::max(u, w);
                e.v0 = vid[other];
                e.v1 = vid[i];
                e.p0 = d.vertices[e.v0].pos;
                e.p1 = d.vertices[e.v1].pos;
                d.edges.push_back(e);
            }
        }
    }
    // Unbounded edges: duals of the polygon edges; the ray leaves the owning
    // triangle's circumcenter along the edge's inward normal.
    for (int i = 0; i < m; ++i) {
        const int u = i, w = (i + 1) % m;
        const int tri = edge_tri.at(ukey(u, w));
        FVorEdge e;
        e.site_a = std::min(u, w);
        e.site_b = std::max(u, w);
        e.v0 = vid[tri];
        e.p0 = d.vertices[e.v0].pos;
        e.ray_dir = (d.sites[w] - d.sites[u]).perp().normalized();
        d.edges.push_back(e);
    }
    for (std::size_t ei = 0; ei < d.edges.size(); ++ei) {
        d.cell_edges[d.edges[ei].site_a].push_back(static_cast<int>(ei));
        d.cell_edges[d.edges[ei].site_b].push_back(static_cast<int>(ei));
    }
    return d;
}

double UEnvelope::height(Point2 q) const {
    double best = 0.0;
    for (const Point2& s : sites) best = std::max(best, dist(q, s));
    return best;
}

UEnvelope lift_envelope(const FVorDiagram& d) {
    UEnvelope ue;
    ue.sites = d.sites;
    ue.vertices.reserve(d.vertices.size());
    for (const FVorVertex& v : d.vertices) {
        ue.vertices.push_back({v.pos.x, v.pos.y, v.clearance});
        ue.vertex_owners.push_back(v.owners);
    }
    ue.edge_sites.reserve(d.edges.size());
    for (const FVorEdge& e : d.edges) ue.edge_sites.push_back({e.site_a, e.site_b});
    return ue;
}

}  // namespace circsep
