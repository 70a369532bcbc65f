#include "circsep/hierarchy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "circsep/envelope.hpp"

namespace circsep {

namespace {

/// Greedy independent set over the level's cell adjacency, lowest degree first,
/// restricted to cells with at most 9 edges. The subdivision's cell graph is
/// maximal outerplanar, so the picked fraction stays near 1/3.
std::vector<int> independent_set(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return adj[a].size() < adj[b].size(); });
    std::vector<char> blocked(n, 0);
    std::vector<int> picked;
    for (int v : order) {
        if (blocked[v] || adj[v].size() > 9) continue;
        picked.push_back(v);
        blocked[v] = 1;
        for (int w : adj[v]) blocked[w] = 1;
    }
    if (picked.empty() && n > 0) {
        picked.push_back(order[0]);  // degenerate fallback: drop the smallest cell
    }
    return picked;
}

}  // namespace

Hierarchy Hierarchy::build(std::vector<Point2> hull_vertices, std::uint64_t seed) {
    Hierarchy h;
    h.pts_ = std::move(hull_vertices);
    const int n = static_cast<int>(h.pts_.size());

    double extent = 1.0;
    for (const Point2& p : h.pts_) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
    h.proxy_param_ = 1e7 * extent;

    std::vector<int> cur(n);
    std::iota(cur.begin(), cur.end(), 0);

    h.final_adj_.resize(n);
    if (n >= 3) {
        std::vector<Point2> pts(n);
        for (int i = 0; i < n; ++i) pts[i] = h.pts_[i];
        const auto tris = detail::farthest_point_triangulation(pts, seed);
        h.final_adj_ = detail::triangulation_adjacency(n, tris);
    } else if (n == 2) {
        h.final_adj_[0].push_back(1);
        h.final_adj_[1].push_back(0);
    }

    std::vector<Transition> transitions_rev;
    std::vector<std::size_t> sizes_rev;
    sizes_rev.push_back(static_cast<std::size_t>(n));

    std::vector<std::vector<int>> adj = h.final_adj_;  // local to `cur` via remap below
    bool adj_valid = n >= 3;
    std::uint64_t level_seed = seed;

    while (cur.size() > 4) {
        if (!adj_valid) {
            std::vector<Point2> pts(cur.size());
            for (std::size_t i = 0; i < cur.size(); ++i) pts[i] = h.pts_[cur[i]];
            const auto tris = detail::farthest_point_triangulation(pts, ++level_seed);
            adj = detail::triangulation_adjacency(static_cast<int>(cur.size()), tris);
        }
        // `adj` indexes positions within `cur`.
        const std::vector<int> picked_local = independent_set(adj);
        std::vector<char> removed(cur.size(), 0);
        for (int v : picked_local) removed[v] = 1;

        Transition tr;
        tr.added.reserve(picked_local.size());
        for (int v : picked_local) {
            tr.added.push_back(cur[v]);
            std::vector<int> nbrs;
            nbrs.reserve(adj[v].size());
            for (int w : adj[v]) nbrs.push_back(cur[w]);
            tr.added_nbrs.push_back(nbrs);
            for (int w : adj[v]) tr.rem_nbrs[cur[w]].push_back(cur[v]);
        }
        transitions_rev.push_back(std::move(tr));

        std::vector<int> next;
        next.reserve(cur.size() - picked_local.size());
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (!removed[i]) next.push_back(cur[i]);
        }
        cur = std::move(next);
        sizes_rev.push_back(cur.size());
        adj_valid = false;
    }

    h.base_ = cur;
    std::reverse(transitions_rev.begin(), transitions_rev.end());
    h.transitions_ = std::move(transitions_rev);
    std::reverse(sizes_rev.begin(), sizes_rev.end());
    h.level_sizes_ = std::move(sizes_rev);
    for (const Transition& tr : h.transitions_) {
        for (const auto& nbrs : tr.added_nbrs) h.max_fanout_ = std::max(h.max_fanout_, nbrs.size());
        for (const auto& [u, vs] : tr.rem_nbrs) {
            (void)u;
            h.max_fanout_ = std::max(h.max_fanout_, vs.size());
        }
    }
    return h;
}

std::size_t Hierarchy::total_level_sites() const {
    std::size_t total = 0;
    for (std::size_t s : level_sizes_) total += s;
    return total;
}

int Hierarchy::descend_owner(Point2 q, QueryStats* stats) const {
    int owner = base_[0];
    double best = dist2(q, pts_[owner]);
    for (std::size_t i = 1; i < base_.size(); ++i) {
        const double d = dist2(q, pts_[base_[i]]);
        if (d > best) {
            best = d;
            owner = base_[i];
        }
    }
    if (stats) stats->visited_faces += static_cast<int>(base_.size());

    for (const Transition& tr : transitions_) {
        const auto it = tr.rem_nbrs.find(owner);
        if (it == tr.rem_nbrs.end()) continue;
        for (int v : it->second) {
            const double d = dist2(q, pts_[v]);
            if (d > best) {
                best = d;
                owner = v;
            }
        }
        if (stats) stats->visited_faces += static_cast<int>(it->second.size());
    }
    return owner;
}

std::vector<int> Hierarchy::owners_at(Point2 q, double z, int owner_hint) const {
    const double eps = 1e-7 * std::max(1.0, z);
    std::vector<int> owners{owner_hint};
    for (int u : final_adj_[owner_hint]) {
        if (std::abs(dist(q, pts_[u]) - z) <= eps) owners.push_back(u);
    }
    std::sort(owners.begin(), owners.end());
    return owners;
}

EnvelopeHit Hierarchy::query_vertical(Point2 q, QueryStats* stats) const {
    const int owner = descend_owner(q, stats);
    const double z = dist(q, pts_[owner]);
    EnvelopeHit hit;
    hit.point = {q.x, q.y, z};
    hit.t = 0.0;
    hit.owners = owners_at(q, z, owner);
    return hit;
}

std::vector<EnvelopeHit> Hierarchy::query_curve(const CurveF& curve, QueryStats* stats) const {
    IntervalSet feas = IntervalSet::interval(curve.t_lo, curve.t_hi);
    std::vector<int> always_owners;

    auto clip_site = [&](int s) -> bool {
        // Returns false when the curve lies on this cone (no constraint).
        try {
            feas.clip(cone_constraint(curve, pts_[s]), s);
        } catch (const CurveOnConeError&) {
            return false;
        }
        return true;
    };

    for (int s : base_) {
        if (!clip_site(s)) always_owners.push_back(s);
    }
    if (stats) stats->visited_faces += static_cast<int>(base_.size());
    if (feas.is_empty()) return {};

    auto boundary_param = [&](bool low) -> double {
        const auto& parts = feas.parts();
        const double t = low ? parts.front().lo : parts.back().hi;
        if (std::isfinite(t)) return t;
        return low ? std::max(-proxy_param_, curve.t_lo) : std::min(proxy_param_, curve.t_hi);
    };
    auto boundary_tag = [&](bool low) -> int {
        const auto& parts = feas.parts();
        return low ? parts.front().lo_tag : parts.back().hi_tag;
    };

    auto base_owner = [&](bool low) -> int {
        const Point2 x = curve.point_at(boundary_param(low)).xy();
        int best = base_[0];
        double bd = dist2(x, pts_[best]);
        for (std::size_t i = 1; i < base_.size(); ++i) {
            const double d = dist2(x, pts_[base_[i]]);
            if (d > bd) {
                bd = d;
                best = base_[i];
            }
        }
        return best;
    };
    int owner_lo = boundary_tag(true) >= 0 ? boundary_tag(true) : base_owner(true);
    int owner_hi = boundary_tag(false) >= 0 ? boundary_tag(false) : base_owner(false);

    auto argmax_at = [&](Point2 x, int cur, const std::vector<int>& cands,
                         QueryStats* st) -> int {
        int best = cur;
        double bd = dist2(x, pts_[cur]);
        for (int v : cands) {
            const double d = dist2(x, pts_[v]);
            if (d > bd) {
                bd = d;
                best = v;
            }
        }
        if (st) st->visited_faces += static_cast<int>(cands.size()) + 1;
        return best;
    };

    // Per transition, probe every finite boundary of the surviving parameter
    // set (the feasible set is an interval or the complement of one, so there
    // are at most four): the re-added cone cutting deepest at a boundary is
    // found among the cross-links of the boundary's owner, clipped, and the
    // round repeats until no boundary moves.
    auto parts_equal = [](const std::vector<IntervalSet::Interval>& a,
                          const std::vector<IntervalSet::Interval>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].lo != b[i].lo || a[i].hi != b[i].hi) return false;
        }
        return true;
    };

    std::vector<int> processed;
    for (const Transition& tr : transitions_) {
        processed.clear();
        const int rounds = static_cast<int>(tr.added.size()) + 8;
        for (int round = 0; round < rounds; ++round) {
            if (feas.is_empty()) return {};
            const auto snapshot = feas.parts();
            for (std::size_t pi = 0; pi < snapshot.size(); ++pi) {
                for (const bool low : {true, false}) {
                    const double raw = low ? snapshot[pi].lo : snapshot[pi].hi;
                    const int tag = low ? snapshot[pi].lo_tag : snapshot[pi].hi_tag;
                    const bool lo_extreme = low && pi == 0;
                    const bool hi_extreme = !low && pi + 1 == snapshot.size();
                    double t = raw;
                    if (!std::isfinite(t)) {
                        if (!(lo_extreme || hi_extreme)) continue;
                        t = low ? std::max(-proxy_param_, curve.t_lo)
                                : std::min(proxy_param_, curve.t_hi);
                    }
                    const int owner = tag >= 0 ? tag : (lo_extreme ? owner_lo : owner_hi);
                    const Point2 x = curve.point_at(t).xy();
                    const auto it = tr.rem_nbrs.find(owner);
                    static const std::vector<int> kNone;
                    const std::vector<int>& cands =
                        it == tr.rem_nbrs.end() ? kNone : it->second;
                    const int best = argmax_at(x, owner, cands, stats);
                    if (lo_extreme) owner_lo = best;
                    if (hi_extreme) owner_hi = best;
                    // Clipping with a cone of the level is sound whether or not
                    // it binds; skipping already-applied ones keeps rounds
                    // terminating.
                    if (std::find(processed.begin(), processed.end(), best) !=
                        processed.end()) {
                        continue;
                    }
                    processed.push_back(best);
                    if (!clip_site(best)) always_owners.push_back(best);
                }
            }
            if (parts_equal(snapshot, feas.parts())) break;
        }
        if (feas.is_empty()) return {};
    }

    // The feasible set of a curve of this family against equal-angle cones is
    // an interval or the complement of one; finite endpoints produced by a cone
    // constraint are the crossings (domain ends are checked explicitly).
    std::vector<EnvelopeHit> hits;
    auto emit = [&](double t, int tag, int owner_hint) {
        if (!std::isfinite(t)) return;
        const CirclePoint cp = curve.point_at(t);
        const Point2 x = cp.xy();
        const int hint = tag >= 0 ? tag : owner_hint;
        if (tag < 0) {
            const double d = dist(x, pts_[hint]);
            if (std::abs(d - cp.z) > 1e-6 * std::max(1.0, cp.z)) {
                return;  // domain end strictly below the envelope, not a crossing
            }
        }
        EnvelopeHit hit;
        hit.point = cp;
        hit.t = t;
        hit.owners = owners_at(x, cp.z, hint);
        for (int s : always_owners) {
            if (!std::binary_search(hit.owners.begin(), hit.owners.end(), s)) {
                hit.owners.push_back(s);
            }
        }
        std::sort(hit.owners.begin(), hit.owners.end());
        hits.push_back(std::move(hit));
    };

    for (const auto& part : feas.parts()) {
        emit(part.lo, part.lo_tag, owner_lo);
        if (part.hi != part.lo) emit(part.hi, part.hi_tag, owner_hi);
    }
    if (hits.size() > 2) {
        // The interval/complement shape admits at most two crossings; collapse
        // numerical slivers conservatively, keeping the extreme ones.
        std::sort(hits.begin(), hits.end(),
                  [](const EnvelopeHit& a, const EnvelopeHit& b) { return a.t < b.t; });
        hits = {hits.front(), hits.back()};
    }
    return hits;
}

}  // namespace circsep
