#include "circsep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <unordered_map>

namespace circsep {

GridSpec GridSpec::from_instance(const std::vector<Segment>& P, const std::vector<Segment>& Q,
                                 int cells_per_side) {
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (const auto* set : {&P, &Q}) {
        for (const Segment& s : *set) {
            for (const Point2 p : {s.a, s.b}) {
                lo_x = std::min(lo_x, p.x);
                lo_y = std::min(lo_y, p.y);
                hi_x = std::max(hi_x, p.x);
                hi_y = std::max(hi_y, p.y);
            }
        }
    }
    const double cx = (lo_x + hi_x) / 2.0, cy = (lo_y + hi_y) / 2.0;
    const double hx = std::max(hi_x - lo_x, 1e-3), hy = std::max(hi_y - lo_y, 1e-3);
    GridSpec g;
    g.min_x = cx - 1.5 * hx;
    g.max_x = cx + 1.5 * hx;
    g.min_y = cy - 1.5 * hy;
    g.max_y = cy + 1.5 * hy;
    g.step = std::hypot(g.max_x - g.min_x, g.max_y - g.min_y) / cells_per_side;
    return g;
}

namespace {

double max_endpoint_dist(Point2 c, const std::vector<Segment>& P) {
    double best = 0.0;
    for (const Segment& s : P) {
        best = std::max({best, dist(c, s.a), dist(c, s.b)});
    }
    return best;
}

}  // namespace

bool oracle_feasible(Point2 c, const std::vector<Segment>& P, const std::vector<Segment>& Q,
                     double slack) {
    return dist_point_set(c, Q) >= max_endpoint_dist(c, P) - slack;
}

bool oracle_probe_local_max(Point2 center, double radius, const std::vector<Segment>& P,
                            const std::vector<Segment>& Q, double slack) {
    for (const double delta : {1e-4, 1e-3}) {
        for (int k = 0; k < 16; ++k) {
            const double ang = 2.0 * M_PI * k / 16.0;
            const Point2 c = center + Vec2{std::cos(ang), std::sin(ang)} * delta;
            if (!oracle_feasible(c, P, Q)) continue;
            if (dist_point_set(c, Q) > radius + slack) return false;
        }
    }
    return true;
}

std::vector<Circle> oracle_local_maxima(const std::vector<Segment>& P,
                                        const std::vector<Segment>& Q, const GridSpec& g) {
    const int nx = std::max(2, static_cast<int>(std::ceil((g.max_x - g.min_x) / g.step)) + 1);
    const int ny = std::max(2, static_cast<int>(std::ceil((g.max_y - g.min_y) / g.step)) + 1);
    auto at = [&](int i, int j) -> Point2 {
        return {g.min_x + i * g.step, g.min_y + j * g.step};
    };
    std::vector<double> f(static_cast<std::size_t>(nx) * ny,
                          -std::numeric_limits<double>::infinity());
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Point2 c = at(i, j);
            if (oracle_feasible(c, P, Q)) f[j * nx + i] = dist_point_set(c, Q);
        }
    }

    // Interior cells only: a maximum escaping through the grid boundary is an
    // unbounded direction, not a local maximum of the instance.
    std::vector<Point2> seeds;
    for (int j = 1; j + 1 < ny; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            const double v = f[j * nx + i];
            if (!std::isfinite(v) || v <= 0.0) continue;
            bool is_max = true;
            for (int dj = -1; dj <= 1 && is_max; ++dj) {
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    if (f[(j + dj) * nx + (i + di)] > v) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) seeds.push_back(at(i, j));
        }
    }

    // Compass pattern search on the clearance function restricted to the
    // feasible region; the function is piecewise smooth but not differentiable
    // on bisectors, so no gradients.
    std::vector<Circle> refined;
    for (Point2 c : seeds) {
        double h = g.step;
        double best = dist_point_set(c, Q);
        for (int it = 0; it < g.refine_iters; ++it) {
            bool moved = false;
            for (int k = 0; k < 8; ++k) {
                const double ang = 2.0 * M_PI * k / 8.0;
                const Point2 cand = c + Vec2{std::cos(ang), std::sin(ang)} * h;
                if (!oracle_feasible(cand, P, Q)) continue;
                const double v = dist_point_set(cand, Q);
                if (v > best + 1e-14) {
                    best = v;
                    c = cand;
                    moved = true;
                }
            }
            if (!moved) h *= 0.5;
        }
        refined.push_back({c, best});
    }

    // Collapse plateau duplicates.
    std::sort(refined.begin(), refined.end(), [](const Circle& a, const Circle& b) {
        return b.radius < a.radius;  // biggest first so cluster reps keep the max
    });
    std::vector<Circle> out;
    const double merge_dist = 5.0 * g.step;
    for (const Circle& c : refined) {
        bool dup = false;
        for (const Circle& o : out) {
            if (dist(c.center, o.center) <= merge_dist &&
                std::abs(c.radius - o.radius) <= merge_dist) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const Circle& a, const Circle& b) {
        return lex_less(a.center, b.center);
    });
    return out;
}

namespace {

struct OracleSite {
    ElementarySite site;
    EqSite eq;
};

std::vector<OracleSite> elementary_sites(const std::vector<Segment>& segs) {
    std::vector<OracleSite> out;
    std::vector<Point2> seen;
    auto add_pt = [&](Point2 p) {
        for (Point2 q : seen) {
            if (dist(p, q) <= 1e-12) return;
        }
        seen.push_back(p);
        out.push_back({EndpointSite{p}, EqPoint{p}});
    };
    for (const Segment& s : segs) {
        add_pt(s.a);
        if (!s.degenerate()) {
            add_pt(s.b);
            out.push_back({InteriorSite{s},
                           EqLine{OrientedLine::through(s.a, s.b), s}});
        }
    }
    return out;
}

struct AngularContact {
    double theta;
    Point2 p;
    bool inside_set;
    bool interior_tangency;  // realized by an interior site (foot may sit at an end)
    Segment seg;             // the tangent segment when interior_tangency
};

double wrap_angle(double a) {
    while (a < 0.0) a += 2.0 * M_PI;
    while (a >= 2.0 * M_PI) a -= 2.0 * M_PI;
    return a;
}

/// Independent classifier over contact angles; mirrors the condition taxonomy
/// without sharing the predicate-based route.
std::optional<ConditionTag> classify_angular(Point2 center, double r,
                                             std::vector<AngularContact> contacts,
                                             double eps_pt) {
    const double eps_ang = eps_pt / std::max(r, 1e-12);
    // Dedupe coincident contact points.
    std::vector<AngularContact> O, I;
    auto push_unique = [&](std::vector<AngularContact>& v, const AngularContact& c) {
        for (auto& e : v) {
            if (dist(e.p, c.p) <= eps_pt) {
                if (c.interior_tangency && !e.interior_tangency) {
                    e.interior_tangency = true;
                    e.seg = c.seg;
                }
                return;
            }
        }
        v.push_back(c);
    };
    for (const auto& c : contacts) push_unique(c.inside_set ? I : O, c);
    if (O.size() + I.size() < 3) return std::nullopt;

    auto antipodal = [&](const AngularContact& a, const AngularContact& b) {
        return std::abs(wrap_angle(a.theta - b.theta) - M_PI) <= 2.0 * eps_ang;
    };
    auto parallel_pair = [&](const AngularContact& a, const AngularContact& b) {
        return a.interior_tangency && b.interior_tangency &&
               std::abs(a.seg.dir().cross(b.seg.dir())) <= 1e-7;
    };
    // True when sliding the center along u yields a strictly larger separating
    // circle at first order.
    auto improving_slide = [&](Vec2 u) {
        const double eps = 1e-7;
        double clearance_rate = std::numeric_limits<double>::infinity();
        for (const AngularContact& cp : O) {
            const Vec2 dhat = (cp.p - center) * (1.0 / r);
            const double rate = -u.dot(dhat);
            if (rate < -eps) return false;
            if (rate <= eps && cp.interior_tangency) {
                const double margin = 1e-9 * std::max(1.0, cp.seg.length());
                const double ahead =
                    std::max(u.dot(cp.seg.a - cp.p), u.dot(cp.seg.b - cp.p));
                if (ahead > margin) return false;  // tangency slides along material
            }
            clearance_rate = std::min(clearance_rate, rate);
        }
        for (const AngularContact& ip : I) {
            const Vec2 dhat = (ip.p - center) * (1.0 / r);
            if (-u.dot(dhat) > clearance_rate + eps) return false;
        }
        return true;
    };

    std::vector<std::pair<int, int>> anti;
    for (std::size_t i = 0; i < O.size(); ++i) {
        for (std::size_t j = i + 1; j < O.size(); ++j) {
            if (antipodal(O[i], O[j])) anti.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    }
    if (anti.size() >= 2) return ConditionTag::C1pp;

    if (O.size() >= 3) {
        std::vector<double> th;
        th.reserve(O.size());
        for (const auto& c : O) th.push_back(c.theta);
        std::sort(th.begin(), th.end());
        double max_gap = th.front() + 2.0 * M_PI - th.back();
        for (std::size_t i = 1; i < th.size(); ++i) max_gap = std::max(max_gap, th[i] - th[i - 1]);
        if (max_gap < M_PI - eps_ang) return ConditionTag::C1;
    }
    if (O.size() >= 2 && !I.empty()) {
        for (std::size_t i = 0; i < O.size(); ++i) {
            for (std::size_t j = i + 1; j < O.size(); ++j) {
                const double width = wrap_angle(O[j].theta - O[i].theta);
                for (const auto& p : I) {
                    const double rel = wrap_angle(p.theta - O[i].theta);
                    // Arc through the enclosed contact must be under a half turn.
                    if (rel < width - eps_ang && width < M_PI - eps_ang && rel > eps_ang) {
                        return ConditionTag::C2;
                    }
                    const double width2 = 2.0 * M_PI - width;
                    const double rel2 = wrap_angle(p.theta - O[j].theta);
                    if (rel2 < width2 - eps_ang && width2 < M_PI - eps_ang && rel2 > eps_ang) {
                        return ConditionTag::C2;
                    }
                }
            }
        }
    }

    if (anti.size() == 1) {
        const auto [qi, qj] = anti.front();
        const Vec2 axis = (O[qj].p - O[qi].p).normalized().perp();
        if (improving_slide(axis) || improving_slide(-axis)) return std::nullopt;
        const bool par = parallel_pair(O[qi], O[qj]);
        if (par && O.size() >= 3) return ConditionTag::C1p;
        // Two enclosed contacts in the two open half-circles of the diameter.
        int lowc = 0, highc = 0;
        for (const auto& p : I) {
            const double rel = wrap_angle(p.theta - O[qi].theta);
            if (rel > eps_ang && rel < M_PI - eps_ang) ++lowc;
            if (rel > M_PI + eps_ang && rel < 2.0 * M_PI - eps_ang) ++highc;
        }
        if (lowc >= 1 && highc >= 1) return ConditionTag::C2pp;
        if (par && !I.empty()) return ConditionTag::C2p;
    }
    return std::nullopt;
}


}  // namespace

std::vector<OracleCircle> oracle_enumerate(const std::vector<Segment>& P,
                                           const std::vector<Segment>& Q,
                                           const Tolerance& tol) {
    if (P.size() + Q.size() > 40) {
        throw TooLargeError("oracle_enumerate is cubic; refusing more than 40 segments");
    }
    std::vector<OracleCircle> found;

    for (const SideSet inside : {SideSet::P, SideSet::Q}) {
        const std::vector<Segment>& in_segs = inside == SideSet::P ? P : Q;
        const std::vector<Segment>& out_segs = inside == SideSet::P ? Q : P;

        const std::vector<OracleSite> outs = elementary_sites(out_segs);
        std::vector<Point2> ins;
        for (const Segment& s : in_segs) {
            ins.push_back(s.a);
            if (!s.degenerate()) ins.push_back(s.b);
        }
        std::sort(ins.begin(), ins.end(), lex_less);
        ins.erase(std::unique(ins.begin(), ins.end()), ins.end());
        if (outs.size() < 2) continue;

        auto consider = [&](const EquidistantSolution& sol) {
            const double r = sol.radius;
            if (r <= 10.0 * tol.eps_predicate) return;
            const double eps_sep = tol.eps_merge * std::max(1.0, r);
            if (dist_point_set(sol.center, out_segs) < r - eps_sep) return;
            if (max_endpoint_dist(sol.center, in_segs) > r + eps_sep) return;
            if (!oracle_probe_local_max(sol.center, r, in_segs, out_segs)) return;

            // Full contact scan.
            std::vector<AngularContact> contacts;
            const double eps_contact = tol.eps_merge * std::max(1.0, r);
            for (const OracleSite& os : outs) {
                const double d = dist_point_site(sol.center, os.site);
                if (std::abs(d - r) > eps_contact) continue;
                AngularContact ac;
                if (const auto* e = std::get_if<EndpointSite>(&os.site)) {
                    ac.p = e->p;
                    ac.interior_tangency = false;
                } else {
                    const Segment& seg = std::get<InteriorSite>(os.site).seg;
                    ac.p = closest_point_on_segment(sol.center, seg);
                    ac.interior_tangency = true;
                    ac.seg = seg;
                }
                ac.inside_set = false;
                ac.theta = wrap_angle(std::atan2(ac.p.y - sol.center.y, ac.p.x - sol.center.x));
                contacts.push_back(ac);
            }
            for (const Point2 p : ins) {
                if (std::abs(dist(sol.center, p) - r) > eps_contact) continue;
                AngularContact ac;
                ac.p = p;
                ac.inside_set = true;
                ac.interior_tangency = false;
                ac.theta = wrap_angle(std::atan2(p.y - sol.center.y, p.x - sol.center.x));
                contacts.push_back(ac);
            }
            const auto tag = classify_angular(sol.center, r, std::move(contacts),
                                              tol.eps_merge * std::max(1.0, r));
            if (!tag) return;
            found.push_back({{sol.center, r}, inside, *tag});
        };

        auto solve_triple = [&](const EqSite& a, const EqSite& b, const EqSite& c) {
            try {
                for (const auto& sol : solve_equidistant(a, b, c, tol)) consider(sol);
            } catch (const NoSolutionError&) {
            }
        };

        for (std::size_t i = 0; i < outs.size(); ++i) {
            for (std::size_t j = i + 1; j < outs.size(); ++j) {
                for (std::size_t k = j + 1; k < outs.size(); ++k) {
                    solve_triple(outs[i].eq, outs[j].eq, outs[k].eq);
                }
                for (const Point2 p : ins) {
                    solve_triple(outs[i].eq, outs[j].eq, EqPoint{p});
                }
            }
        }
    }

    // Dedupe and order canonically.
    std::sort(found.begin(), found.end(), [](const OracleCircle& a, const OracleCircle& b) {
        if (a.circle.center.x != b.circle.center.x) return a.circle.center.x < b.circle.center.x;
        if (a.circle.center.y != b.circle.center.y) return a.circle.center.y < b.circle.center.y;
        if (a.circle.radius != b.circle.radius) return a.circle.radius < b.circle.radius;
        return a.inside < b.inside;
    });
    std::vector<OracleCircle> out;
    for (const OracleCircle& c : found) {
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (c.circle.center.x - it->circle.center.x > tol.eps_merge) break;
            if (it->inside == c.inside &&
                dist(it->circle.center, c.circle.center) <= tol.eps_merge &&
                std::abs(it->circle.radius - c.circle.radius) <= tol.eps_merge) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(c);
    }
    return out;
}

std::pair<std::vector<Segment>, std::vector<Segment>> gen_maxgap(const std::vector<double>& X) {
    std::vector<double> xs(X);
    std::sort(xs.begin(), xs.end());
    const double lo = xs.front(), hi = xs.back();
    const double w = hi - lo;
    std::vector<Segment> Q;
    Q.reserve(xs.size() + 1);
    for (const double x : xs) Q.push_back({{x, -1.0}, {x, 0.0}});
    Q.push_back({{lo, w}, {hi, w}});
    const std::vector<Segment> P{{{(lo + hi) / 2.0, w / 2.0}, {(lo + hi) / 2.0, w / 2.0}}};
    return {P, Q};
}

std::pair<std::vector<Segment>, std::vector<Segment>> gen_random(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int n_p = std::max(1, n / 3);
    const int n_q = std::max(1, n - n_p);

    // Candidate segments are short, so a coarse spatial hash keeps the
    // rejection test local.
    const double cell = 0.8;
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> grid;

    std::vector<Segment> all;
    auto for_cells = [&](const Segment& s, int pad, auto&& fn) {
        const auto cx0 = static_cast<std::int64_t>(std::floor(std::min(s.a.x, s.b.x) / cell)) - pad;
        const auto cx1 = static_cast<std::int64_t>(std::floor(std::max(s.a.x, s.b.x) / cell)) + pad;
        const auto cy0 = static_cast<std::int64_t>(std::floor(std::min(s.a.y, s.b.y) / cell)) - pad;
        const auto cy1 = static_cast<std::int64_t>(std::floor(std::max(s.a.y, s.b.y) / cell)) + pad;
        for (std::int64_t cx = cx0; cx <= cx1; ++cx) {
            for (std::int64_t cy = cy0; cy <= cy1; ++cy) {
                fn((cx << 32) ^ (cy & 0xffffffffLL));
            }
        }
    };
    auto neighbors_ok = [&](const Segment& s) {
        bool ok = true;
        for_cells(s, 1, [&](std::int64_t key) {
            if (!ok) return;
            const auto it = grid.find(key);
            if (it == grid.end()) return;
            for (const std::uint32_t i : it->second) {
                if (segment_interiors_intersect(all[i], s)) {
                    ok = false;
                    return;
                }
            }
        });
        return ok;
    };
    auto register_segment = [&](const Segment& s) {
        const std::uint32_t id = static_cast<std::uint32_t>(all.size());
        all.push_back(s);
        for_cells(s, 0, [&](std::int64_t key) { grid[key].push_back(id); });
    };

    auto try_add = [&](double rad_lo, double rad_hi, double max_half, double point_prob) {
        for (int attempt = 0; attempt < 256; ++attempt) {
            const double ang = 2.0 * M_PI * uni(rng);
            const double rad = rad_lo + (rad_hi - rad_lo) * std::sqrt(uni(rng));
            const Point2 c{rad * std::cos(ang), rad * std::sin(ang)};
            Segment s{c, c};
            if (uni(rng) >= point_prob) {
                const double half = max_half * uni(rng);
                const double sang = 2.0 * M_PI * uni(rng);
                const Vec2 d{std::cos(sang), std::sin(sang)};
                s = {c - d * half, c + d * half};
            }
            if (neighbors_ok(s)) {
                register_segment(s);
                return;
            }
        }
        // Fall back to a point site at a fresh spot.
        const double ang = 2.0 * M_PI * uni(rng);
        const double rad = rad_lo + (rad_hi - rad_lo) * uni(rng);
        const Point2 c{rad * std::cos(ang), rad * std::sin(ang)};
        register_segment({c, c});
    };

    for (int i = 0; i < n_p; ++i) try_add(0.0, 0.8, 0.2, 0.3);
    const std::size_t np_actual = all.size();
    for (int i = 0; i < n_q; ++i) try_add(2.0, 3.5, 0.35, 0.25);

    std::vector<Segment> P(all.begin(), all.begin() + np_actual);
    std::vector<Segment> Q(all.begin() + np_actual, all.end());
    return {P, Q};
}

}  // namespace circsep
