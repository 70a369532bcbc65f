#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "circsep/circle_space.hpp"
#include "circsep/geom.hpp"

namespace circsep {

/// Annotated intersection of a query curve (or vertical line) with the upper
/// envelope: the envelope point, the curve parameter, and the hull vertices at
/// distance z from the projection (1 owner = face, 2 = edge arc, 3+ = vertex).
struct EnvelopeHit {
    CirclePoint point;
    double t = 0.0;
    std::vector<int> owners;
};

struct QueryStats {
    int visited_faces = 0;
};

/// Outer hierarchical representation of the upper envelope of the lifting cones
/// of a strictly convex CCW vertex set: nested site subsets S_1 c S_2 c ... c S_k
/// with cross-links between consecutive levels, answering curve and vertical-line
/// intersection queries by coarse-to-fine descent.
class Hierarchy {
  public:
    /// `hull_vertices` must be strictly convex in CCW order (see convex_hull).
    static Hierarchy build(std::vector<Point2> hull_vertices,
                           std::uint64_t seed = 0x6b43a9b1d2f0c3e7ULL);

    int depth() const { return static_cast<int>(level_sizes_.size()); }
    std::size_t site_count() const { return pts_.size(); }
    /// Sum of |S_i| over all levels.
    std::size_t total_level_sites() const;
    const std::vector<std::size_t>& level_sizes() const { return level_sizes_; }
    const std::vector<Point2>& sites() const { return pts_; }
    /// Largest cross-link list in either direction (survivor -> re-added sites
    /// or re-added site -> neighbors).
    std::size_t max_crosslink_fanout() const { return max_fanout_; }

    /// The unique envelope point above q; its height is the farthest-vertex
    /// distance from q.
    EnvelopeHit query_vertical(Point2 q, QueryStats* stats = nullptr) const;

    /// The at most two intersections of the curve with the envelope.
    std::vector<EnvelopeHit> query_curve(const CurveF& curve, QueryStats* stats = nullptr) const;

  private:
    struct Transition {
        // Sites re-added at this refinement step, with their adjacency at the
        // finer level (all neighbors survive the step by independence).
        std::vector<int> added;
        std::vector<std::vector<int>> added_nbrs;
        std::unordered_map<int, std::vector<int>> rem_nbrs;  // survivor -> added
    };

    std::vector<Point2> pts_;
    std::vector<int> base_;                  // S_1, |S_1| <= 4
    std::vector<Transition> transitions_;    // coarse -> fine
    std::vector<std::vector<int>> final_adj_;  // adjacency at S_k, for tie reports
    std::vector<std::size_t> level_sizes_;   // |S_1|, |S_2|, ..., |S_k|
    std::size_t max_fanout_ = 0;
    double proxy_param_ = 1e7;               // finite stand-in for +-infinity

    int descend_owner(Point2 q, QueryStats* stats) const;
    std::vector<int> owners_at(Point2 q, double z, int owner_hint) const;
};

}  // namespace circsep
