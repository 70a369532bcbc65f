#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "circsep/circle_space.hpp"
#include "circsep/geom.hpp"

namespace circsep {

/// Strictly convex CCW polygon (collinear and duplicate input points removed).
struct ConvexHull {
    std::vector<Point2> vertices;
};

ConvexHull convex_hull(std::vector<Point2> points, double eps = 1e-12);

namespace detail {

/// Farthest-point Delaunay triangulation of a strictly convex CCW polygon:
/// the triangulation whose triangle circumdisks contain every vertex.
/// Randomized incremental over a random deletion order; expected linear time.
std::vector<std::array<int, 3>> farthest_point_triangulation(const std::vector<Point2>& poly,
                                                             std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

/// Site adjacency induced by the triangulation (includes the polygon edges).
std::vector<std::vector<int>> triangulation_adjacency(int n,
                                                      const std::vector<std::array<int, 3>>& tris);

}  // namespace detail

struct FVorVertex {
    Point2 pos;
    double clearance = 0.0;     // common (and maximal) distance to the owners
    std::vector<int> owners;    // hull vertex indices, >= 3
};

struct FVorEdge {
    int site_a = -1, site_b = -1;  // owner pair (hull vertex indices)
    int v0 = -1, v1 = -1;          // vertex ids; -1 marks an unbounded end
    Point2 p0, p1;                 // endpoint positions (valid when the id is set)
    Vec2 ray_dir;                  // direction to infinity when v1 == -1
    bool bi_infinite = false;      // two-site diagrams: the whole bisector line
};

/// Furthest-site Voronoi diagram of the hull vertices. All cells are unbounded;
/// the diagram's edge graph is a tree.
struct FVorDiagram {
    std::vector<Point2> sites;  // CCW hull vertices
    std::vector<FVorVertex> vertices;
    std::vector<FVorEdge> edges;
    std::vector<std::vector<int>> cell_edges;  // per site: incident edge ids
    std::vector<std::vector<int>> neighbors;   // per site: adjacent sites

    int farthest_site(Point2 q) const;
    double height(Point2 q) const;  // max over sites of dist(q, site)
};

FVorDiagram furthest_voronoi(const ConvexHull& hull, const Tolerance& tol = {});

/// The upper envelope of the lifting cones of the hull vertices; mirrors the
/// diagram face/edge/vertex structure with lifted coordinates.
struct UEnvelope {
    std::vector<Point2> sites;
    std::vector<CirclePoint> vertices;               // lifted diagram vertices
    std::vector<std::array<int, 2>> edge_sites;      // owner pair per envelope arc
    std::vector<std::vector<int>> vertex_owners;     // per lifted vertex

    double height(Point2 q) const;
};

UEnvelope lift_envelope(const FVorDiagram& d);

}  // namespace circsep
