#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circsep/geom.hpp"

namespace circsep {

class InvalidInputError : public std::runtime_error {
  public:
    InvalidInputError(const std::string& what, std::size_t first, std::size_t second)
        : std::runtime_error(what), first_(first), second_(second) {}

    std::size_t first() const { return first_; }
    std::size_t second() const { return second_; }

  private:
    std::size_t first_;
    std::size_t second_;
};

struct SegSiteRef {
    int segment = -1;  // index into the input list
    enum class Part { Point, EndpointA, EndpointB, Interior } part = Part::Point;
};

struct SegVorVertex {
    Point2 pos;
    double clearance = 0.0;  // distance to the owners; no site is closer
    std::vector<int> owners;  // elementary site ids, >= 3 (>= 4 when degenerate)
};

struct SegVorEdge {
    int site_a = -1, site_b = -1;  // elementary site ids
    int v0 = -1, v1 = -1;          // vertex ids; -1 = unbounded end
    Point2 p0, p1;                 // endpoint positions (valid when the id is set)
    bool bi_infinite = false;
};

/// Closest-site Voronoi diagram of interior-disjoint segments over their
/// elementary sites (endpoints and open interiors). Point-point edges are line
/// pieces, point-interior edges parabola pieces, interior-interior edges line
/// pieces; the perpendiculars separating a segment's interior from its own
/// endpoints are kept as ordinary edges.
struct SegVorDiagram {
    std::vector<Segment> input;
    std::vector<ElementarySite> sites;
    std::vector<SegSiteRef> site_refs;
    std::vector<SegVorVertex> vertices;
    std::vector<SegVorEdge> edges;
};

/// Builds the diagram. Throws InvalidInputError when two segment interiors
/// intersect (set validate = false only for inputs that are disjoint by
/// construction).
SegVorDiagram build_segment_voronoi(const std::vector<Segment>& Q, const Tolerance& tol = {},
                                    bool validate = true);

/// Closest elementary site and the distance d(q, Q). Linear scan.
std::pair<int, double> nearest_site(const SegVorDiagram& d, Point2 q);

}  // namespace circsep
