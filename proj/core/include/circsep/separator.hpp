#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circsep/circle_space.hpp"
#include "circsep/envelope.hpp"
#include "circsep/geom.hpp"
#include "circsep/hierarchy.hpp"
#include "circsep/seg_voronoi.hpp"
#include "circsep/tags.hpp"

namespace circsep {

struct Contact {
    SideSet set;
    int segment_index = -1;  // into the owning set's segment list
    ElementarySite site;
    Point2 point;  // where the circle meets the site

    bool tangency() const { return !is_endpoint_site(site); }
};

struct SeparatingCircle {
    Circle circle;
    SideSet inside;  // the enclosed set
    std::vector<Contact> contacts;
    ConditionTag condition = ConditionTag::C1;

    struct Source {
        enum class Kind { Vertex, Edge };
        Kind kind = Kind::Vertex;
        int id = -1;
        double t = 0.0;  // curve parameter for edge-sourced records
    };
    Source source;
};

struct SeparatorOptions {
    int threads = 1;
    bool validate = true;  // run the interiors-disjoint precheck
};

struct PhaseTimings {
    double build_ms = 0.0;
    double query_ms = 0.0;
};

/// Classifies a contact configuration on the circle, or nullopt when it
/// certifies no locally largest circle. Contacts of the set equal to `inside`
/// play the hull-vertex role; the others the tangent-set role.
std::optional<ConditionTag> classify_contacts(const Circle& c,
                                              const std::vector<Contact>& contacts,
                                              SideSet inside = SideSet::P,
                                              const Tolerance& tol = {});

/// One orientation's immutable query context.
struct OrientationContext {
    SideSet inside;
    const std::vector<Segment>* inside_segs = nullptr;
    const std::vector<Segment>* outside_segs = nullptr;
    SegVorDiagram vor;        // of the outside set
    ConvexHull hull;          // of the inside set's endpoints
    Hierarchy env;            // over the hull vertices
    std::vector<int> hull_parent;  // hull vertex -> inside segment index
};

OrientationContext make_orientation_context(SideSet inside, const std::vector<Segment>& in_segs,
                                            const std::vector<Segment>& out_segs,
                                            const Tolerance& tol = {});

/// A Voronoi edge lifted to the space of circles: the supporting curve plus the
/// parameter range the edge covers. Perpendicular edges at segment endpoints
/// split into two rays, hence the list.
struct EdgeCurve {
    CurveF curve;
    double t0 = 0.0, t1 = 0.0;
};

std::vector<EdgeCurve> edge_curves(const SegVorDiagram& vor, const SegVorEdge& e,
                                   const Tolerance& tol = {});

/// The clearance circle at a Voronoi vertex, when it separates and satisfies
/// one of the conditions C1, C1', C1''.
std::optional<SeparatingCircle> check_vertex_candidate(const OrientationContext& ctx,
                                                       int vertex_id, const Tolerance& tol = {});

/// The at most two largest circles centered on a Voronoi edge that touch the
/// inside set's hull (conditions C2, C2', C2'').
std::vector<SeparatingCircle> check_edge_candidate(const OrientationContext& ctx, int edge_id,
                                                   const Tolerance& tol = {});

/// All locally largest separating circles with at least three contact points,
/// both orientations, deduplicated and canonically sorted.
std::vector<SeparatingCircle> find_all_largest(const std::vector<Segment>& P,
                                               const std::vector<Segment>& Q,
                                               const Tolerance& tol = {},
                                               const SeparatorOptions& opts = {},
                                               PhaseTimings* timings = nullptr,
                                               std::vector<std::string>* warnings = nullptr);

}  // namespace circsep
