#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "circsep/geom.hpp"
#include "circsep/tags.hpp"

namespace circsep {

/// Brute-force verifiers, deliberately built on the geometry kernel alone so
/// they share no code path with the diagram/hierarchy pipeline they check.

struct GridSpec {
    double min_x = 0.0, min_y = 0.0, max_x = 1.0, max_y = 1.0;
    double step = 1e-2;
    int refine_iters = 40;

    /// Input bounding box inflated threefold, step = diameter / cells_per_side.
    static GridSpec from_instance(const std::vector<Segment>& P, const std::vector<Segment>& Q,
                                  int cells_per_side = 400);
};

class TooLargeError : public std::runtime_error {
  public:
    explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct OracleCircle {
    Circle circle;
    SideSet inside = SideSet::P;
    ConditionTag condition = ConditionTag::C1;
};

/// Feasibility for the P-inside orientation: every P endpoint within the
/// clearance disk of radius d(c, Q).
bool oracle_feasible(Point2 c, const std::vector<Segment>& P, const std::vector<Segment>& Q,
                     double slack = 1e-9);

/// The 16-direction local-maximality probe at radii 1e-4 and 1e-3: true when no
/// sampled feasible center strictly beats the radius.
bool oracle_probe_local_max(Point2 center, double radius, const std::vector<Segment>& P,
                            const std::vector<Segment>& Q, double slack = 1e-7);

/// Grid local maxima of c -> d(c, Q) over the feasible region, refined by
/// compass pattern search. P-inside orientation only.
std::vector<Circle> oracle_local_maxima(const std::vector<Segment>& P,
                                        const std::vector<Segment>& Q, const GridSpec& g);

/// Exhaustive three-site tangency enumeration over both orientations; keeps
/// circles that separate, carry >= 3 contacts in a certifying configuration,
/// and pass the local-maximality probe. Throws TooLargeError above ~40 segments.
std::vector<OracleCircle> oracle_enumerate(const std::vector<Segment>& P,
                                           const std::vector<Segment>& Q,
                                           const Tolerance& tol = {});

/// The maximum-gap reduction instance: one stub per abscissa, a roof segment,
/// and a single point site between them.
std::pair<std::vector<Segment>, std::vector<Segment>> gen_maxgap(const std::vector<double>& X);

/// Deterministic random instance: Q sampled in an outer ring, P in an inner
/// disk, rejection-sampled to keep relative interiors disjoint.
std::pair<std::vector<Segment>, std::vector<Segment>> gen_random(int n, std::uint64_t seed);

}  // namespace circsep
