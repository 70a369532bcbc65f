#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace circsep {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }

    /// Counterclockwise quarter turn.
    Vec2 perp() const { return {-y, x}; }

    Vec2 normalized() const {
        const double n = norm();
        return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
    }
};

using Point2 = Vec2;

inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Vec2 a, Vec2 b) { return !(a == b); }

/// Lexicographic (x, then y) order; used for canonical segment and output sorting.
inline bool lex_less(Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

inline double dist(Point2 a, Point2 b) { return (a - b).norm(); }
inline double dist2(Point2 a, Point2 b) { return (a - b).norm2(); }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Closed segment; a == b encodes a point site.
struct Segment {
    Point2 a;
    Point2 b;

    Segment() = default;
    Segment(Point2 a_, Point2 b_) : a(a_), b(b_) {}

    bool degenerate() const { return a == b; }
    double length() const { return dist(a, b); }
    Vec2 dir() const { return (b - a).normalized(); }

    /// Endpoints reordered so a <= b lexicographically.
    Segment canonical() const { return lex_less(b, a) ? Segment{b, a} : *this; }
};

/// Line through `anchor` with unit `direction`; orientation distinguishes its two sides.
struct OrientedLine {
    Point2 anchor;
    Vec2 direction;

    OrientedLine() = default;
    OrientedLine(Point2 anchor_, Vec2 direction_)
        : anchor(anchor_), direction(direction_.normalized()) {}

    static OrientedLine through(Point2 a, Point2 b) { return {a, b - a}; }

    /// Unit normal pointing to the left of the direction of travel.
    Vec2 left_normal() const { return direction.perp(); }

    /// Signed distance; positive on the left side.
    double signed_offset(Point2 p) const { return left_normal().dot(p - anchor); }

    double abscissa(Point2 p) const { return direction.dot(p - anchor); }
    Point2 point_at(double t) const { return anchor + direction * t; }
};

struct Circle {
    Point2 center;
    double radius = 0.0;

    Circle() = default;
    Circle(Point2 c, double r) : center(c), radius(r) {}
};

/// A segment decomposes into up to three elementary sites: two endpoints and the
/// open interior. Point segments contribute a single endpoint site.
struct EndpointSite {
    Point2 p;
};

struct InteriorSite {
    Segment seg;  // non-degenerate
};

using ElementarySite = std::variant<EndpointSite, InteriorSite>;

inline bool is_endpoint_site(const ElementarySite& s) {
    return std::holds_alternative<EndpointSite>(s);
}

double dist_point_site(Point2 p, const ElementarySite& s);

struct Tolerance {
    double eps_predicate = 1e-9;
    double eps_merge = 1e-6;
};

/// Sign of twice the signed area of triangle (a, b, c): +1 CCW, -1 CW, 0 collinear
/// within eps (relative to the triangle's extent).
int orientation(Point2 a, Point2 b, Point2 c, double eps = 1e-9);

/// Euclidean distance from p to the closed segment s.
double dist_point_segment(Point2 p, const Segment& s);

/// Closest point of the closed segment s to p.
Point2 closest_point_on_segment(Point2 p, const Segment& s);

/// Distance from p to the nearest segment of Q (linear scan).
double dist_point_set(Point2 p, const std::vector<Segment>& Q);

struct DisjointnessReport {
    bool ok = true;
    std::size_t first = 0;
    std::size_t second = 0;
};

/// True iff the relative interiors of the two segments intersect.
bool segment_interiors_intersect(const Segment& s1, const Segment& s2);

/// True iff no two segments' relative interiors intersect. Segments may share
/// endpoints, and an endpoint may lie on another segment's interior; proper
/// crossings and overlapping collinear interiors are violations. Grid-bucketed
/// above a small size, pairwise below.
DisjointnessReport interiors_disjoint(const std::vector<Segment>& S);

/// A site for the three-site tangency solver: a point, or a line whose unsigned
/// distance is used, optionally restricted so the foot lies inside a segment.
struct EqPoint {
    Point2 p;
};

struct EqLine {
    OrientedLine line;
    std::optional<Segment> foot_range;  // reject solutions whose foot leaves this segment
};

using EqSite = std::variant<EqPoint, EqLine>;

EqSite eq_site_from_elementary(const ElementarySite& s);

struct EquidistantSolution {
    Point2 center;
    double radius = 0.0;
};

class NoSolutionError : public std::runtime_error {
  public:
    explicit NoSolutionError(const std::string& what) : std::runtime_error(what) {}
};

/// All points equidistant from the three sites, with that common distance as the
/// radius. Enumerates the sign branches of the tangency system; line sites use
/// distance to the supporting line and candidates whose foot leaves the declared
/// segment are rejected. Returns an empty list when no circle exists; throws
/// NoSolutionError for inconsistent systems such as three parallel lines.
std::vector<EquidistantSolution> solve_equidistant(const EqSite& s1, const EqSite& s2,
                                                   const EqSite& s3,
                                                   const Tolerance& tol = {});

}  // namespace circsep
