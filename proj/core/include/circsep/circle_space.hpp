#pragma once

#include <array>
#include <limits>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "circsep/geom.hpp"

namespace circsep {

/// A point of the space of circles: the circle centered at (x, y) with radius z.
struct CirclePoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;  // radius, >= 0

    Point2 xy() const { return {x, y}; }
};

inline CirclePoint lift_circle(const Circle& c) {
    return {c.center.x, c.center.y, c.radius};
}

inline Circle unlift_circle(const CirclePoint& p) {
    return {{p.x, p.y}, p.z};
}

/// 45-degree cone z = dist((x,y), apex): images of all circles through the apex.
struct LiftingCone {
    Point2 apex;

    double height_at(Point2 q) const { return dist(q, apex); }
};

inline double cone_height(const LiftingCone& cone, Point2 q) { return cone.height_at(q); }

enum class HalfplaneSide { Left, Right };

/// 45-degree halfplane of images of circles tangent to `line` and centered on
/// the declared side.
struct LiftingHalfplane {
    OrientedLine line;
    HalfplaneSide side = HalfplaneSide::Left;

    /// Unit normal pointing into the declared side.
    Vec2 inward_normal() const {
        const Vec2 n = line.left_normal();
        return side == HalfplaneSide::Left ? n : -n;
    }

    /// Signed offset of p, positive on the declared side.
    double offset(Point2 p) const { return inward_normal().dot(p - line.anchor); }
};

class DegenerateCurveError : public std::runtime_error {
  public:
    explicit DegenerateCurveError(const std::string& what) : std::runtime_error(what) {}
};

class CurveOnConeError : public std::runtime_error {
  public:
    explicit CurveOnConeError(const std::string& what) : std::runtime_error(what) {}
};

/// A curve of the family F: intersection of two lifted surfaces, carrying a
/// monotone 1-D parameterization t -> CirclePoint.
///   Hyperbola  LC(s1) ^ LC(s2)   parameterized by signed distance along the bisector
///   Parabola   LC(s)  ^ H(l)     parameterized by center abscissa in the line frame
///   Line3      H(l1)  ^ H(l2)    parameterized by radius (bisector) or arclength (midline)
struct CurveF {
    enum class Kind { Hyperbola, Parabola, Line3 };
    Kind kind = Kind::Line3;

    // Hyperbola
    Point2 s1, s2;   // generator points
    Point2 mid;      // midpoint of (s1, s2)
    Vec2 dir;        // unit direction of the bisector line
    double h = 0.0;  // half the separation |s2 - s1| / 2

    // Parabola
    Point2 focus;
    OrientedLine base;
    Vec2 toward;       // unit normal of base toward the declared side
    double xi = 0.0;   // focus abscissa in the line frame
    double eta = 0.0;  // focus offset from the line (> 0)

    // Line3 (also the degenerate tangent-at-a-point ray)
    Point2 origin;
    double z0 = 0.0;
    Vec2 e;
    double ez = 0.0;
    std::optional<Point2> through_point;  // set for the degenerate ray: all circles pass here

    // Parameter domain (typically all of R, or [0, inf) for radius-parameterized lines).
    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();

    CirclePoint point_at(double t) const;
    double param_of_center(Point2 c) const;

    /// Residuals of the two defining surface equations at parameter t (for checks).
    std::array<double, 2> surface_residuals(double t) const;
};

using CurveSite = std::variant<Point2, LiftingHalfplane>;

/// The image under the lift of all circles through / tangent to both sites on the
/// declared sides. Throws DegenerateCurveError when no such one-parameter family
/// exists (identical or same-side parallel lines, coincident points, a point
/// strictly on the wrong side of a line).
CurveF curve_from_sites(const CurveSite& a, const CurveSite& b, const Tolerance& tol = {});

/// Feasibility of the constraint "cone apex inside the circle", i.e.
/// z(t) >= dist(center(t), apex), as a set of parameters.
struct ConeConstraint {
    enum class Kind { All, Empty, Below, Above, Inside, Outside };
    Kind kind = Kind::All;
    double lo = 0.0;  // Above/Inside/Outside lower boundary
    double hi = 0.0;  // Below/Inside/Outside upper boundary
};

/// Throws CurveOnConeError when the curve lies identically on the cone (its
/// defining point site equals the apex).
ConeConstraint cone_constraint(const CurveF& curve, Point2 apex, const Tolerance& tol = {});

struct CurveConeHit {
    enum class Side { Entering, Leaving, Tangent };
    double t = 0.0;
    CirclePoint point;
    Side side = Side::Tangent;
};

/// The at most two parameters where the curve meets the cone surface, tagged by
/// whether the swept circle gains (entering) or loses (leaving) the apex point.
std::vector<CurveConeHit> intersect_curve_cone(const CurveF& curve, const LiftingCone& cone,
                                               const Tolerance& tol = {});

/// A union of disjoint closed parameter intervals, kept sorted. Each boundary
/// remembers which constraint produced it (-1 = the original domain), so a
/// clipped curve knows the cone it crosses at every surviving endpoint.
class IntervalSet {
  public:
    struct Interval {
        double lo, hi;
        int lo_tag = -1, hi_tag = -1;
    };

    static IntervalSet all();
    static IntervalSet empty();
    static IntervalSet interval(double lo, double hi);

    void clip(const ConeConstraint& c, int tag = -1);
    bool is_empty() const { return parts_.empty(); }
    const std::vector<Interval>& parts() const { return parts_; }

  private:
    std::vector<Interval> parts_;
};

}  // namespace circsep
