#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace circsep {

struct QuadraticRoots {
    std::array<double, 2> t{};
    int count = 0;  // 0, 1 (double root or linear), or 2, sorted ascending
};

/// Roots of a t^2 + b t + c = 0 via the citardauq form, which avoids the
/// cancellation of the textbook formula when b dominates. Near-zero `a`
/// degrades to the linear equation; a double root within `eps` of itself is
/// collapsed to one entry.
inline QuadraticRoots solve_quadratic(double a, double b, double c, double eps = 1e-12) {
    QuadraticRoots out;
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) return out;
    if (std::abs(a) <= eps * scale) {
        if (std::abs(b) <= eps * scale) return out;  // constant equation
        out.t[0] = -c / b;
        out.count = 1;
        return out;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        // Treat a graze within rounding noise as a tangency.
        if (disc > -eps * scale * scale) {
            out.t[0] = -b / (2.0 * a);
            out.count = 1;
        }
        return out;
    }
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double r0 = q / a;
    double r1 = (q != 0.0) ? c / q : -b / a - r0;
    if (r0 > r1) std::swap(r0, r1);
    if (r1 - r0 <= eps * std::max(1.0, std::abs(r0) + std::abs(r1))) {
        out.t[0] = 0.5 * (r0 + r1);
        out.count = 1;
    } else {
        out.t = {r0, r1};
        out.count = 2;
    }
    return out;
}

inline double clamp(double v, double lo, double hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

}  // namespace circsep
