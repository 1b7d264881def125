#pragma once

#include <cmath>
#include <string>

#include "compositedp/core.hpp"
#include "compositedp/errors.hpp"

namespace compositedp {

// Affine transforms between the real output range [l,u] and the canonical
// domain [-L, L]:   gamma(c) = (c - l) C - L,   gamma^{-1}(x) = (x + L)/C + l.

inline double scale_factor(double cp_min, double cp_max, double sensitivity) {
    if (!(cp_max > cp_min)) {
        throw DegenerateInputRange("Cp range is degenerate: [" + std::to_string(cp_min) + ", " +
                                   std::to_string(cp_max) + "]");
    }
    if (!(sensitivity > 0.0)) {
        throw NonPositiveSensitivity("sensitivity must be positive, got " + std::to_string(sensitivity));
    }
    return (cp_max - cp_min) / sensitivity;
}

inline double link_upper_bound(double lower, double half_width, double cp_min, double cp_max, double sensitivity) {
    if (!(cp_max > cp_min)) {
        throw DegenerateInputRange("Cp range is degenerate: [" + std::to_string(cp_min) + ", " +
                                   std::to_string(cp_max) + "]");
    }
    return lower + 2.0 * half_width * sensitivity / (cp_max - cp_min);
}

namespace detail {

// Values a hair outside the range are float noise from upstream arithmetic;
// snap them to the boundary instead of failing.
inline double snap_into(double v, double lo, double hi, double tol) {
    if (v < lo) {
        if (lo - v <= tol) return lo;
        throw OutOfBounds(std::to_string(v) + " below [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (v > hi) {
        if (v - hi <= tol) return hi;
        throw OutOfBounds(std::to_string(v) + " above [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
}

} // namespace detail

inline double map_to_canonical(double c, const OutputBounds &bounds, const CanonicalDomain &dom) {
    const double tol = 1e-9 * bounds.width();
    c = detail::snap_into(c, bounds.lower, bounds.upper, tol);
    return (c - bounds.lower) * dom.scale - dom.half_width;
}

inline double map_from_canonical(double x, const OutputBounds &bounds, const CanonicalDomain &dom) {
    const double tol = 1e-9 * 2.0 * dom.half_width;
    x = detail::snap_into(x, -dom.half_width, dom.half_width, tol);
    return (x + dom.half_width) / dom.scale + bounds.lower;
}

// Alternative algebraic forms anchored at the upper bound; both forms agree
// when the bounds are linked via link_upper_bound.
inline double map_to_canonical_via_upper(double c, const OutputBounds &bounds, const CanonicalDomain &dom) {
    const double tol = 1e-9 * bounds.width();
    c = detail::snap_into(c, bounds.lower, bounds.upper, tol);
    return (c - bounds.upper) * dom.scale + dom.half_width;
}

inline double map_from_canonical_via_upper(double x, const OutputBounds &bounds, const CanonicalDomain &dom) {
    const double tol = 1e-9 * 2.0 * dom.half_width;
    x = detail::snap_into(x, -dom.half_width, dom.half_width, tol);
    return (x - dom.half_width) / dom.scale + bounds.upper;
}

} // namespace compositedp
