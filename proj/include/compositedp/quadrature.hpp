#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>

#include "compositedp/errors.hpp"

namespace compositedp {

// Adaptive Simpson quadrature. The densities in this library are smooth
// within pieces, so Richardson-style error control on the Simpson rule is
// enough; callers split at piece boundaries.

namespace detail {

template <typename F>
double adaptive_simpson_rec(const F &f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

template <typename F>
    requires std::invocable<F, double>
double integrate(const F &f, double a, double b, double abs_tol = 1e-12, int max_depth = 48) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

// Integrate with mandatory interior split points (typically the piece
// boundaries of a piecewise integrand). Points outside (a,b) are ignored.
template <typename F, std::size_t N>
double integrate_split(const F &f, double a, double b, const double (&splits)[N], double abs_tol = 1e-12) {
    double pts[N + 2];
    std::size_t n = 0;
    pts[n++] = a;
    for (double s : splits) {
        if (s > a && s < b) pts[n++] = s;
    }
    pts[n++] = b;
    // insertion sort; n is tiny
    for (std::size_t i = 1; i < n; ++i) {
        double v = pts[i];
        std::size_t j = i;
        while (j > 0 && pts[j - 1] > v) {
            pts[j] = pts[j - 1];
            --j;
        }
        pts[j] = v;
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        total += integrate(f, pts[i], pts[i + 1], abs_tol);
    }
    return total;
}

// Monotone bisection root find on [lo, hi], polished with a few Newton steps
// when a derivative is supplied through `df` (pass nullptr-like lambda
// returning 0 to skip). Residual target is absolute.
template <typename F>
double bisect(const F &f, double lo, double hi, double abs_tol = 1e-12, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw NumericNonconvergence("bisection bracket does not straddle a root");
    }
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::fabs(fm) <= abs_tol || 0.5 * (hi - lo) < 1e-16 * (1.0 + std::fabs(mid))) {
            return mid;
        }
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    throw NumericNonconvergence("bisection did not reach tolerance");
}

} // namespace compositedp
