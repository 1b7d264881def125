#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "compositedp/errors.hpp"
#include "compositedp/random.hpp"
#include "compositedp/shape.hpp"

namespace compositedp {

// Piecewise CDF of a solved perturbation density at a fixed activation
// offset. Breakpoints are the density's piece boundaries
// {-L, a, a+m/2, a+m, L}; within a piece the CDF is the sum of the base and
// activation antiderivatives.
class PiecewiseCdf {
public:
    PiecewiseCdf(PerturbationSpec spec, double offset)
        : spec_(std::move(spec)), a_(offset) {
        const double L = spec_.params.L;
        const double m = spec_.params.m;
        breaks_ = {-L, a_, a_ + 0.5 * m, a_ + m, L};
        std::sort(breaks_.begin(), breaks_.end());
        breaks_.erase(std::unique(breaks_.begin(), breaks_.end(),
                                  [](double p, double q) { return std::fabs(p - q) < 1e-15; }),
                      breaks_.end());
        cum_.reserve(breaks_.size());
        for (double b : breaks_) cum_.push_back(eval_raw(b));
        total_ = cum_.back();
    }

    const PerturbationSpec &spec() const { return spec_; }
    double offset() const { return a_; }
    double total_mass() const { return total_; }
    const std::vector<double> &breakpoints() const { return breaks_; }

    // CDF value in [0, 1]; clamps outside [-L, L].
    double operator()(double x) const {
        if (x <= breaks_.front()) return 0.0;
        if (x >= breaks_.back()) return 1.0;
        return eval_raw(x) / total_;
    }

    double pdf(double x) const { return density(spec_, a_, x) / total_; }

    // Inverse CDF. Piece located by binary search over breakpoint masses;
    // within a piece, closed form where the density is constant, otherwise
    // bisection with Newton polish on the CDF residual.
    double inverse(double u) const {
        if (u <= 0.0) return breaks_.front();
        if (u >= 1.0) return breaks_.back();
        const double target = u * total_;
        auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
        std::size_t hi_idx = std::min<std::size_t>(it - cum_.begin(), cum_.size() - 1);
        if (hi_idx == 0) hi_idx = 1;
        double lo = breaks_[hi_idx - 1];
        double hi = breaks_[hi_idx];
        const double mass_lo = cum_[hi_idx - 1];

        const double m = spec_.params.m;
        const bool outside_activation = hi <= a_ + 1e-15 || lo >= a_ + m - 1e-15;
        const bool flat_activation = spec_.activation.family() == ActivationFamily::A1 || spec_.params.k == 0.0;
        if (spec_.base.family() == BaseFamily::B1 && (outside_activation || flat_activation)) {
            // constant density piece: linear CDF
            const double d = density(spec_, a_, 0.5 * (lo + hi));
            return lo + (target - mass_lo) / d;
        }

        double x = 0.5 * (lo + hi);
        for (int i = 0; i < 200; ++i) {
            const double r = eval_raw(x) - target;
            if (std::fabs(r) <= 1e-12) return x;
            if (r > 0.0) {
                hi = x;
            } else {
                lo = x;
            }
            const double d = density(spec_, a_, x);
            double nx = d > 0.0 ? x - r / d : 0.5 * (lo + hi);
            if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
            if (hi - lo < 4e-17 * std::max(1.0, std::fabs(x))) return 0.5 * (lo + hi);
            x = nx;
        }
        throw NumericNonconvergence("inverse CDF did not converge");
    }

    // Mass between two points, truncated at the support.
    double mass_between(double x1, double x2) const {
        const double L = spec_.params.L;
        x1 = std::clamp(x1, -L, L);
        x2 = std::clamp(x2, -L, L);
        if (x1 > x2) std::swap(x1, x2);
        return eval_raw(x2) - eval_raw(x1);
    }

private:
    // Unnormalized CDF: integral of the density from -L to x.
    double eval_raw(double x) const {
        const auto &p = spec_.params;
        return spec_.base.antiderivative(x, p.y, p.t, p.L) + spec_.activation.antiderivative(x - a_, p.k, p.m);
    }

    PerturbationSpec spec_;
    double a_;
    std::vector<double> breaks_;
    std::vector<double> cum_;
    double total_;
};

inline PiecewiseCdf build_cdf(const PerturbationSpec &spec, double offset) { return PiecewiseCdf(spec, offset); }

inline double sample(const PiecewiseCdf &cdf, UniformStream &stream) { return cdf.inverse(stream.next()); }

} // namespace compositedp
