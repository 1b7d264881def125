#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "compositedp/analysis.hpp"
#include "compositedp/errors.hpp"
#include "compositedp/random.hpp"
#include "compositedp/shape.hpp"

namespace compositedp {

// Parameter search over (k, m). The base height y (and edge value t) are
// derived from normalization, so the scan is two-dimensional. Everything here
// evaluates analytic variance only: no data handle, no privacy spend.

struct OptimizerConfig {
    std::vector<double> steps{0.1, 0.01, 0.001};
    long max_iterations_per_step = 10000;
    std::optional<double> variance_target; // search mode
    double hypothetical_cp = 0.0;
};

struct OptimizerResult {
    double best_k = 0.0;
    double best_m = 0.0;
    double best_y = 0.0;
    double best_variance = 0.0; // real-space, per unit sensitivity
    long evaluations = 0;
    std::vector<std::pair<ShapeParams, double>> trace;
};

namespace detail {

// Real-space variance at the hypothetical Cp with unit sensitivity. Returns
// nullopt for infeasible or degenerate (zero Cp range) points.
inline std::optional<std::pair<PerturbationSpec, double>> eval_point(const ActivationKind &act, const BaseKind &base,
                                                                     double k, double m, double L, double epsilon,
                                                                     double cp) {
    try {
        PerturbationSpec spec = solve_normalization(act, base, k, m, L, epsilon);
        const auto [cp_min, cp_max] = cp_bounds(spec);
        if (!(cp_max > cp_min)) return std::nullopt;
        if (cp < cp_min || cp > cp_max) return std::nullopt;
        const double scale = (cp_max - cp_min); // C at unit sensitivity
        const double a = solve_activation_offset(spec, cp);
        const auto [var_c, var_r] = theoretical_variance(spec, a, cp, scale);
        return std::make_pair(std::move(spec), var_r);
    } catch (const Infeasible &) {
        return std::nullopt;
    }
}

} // namespace detail

// Enumeration (coarse-to-fine grid refinement): the first step scans the full
// range [0,1) x [0,2L]; each finer step re-scans a window of one previous
// step width around the incumbent. Deterministic: k ascending, then m
// ascending, first-found wins ties.
inline OptimizerResult optimize_enumeration(const ActivationKind &act, const BaseKind &base, double epsilon, double L,
                                            const OptimizerConfig &cfg = {}, bool keep_trace = false) {
    OptimizerResult res;
    bool found = false;
    double best_var = 0.0;
    double k0 = 0.0, k1 = 1.0, m0 = 0.0, m1 = 2.0 * L;
    double prev_step = 0.0;

    for (double w : cfg.steps) {
        if (found && prev_step > 0.0) {
            // Size the window so the step's evaluation budget is spent in
            // full: a square grid of ~T points centered on the incumbent.
            const long side = std::max<long>(3, static_cast<long>(std::sqrt(static_cast<double>(
                                                    std::max<long>(9, cfg.max_iterations_per_step)))));
            const double half = w * static_cast<double>((side - 1) / 2);
            k0 = std::max(0.0, res.best_k - half);
            k1 = std::min(1.0, res.best_k + half);
            m0 = std::max(0.0, res.best_m - half);
            m1 = std::min(2.0 * L, res.best_m + half);
        }
        long evals_this_step = 0;
        const long nk = static_cast<long>(std::floor((k1 - k0) / w + 1e-9));
        const long nm = static_cast<long>(std::floor((m1 - m0) / w + 1e-9));
        for (long i = 0; i <= nk && evals_this_step < cfg.max_iterations_per_step; ++i) {
            const double k = k0 + i * w;
            if (k >= 1.0) break;
            for (long j = 0; j <= nm && evals_this_step < cfg.max_iterations_per_step; ++j) {
                const double m = m0 + j * w;
                ++evals_this_step;
                ++res.evaluations;
                auto pt = detail::eval_point(act, base, k, m, L, epsilon, cfg.hypothetical_cp);
                if (!pt) continue;
                if (keep_trace) res.trace.emplace_back(pt->first.params, pt->second);
                if (!found || pt->second < best_var) {
                    found = true;
                    best_var = pt->second;
                    res.best_k = k;
                    res.best_m = m;
                    res.best_y = pt->first.params.y;
                }
            }
        }
        prev_step = w;
    }
    if (!found) {
        throw InfeasibleRegion("no feasible (k, m) grid point for eps=" + std::to_string(epsilon));
    }
    res.best_variance = best_var;
    return res;
}

// Threshold search: random feasible init, random w-sized coordinate steps,
// accept improvements, stop as soon as the variance target is met.
inline OptimizerResult optimize_search(const ActivationKind &act, const BaseKind &base, double epsilon, double L,
                                       double step, double variance_target, std::uint64_t seed = 1,
                                       double hypothetical_cp = 0.0, long iteration_cap = 1000000) {
    if (!(variance_target > 0.0)) {
        throw TargetUnreachable("variance target must be positive: variance is strictly positive at finite eps");
    }
    UniformStream rng(seed);

    OptimizerResult res;
    bool found = false;
    double best_var = 0.0;
    for (int tries = 0; tries < 10000 && !found; ++tries) {
        const double k = rng.next();
        const double m = rng.next() * 2.0 * L;
        ++res.evaluations;
        if (auto pt = detail::eval_point(act, base, k, m, L, epsilon, hypothetical_cp)) {
            found = true;
            best_var = pt->second;
            res.best_k = k;
            res.best_m = m;
            res.best_y = pt->first.params.y;
        }
    }
    if (!found) {
        throw InfeasibleRegion("no feasible random start for eps=" + std::to_string(epsilon));
    }

    long iters = 0;
    while (best_var >= variance_target) {
        if (++iters > iteration_cap) {
            throw TargetUnreachable("variance target " + std::to_string(variance_target) +
                                    " not reached after iteration cap");
        }
        const double dk = (rng.next() * 2.0 - 1.0) * step;
        const double dm = (rng.next() * 2.0 - 1.0) * step;
        const double k = std::clamp(res.best_k + dk, 0.0, std::nextafter(1.0, 0.0));
        const double m = std::clamp(res.best_m + dm, 0.0, 2.0 * L);
        ++res.evaluations;
        auto pt = detail::eval_point(act, base, k, m, L, epsilon, hypothetical_cp);
        if (pt && pt->second < best_var) {
            best_var = pt->second;
            res.best_k = k;
            res.best_m = m;
            res.best_y = pt->first.params.y;
        }
    }
    res.best_variance = best_var;
    return res;
}

} // namespace compositedp
