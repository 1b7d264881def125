#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "compositedp/cdf.hpp"
#include "compositedp/errors.hpp"
#include "compositedp/quadrature.hpp"
#include "compositedp/random.hpp"
#include "compositedp/shape.hpp"

namespace compositedp {

struct UtilityReport {
    double variance_canonical;
    double variance_real; // variance_canonical / C^2
    double h1_rate;
    double h2_rate;
    double dp_ratio;
    double bias_abs; // |E - Cp| from quadrature
};

// Theoretical variance: E(x^2) - Cp^2 in the canonical domain, divided by C^2
// in real space. Closed-form piecewise second moments; the quadrature oracle
// lives in the tests.
inline std::pair<double, double> theoretical_variance(const PerturbationSpec &spec, double offset, double cp,
                                                      double scale) {
    const auto &p = spec.params;
    const double base_m2 = spec.base.second_moment(p.y, p.t, p.L);
    // activation second moment about 0: M2_edge + 2a M1_edge + a^2 M0
    const double m0 = spec.activation.mass(p.k, p.m);
    const double m1_edge = m0 * spec.activation.centroid(p.k, p.m);
    const double m2_edge = spec.activation.second_moment_edge(p.k, p.m);
    const double act_m2 = m2_edge + 2.0 * offset * m1_edge + offset * offset * m0;
    const double var_canonical = base_m2 + act_m2 - cp * cp;
    return {var_canonical, var_canonical / (scale * scale)};
}

inline double h1_rate(const PerturbationSpec &spec) {
    const double s1 = spec.s1();
    if (s1 <= 0.0) {
        throw ZeroActivationMass("H1Rate undefined: activation integral is zero");
    }
    return spec.s2() / s1;
}

// Near/far area ratio around Cp with quartile split points. The integration
// points may fall outside the support for extreme Cp; the mass truncates at
// the boundary (density is zero beyond).
inline double h2_rate(const PerturbationSpec &spec, double offset, double cp, double n1 = 0.25, double n2 = 0.75) {
    const double L = spec.params.L;
    const PiecewiseCdf cdf(spec, offset);
    double q1, q2;
    if (cp >= 0.0) {
        q1 = cp - n1 * (L + cp);
        q2 = cp - n2 * (L + cp);
    } else {
        q1 = cp + n1 * (L - cp);
        q2 = cp + n2 * (L - cp);
    }
    const double near = cdf.mass_between(q1, cp);
    const double far = cdf.mass_between(q2, cp);
    return near / far;
}

// Analytic sup/inf certification of the DP ratio. B1: (y+k)/y. B2: (y+k)/t,
// which is e^eps exactly by construction of t. Custom shapes fall back to a
// grid search over offsets and evaluation points.
inline double certify_dp(const PerturbationSpec &spec) {
    const auto &p = spec.params;
    double sup_p, inf_p;
    double sup_x = 0.0, inf_x = p.L;
    if (spec.activation.family() != ActivationFamily::Custom && spec.base.family() != BaseFamily::Custom) {
        sup_p = p.y + p.k;
        inf_p = spec.base.infimum(p.y, p.t, p.L);
    } else {
        sup_p = 0.0;
        inf_p = spec.base.infimum(p.y, p.t, p.L);
        const int na = 64, nx = 2048;
        for (int i = 0; i <= na; ++i) {
            const double a = -p.L + (2.0 * p.L - p.m) * i / na;
            for (int j = 0; j <= nx; ++j) {
                const double x = -p.L + 2.0 * p.L * j / nx;
                const double v = density(spec, a, x);
                if (v > sup_p) {
                    sup_p = v;
                    sup_x = x;
                }
                if (v < inf_p) {
                    inf_p = v;
                    inf_x = x;
                }
            }
        }
    }
    if (!(inf_p > 0.0)) {
        throw CertificationFailed("density infimum is not positive", sup_x, inf_x);
    }
    const double ratio = sup_p / inf_p;
    if (ratio > std::exp(spec.epsilon) * (1.0 + 1e-9)) {
        throw CertificationFailed("sup/inf ratio " + std::to_string(ratio) + " exceeds e^eps for eps=" +
                                      std::to_string(spec.epsilon),
                                  sup_x, inf_x);
    }
    return ratio;
}

struct EpsilonProbeResult {
    double epsilon_hat;
    double band; // one-sided Monte-Carlo band at the argmax bin
    int argmax_bin;
};

// Empirical witness of the epsilon-DP bound: histogram the outputs of the
// densities at Cp1 and Cp2 and take the max absolute log ratio of the
// smoothed bin frequencies. Diagnostic only, never a proof.
inline EpsilonProbeResult empirical_epsilon_probe(const PerturbationSpec &spec, double cp1, double cp2, int bins,
                                                  long n_samples, std::uint64_t seed) {
    const double L = spec.params.L;
    const PiecewiseCdf cdf1(spec, solve_activation_offset(spec, cp1));
    const PiecewiseCdf cdf2(spec, solve_activation_offset(spec, cp2));
    std::vector<long> h1(bins, 0), h2(bins, 0);
    UniformStream s1(seed);
    UniformStream s2(seed ^ 0x9e3779b97f4a7c15ULL);
    for (long i = 0; i < n_samples; ++i) {
        const double x1 = cdf1.inverse(s1.next());
        const double x2 = cdf2.inverse(s2.next());
        int b1 = std::min(bins - 1, static_cast<int>((x1 + L) / (2.0 * L) * bins));
        int b2 = std::min(bins - 1, static_cast<int>((x2 + L) / (2.0 * L) * bins));
        ++h1[std::max(0, b1)];
        ++h2[std::max(0, b2)];
    }
    double best = 0.0;
    int best_bin = 0;
    for (int b = 0; b < bins; ++b) {
        const double p1 = (h1[b] + 1.0) / (n_samples + bins);
        const double p2 = (h2[b] + 1.0) / (n_samples + bins);
        const double r = std::fabs(std::log(p1 / p2));
        if (r > best) {
            best = r;
            best_bin = b;
        }
    }
    const double band = std::sqrt(1.0 / (h1[best_bin] + 1.0) + 1.0 / (h2[best_bin] + 1.0));
    return {best, band, best_bin};
}

inline UtilityReport utility_report(const PerturbationSpec &spec, double offset, double cp, double scale) {
    const auto [var_c, var_r] = theoretical_variance(spec, offset, cp, scale);
    const double mean = [&] {
        const auto &p = spec.params;
        const double m0 = spec.activation.mass(p.k, p.m);
        return m0 * (offset + spec.activation.centroid(p.k, p.m));
    }();
    return UtilityReport{var_c,
                         var_r,
                         spec.s1() > 0.0 ? h1_rate(spec) : std::numeric_limits<double>::infinity(),
                         h2_rate(spec, offset, cp),
                         certify_dp(spec),
                         std::fabs(mean - cp)};
}

} // namespace compositedp
