#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "compositedp/core.hpp"
#include "compositedp/errors.hpp"
#include "compositedp/random.hpp"

namespace compositedp {

// Reference mechanisms for the benchmark. All draw from an injected uniform
// stream; none of them bound their output (that contrast is the point),
// except the truncated discrete Laplace which renormalizes onto [-B, B] and
// is knowingly biased off-center.

// Lap(b) with b = sensitivity / epsilon, via inverse CDF.
inline double laplace_noise(const PrivacyParams &p, UniformStream &stream) {
    const double b = p.sensitivity / p.epsilon;
    const double u = stream.next() - 0.5;
    const double sign = u < 0.0 ? -1.0 : 1.0;
    return -b * sign * std::log(1.0 - 2.0 * std::fabs(u));
}

inline double gaussian_sigma(const PrivacyParams &p) {
    if (!p.delta) {
        throw MissingDelta("the Gaussian baseline requires delta");
    }
    return std::sqrt(2.0 * std::log(1.25 / *p.delta)) * p.sensitivity / p.epsilon;
}

// N(0, sigma^2) with sigma = sqrt(2 ln(1.25/delta)) * sensitivity / epsilon.
// Box-Muller from two uniforms; the cosine twin is discarded to keep the
// stream contract one-draw-per-call-count deterministic.
inline double gaussian_noise(const PrivacyParams &p, UniformStream &stream) {
    const double sigma = gaussian_sigma(p);
    double u1 = stream.next();
    const double u2 = stream.next();
    if (u1 <= 0.0) u1 = 5e-324;
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Discrete Laplace: Pr[X = z] = (1-alpha)/(1+alpha) * alpha^{|z|} with
// alpha = exp(-epsilon / sensitivity). Inverse CDF in closed form.
inline long discrete_laplace_noise(const PrivacyParams &p, UniformStream &stream) {
    const double alpha = std::exp(-p.epsilon / p.sensitivity);
    const double u = stream.next();
    // CDF: F(z) = alpha^{-z} / (1+alpha) for z < 0; F(z) = 1 - alpha^{z+1}/(1+alpha) for z >= 0.
    if (u < 1.0 / (1.0 + alpha)) {
        // nonpositive side: F(z) = alpha^{-z}/(1+alpha)
        const double q = std::log(u * (1.0 + alpha)) / std::log(alpha);
        return -static_cast<long>(std::floor(q + 1e-12));
    }
    const double z = std::log((1.0 - u) * (1.0 + alpha)) / std::log(alpha) - 1.0;
    return static_cast<long>(std::ceil(z - 1e-12));
}

// Discrete Gaussian: Pr[X = z] proportional to exp(-z^2 / (2 sigma^2)) with
// the continuous baseline's sigma. Sampled by inverse CDF over a +-12 sigma
// table; this benchmark does not need the exact-arithmetic variants.
inline long discrete_gaussian_noise(const PrivacyParams &p, UniformStream &stream) {
    const double sigma = gaussian_sigma(p);
    const long span = std::max<long>(1, static_cast<long>(std::ceil(12.0 * sigma)));
    const double u = stream.next();
    double total = 0.0;
    for (long z = -span; z <= span; ++z) total += std::exp(-0.5 * z * z / (sigma * sigma));
    double acc = 0.0;
    for (long z = -span; z <= span; ++z) {
        acc += std::exp(-0.5 * z * z / (sigma * sigma)) / total;
        if (u < acc) return z;
    }
    return span;
}

// Discrete Laplace conditioned on [-B, B]. B defaults to ceil((u - l)/2) in
// query units around the true answer; callers pass it directly.
inline long truncated_discrete_laplace_noise(const PrivacyParams &p, long bound, UniformStream &stream) {
    const double alpha = std::exp(-p.epsilon / p.sensitivity);
    const double u = stream.next();
    double total = 0.0;
    for (long z = -bound; z <= bound; ++z) total += std::pow(alpha, std::fabs(static_cast<double>(z)));
    double acc = 0.0;
    for (long z = -bound; z <= bound; ++z) {
        acc += std::pow(alpha, std::fabs(static_cast<double>(z))) / total;
        if (u < acc) return z;
    }
    return bound;
}

} // namespace compositedp
