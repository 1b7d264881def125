#pragma once

#include <cmath>
#include <optional>

#include "compositedp/errors.hpp"

namespace compositedp {

// Privacy budget and query sensitivity. delta is only consumed by the
// Gaussian-family baselines.
struct PrivacyParams {
    double epsilon;
    double sensitivity;
    std::optional<double> delta;

    PrivacyParams(double eps, double sens, std::optional<double> d = std::nullopt)
        : epsilon(eps), sensitivity(sens), delta(d) {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
            throw NonPositiveEpsilon("epsilon must be a positive finite real, got " + std::to_string(eps));
        }
        if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
            throw NonPositiveSensitivity("sensitivity must be a positive finite real, got " + std::to_string(sens));
        }
        if (delta && !(*delta > 0.0 && *delta < 1.0)) {
            throw DeltaOutOfRange("delta must lie in (0,1), got " + std::to_string(*delta));
        }
    }
};

inline PrivacyParams validate_privacy_params(const PrivacyParams &p) {
    // Construction already enforces the invariants; revalidate so callers can
    // pass structs that were memcpy'd or deserialized around the constructor.
    return PrivacyParams(p.epsilon, p.sensitivity, p.delta);
}

// Real-space output range [lower, upper].
struct OutputBounds {
    double lower;
    double upper;

    OutputBounds(double l, double u) : lower(l), upper(u) {
        if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
            throw OutOfBounds("output bounds require lower < upper, got [" + std::to_string(l) + ", " +
                              std::to_string(u) + "]");
        }
    }

    double width() const { return upper - lower; }
};

// Canonical domain [-L, L] and the scale factor C = (Cp_max - Cp_min) / sensitivity
// linking it to real space.
struct CanonicalDomain {
    double half_width; // L
    double scale;      // C

    CanonicalDomain(double L, double C) : half_width(L), scale(C) {
        if (!(half_width > 0.0) || !std::isfinite(half_width)) {
            throw OutOfBounds("canonical half-width L must be positive, got " + std::to_string(L));
        }
        if (!(scale > 0.0) || !std::isfinite(scale)) {
            throw DegenerateInputRange("scale factor C must be positive, got " + std::to_string(C));
        }
    }
};

// Hyper-parameters of one concrete perturbation density.
//   k: activation height in [0,1)
//   m: activation width, 0 <= m <= 2L
//   y: base height (derived from normalization)
//   t: edge value of the quartic base, (y+k)/e^eps; unused by constant bases
//   L: canonical half-width
// The activation offset `a` is derived per input and lives outside this struct.
struct ShapeParams {
    double k;
    double m;
    double y;
    double t;
    double L;

    ShapeParams(double k_, double m_, double y_, double t_, double L_) : k(k_), m(m_), y(y_), t(t_), L(L_) {
        if (!(k >= 0.0 && k < 1.0)) {
            throw Infeasible(Infeasible::Constraint::HeightCap, "k must lie in [0,1), got " + std::to_string(k));
        }
        if (!(m >= 0.0)) {
            throw Infeasible(Infeasible::Constraint::ActivationWidth, "m must be nonnegative, got " + std::to_string(m));
        }
        if (!(L > 0.0)) {
            throw Infeasible(Infeasible::Constraint::ActivationWidth, "L must be positive, got " + std::to_string(L));
        }
        if (m > 2.0 * L) {
            throw Infeasible(Infeasible::Constraint::ActivationWidth,
                             "activation width m exceeds the domain: m=" + std::to_string(m) + ", 2L=" +
                                 std::to_string(2.0 * L));
        }
        if (!(y > 0.0)) {
            throw Infeasible(Infeasible::Constraint::NonPositiveBase, "base height y must be positive, got " +
                                                                          std::to_string(y));
        }
    }
};

// A query result mapped into the canonical domain, together with the
// representable range induced by the activation support constraint.
struct MappedInput {
    double cp;
    double cp_min;
    double cp_max;

    MappedInput(double v, double lo, double hi) : cp(v), cp_min(lo), cp_max(hi) {
        if (!(cp_min <= cp && cp <= cp_max)) {
            throw CpOutOfRange("Cp=" + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
        }
    }
};

} // namespace compositedp
