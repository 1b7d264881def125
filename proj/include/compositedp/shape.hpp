#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>

#include "compositedp/core.hpp"
#include "compositedp/errors.hpp"
#include "compositedp/quadrature.hpp"

namespace compositedp {

// ---------------------------------------------------------------------------
// Activation functions.
//
// An activation is a nonnegative bump of compact support [a, a+m] with peak
// height k. It is stored in offset-relative form h(u) for u in [0, m]; the
// density evaluates H(x) = h(x - a). Built-ins:
//   A1  rectangle      h(u) = k
//   A2  half sine      h(u) = k sin(pi u / m)
//   A3  triangle       h(u) = 2k/m * min(u, m-u)
// Custom activations supply a unit profile s : [0,1] -> [0,1] with sup 1;
// h(u) = k s(u/m). Moments fall back to quadrature.
// ---------------------------------------------------------------------------

enum class ActivationFamily { A1, A2, A3, Custom };

class ActivationKind {
public:
    static ActivationKind a1() { return ActivationKind(ActivationFamily::A1); }
    static ActivationKind a2() { return ActivationKind(ActivationFamily::A2); }
    static ActivationKind a3() { return ActivationKind(ActivationFamily::A3); }

    static ActivationKind custom(std::function<double(double)> unit_profile, bool symmetric) {
        ActivationKind k(ActivationFamily::Custom);
        k.profile_ = std::move(unit_profile);
        k.symmetric_ = symmetric;
        return k;
    }

    ActivationFamily family() const { return family_; }
    bool symmetric() const { return symmetric_; }

    // h(u) for u in [0, m]; zero outside.
    double value(double u, double k, double m) const {
        if (u < 0.0 || u > m || m == 0.0 || k == 0.0) return 0.0;
        switch (family_) {
        case ActivationFamily::A1:
            return k;
        case ActivationFamily::A2:
            return k * std::sin(std::numbers::pi * u / m);
        case ActivationFamily::A3:
            return 2.0 * k / m * std::min(u, m - u);
        case ActivationFamily::Custom:
            return k * profile_(u / m);
        }
        return 0.0;
    }

    // S1 = integral of h over [0, m].
    double mass(double k, double m) const {
        if (m == 0.0 || k == 0.0) return 0.0;
        switch (family_) {
        case ActivationFamily::A1:
            return k * m;
        case ActivationFamily::A2:
            return 2.0 * k * m / std::numbers::pi;
        case ActivationFamily::A3:
            return k * m / 2.0;
        case ActivationFamily::Custom:
            return k * m * integrate([this](double s) { return profile_(s); }, 0.0, 1.0, 1e-14);
        }
        return 0.0;
    }

    // Centroid of h measured from the left edge; m/2 for the symmetric built-ins.
    double centroid(double k, double m) const {
        if (family_ != ActivationFamily::Custom || symmetric_) return 0.5 * m;
        const double s1 = mass(k, m);
        if (s1 == 0.0) return 0.5 * m;
        const double m1 = k * m * m * integrate([this](double s) { return profile_(s) * s; }, 0.0, 1.0, 1e-14);
        return m1 / s1;
    }

    // Second moment of h about the left edge: integral of h(u) u^2 du.
    double second_moment_edge(double k, double m) const {
        const double pi = std::numbers::pi;
        switch (family_) {
        case ActivationFamily::A1:
            return k * m * m * m / 3.0;
        case ActivationFamily::A2:
            return k * m * m * m * (1.0 / pi - 4.0 / (pi * pi * pi));
        case ActivationFamily::A3:
            return 7.0 * k * m * m * m / 48.0;
        case ActivationFamily::Custom:
            return k * m * m * m * integrate([this](double s) { return profile_(s) * s * s; }, 0.0, 1.0, 1e-14);
        }
        return 0.0;
    }

    // Integral of h over [0, u] (cumulative mass from the left edge).
    double antiderivative(double u, double k, double m) const {
        if (u <= 0.0 || m == 0.0 || k == 0.0) return 0.0;
        if (u >= m) return mass(k, m);
        const double pi = std::numbers::pi;
        switch (family_) {
        case ActivationFamily::A1:
            return k * u;
        case ActivationFamily::A2:
            return k * m / pi * (1.0 - std::cos(pi * u / m));
        case ActivationFamily::A3:
            if (u <= 0.5 * m) return k / m * u * u;
            return 0.5 * k * m - k / m * (m - u) * (m - u);
        case ActivationFamily::Custom:
            return k * m * integrate([this](double s) { return profile_(s); }, 0.0, u / m, 1e-14);
        }
        return 0.0;
    }

    const char *name() const {
        switch (family_) {
        case ActivationFamily::A1: return "A1";
        case ActivationFamily::A2: return "A2";
        case ActivationFamily::A3: return "A3";
        case ActivationFamily::Custom: return "Acustom";
        }
        return "?";
    }

private:
    explicit ActivationKind(ActivationFamily f) : family_(f) {}

    ActivationFamily family_;
    std::function<double(double)> profile_;
    bool symmetric_ = true;
};

// ---------------------------------------------------------------------------
// Base functions. Strictly positive, even on [-L, L]. Built-ins:
//   B1  constant      G(x) = y
//   B2  quartic       G(x) = -((y-t)/L^4) x^4 + y, minimum t at the edges
// Custom bases supply an even unit profile s : [-1,1] -> (0, 1] with sup 1;
// G(x) = y s(x/L), so normalization stays linear in y.
// ---------------------------------------------------------------------------

enum class BaseFamily { B1, B2, Custom };

class BaseKind {
public:
    static BaseKind b1() { return BaseKind(BaseFamily::B1); }
    static BaseKind b2() { return BaseKind(BaseFamily::B2); }

    static BaseKind custom(std::function<double(double)> unit_profile) {
        BaseKind b(BaseFamily::Custom);
        b.profile_ = std::move(unit_profile);
        return b;
    }

    BaseFamily family() const { return family_; }

    double value(double x, double y, double t, double L) const {
        switch (family_) {
        case BaseFamily::B1:
            return y;
        case BaseFamily::B2: {
            const double r = x / L;
            return -(y - t) * r * r * r * r + y;
        }
        case BaseFamily::Custom:
            return y * profile_(x / L);
        }
        return 0.0;
    }

    // S2 = integral over [-L, L].
    double mass(double y, double t, double L) const {
        switch (family_) {
        case BaseFamily::B1:
            return 2.0 * y * L;
        case BaseFamily::B2:
            return 2.0 * L * (t - y) / 5.0 + 2.0 * L * y;
        case BaseFamily::Custom:
            return y * L * integrate([this](double s) { return profile_(s); }, -1.0, 1.0, 1e-14);
        }
        return 0.0;
    }

    // Mass per unit base height, for the normalization solve. Meaningless for
    // B2 (t couples to y); the solver special-cases that family.
    double unit_mass(double L) const {
        switch (family_) {
        case BaseFamily::B1:
            return 2.0 * L;
        case BaseFamily::Custom:
            return L * integrate([this](double s) { return profile_(s); }, -1.0, 1.0, 1e-14);
        default:
            return 0.0;
        }
    }

    double infimum(double y, double t, double L) const {
        switch (family_) {
        case BaseFamily::B1:
            return y;
        case BaseFamily::B2:
            return t;
        case BaseFamily::Custom: {
            double lo = y * profile_(1.0);
            const int n = 4096;
            for (int i = 0; i <= n; ++i) {
                lo = std::min(lo, y * profile_(-1.0 + 2.0 * i / n));
            }
            return lo;
        }
        }
        return 0.0;
    }

    // Integral of G(x) x^2 over [-L, L].
    double second_moment(double y, double t, double L) const {
        switch (family_) {
        case BaseFamily::B1:
            return 2.0 * y * L * L * L / 3.0;
        case BaseFamily::B2:
            return 2.0 * y * L * L * L / 3.0 - 2.0 * (y - t) * L * L * L / 7.0;
        case BaseFamily::Custom:
            return y * L * L * L * integrate([this](double s) { return profile_(s) * s * s; }, -1.0, 1.0, 1e-14);
        }
        return 0.0;
    }

    // Integral of G over [-L, x].
    double antiderivative(double x, double y, double t, double L) const {
        switch (family_) {
        case BaseFamily::B1:
            return y * (x + L);
        case BaseFamily::B2: {
            const double q = x / L;
            // antiderivative of -(y-t) r^4 + y in r, scaled by L
            return L * (-(y - t) / 5.0 * (q * q * q * q * q + 1.0) + y * (q + 1.0));
        }
        case BaseFamily::Custom:
            return y * L * integrate([this](double s) { return profile_(s); }, -1.0, x / L, 1e-14);
        }
        return 0.0;
    }

    const char *name() const {
        switch (family_) {
        case BaseFamily::B1: return "B1";
        case BaseFamily::B2: return "B2";
        case BaseFamily::Custom: return "Bcustom";
        }
        return "?";
    }

private:
    explicit BaseKind(BaseFamily f) : family_(f) {}

    BaseFamily family_;
    std::function<double(double)> profile_;
};

inline double activation_integral(const ActivationKind &kind, double k, double m) { return kind.mass(k, m); }

inline double base_integral(const BaseKind &kind, double y, double t, double L) { return kind.mass(y, t, L); }

// ---------------------------------------------------------------------------
// PerturbationSpec: a fully solved density shape. Construct via
// solve_normalization, which derives y (and t) from S1 + S2 = 1 and verifies
// the feasibility constraints: y > 0, y + k <= 1, the DP ratio, and t <= y
// for quartic bases.
// ---------------------------------------------------------------------------

struct PerturbationSpec {
    ActivationKind activation;
    BaseKind base;
    ShapeParams params;
    double epsilon;

    double s1() const { return activation.mass(params.k, params.m); }
    double s2() const { return base.mass(params.y, params.t, params.L); }

    std::string name() const { return std::string(activation.name()) + base.name(); }
};

inline PerturbationSpec solve_normalization(const ActivationKind &act, const BaseKind &base, double k, double m,
                                            double L, double epsilon) {
    if (!(epsilon > 0.0)) throw NonPositiveEpsilon("epsilon must be positive");
    if (!(k >= 0.0 && k < 1.0))
        throw Infeasible(Infeasible::Constraint::HeightCap, "k must lie in [0,1), got " + std::to_string(k));
    if (!(m >= 0.0 && m <= 2.0 * L))
        throw Infeasible(Infeasible::Constraint::ActivationWidth, "m must lie in [0, 2L], got " + std::to_string(m));

    const double s1 = act.mass(k, m);
    double y = 0.0;
    double t = 0.0;
    if (base.family() == BaseFamily::B2) {
        // S1 + (2L/5)((y+k)e^{-eps} - y) + 2Ly = 1, linear in y.
        const double e = std::exp(-epsilon);
        const double denom = 2.0 * L * (4.0 / 5.0 + e / 5.0);
        y = (1.0 - s1 - 2.0 * L * k * e / 5.0) / denom;
        t = (y + k) * e;
    } else {
        const double um = base.unit_mass(L);
        y = (1.0 - s1) / um;
    }

    if (!(y > 0.0)) {
        throw Infeasible(Infeasible::Constraint::Normalization,
                         "normalization yields nonpositive base height y=" + std::to_string(y));
    }
    if (y + k > 1.0 + 1e-12) {
        throw Infeasible(Infeasible::Constraint::HeightCap,
                         "density peak y+k=" + std::to_string(y + k) + " exceeds 1");
    }
    const double inf_g = base.infimum(y, t, L);
    if (!(inf_g > 0.0)) {
        throw Infeasible(Infeasible::Constraint::NonPositiveBase, "base infimum is not positive");
    }
    if ((y + k) / inf_g > std::exp(epsilon) * (1.0 + 1e-9)) {
        throw Infeasible(Infeasible::Constraint::DpRatio, "sup/inf ratio " + std::to_string((y + k) / inf_g) +
                                                              " exceeds e^eps at eps=" + std::to_string(epsilon));
    }
    if (base.family() == BaseFamily::B2 && t > y + 1e-12) {
        throw Infeasible(Infeasible::Constraint::EdgeBelowBase,
                         "quartic edge value t=" + std::to_string(t) + " exceeds y=" + std::to_string(y));
    }

    return PerturbationSpec{act, base, ShapeParams(k, m, y, t, L), epsilon};
}

// Representable input range induced by requiring the activation support to
// stay inside [-L, L].
inline std::pair<double, double> cp_bounds(const PerturbationSpec &spec) {
    const double s1 = spec.s1();
    if (s1 == 0.0) return {0.0, 0.0};
    const double L = spec.params.L;
    const double m = spec.params.m;
    const double mu = spec.activation.centroid(spec.params.k, spec.params.m);
    return {s1 * (-L + mu), s1 * (L - m + mu)};
}

// Offset a such that the density's mean equals Cp. The base is even, so the
// mean is entirely the activation's first moment, S1 * (a + centroid).
inline double solve_activation_offset(const PerturbationSpec &spec, double cp) {
    const auto [cp_min, cp_max] = cp_bounds(spec);
    const double span = std::max(cp_max - cp_min, 1e-30);
    if (cp < cp_min - 1e-12 * span || cp > cp_max + 1e-12 * span) {
        throw CpOutOfRange("Cp=" + std::to_string(cp) + " outside [" + std::to_string(cp_min) + ", " +
                           std::to_string(cp_max) + "]");
    }
    cp = std::clamp(cp, cp_min, cp_max);

    const double s1 = spec.s1();
    const double L = spec.params.L;
    const double m = spec.params.m;
    if (s1 == 0.0) return -0.5 * m; // pure base, only Cp=0 representable

    double a;
    if (spec.activation.family() != ActivationFamily::Custom || spec.activation.symmetric()) {
        a = cp / s1 - spec.activation.centroid(spec.params.k, spec.params.m);
    } else {
        // Mean is linear (hence monotone) in a; bracket over the full range.
        const double k = spec.params.k;
        auto mean_minus_cp = [&](double av) {
            return s1 * (av + spec.activation.centroid(k, m)) - cp;
        };
        a = bisect(mean_minus_cp, -L, L - m, 1e-12 * std::max(1.0, std::fabs(cp)));
    }
    return std::clamp(a, -L, L - m);
}

// P(x) = H(x - a) + G(x) on [-L, L]; zero outside.
inline double density(const PerturbationSpec &spec, double a, double x) {
    const double L = spec.params.L;
    if (x < -L || x > L) return 0.0;
    return spec.base.value(x, spec.params.y, spec.params.t, L) +
           spec.activation.value(x - a, spec.params.k, spec.params.m);
}

} // namespace compositedp
