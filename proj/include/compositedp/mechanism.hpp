#pragma once

#include <cmath>
#include <utility>

#include "compositedp/analysis.hpp"
#include "compositedp/cdf.hpp"
#include "compositedp/core.hpp"
#include "compositedp/mapping.hpp"
#include "compositedp/optimizer.hpp"
#include "compositedp/shape.hpp"

namespace compositedp {

// End-to-end composite mechanism: configure -> optimize -> map -> perturb ->
// inverse-map -> publish. The optimizer runs once at build time; publishing
// never re-optimizes.
class CompositeMechanism {
public:
    static CompositeMechanism build(const PrivacyParams &privacy, const ActivationKind &act, const BaseKind &base,
                                    double lower, double half_width, const OptimizerConfig &cfg = {}) {
        const OptimizerResult opt = optimize_enumeration(act, base, privacy.epsilon, half_width, cfg);
        PerturbationSpec spec = solve_normalization(act, base, opt.best_k, opt.best_m, half_width, privacy.epsilon);
        const auto [cp_min, cp_max] = cp_bounds(spec);
        const double upper = link_upper_bound(lower, half_width, cp_min, cp_max, privacy.sensitivity);
        const double scale = scale_factor(cp_min, cp_max, privacy.sensitivity);
        certify_dp(spec);
        return CompositeMechanism(std::move(spec), OutputBounds(lower, upper),
                                  CanonicalDomain(half_width, scale), privacy, cp_min, cp_max);
    }

    // Build around user-chosen shape parameters instead of the optimizer.
    static CompositeMechanism from_spec(PerturbationSpec spec, const PrivacyParams &privacy, double lower) {
        const auto [cp_min, cp_max] = cp_bounds(spec);
        const double upper = link_upper_bound(lower, spec.params.L, cp_min, cp_max, privacy.sensitivity);
        const double scale = scale_factor(cp_min, cp_max, privacy.sensitivity);
        certify_dp(spec);
        const double L = spec.params.L;
        return CompositeMechanism(std::move(spec), OutputBounds(lower, upper), CanonicalDomain(L, scale), privacy,
                                  cp_min, cp_max);
    }

    const PerturbationSpec &spec() const { return spec_; }
    const OutputBounds &bounds() const { return bounds_; }
    const CanonicalDomain &domain() const { return domain_; }
    const PrivacyParams &privacy() const { return privacy_; }
    std::pair<double, double> cp_range() const { return {cp_min_, cp_max_}; }

    // Raw answers the mechanism can publish without bias: the preimage of
    // [Cp_min, Cp_max], a sensitivity-wide sub-interval centered in [l, u].
    // Outputs still range over all of [l, u].
    std::pair<double, double> input_range() const {
        return {map_from_canonical(cp_min_, bounds_, domain_), map_from_canonical(cp_max_, bounds_, domain_)};
    }

    // Publish one perturbed answer for a raw query result in [l, u].
    double publish(double raw, UniformStream &stream) const {
        const double cp = map_to_canonical(raw, bounds_, domain_);
        const double a = solve_activation_offset(spec_, cp);
        const PiecewiseCdf cdf(spec_, a);
        return map_from_canonical(cdf.inverse(stream.next()), bounds_, domain_);
    }

    // Reusable inverse CDF for repeated publishes of the same raw answer.
    PiecewiseCdf cdf_for(double raw) const {
        const double cp = map_to_canonical(raw, bounds_, domain_);
        return PiecewiseCdf(spec_, solve_activation_offset(spec_, cp));
    }

    double publish_from(const PiecewiseCdf &cdf, UniformStream &stream) const {
        return map_from_canonical(cdf.inverse(stream.next()), bounds_, domain_);
    }

    UtilityReport report_at(double raw) const {
        const double cp = map_to_canonical(raw, bounds_, domain_);
        const double a = solve_activation_offset(spec_, cp);
        return utility_report(spec_, a, cp, domain_.scale);
    }

private:
    CompositeMechanism(PerturbationSpec spec, OutputBounds bounds, CanonicalDomain domain, PrivacyParams privacy,
                       double cp_min, double cp_max)
        : spec_(std::move(spec)), bounds_(bounds), domain_(domain), privacy_(privacy), cp_min_(cp_min),
          cp_max_(cp_max) {}

    PerturbationSpec spec_;
    OutputBounds bounds_;
    CanonicalDomain domain_;
    PrivacyParams privacy_;
    double cp_min_;
    double cp_max_;
};

} // namespace compositedp
