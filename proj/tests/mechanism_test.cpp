#include <gtest/gtest.h>

#include <cmath>

#include "compositedp/mechanism.hpp"

using namespace compositedp;

TEST(Mechanism, BoundLinkAndScale) {
    const PrivacyParams p(1.0, 1.0);
    const auto mech = CompositeMechanism::build(p, ActivationKind::a1(), BaseKind::b1(), 0.0, 1.0);
    const auto [cp_min, cp_max] = mech.cp_range();
    const double width = 2.0 * 1.0 * p.sensitivity / (cp_max - cp_min);
    EXPECT_NEAR(mech.bounds().upper, width, 1e-12);
    EXPECT_NEAR(mech.domain().scale, (cp_max - cp_min) / p.sensitivity, 1e-15);
    EXPECT_DOUBLE_EQ(mech.bounds().lower, 0.0);
    // unbiased inputs occupy a sensitivity-wide band centered in [l, u]
    const auto in = mech.input_range();
    EXPECT_NEAR(in.second - in.first, p.sensitivity, 1e-10);
    EXPECT_NEAR(0.5 * (in.first + in.second), 0.5 * mech.bounds().width(), 1e-10);
}

TEST(Mechanism, FromSpecMatchesManualSolve) {
    const auto spec = solve_normalization(ActivationKind::a1(), BaseKind::b1(), 0.4, 0.5, 1.0, 1.0);
    const PrivacyParams p(1.0, 2.0);
    const auto mech = CompositeMechanism::from_spec(spec, p, -5.0);
    // cp range is [-0.15, 0.15]; width = 2 L sens / 0.3 = 13.333...
    EXPECT_NEAR(mech.bounds().upper, -5.0 + 2.0 * 2.0 / 0.3, 1e-10);
    const auto [lo, hi] = mech.cp_range();
    EXPECT_NEAR(lo, -0.15, 1e-14);
    EXPECT_NEAR(hi, 0.15, 1e-14);
}

TEST(Mechanism, OutputsStayInsideBounds) {
    const PrivacyParams p(0.5, 1.0);
    const auto mech = CompositeMechanism::build(p, ActivationKind::a2(), BaseKind::b2(), 10.0, 1.0);
    const auto &b = mech.bounds();
    const auto [in_lo, in_hi] = mech.input_range();
    UniformStream stream(61);
    for (double frac : {0.0, 0.17, 0.5, 0.83, 1.0}) {
        const double raw = in_lo + frac * (in_hi - in_lo);
        const auto cdf = mech.cdf_for(raw);
        for (int i = 0; i < 20000; ++i) {
            const double out = mech.publish_from(cdf, stream);
            ASSERT_GE(out, b.lower);
            ASSERT_LE(out, b.upper);
        }
    }
}

TEST(Mechanism, UnbiasedAtEveryRawAnswer) {
    const PrivacyParams p(1.0, 1.0);
    const auto mech = CompositeMechanism::build(p, ActivationKind::a1(), BaseKind::b1(), 0.0, 1.0);
    const auto [in_lo, in_hi] = mech.input_range();
    UniformStream stream(67);
    const int n = 200000;
    for (double frac : {0.1, 0.5, 0.9}) {
        const double raw = in_lo + frac * (in_hi - in_lo);
        const auto cdf = mech.cdf_for(raw);
        const double sd_real = std::sqrt(mech.report_at(raw).variance_real);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += mech.publish_from(cdf, stream);
        EXPECT_NEAR(sum / n, raw, 4.0 * sd_real / std::sqrt(static_cast<double>(n))) << "raw=" << raw;
    }
}

TEST(Mechanism, ReportVarianceMatchesEmpirical) {
    const PrivacyParams p(1.0, 1.0);
    const auto mech = CompositeMechanism::build(p, ActivationKind::a3(), BaseKind::b1(), -3.0, 1.0);
    const auto [in_lo, in_hi] = mech.input_range();
    const double raw = 0.25 * in_lo + 0.75 * in_hi;
    const auto rep = mech.report_at(raw);
    const auto cdf = mech.cdf_for(raw);
    UniformStream stream(71);
    const int n = 400000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = mech.publish_from(cdf, stream);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    EXPECT_NEAR(var, rep.variance_real, 0.02 * rep.variance_real);
}

TEST(Mechanism, PublishRejectsOutOfRangeRaw) {
    const PrivacyParams p(1.0, 1.0);
    const auto mech = CompositeMechanism::build(p, ActivationKind::a1(), BaseKind::b1(), 0.0, 1.0);
    UniformStream stream(73);
    EXPECT_THROW(mech.publish(mech.bounds().upper + 1.0, stream), OutOfBounds);
    EXPECT_THROW(mech.publish(mech.bounds().lower - 1.0, stream), OutOfBounds);
    // inside [l, u] but beyond the unbiased input band: no mean fit exists
    EXPECT_THROW(mech.publish(mech.bounds().upper, stream), CpOutOfRange);
}

TEST(Mechanism, DeterministicReplay) {
    const PrivacyParams p(1.0, 1.0);
    const auto mech = CompositeMechanism::build(p, ActivationKind::a1(), BaseKind::b2(), 0.0, 1.0);
    const auto [in_lo, in_hi] = mech.input_range();
    const double raw = 0.4 * in_lo + 0.6 * in_hi;
    UniformStream s1(99), s2(99);
    for (int i = 0; i < 500; ++i) {
        EXPECT_EQ(mech.publish(raw, s1), mech.publish(raw, s2));
    }
}

TEST(Mechanism, EpsilonProbeWithinBound) {
    const PrivacyParams p(1.0, 1.0);
    const auto mech = CompositeMechanism::build(p, ActivationKind::a1(), BaseKind::b1(), 0.0, 1.0);
    const auto [lo, hi] = mech.cp_range();
    // adjacent datasets map to canonical answers cp and cp + C * sensitivity;
    // at unit sensitivity that is the full representable span
    const auto probe = empirical_epsilon_probe(mech.spec(), lo, hi, 32, 300000, 12345);
    EXPECT_LE(probe.epsilon_hat, p.epsilon + 3.0 * probe.band);
}
