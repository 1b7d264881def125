#include <gtest/gtest.h>

#include <random>

#include "compositedp/core.hpp"

using namespace compositedp;

TEST(PrivacyParams, AcceptsValid) {
    const PrivacyParams p = validate_privacy_params(PrivacyParams(1.0, 1.0));
    EXPECT_EQ(p.epsilon, 1.0);
    EXPECT_EQ(p.sensitivity, 1.0);
    EXPECT_FALSE(p.delta.has_value());
}

TEST(PrivacyParams, RejectsZeroEpsilon) {
    EXPECT_THROW(PrivacyParams(0.0, 1.0), NonPositiveEpsilon);
    EXPECT_THROW(PrivacyParams(-1.0, 1.0), NonPositiveEpsilon);
}

TEST(PrivacyParams, RejectsBadSensitivity) {
    EXPECT_THROW(PrivacyParams(1.0, 0.0), NonPositiveSensitivity);
}

TEST(PrivacyParams, RejectsDeltaOutOfRange) {
    EXPECT_THROW(PrivacyParams(1.0, 1.0, 1.5), DeltaOutOfRange);
    EXPECT_THROW(PrivacyParams(1.0, 1.0, 0.0), DeltaOutOfRange);
    EXPECT_THROW(PrivacyParams(1.0, 1.0, 1.0), DeltaOutOfRange);
    EXPECT_NO_THROW(PrivacyParams(1.0, 1.0, 1e-5));
}

TEST(OutputBounds, RequiresOrdering) {
    EXPECT_NO_THROW(OutputBounds(0.0, 1.0));
    EXPECT_THROW(OutputBounds(1.0, 1.0), OutOfBounds);
    EXPECT_THROW(OutputBounds(2.0, 1.0), OutOfBounds);
}

TEST(ShapeParams, EnforcesRanges) {
    EXPECT_NO_THROW(ShapeParams(0.4, 0.5, 0.4, 0.0, 1.0));
    EXPECT_THROW(ShapeParams(1.0, 0.5, 0.4, 0.0, 1.0), Infeasible);   // k out of [0,1)
    EXPECT_THROW(ShapeParams(0.4, -0.1, 0.4, 0.0, 1.0), Infeasible);  // negative width
    EXPECT_THROW(ShapeParams(0.4, 2.5, 0.4, 0.0, 1.0), Infeasible);   // m > 2L
    EXPECT_THROW(ShapeParams(0.4, 0.5, 0.0, 0.0, 1.0), Infeasible);   // y not positive
}

TEST(MappedInput, EnforcesRange) {
    EXPECT_NO_THROW(MappedInput(0.1, -0.15, 0.15));
    EXPECT_THROW(MappedInput(0.2, -0.15, 0.15), CpOutOfRange);
}

// Constructor acceptance iff the invariants hold, fuzzed.
TEST(CoreTypes, FuzzConstructorAcceptance) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const double eps = u(rng), sens = u(rng), delta = u(rng);
        const bool valid = eps > 0.0 && sens > 0.0 && delta > 0.0 && delta < 1.0;
        try {
            PrivacyParams p(eps, sens, delta);
            EXPECT_TRUE(valid);
        } catch (const InvalidParams &) {
            EXPECT_FALSE(valid);
        }
    }
    for (int i = 0; i < 2000; ++i) {
        const double k = u(rng), m = u(rng), y = u(rng), L = u(rng);
        const bool valid = k >= 0.0 && k < 1.0 && m >= 0.0 && L > 0.0 && m <= 2.0 * L && y > 0.0;
        try {
            ShapeParams s(k, m, y, 0.0, L);
            EXPECT_TRUE(valid);
        } catch (const Infeasible &) {
            EXPECT_FALSE(valid);
        }
    }
}
