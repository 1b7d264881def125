#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "compositedp/cdf.hpp"
#include "compositedp/random.hpp"
#include "oracle.hpp"

using namespace compositedp;

namespace {

PerturbationSpec a1b1_spec() {
    return solve_normalization(ActivationKind::a1(), BaseKind::b1(), 0.4, 0.5, 1.0, 1.0);
}

} // namespace

TEST(PiecewiseCdf, KnownValues) {
    const auto cdf = build_cdf(a1b1_spec(), -0.25);
    EXPECT_NEAR(cdf.total_mass(), 1.0, 1e-14);
    EXPECT_NEAR(cdf(-0.25), 0.3, 1e-14);
    EXPECT_NEAR(cdf(0.0), 0.5, 1e-14);
    EXPECT_DOUBLE_EQ(cdf(-1.0), 0.0);
    EXPECT_DOUBLE_EQ(cdf(1.0), 1.0);
    EXPECT_DOUBLE_EQ(cdf(-5.0), 0.0);
    EXPECT_DOUBLE_EQ(cdf(5.0), 1.0);
}

TEST(PiecewiseCdf, MatchesQuadratureOracle) {
    std::mt19937_64 rng(211);
    for (int i = 0; i < 40; ++i) {
        const auto spec = oracle::random_feasible_spec(rng);
        const auto [lo, hi] = cp_bounds(spec);
        const double cp = hi > lo ? lo + (hi - lo) * (i % 5) / 4.0 : 0.0;
        const double a = solve_activation_offset(spec, cp);
        const auto cdf = build_cdf(spec, a);
        const double L = spec.params.L;
        for (int j = 1; j < 8; ++j) {
            const double x = -L + 2.0 * L * j / 8.0;
            EXPECT_NEAR(cdf(x), oracle::cdf_at(spec, a, x), 1e-9) << spec.name();
        }
    }
}

TEST(PiecewiseCdf, InverseEndpointsAndMedian) {
    const auto cdf = build_cdf(a1b1_spec(), -0.25);
    EXPECT_DOUBLE_EQ(cdf.inverse(0.0), -1.0);
    EXPECT_DOUBLE_EQ(cdf.inverse(1.0), 1.0);
    EXPECT_NEAR(cdf.inverse(0.5), 0.0, 1e-12);
    EXPECT_NEAR(cdf.inverse(0.3), -0.25, 1e-12);
}

TEST(PiecewiseCdf, InverseRoundTrip) {
    std::mt19937_64 rng(223);
    std::uniform_real_distribution<double> uu(1e-6, 1.0 - 1e-6);
    for (int i = 0; i < 25; ++i) {
        const auto spec = oracle::random_feasible_spec(rng);
        const auto [lo, hi] = cp_bounds(spec);
        const double cp = hi > lo ? 0.5 * (lo + hi) : 0.0;
        const auto cdf = build_cdf(spec, solve_activation_offset(spec, cp));
        double prev = -spec.params.L;
        for (int j = 0; j < 64; ++j) {
            const double u = uu(rng);
            const double x = cdf.inverse(u);
            EXPECT_NEAR(cdf(x), u, 1e-10) << spec.name() << " u=" << u;
        }
        // monotone on an ordered grid
        for (int j = 0; j <= 50; ++j) {
            const double x = cdf.inverse(j / 50.0);
            EXPECT_GE(x, prev - 1e-12);
            prev = x;
        }
    }
}

TEST(PiecewiseCdf, MassBetween) {
    const auto cdf = build_cdf(a1b1_spec(), -0.25);
    EXPECT_NEAR(cdf.mass_between(-1.0, 1.0), 1.0, 1e-14);
    EXPECT_NEAR(cdf.mass_between(-0.25, 0.25), 0.4, 1e-14);  // activation slab: (y + k) * 0.5
    EXPECT_NEAR(cdf.mass_between(0.5, 1.0), 0.2, 1e-14);     // base only
    EXPECT_NEAR(cdf.mass_between(1.0, 0.5), 0.2, 1e-14);     // order-insensitive
    EXPECT_NEAR(cdf.mass_between(-9.0, 9.0), 1.0, 1e-14);    // clamped to support
}

TEST(Sampling, StaysInDomainAndMatchesMean) {
    std::mt19937_64 rng(227);
    for (int rep = 0; rep < 6; ++rep) {
        const auto spec = oracle::random_feasible_spec(rng);
        const auto [lo, hi] = cp_bounds(spec);
        const double cp = hi > lo ? lo + 0.7 * (hi - lo) : 0.0;
        const double a = solve_activation_offset(spec, cp);
        const auto cdf = build_cdf(spec, a);
        const double L = spec.params.L;
        const double var = oracle::second_moment(spec, a) - cp * cp;

        UniformStream stream(9000 + rep);
        const int n = 20000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = sample(cdf, stream);
            ASSERT_GE(x, -L);
            ASSERT_LE(x, L);
            sum += x;
        }
        const double margin = 4.0 * std::sqrt(var / n);
        EXPECT_NEAR(sum / n, cp, margin) << spec.name();
    }
}

TEST(Sampling, KolmogorovSmirnov) {
    std::mt19937_64 rng(229);
    for (int rep = 0; rep < 4; ++rep) {
        const auto spec = oracle::random_feasible_spec(rng);
        const auto cdf = build_cdf(spec, solve_activation_offset(spec, 0.0));

        UniformStream stream(777 + rep);
        const int n = 20000;
        std::vector<double> xs(n);
        for (double &x : xs) x = sample(cdf, stream);
        std::sort(xs.begin(), xs.end());
        double d = 0.0;
        for (int i = 0; i < n; ++i) {
            const double f = cdf(xs[i]);
            d = std::max(d, std::fabs(f - (i + 1.0) / n));
            d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        }
        // critical value at alpha = 0.001
        EXPECT_LT(d, 1.9495 / std::sqrt(static_cast<double>(n))) << spec.name();
    }
}

TEST(Sampling, DeterministicReplay) {
    const auto cdf = build_cdf(a1b1_spec(), -0.25);
    UniformStream s1(42), s2(42);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(sample(cdf, s1), sample(cdf, s2));
    }
}
