#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "compositedp/baselines.hpp"

using namespace compositedp;

TEST(Laplace, MomentsAndTails) {
    const PrivacyParams p(1.0, 1.0);
    const double b = 1.0;
    UniformStream stream(1);
    const int n = 400000;
    double sum = 0.0, sum2 = 0.0;
    long below = 0;
    for (int i = 0; i < n; ++i) {
        const double x = laplace_noise(p, stream);
        sum += x;
        sum2 += x * x;
        if (x <= b * std::log(2.0)) ++below; // CDF at b ln 2 is 0.75
    }
    const double var = 2.0 * b * b;
    EXPECT_NEAR(sum / n, 0.0, 4.0 * std::sqrt(var / n));
    EXPECT_NEAR(sum2 / n, var, 0.05);
    EXPECT_NEAR(static_cast<double>(below) / n, 0.75, 0.005);
}

TEST(Laplace, ScalesWithSensitivityOverEpsilon) {
    UniformStream s1(3), s2(3);
    const PrivacyParams narrow(2.0, 1.0), wide(0.5, 2.0); // b = 0.5 vs b = 4
    for (int i = 0; i < 100; ++i) {
        const double x = laplace_noise(narrow, s1);
        const double y = laplace_noise(wide, s2);
        EXPECT_NEAR(y, 8.0 * x, 1e-9 * std::max(1.0, std::fabs(y)));
    }
}

TEST(Gaussian, SigmaFormulaAndDeltaRequired) {
    const PrivacyParams p(1.0, 1.0, 1e-5);
    EXPECT_NEAR(gaussian_sigma(p), std::sqrt(2.0 * std::log(1.25e5)), 1e-12);
    EXPECT_NEAR(gaussian_sigma(p), 4.8448052626, 1e-6);
    EXPECT_THROW(gaussian_sigma(PrivacyParams(1.0, 1.0)), MissingDelta);
}

TEST(Gaussian, EmpiricalMoments) {
    const PrivacyParams p(1.0, 1.0, 1e-5);
    const double sigma = gaussian_sigma(p);
    UniformStream stream(17);
    const int n = 400000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = gaussian_noise(p, stream);
        sum += x;
        sum2 += x * x;
    }
    EXPECT_NEAR(sum / n, 0.0, 4.0 * sigma / std::sqrt(static_cast<double>(n)));
    EXPECT_NEAR(sum2 / n, sigma * sigma, 0.02 * sigma * sigma);
}

TEST(DiscreteLaplace, PmfRatioIsExpEpsilon) {
    const PrivacyParams p(1.0, 1.0);
    UniformStream stream(23);
    const int n = 2000000;
    std::map<long, long> hist;
    for (int i = 0; i < n; ++i) ++hist[discrete_laplace_noise(p, stream)];
    // neighbouring pmf ratio: p(z)/p(z+1) = e^{eps} for z >= 0
    for (long z = 0; z <= 2; ++z) {
        const double ratio = static_cast<double>(hist[z]) / hist[z + 1];
        EXPECT_NEAR(ratio, std::exp(1.0), 0.1) << "z=" << z;
    }
    // symmetric
    for (long z = 1; z <= 3; ++z) {
        EXPECT_NEAR(static_cast<double>(hist[z]) / hist[-z], 1.0, 0.05) << "z=" << z;
    }
    // mass at zero: (1-alpha)/(1+alpha)
    const double alpha = std::exp(-1.0);
    EXPECT_NEAR(static_cast<double>(hist[0]) / n, (1.0 - alpha) / (1.0 + alpha), 0.002);
}

TEST(DiscreteLaplace, VarianceMatchesClosedForm) {
    const PrivacyParams p(0.5, 1.0);
    const double alpha = std::exp(-0.5);
    const double var = 2.0 * alpha / ((1.0 - alpha) * (1.0 - alpha));
    UniformStream stream(29);
    const int n = 400000;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(discrete_laplace_noise(p, stream));
        sum2 += x * x;
    }
    EXPECT_NEAR(sum2 / n, var, 0.05 * var);
}

TEST(DiscreteGaussian, SymmetricIntegersNearSigma) {
    const PrivacyParams p(1.0, 1.0, 1e-5);
    const double sigma = gaussian_sigma(p);
    UniformStream stream(31);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const long z = discrete_gaussian_noise(p, stream);
        sum += z;
        sum2 += static_cast<double>(z) * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 4.0 * sigma / std::sqrt(static_cast<double>(n)));
    // discrete Gaussian variance approaches sigma^2 for sigma >> 1
    EXPECT_NEAR(sum2 / n, sigma * sigma, 0.03 * sigma * sigma);
}

TEST(TruncatedDiscreteLaplace, StaysInsideBound) {
    const PrivacyParams p(0.2, 1.0);
    const long bound = 10;
    UniformStream stream(37);
    for (int i = 0; i < 50000; ++i) {
        const long z = truncated_discrete_laplace_noise(p, bound, stream);
        ASSERT_GE(z, -bound);
        ASSERT_LE(z, bound);
    }
}

TEST(TruncatedDiscreteLaplace, MatchesConditionedPmf) {
    const PrivacyParams p(1.0, 1.0);
    const long bound = 3;
    const double alpha = std::exp(-1.0);
    double total = 0.0;
    for (long z = -bound; z <= bound; ++z) total += std::pow(alpha, std::fabs(static_cast<double>(z)));
    UniformStream stream(41);
    const int n = 500000;
    std::map<long, long> hist;
    for (int i = 0; i < n; ++i) ++hist[truncated_discrete_laplace_noise(p, bound, stream)];
    for (long z = -bound; z <= bound; ++z) {
        const double want = std::pow(alpha, std::fabs(static_cast<double>(z))) / total;
        EXPECT_NEAR(static_cast<double>(hist[z]) / n, want, 0.004) << "z=" << z;
    }
}

TEST(UnboundedBaselines, EscapeAnyFixedWindow) {
    // At small epsilon the additive baselines leave [-5, 5] with noticeable
    // probability; the bounded mechanism never does. This pins the contrast.
    const PrivacyParams p(0.2, 1.0, 1e-5);
    UniformStream stream(43);
    int lap_out = 0, gauss_out = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        if (std::fabs(laplace_noise(p, stream)) > 5.0) ++lap_out;
        if (std::fabs(gaussian_noise(p, stream)) > 5.0) ++gauss_out;
    }
    EXPECT_GT(lap_out, n / 10);   // P(|Lap(5)| > 5) = e^{-1} ~ 0.37
    EXPECT_GT(gauss_out, n / 10); // sigma ~ 24, P(|N| > 5) ~ 0.84
}
