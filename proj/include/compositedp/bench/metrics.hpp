#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace compositedp::bench {

struct Metrics {
    double re = 0.0;  // mean absolute error
    double mse = 0.0; // mean squared error
    double al_mean = 0.0;
    double al_q1 = 0.0;
    double al_median = 0.0;
    double al_q3 = 0.0;
    double al_max = 0.0;
    long al_outliers = 0;   // beyond q3 + 1.5 IQR
    bool al_is_absolute = false; // raw answer was 0; AL reported as absolute error
    double bias_rate = 0.0; // |mean(perturbed) - raw| / |raw|, percent
};

inline Metrics compute_metrics(double raw, const std::vector<double> &perturbed) {
    Metrics m;
    const std::size_t n = perturbed.size();
    double sum = 0.0;
    std::vector<double> al(n);
    m.al_is_absolute = raw == 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double err = raw - perturbed[i];
        m.re += std::fabs(err);
        m.mse += err * err;
        al[i] = m.al_is_absolute ? std::fabs(err) : std::fabs(err / raw);
        sum += perturbed[i];
    }
    m.re /= n;
    m.mse /= n;
    std::sort(al.begin(), al.end());
    for (double v : al) m.al_mean += v;
    m.al_mean /= n;
    m.al_q1 = al[n / 4];
    m.al_median = al[n / 2];
    m.al_q3 = al[(3 * n) / 4];
    m.al_max = al.back();
    const double fence = m.al_q3 + 1.5 * (m.al_q3 - m.al_q1);
    m.al_outliers = std::count_if(al.begin(), al.end(), [&](double v) { return v > fence; });
    const double mean = sum / n;
    m.bias_rate = m.al_is_absolute ? std::fabs(mean - raw) * 100.0 : std::fabs(mean - raw) / std::fabs(raw) * 100.0;
    return m;
}

} // namespace compositedp::bench
