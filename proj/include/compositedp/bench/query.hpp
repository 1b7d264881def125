#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "compositedp/errors.hpp"

namespace compositedp::bench {

enum class QueryKind { Max, Min, Mean, Mode, Variance, Count };

inline const char *query_name(QueryKind q) {
    switch (q) {
    case QueryKind::Max: return "max";
    case QueryKind::Min: return "min";
    case QueryKind::Mean: return "mean";
    case QueryKind::Mode: return "mode";
    case QueryKind::Variance: return "variance";
    case QueryKind::Count: return "count";
    }
    return "?";
}

inline QueryKind parse_query(const std::string &s) {
    if (s == "max") return QueryKind::Max;
    if (s == "min") return QueryKind::Min;
    if (s == "mean") return QueryKind::Mean;
    if (s == "mode") return QueryKind::Mode;
    if (s == "variance") return QueryKind::Variance;
    if (s == "count") return QueryKind::Count;
    throw ConfigError("unknown query '" + s + "'");
}

namespace detail {

// Mode of continuous data: Freedman-Diaconis bin width, densest bin center.
inline double binned_mode(const std::vector<double> &values) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double q1 = sorted[n / 4];
    const double q3 = sorted[(3 * n) / 4];
    const double iqr = q3 - q1;
    const double lo = sorted.front();
    const double hi = sorted.back();
    if (iqr <= 0.0 || hi <= lo) return sorted[n / 2];
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
    const long bins = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / width)));
    std::vector<long> counts(bins, 0);
    for (double v : sorted) {
        long b = static_cast<long>((v - lo) / (hi - lo) * bins);
        ++counts[std::min(b, bins - 1)];
    }
    const long best = std::max_element(counts.begin(), counts.end()) - counts.begin();
    return lo + (best + 0.5) * (hi - lo) / bins;
}

} // namespace detail

inline double run_query(QueryKind q, const std::vector<double> &series) {
    if (series.empty()) {
        throw EmptySeries("query over empty series");
    }
    switch (q) {
    case QueryKind::Max:
        return *std::max_element(series.begin(), series.end());
    case QueryKind::Min:
        return *std::min_element(series.begin(), series.end());
    case QueryKind::Mean: {
        double s = 0.0;
        for (double v : series) s += v;
        return s / series.size();
    }
    case QueryKind::Mode:
        return detail::binned_mode(series);
    case QueryKind::Variance: {
        double s = 0.0;
        for (double v : series) s += v;
        const double mean = s / series.size();
        double ss = 0.0;
        for (double v : series) ss += (v - mean) * (v - mean);
        return ss / series.size(); // population variance
    }
    case QueryKind::Count:
        return static_cast<double>(series.size());
    }
    throw ConfigError("unreachable query kind");
}

} // namespace compositedp::bench
