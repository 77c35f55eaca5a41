#pragma once

// Sample statistics used as independent oracles by the tests.

#include <cmath>
#include <numeric>
#include <vector>

namespace cytovisc::testing {

inline double mean(std::vector<double> const& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double variance(std::vector<double> const& v) {
    double const m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

inline double excess_kurtosis(std::vector<double> const& v) {
    double const m = mean(v);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double x : v) {
        double const d = (x - m) * (x - m);
        m2 += d;
        m4 += d * d;
    }
    auto const n = static_cast<double>(v.size());
    m2 /= n;
    m4 /= n;
    return m4 / (m2 * m2) - 3.0;
}

inline double relative_difference(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace cytovisc::testing
