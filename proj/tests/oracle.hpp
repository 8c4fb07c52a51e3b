// Test-only brute-force oracles, kept independent of the library's
// computation path: weights via powl(), long double accumulation, two-pass
// centering.
#pragma once

#include <cmath>
#include <vector>

namespace oracle {

struct WeightedStats {
    double mean = 0.0;
    double deviation = 0.0;
};

// buffer oldest -> newest, dollars; newest weight 1, previous lambda, ...
inline WeightedStats weighted_stats(const std::vector<double>& buffer, double lambda) {
    const std::size_t n = buffer.size();
    long double wsum = 0.0L, wx = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        long double w = powl(static_cast<long double>(lambda),
                             static_cast<long double>(n - 1 - i));
        wsum += w;
        wx += w * static_cast<long double>(buffer[i]);
    }
    long double mean = wx / wsum;
    long double wss = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        long double w = powl(static_cast<long double>(lambda),
                             static_cast<long double>(n - 1 - i));
        long double d = static_cast<long double>(buffer[i]) - mean;
        wss += w * d * d;
    }
    return {static_cast<double>(mean), static_cast<double>(sqrtl(wss / wsum))};
}

inline WeightedStats plain_stats(const std::vector<double>& buffer) {
    long double sum = 0.0L;
    for (double x : buffer) sum += x;
    long double mean = sum / static_cast<long double>(buffer.size());
    long double ss = 0.0L;
    for (double x : buffer) {
        long double d = static_cast<long double>(x) - mean;
        ss += d * d;
    }
    return {static_cast<double>(mean),
            static_cast<double>(sqrtl(ss / static_cast<long double>(buffer.size())))};
}

// |a - b| <= tol * max(|a|, |b|), with an absolute escape near zero.
inline bool close_rel(double a, double b, double rel, double abs_floor = 1e-12) {
    double diff = std::fabs(a - b);
    if (diff <= abs_floor) return true;
    return diff <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace oracle
