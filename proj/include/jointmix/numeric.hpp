#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

namespace jointmix {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(sum(exp(v))) without overflow; -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> v) {
    if (v.empty()) return kNegInf;
    const double peak = *std::max_element(v.begin(), v.end());
    if (peak == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - peak);
    return peak + std::log(acc);
}

// Turns log-weights into probabilities in place. Returns the log normaliser.
inline double normalize_log_weights(std::span<double> v) {
    const double lse = log_sum_exp(v);
    for (double& x : v) x = std::exp(x - lse);
    return lse;
}

// weight * log(p) with the 0 * log(0) = 0 convention.
inline double weighted_log(double weight, double p) {
    if (weight == 0.0) return 0.0;
    return weight * std::log(p);
}

// Sum over a row of log N(x_n; mean, var) given the row's sum of squared
// deviations from `mean`.
inline double gaussian_row_log_density(double sq_dev, std::size_t n, double var) {
    constexpr double log_two_pi = 1.8378770664093454835606594728112;
    return -0.5 * static_cast<double>(n) * (log_two_pi + std::log(var)) - 0.5 * sq_dev / var;
}

}  // namespace jointmix
