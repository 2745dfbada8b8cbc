#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace syncap {

inline constexpr double kProbTol = 1e-9;

// x*log2(x) with the convention 0*log(0) = 0.
inline double xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

// Shannon entropy in bits of a probability vector.
inline double entropy_base2(std::span<const double> p) {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::domain_error("entropy_base2: negative probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kProbTol)
        throw std::domain_error("entropy_base2: probabilities do not sum to 1");
    double h = 0.0;
    for (double v : p) h -= xlog2x(v);
    return h;
}

inline double entropy_base2(std::initializer_list<double> p) {
    return entropy_base2(std::span<const double>(p.begin(), p.size()));
}

inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("binary_entropy: p out of [0,1]");
    return -xlog2x(p) - xlog2x(1.0 - p);
}

} // namespace syncap
