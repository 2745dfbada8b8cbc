#pragma once

// AWGN output quantizers and the closed-form limit penalties, with
// numerically stable evaluation for small noise levels.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <string>
#include <vector>

#include "syncap/penalties.hpp"

namespace syncap {

// Right tail of the standard normal distribution.
inline double qfunc(double x) {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

// Scaled complementary error function erfcx(x) = e^(x^2) erfc(x), x >= 0.
// Direct evaluation below the overflow region, Laplace continued fraction
// above it.
inline double erfcx_pos(double x) {
    if (x < 0.0) throw std::domain_error("erfcx_pos: x must be nonnegative");
    if (x < 15.0) return std::exp(x * x) * std::erfc(x);
    double cf = 0.0;
    for (int k = 40; k >= 1; --k) cf = (0.5 * k) / (x + cf);
    return (1.0 / std::sqrt(std::numbers::pi)) / (x + cf);
}

// Inverse standard normal CDF. Acklam's rational approximation refined by one
// Newton step on the erfc-based CDF; good to ~1e-12 over the full range.
inline double norm_cdf_inv(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::domain_error("norm_cdf_inv: p must be in (0,1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // One Newton step: F(x) = 1 - Q(x) = Q(-x), F'(x) = phi(x). Evaluate the
    // residual through the near tail so it keeps relative precision for
    // extreme quantiles (1 - Q(x) cancels catastrophically when p is tiny).
    const double err = p < 0.5 ? qfunc(-x) - p : (1.0 - p) - qfunc(x);
    const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (phi > 0.0) x -= err / phi;
    return x;
}

// Q^{-1}(u): z such that Q(z) = u.
inline double qfunc_inv(double u) { return -norm_cdf_inv(u); }

enum class QuantKind { Uniform, Nonuniform };

// Symmetric 2M-level quantizer; only the positive half of the thresholds is
// stored (t_0 = 0, t_M = +inf implied).
struct QuantizerSpec {
    double sigma = 1.0;
    int levels = 2;     // 2M
    QuantKind kind = QuantKind::Uniform;
    std::vector<double> thresholds;  // t_1 .. t_{M-1}
    double delta = 0.0;              // uniform kind only
};

// p_m for m in {-M..-1, 1..M}, stored ascending (p_{-M},...,p_{-1},p_1,...,p_M).
struct LevelProbs {
    std::vector<double> probs;
    int m_levels = 0;  // M
};

// Uniform quantizer level probabilities for a BPSK +1 transmit symbol in
// N(1, sigma^2) noise. Mass beyond +-M*delta is folded into the outermost
// levels so the vector is a valid distribution.
inline LevelProbs uniform_level_probs(double sigma, int m_levels, double delta) {
    if (sigma <= 0.0 || m_levels < 1 || delta <= 0.0)
        throw std::domain_error("uniform_level_probs: need sigma>0, M>=1, delta>0");
    LevelProbs lp;
    lp.m_levels = m_levels;
    lp.probs.assign(2 * m_levels, 0.0);
    for (int m = 1; m <= m_levels; ++m) {
        double pos = qfunc((1.0 - m * delta) / sigma) - qfunc((1.0 - (m - 1) * delta) / sigma);
        double neg = qfunc((1.0 + (m - 1) * delta) / sigma) - qfunc((1.0 + m * delta) / sigma);
        lp.probs[m_levels + m - 1] = pos;
        lp.probs[m_levels - m] = neg;
    }
    // Fold the tails.
    lp.probs[2 * m_levels - 1] += 1.0 - qfunc((1.0 - m_levels * delta) / sigma);
    lp.probs[0] += qfunc((1.0 + m_levels * delta) / sigma);
    return lp;
}

// Equal-mass non-uniform quantizer: thresholds chosen so every positive level
// carries mass (1-P)/M under N(1, sigma^2), P = Q(1/sigma).
inline std::pair<QuantizerSpec, LevelProbs> nonuniform_quantizer(double sigma, int m_levels) {
    if (sigma <= 0.0 || m_levels < 1)
        throw std::domain_error("nonuniform_quantizer: need sigma>0, M>=1");
    const double big_p = qfunc(1.0 / sigma);
    QuantizerSpec spec;
    spec.sigma = sigma;
    spec.levels = 2 * m_levels;
    spec.kind = QuantKind::Nonuniform;
    spec.thresholds.reserve(m_levels - 1);
    // Q((t_m - 1)/sigma) = (1-P)(1 - m/M)  =>  t_m = 1 + sigma Qinv(...).
    for (int m = 1; m < m_levels; ++m) {
        const double target = (1.0 - big_p) * (1.0 - double(m) / m_levels);
        spec.thresholds.push_back(1.0 + sigma * qfunc_inv(target));
    }
    LevelProbs lp;
    lp.m_levels = m_levels;
    lp.probs.assign(2 * m_levels, 0.0);
    const double eq_mass = (1.0 - big_p) / m_levels;
    auto t_at = [&](int m) {  // t_m for m = 0..M
        if (m == 0) return 0.0;
        if (m == m_levels) return std::numeric_limits<double>::infinity();
        return spec.thresholds[m - 1];
    };
    for (int m = 1; m <= m_levels; ++m) {
        lp.probs[m_levels + m - 1] = eq_mass;
        // N(1,sigma^2) mass of (-t_m, -t_{m-1}): both Q arguments positive.
        const double lo = t_at(m - 1);
        const double hi = t_at(m);
        const double mass = qfunc((1.0 + lo) / sigma) -
                            (std::isinf(hi) ? 0.0 : qfunc((1.0 + hi) / sigma));
        lp.probs[m_levels - m] = mass;
    }
    return {spec, lp};
}

// Finite-M penalty: the even-q bracket applied to the 2M quantized levels.
inline double finite_penalty(const LevelProbs& lp) {
    return penalty_qary_even(lp.probs);
}

// M -> infinity penalty for the uniform quantizer:
// log2( sqrt(e/2) (1 + e^{-1/sigma^2}) ).
inline double awgn_penalty_uniform_limit(double sigma) {
    if (sigma < 0.0) throw std::domain_error("awgn_penalty_uniform_limit: sigma must be >= 0");
    const double base = 0.5 * std::log2(std::numbers::e / 2.0);
    if (sigma == 0.0) return base;
    return base + std::log2(1.0 + std::exp(-1.0 / (sigma * sigma)));
}

// M -> infinity penalty for the equal-mass non-uniform quantizer:
// log(e) (2/(sqrt(2 pi) sigma) e^{-1/(2 sigma^2)} - (2/sigma^2) Q(1/sigma))
//   + log(1 + Q(1/sigma) + e^{4/sigma^2} Q(3/sigma)).
// The last product is evaluated via erfcx to stay finite for small sigma:
// e^{4/s^2} Q(3/s) = (1/2) erfcx(3/(s sqrt2)) e^{-1/(2 s^2)}.
inline double awgn_penalty_nonuniform_limit(double sigma) {
    if (sigma < 0.0) throw std::domain_error("awgn_penalty_nonuniform_limit: sigma must be >= 0");
    if (sigma == 0.0) return 0.0;
    const double s2 = sigma * sigma;
    const double big_p = qfunc(1.0 / sigma);
    const double gauss_half = std::exp(-0.5 / s2);
    const double term1 = std::log2(std::numbers::e) *
                         (2.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma) * gauss_half -
                          (2.0 / s2) * big_p);
    const double scaled_tail = 0.5 * erfcx_pos(3.0 / (sigma * std::numbers::sqrt2)) * gauss_half;
    const double term2 = std::log2(1.0 + big_p + scaled_tail);
    return term1 + term2;
}

struct AwgnMode {
    QuantKind kind = QuantKind::Nonuniform;
    int finite_m = 0;  // 0 = closed-form limit; > 0 = finite 2M-level quantizer
};

// Composite AWGN/synch bound: c_s - r * (selected penalty).
inline BoundResult awgn_bound(double c_s, double r, double sigma, const AwgnMode& mode,
                              const std::string& provenance = "caller") {
    double pen;
    std::string formula;
    if (mode.finite_m > 0) {
        if (mode.kind == QuantKind::Nonuniform) {
            pen = finite_penalty(nonuniform_quantizer(sigma, mode.finite_m).second);
        } else {
            pen = finite_penalty(uniform_level_probs(sigma, mode.finite_m, 10.0 / mode.finite_m));
        }
        formula = "awgn_finite";
    } else if (mode.kind == QuantKind::Nonuniform) {
        pen = awgn_penalty_nonuniform_limit(sigma);
        formula = "awgn_nonuniform";
    } else {
        pen = awgn_penalty_uniform_limit(sigma);
        formula = "awgn_uniform";
    }
    return composite_bound(c_s, r, pen, formula, provenance);
}

} // namespace syncap
