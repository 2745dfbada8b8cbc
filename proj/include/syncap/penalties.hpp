#pragma once

// Closed-form penalty terms and composite capacity lower bounds for
// synchronization-error channels cascaded with memoryless noise.

#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncap/entropy.hpp"

namespace syncap {

struct BoundResult {
    double value = 0.0;           // bits / channel use
    std::string formula;          // gallager | ses | seid | ids | quaternary | ...
    double c_s_input = 0.0;
    std::string c_s_provenance;
    double r = 0.0;
    double penalty = 0.0;
};

// Gallager's direct lower bound for the sub/ins/del channel:
// C >= 1 + p_d log p_d + p_i log p_i + p_c log p_c + p_f log p_f.
inline BoundResult gallager_bound(double p_d, double p_i, double p_s) {
    if (p_d < 0.0 || p_i < 0.0 || p_s < 0.0 || p_d + p_i > 1.0 + 1e-12 || p_s > 1.0)
        throw std::domain_error("gallager_bound: parameter out of domain");
    const double p_c = (1.0 - p_d - p_i) * (1.0 - p_s);
    const double p_f = (1.0 - p_d - p_i) * p_s;
    BoundResult b;
    b.formula = "gallager";
    b.value = 1.0 + xlog2x(p_d) + xlog2x(p_i) + xlog2x(p_c) + xlog2x(p_f);
    return b;
}

// Penalty bracket for the sub/ers/synch bound:
// H(p_s, p_e, 1-p_s-p_e) + log((1-p_e)^2 + 2 p_e^2).
//
// The source material is inconsistent between (1-p_e)^2 and (1+p_e)^2 in
// different statements of this term; the binomial identity
// sum_j C(m,j) (2p_e^2)^j ((1-p_e)^2)^(m-j) = ((1-p_e)^2 + 2p_e^2)^m
// only holds for (1-p_e)^2, which is what we use here.
inline double penalty_sub_ers(double p_s, double p_e) {
    if (p_s < 0.0 || p_e < 0.0 || p_s + p_e > 1.0 + 1e-12)
        throw std::domain_error("penalty_sub_ers: need p_s,p_e >= 0 and p_s+p_e <= 1");
    const double h = entropy_base2({p_s, p_e, 1.0 - p_s - p_e});
    return h + std::log2((1.0 - p_e) * (1.0 - p_e) + 2.0 * p_e * p_e);
}

// Quaternary-output bracket: H(p1..p4) + log((p1+p3)^2 + (p2+p4)^2).
inline double penalty_quaternary(double p1, double p2, double p3, double p4) {
    const double h = entropy_base2({p1, p2, p3, p4});
    const double a = p1 + p3;
    const double b = p2 + p4;
    return h + std::log2(a * a + b * b);
}

// Odd-q bracket over labels -(q-1)/2..(q-1)/2 (ascending):
// H(p) + log(2 p_0^2 + sum_{k>=1} (p_k + p_{-k})^2).
inline double penalty_qary_odd(std::span<const double> probs) {
    const int q = static_cast<int>(probs.size());
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("penalty_qary_odd: need odd q >= 3");
    const double h = entropy_base2(probs);
    const int half = (q - 1) / 2;
    const double p0 = probs[half];
    double s = 2.0 * p0 * p0;
    for (int k = 1; k <= half; ++k) {
        const double pair = probs[half + k] + probs[half - k];
        s += pair * pair;
    }
    return h + std::log2(s);
}

// Even-q bracket over labels -q/2..-1,1..q/2 (ascending, no 0):
// H(p) + log(sum_{k=1}^{q/2} (p_k + p_{-k})^2).
inline double penalty_qary_even(std::span<const double> probs) {
    const int q = static_cast<int>(probs.size());
    if (q < 2 || q % 2 == 1) throw std::invalid_argument("penalty_qary_even: need even q >= 2");
    const double h = entropy_base2(probs);
    const int half = q / 2;
    double s = 0.0;
    for (int k = 1; k <= half; ++k) {
        const double pair = probs[half + k - 1] + probs[half - k];
        s += pair * pair;
    }
    return h + std::log2(s);
}

// C >= c_s - r * penalty, with provenance recorded.
inline BoundResult composite_bound(double c_s, double r, double penalty,
                                   const std::string& formula,
                                   const std::string& provenance = "caller") {
    if (r < 0.0) throw std::domain_error("composite_bound: r must be nonnegative");
    BoundResult b;
    b.value = c_s - r * penalty;
    b.formula = formula;
    b.c_s_input = c_s;
    b.c_s_provenance = provenance;
    b.r = r;
    b.penalty = penalty;
    return b;
}

// Sub/ers/synch bound (general r).
inline BoundResult ses_bound(double c_s, double r, double p_s, double p_e,
                             const std::string& provenance = "caller") {
    return composite_bound(c_s, r, penalty_sub_ers(p_s, p_e), "ses", provenance);
}

// Sub/ers/ins/del bound: r fixed to the Gallager-model value 1 - p_d + p_i.
inline BoundResult seid_bound(double c_id, double p_d, double p_i, double p_s, double p_e,
                              const std::string& provenance = "caller") {
    if (p_d < 0.0 || p_i < 0.0 || p_d + p_i > 1.0 + 1e-12)
        throw std::domain_error("seid_bound: need p_d,p_i >= 0 and p_d+p_i <= 1");
    return composite_bound(c_id, 1.0 - p_d + p_i, penalty_sub_ers(p_s, p_e), "seid", provenance);
}

// Ins/del/sub bound: C_ids >= C_id - (1 - p_d + p_i) H_b(p_s).
inline BoundResult ids_bound(double c_id, double p_d, double p_i, double p_s,
                             const std::string& provenance = "caller") {
    if (p_d < 0.0 || p_i < 0.0 || p_d + p_i > 1.0 + 1e-12)
        throw std::domain_error("ids_bound: need p_d,p_i >= 0 and p_d+p_i <= 1");
    return composite_bound(c_id, 1.0 - p_d + p_i, binary_entropy(p_s), "ids", provenance);
}

} // namespace syncap
