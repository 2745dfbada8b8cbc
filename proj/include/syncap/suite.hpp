#pragma once

// Default verification grid: exact enumeration checks of the entropy
// inequalities, the appendix closed-form sums, and the decomposition example.
// This is the repo's primary regression gate.

#include <sstream>
#include <string>
#include <vector>

#include "syncap/oracle.hpp"
#include "syncap/quantize.hpp"

namespace syncap {

struct NamedKernel {
    std::string name;
    SyncKernel kernel;
    int n_max;  // enumeration cap for this kernel in the default grid
};

struct NamedDmc {
    std::string name;
    DmcMatrix dmc;
};

inline std::vector<NamedKernel> default_kernels() {
    // Gallager kernels are capped at n=3: L_max=2 doubles the output length,
    // and the 5/6-ary cascades at n=4 blow past the enumeration budget.
    return {
        {"del(0.05)", deletion_kernel(0.05), 4},
        {"del(0.1)", deletion_kernel(0.1), 4},
        {"del(0.2)", deletion_kernel(0.2), 4},
        {"gal(0.05,0.05)", gallager_kernel(0.05, 0.05), 3},
    };
}

inline std::vector<NamedDmc> default_dmcs() {
    return {
        {"subers(0.05,0.05)", sub_ers_dmc(0.05, 0.05)},
        {"subers(0.1,0.2)", sub_ers_dmc(0.1, 0.2)},
        {"quat(0.7,0.15,0.1,0.05)", qary_dmc({0.05, 0.1, 0.7, 0.15}, Parity::Even)},
        {"q5", qary_dmc({0.02, 0.08, 0.1, 0.3, 0.5}, Parity::Odd)},
        {"q6", qary_dmc({0.02, 0.03, 0.1, 0.6, 0.15, 0.1}, Parity::Even)},
    };
}

inline double dmc_penalty(const DmcMatrix& dmc) {
    return dmc.q % 2 == 0 ? penalty_qary_even(dmc.rows[1]) : penalty_qary_odd(dmc.rows[1]);
}

// Lemma 1, Lemma 2, the combined mutual-information inequality, the finite-n
// capacity-transfer premise, and the E{M} identity, for one configuration.
inline std::vector<InequalityReport> verify_configuration(const std::string& tag,
                                                          const SyncKernel& kernel,
                                                          const DmcMatrix& dmc, int n,
                                                          std::size_t budget = kDefaultBudget) {
    std::vector<InequalityReport> out;
    const auto dist = uniform_input_dist(n);
    const ChannelLaw pre = enumerate_law(kernel, n, budget);
    const ChannelLaw post = cascade_law(pre, dmc, budget);
    const JointStats pre_st = joint_stats(pre, dist);
    const JointStats post_st = joint_stats(post, dist);
    const double l1 = lemma1_rhs(pre, post, dmc, dist);
    const double h_cond = dmc_symbol_cond_entropy(dmc);

    InequalityReport lemma1;
    lemma1.config = tag + " lemma1";
    lemma1.lhs = post_st.h_y;
    lemma1.rhs = pre_st.h_y - l1;
    lemma1.slack = lemma1.lhs - lemma1.rhs;
    lemma1.pass = lemma1.slack >= -1e-10;
    out.push_back(lemma1);

    InequalityReport lemma2 = verify_lemma2(pre, post, dmc, dist);
    lemma2.config = tag + " lemma2";
    out.push_back(lemma2);

    InequalityReport combined;
    combined.config = tag + " combined";
    combined.lhs = post_st.mutual_info;
    combined.rhs = pre_st.mutual_info - l1 - pre_st.e_m * h_cond;
    combined.slack = combined.lhs - combined.rhs;
    combined.pass = combined.slack >= -1e-10;
    out.push_back(combined);

    InequalityReport prop1 = verify_proposition1(
        {{post_st.mutual_info, pre_st.mutual_info, -pre_st.e_m * dmc_penalty(dmc)}});
    prop1.config = tag + " proposition1";
    out.push_back(prop1);

    InequalityReport em;
    em.config = tag + " E{M}=n*r";
    em.lhs = pre_st.e_m;
    em.rhs = n * expected_output_rate(kernel);
    em.slack = std::abs(em.lhs - em.rhs);
    em.pass = em.slack <= 1e-10;
    out.push_back(em);

    // Deletion-style kernels reach every m-tuple under i.u.d. inputs, so the
    // Jensen term collapses to the closed form.
    if (kernel.l_max == 1) {
        InequalityReport eq;
        eq.config = tag + " full-support equality";
        eq.lhs = l1;
        eq.rhs = pre_st.e_m * std::log2(appendix_closed_form_base(dmc));
        eq.slack = std::abs(eq.lhs - eq.rhs);
        eq.pass = eq.slack <= 1e-9;
        out.push_back(eq);
    }
    return out;
}

inline std::vector<InequalityReport> run_inequality_suite(std::size_t budget = kDefaultBudget) {
    std::vector<InequalityReport> out;
    for (const auto& nk : default_kernels())
        for (const auto& nd : default_dmcs())
            for (int n = 2; n <= nk.n_max; ++n) {
                std::ostringstream tag;
                tag << nk.name << " x " << nd.name << " n=" << n;
                auto reports = verify_configuration(tag.str(), nk.kernel, nd.dmc, n, budget);
                out.insert(out.end(), reports.begin(), reports.end());
            }
    return out;
}

inline std::vector<InequalityReport> run_appendix_suite() {
    std::vector<InequalityReport> out;
    for (const auto& nd : default_dmcs())
        for (int m = 1; m <= 4; ++m) out.push_back(verify_appendix_sums(nd.dmc, m));
    return out;
}

inline std::vector<InequalityReport> run_decomposition_grid() {
    std::vector<InequalityReport> out;
    for (double alpha = 0.01; alpha <= 0.451; alpha += 0.04)
        for (double beta = 0.01; beta <= alpha + 1e-12 && alpha + beta <= 0.5 + 1e-12;
             beta += 0.04) {
            InequalityReport r;
            std::ostringstream tag;
            tag << "decomposition alpha=" << alpha << " beta=" << beta;
            r.config = tag.str();
            try {
                decompose_example(alpha, beta);  // throws on entrywise mismatch
                r.pass = true;
            } catch (const std::exception&) {
                r.pass = false;
            }
            out.push_back(r);
        }
    return out;
}

} // namespace syncap
