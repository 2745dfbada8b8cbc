#pragma once

// Exact small-blocklength verification engine: enumerates channel laws,
// computes entropies and mutual information, and checks the entropy
// inequalities and combinatorial closed forms against brute force.
// Also provides Blahut-Arimoto for memoryless matrices and seeded
// Monte-Carlo estimation of the output-rate r.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "syncap/channels.hpp"
#include "syncap/penalties.hpp"

namespace syncap {

inline constexpr double kSupportEps = 1e-15;   // "p(y) != 0" cutoff
inline constexpr std::size_t kDefaultBudget = 4'000'000;  // law entries

using OutputDist = std::unordered_map<std::string, double>;

// Exact blocklength-n law: per input word, a probability table over output
// strings. Symbols are stored as chars '0'+index into `labels`.
struct ChannelLaw {
    int n = 0;
    std::vector<int> labels;              // {0,1} for the sync stage
    std::vector<OutputDist> law;          // indexed by input word 0..2^n-1
};

inline std::size_t budget_from_env(std::size_t fallback = kDefaultBudget) {
    if (const char* s = std::getenv("SYNCAP_BUDGET")) {
        const long v = std::atol(s);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return fallback;
}

// Bit i (0-based, left to right) of input word x at blocklength n.
inline int word_bit(std::uint32_t x, int n, int i) { return (x >> (n - 1 - i)) & 1; }

// Exact n-fold law of a per-symbol kernel, by DP over symbol positions.
inline ChannelLaw enumerate_law(const SyncKernel& k, int n,
                                std::size_t budget = kDefaultBudget) {
    if (n < 1) throw std::domain_error("enumerate_law: n must be >= 1");
    ChannelLaw cl;
    cl.n = n;
    cl.labels = {0, 1};
    cl.law.resize(std::size_t(1) << n);
    std::size_t total = 0;
    for (std::uint32_t x = 0; x < (std::uint32_t(1) << n); ++x) {
        OutputDist cur{{"", 1.0}};
        for (int i = 0; i < n; ++i) {
            OutputDist next;
            const int b = word_bit(x, n, i);
            for (const auto& [prefix, p] : cur)
                for (const auto& e : k.entries[b]) next[prefix + e.out] += p * e.prob;
            cur = std::move(next);
            total += cur.size();
            if (total > budget)
                throw std::runtime_error("enumerate_law: enumeration budget of " +
                                         std::to_string(budget) +
                                         " law entries exceeded (reduce n or raise SYNCAP_BUDGET)");
        }
        cl.law[x] = std::move(cur);
    }
    return cl;
}

// Push a binary-output law through a memoryless per-symbol DMC. Lengths are
// preserved; output symbols become indices into the DMC's labels.
inline ChannelLaw cascade_law(const ChannelLaw& cl, const DmcMatrix& dmc,
                              std::size_t budget = kDefaultBudget) {
    if (cl.labels.size() != 2)
        throw std::invalid_argument("cascade_law: first-stage law must be binary");
    ChannelLaw out;
    out.n = cl.n;
    out.labels = dmc.labels;
    out.law.resize(cl.law.size());
    std::size_t total = 0;
    for (std::size_t x = 0; x < cl.law.size(); ++x) {
        OutputDist acc;
        for (const auto& [y, p] : cl.law[x]) {
            OutputDist cur{{"", p}};
            for (char c : y) {
                OutputDist next;
                const auto& row = dmc.rows[c - '0'];
                for (const auto& [prefix, pp] : cur)
                    for (int s = 0; s < dmc.q; ++s)
                        if (row[s] > 0.0) next[prefix + char('0' + s)] += pp * row[s];
                cur = std::move(next);
            }
            for (const auto& [s, pp] : cur) acc[s] += pp;
        }
        total += acc.size();
        if (total > budget)
            throw std::runtime_error("cascade_law: enumeration budget of " +
                                     std::to_string(budget) + " law entries exceeded");
        out.law[x] = std::move(acc);
    }
    return out;
}

struct JointStats {
    double h_y = 0.0;
    double h_y_given_x = 0.0;
    double mutual_info = 0.0;
    double e_m = 0.0;
    std::map<int, double> length_dist;  // p(m)
};

inline OutputDist output_marginal(const ChannelLaw& cl, const std::vector<double>& input_dist) {
    OutputDist marg;
    for (std::size_t x = 0; x < cl.law.size(); ++x) {
        if (input_dist[x] <= 0.0) continue;
        for (const auto& [y, p] : cl.law[x]) marg[y] += input_dist[x] * p;
    }
    return marg;
}

inline JointStats joint_stats(const ChannelLaw& cl, const std::vector<double>& input_dist) {
    if (input_dist.size() != cl.law.size())
        throw std::invalid_argument("joint_stats: input distribution dimension mismatch");
    double dsum = 0.0;
    for (double p : input_dist) dsum += p;
    if (std::abs(dsum - 1.0) > kProbTol)
        throw std::invalid_argument("joint_stats: input distribution does not sum to 1");
    JointStats st;
    const OutputDist marg = output_marginal(cl, input_dist);
    for (const auto& [y, p] : marg) {
        st.h_y -= xlog2x(p);
        st.length_dist[static_cast<int>(y.size())] += p;
        st.e_m += p * static_cast<double>(y.size());
    }
    for (std::size_t x = 0; x < cl.law.size(); ++x) {
        if (input_dist[x] <= 0.0) continue;
        double hx = 0.0;
        for (const auto& [y, p] : cl.law[x]) hx -= xlog2x(p);
        st.h_y_given_x += input_dist[x] * hx;
    }
    st.mutual_info = st.h_y - st.h_y_given_x;
    return st;
}

inline std::vector<double> uniform_input_dist(int n) {
    return std::vector<double>(std::size_t(1) << n, 1.0 / double(std::size_t(1) << n));
}

// Conditional symbol entropy H(Y^(q)_j | Y_j) of a symmetric DMC; the rows are
// permutations of each other so either row works.
inline double dmc_symbol_cond_entropy(const DmcMatrix& dmc) {
    return entropy_base2(dmc.rows[0]);
}

namespace detail {

// Group a marginal by string length and normalize to conditionals p(.|m).
inline std::map<int, OutputDist> by_length_conditional(const OutputDist& marg) {
    std::map<int, OutputDist> grouped;
    std::map<int, double> mass;
    for (const auto& [y, p] : marg) {
        grouped[static_cast<int>(y.size())][y] += p;
        mass[static_cast<int>(y.size())] += p;
    }
    for (auto& [m, dist] : grouped)
        for (auto& [y, p] : dist) p /= mass[m];
    return grouped;
}

} // namespace detail

// E_M{ log( sum_{y^q} sum_{y: p(y)!=0} p(y^q|y,M) p(y^q|M) ) }: the exact
// Jensen-gap term in the output-entropy lower bound.
inline double lemma1_rhs(const ChannelLaw& cl_pre, const ChannelLaw& cl_post,
                         const DmcMatrix& dmc, const std::vector<double>& input_dist) {
    const OutputDist pre_marg = output_marginal(cl_pre, input_dist);
    const OutputDist post_marg = output_marginal(cl_post, input_dist);
    const auto pre_by_m = detail::by_length_conditional(pre_marg);
    const auto post_by_m = detail::by_length_conditional(post_marg);

    std::map<int, double> p_m;
    for (const auto& [y, p] : pre_marg) p_m[static_cast<int>(y.size())] += p;

    double rhs = 0.0;
    for (const auto& [m, pm] : p_m) {
        if (pm <= 0.0) continue;
        double s = 0.0;
        const auto& posts = post_by_m.at(m);
        const auto& pres = pre_by_m.at(m);
        for (const auto& [yq, pq] : posts) {
            double inner = 0.0;
            for (const auto& [y, py] : pres) {
                if (py <= kSupportEps) continue;
                double prod = 1.0;
                for (int i = 0; i < m; ++i) prod *= dmc.rows[y[i] - '0'][yq[i] - '0'];
                inner += prod;
            }
            s += pq * inner;
        }
        rhs += pm * std::log2(s);
    }
    return rhs;
}

inline double lemma1_rhs(const ChannelLaw& cl_pre, const DmcMatrix& dmc,
                         const std::vector<double>& input_dist) {
    return lemma1_rhs(cl_pre, cascade_law(cl_pre, dmc), dmc, input_dist);
}

struct InequalityReport {
    std::string config;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs for upper bounds, lhs - rhs for lower bounds
    bool pass = false;
};

inline nlohmann::json report_to_json(const InequalityReport& r) {
    return nlohmann::json{{"config", r.config}, {"lhs", r.lhs},  {"rhs", r.rhs},
                          {"slack", r.slack},   {"pass", r.pass}};
}

// H(Y^(q)|X) <= H(Y|X) + E{M} H(Y^(q)_j|Y_j), both sides exact.
inline InequalityReport verify_lemma2(const ChannelLaw& cl_pre, const ChannelLaw& cl_post,
                                      const DmcMatrix& dmc,
                                      const std::vector<double>& input_dist) {
    const JointStats pre = joint_stats(cl_pre, input_dist);
    const JointStats post = joint_stats(cl_post, input_dist);
    InequalityReport r;
    r.config = "lemma2";
    r.lhs = post.h_y_given_x;
    r.rhs = pre.h_y_given_x + pre.e_m * dmc_symbol_cond_entropy(dmc);
    r.slack = r.rhs - r.lhs;
    r.pass = r.slack >= -1e-10;
    return r;
}

inline InequalityReport verify_lemma2(const ChannelLaw& cl_pre, const DmcMatrix& dmc,
                                      const std::vector<double>& input_dist) {
    return verify_lemma2(cl_pre, cascade_law(cl_pre, dmc), dmc, input_dist);
}

// Closed-form base of the per-length sum for a symmetric matrix, read off the
// label-indexed probabilities: 2 p_0^2 + sum (p_k + p_{-k})^2 (odd q) or
// sum (p_k + p_{-k})^2 (even q).
inline double appendix_closed_form_base(const DmcMatrix& dmc) {
    std::map<int, double> p;  // p_k by label, from the row for b = +1
    for (int i = 0; i < dmc.q; ++i) p[dmc.labels[i]] = dmc.rows[1][i];
    double base = 0.0;
    if (p.count(0)) base += 2.0 * p[0] * p[0];
    for (const auto& [k, pk] : p) {
        if (k <= 0) continue;
        const double pair = pk + p.at(-k);
        base += pair * pair;
    }
    return base;
}

// Brute-force check that sum_{y^q} p(y^q|m) sum_{all y} p(y^q|y,m) equals
// base^m under a full-support (i.u.d.) y-distribution.
inline InequalityReport verify_appendix_sums(const DmcMatrix& dmc, int m) {
    if (m < 1 || m > 8 || dmc.q > 6)
        throw std::domain_error("verify_appendix_sums: need 1 <= m <= 8 and q <= 6");
    const double inv_tuples = 1.0 / double(std::size_t(1) << m);
    double total = 0.0;
    std::vector<int> yq(m, 0);
    for (;;) {
        // p(y^q|m) under i.u.d. y, and the unrestricted inner sum over y.
        double marg = 0.0, inner = 0.0;
        for (std::uint32_t y = 0; y < (std::uint32_t(1) << m); ++y) {
            double prod = 1.0;
            for (int i = 0; i < m; ++i) prod *= dmc.rows[word_bit(y, m, i)][yq[i]];
            marg += inv_tuples * prod;
            inner += prod;
        }
        total += marg * inner;
        int pos = m - 1;
        while (pos >= 0 && ++yq[pos] == dmc.q) yq[pos--] = 0;
        if (pos < 0) break;
    }
    InequalityReport r;
    r.config = "appendix-sums q=" + std::to_string(dmc.q) + " m=" + std::to_string(m);
    r.lhs = total;
    r.rhs = std::pow(appendix_closed_form_base(dmc), m);
    r.slack = std::abs(r.lhs - r.rhs);
    r.pass = r.slack <= 1e-9;
    return r;
}

// Finite-n premise of the capacity-transfer argument: I_composite >= I_base + A.
inline InequalityReport verify_proposition1(
    const std::vector<std::tuple<double, double, double>>& c_pairs) {
    InequalityReport r;
    r.config = "proposition1";
    r.slack = std::numeric_limits<double>::infinity();
    for (const auto& [i_comp, i_base, a] : c_pairs)
        r.slack = std::min(r.slack, i_comp - (i_base + a));
    r.pass = r.slack >= -1e-10;
    return r;
}

// Blahut-Arimoto capacity of a binary-input memoryless matrix, with the
// Csiszar bracket as the stopping rule.
inline double baa_capacity(const DmcMatrix& dmc, double tol = 1e-9, int max_iter = 10000) {
    if (tol <= 0.0) throw std::domain_error("baa_capacity: tol must be positive");
    std::vector<double> p = {0.5, 0.5};
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> q(dmc.q, 0.0);
        for (int b = 0; b < 2; ++b)
            for (int s = 0; s < dmc.q; ++s) q[s] += p[b] * dmc.rows[b][s];
        double d[2] = {0.0, 0.0};
        for (int b = 0; b < 2; ++b)
            for (int s = 0; s < dmc.q; ++s)
                if (dmc.rows[b][s] > 0.0)
                    d[b] += dmc.rows[b][s] * std::log2(dmc.rows[b][s] / q[s]);
        const double lower = p[0] * d[0] + p[1] * d[1];
        const double upper = std::max(d[0], d[1]);
        if (upper - lower < tol) return lower;
        const double w0 = p[0] * std::exp2(d[0]);
        const double w1 = p[1] * std::exp2(d[1]);
        p = {w0 / (w0 + w1), w1 / (w0 + w1)};
    }
    throw std::runtime_error("baa_capacity: no convergence within max_iter");
}

struct McRate {
    double estimate = 0.0;
    double stderror = 0.0;
};

// Seeded Monte-Carlo estimate of E{M}/n for i.u.d. inputs. Single worker;
// bit-for-bit reproducible at a fixed seed.
inline McRate mc_estimate_rate(const SyncKernel& k, int n, int trials, std::uint64_t seed) {
    if (n < 1 || trials < 1) throw std::domain_error("mc_estimate_rate: need n >= 1, trials >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> bit(0, 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < trials; ++t) {
        long m = 0;
        for (int i = 0; i < n; ++i) {
            const int b = bit(rng);
            const auto& ents = k.entries[b];
            double u = unif(rng);
            std::size_t idx = 0;
            for (; idx + 1 < ents.size(); ++idx) {
                u -= ents[idx].prob;
                if (u <= 0.0) break;
            }
            m += static_cast<long>(ents[idx].out.size());
        }
        const double rate = double(m) / n;
        sum += rate;
        sumsq += rate * rate;
    }
    McRate out;
    out.estimate = sum / trials;
    const double var = std::max(0.0, sumsq / trials - out.estimate * out.estimate);
    out.stderror = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
    return out;
}

} // namespace syncap
