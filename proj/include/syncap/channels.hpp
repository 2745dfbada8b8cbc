#pragma once

// Channel objects: memoryless synchronization-error kernels (Dobrushin model),
// binary-input symmetric q-ary output matrices, and the cascade decomposition
// example.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "syncap/entropy.hpp"

namespace syncap {

inline constexpr double kConstructTol = 1e-12;

// Per-symbol stochastic law: input bit -> distribution over output bit-strings.
// The empty string models a deletion. Output strings use chars '0'/'1'.
struct SyncKernel {
    struct Entry {
        std::string out;
        double prob;
    };
    std::array<std::vector<Entry>, 2> entries;
    int l_max = 0;
};

// Binary-input q-ary-output memoryless transition matrix.
// rows[0] is the row for input bit 0, rows[1] for input bit 1.
// Labels are ascending; odd q includes 0, even q skips it.
struct DmcMatrix {
    int q = 2;
    std::array<std::vector<double>, 2> rows;
    std::vector<int> labels;
    bool symmetric = false;
};

namespace detail {

inline void validate_kernel(const SyncKernel& k, double tol) {
    for (int b = 0; b < 2; ++b) {
        double sum = 0.0;
        for (const auto& e : k.entries[b]) {
            if (e.prob <= 0.0 || e.prob > 1.0 + tol)
                throw std::invalid_argument("SyncKernel: probability out of (0,1] for input bit " +
                                            std::to_string(b));
            if (static_cast<int>(e.out.size()) > k.l_max)
                throw std::invalid_argument("SyncKernel: output string exceeds L_max");
            for (char c : e.out)
                if (c != '0' && c != '1')
                    throw std::invalid_argument("SyncKernel: output strings must be binary");
            sum += e.prob;
        }
        if (std::abs(sum - 1.0) > tol)
            throw std::invalid_argument("SyncKernel: probabilities for input bit " +
                                        std::to_string(b) + " sum to " + std::to_string(sum));
    }
}

inline void validate_dmc(const DmcMatrix& m, double tol) {
    if (m.q < 2) throw std::invalid_argument("DmcMatrix: q must be >= 2");
    if (static_cast<int>(m.labels.size()) != m.q)
        throw std::invalid_argument("DmcMatrix: label count does not match q");
    for (int b = 0; b < 2; ++b) {
        if (static_cast<int>(m.rows[b].size()) != m.q)
            throw std::invalid_argument("DmcMatrix: row length does not match q");
        double sum = 0.0;
        for (double v : m.rows[b]) {
            if (v < 0.0 || v > 1.0 + tol)
                throw std::invalid_argument("DmcMatrix: entry out of [0,1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol)
            throw std::invalid_argument("DmcMatrix: row does not sum to 1");
    }
}

inline std::vector<int> make_labels(int q) {
    std::vector<int> labels;
    if (q % 2 == 1) {
        for (int k = -(q - 1) / 2; k <= (q - 1) / 2; ++k) labels.push_back(k);
    } else {
        for (int k = -q / 2; k <= -1; ++k) labels.push_back(k);
        for (int k = 1; k <= q / 2; ++k) labels.push_back(k);
    }
    return labels;
}

} // namespace detail

// Row 1 with mirrored labels must equal row 0 (binary-input shortcut for
// Gallager symmetry).
inline bool check_symmetry(const DmcMatrix& m) {
    for (int i = 0; i < m.q; ++i)
        if (std::abs(m.rows[0][i] - m.rows[1][m.q - 1 - i]) > kConstructTol) return false;
    return true;
}

// i.i.d. deletion channel: each bit deleted w.p. p_d, else passed unchanged.
inline SyncKernel deletion_kernel(double p_d) {
    if (p_d < 0.0 || p_d > 1.0) throw std::domain_error("deletion_kernel: p_d out of [0,1]");
    SyncKernel k;
    k.l_max = 1;
    for (int b = 0; b < 2; ++b) {
        if (p_d > 0.0) k.entries[b].push_back({"", p_d});
        if (p_d < 1.0) k.entries[b].push_back({std::string(1, char('0' + b)), 1.0 - p_d});
    }
    detail::validate_kernel(k, kConstructTol);
    return k;
}

// Gallager's ins/del model: deletion w.p. p_d, replacement by two random bits
// w.p. p_i (uniform over the four 2-bit strings), else transmitted.
inline SyncKernel gallager_kernel(double p_d, double p_i) {
    if (p_d < 0.0 || p_i < 0.0 || p_d + p_i > 1.0 + kConstructTol)
        throw std::domain_error("gallager_kernel: need p_d,p_i >= 0 and p_d+p_i <= 1");
    SyncKernel k;
    k.l_max = 2;
    const double p_t = 1.0 - p_d - p_i;
    for (int b = 0; b < 2; ++b) {
        if (p_d > 0.0) k.entries[b].push_back({"", p_d});
        if (p_t > 0.0) k.entries[b].push_back({std::string(1, char('0' + b)), p_t});
        if (p_i > 0.0)
            for (const char* s : {"00", "01", "10", "11"})
                k.entries[b].push_back({s, p_i / 4.0});
    }
    detail::validate_kernel(k, kConstructTol);
    return k;
}

// User-supplied kernel table; zero-probability rows are dropped.
inline SyncKernel custom_kernel(const std::vector<std::tuple<int, std::string, double>>& table) {
    SyncKernel k;
    for (const auto& [bit, out, prob] : table) {
        if (bit != 0 && bit != 1) throw std::invalid_argument("custom_kernel: input bit must be 0 or 1");
        if (prob < 0.0) throw std::invalid_argument("custom_kernel: negative probability");
        if (prob == 0.0) continue;
        k.entries[bit].push_back({out, prob});
        k.l_max = std::max(k.l_max, static_cast<int>(out.size()));
    }
    detail::validate_kernel(k, kProbTol);
    return k;
}

// Substitution/erasure channel: flip w.p. p_s, erase w.p. p_e.
// Labels (-1, 0, +1); for input bit b the "correct" label is 2b-1.
inline DmcMatrix sub_ers_dmc(double p_s, double p_e) {
    if (p_s < 0.0 || p_e < 0.0 || p_s + p_e > 1.0 + kConstructTol)
        throw std::domain_error("sub_ers_dmc: need p_s,p_e >= 0 and p_s+p_e <= 1");
    DmcMatrix m;
    m.q = 3;
    m.labels = {-1, 0, 1};
    const double p_c = 1.0 - p_s - p_e;
    m.rows[0] = {p_c, p_e, p_s};
    m.rows[1] = {p_s, p_e, p_c};
    m.symmetric = check_symmetry(m);
    detail::validate_dmc(m, kConstructTol);
    return m;
}

enum class Parity { Odd, Even };

// General symmetric q-ary matrix from the label-indexed probabilities p_k,
// passed in ascending label order. Mirror rule: P(Y=k | bit b) = p_{k*(2b-1)}.
inline DmcMatrix qary_dmc(const std::vector<double>& probs, Parity parity) {
    const int q = static_cast<int>(probs.size());
    if (q < 2) throw std::invalid_argument("qary_dmc: need at least 2 output symbols");
    if ((parity == Parity::Odd) != (q % 2 == 1))
        throw std::invalid_argument("qary_dmc: vector length does not match parity convention");
    double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(sum - 1.0) > kProbTol)
        throw std::invalid_argument("qary_dmc: probabilities do not sum to 1");
    DmcMatrix m;
    m.q = q;
    m.labels = detail::make_labels(q);
    m.rows[1] = probs;
    m.rows[0].assign(probs.rbegin(), probs.rend());
    m.symmetric = check_symmetry(m);
    detail::validate_dmc(m, kProbTol);
    return m;
}

// Binary symmetric channel as a DmcMatrix with labels (-1, +1).
inline DmcMatrix bsc_dmc(double rho) {
    if (rho < 0.0 || rho > 1.0) throw std::domain_error("bsc_dmc: crossover out of [0,1]");
    return qary_dmc({rho, 1.0 - rho}, Parity::Even);
}

// Per-symbol expected output length r, averaged over equiprobable input bits.
inline double expected_output_rate(const SyncKernel& k) {
    double r = 0.0;
    for (int b = 0; b < 2; ++b)
        for (const auto& e : k.entries[b]) r += 0.5 * e.prob * static_cast<double>(e.out.size());
    return r;
}

// Apply a binary-output DMC to every output symbol of a kernel, yielding the
// composed synchronization-error kernel (lengths are preserved).
inline SyncKernel compose_with_binary_dmc(const SyncKernel& k, const DmcMatrix& dmc) {
    if (dmc.q != 2) throw std::invalid_argument("compose_with_binary_dmc: DMC must be binary-output");
    SyncKernel out;
    out.l_max = k.l_max;
    for (int b = 0; b < 2; ++b) {
        std::map<std::string, double> acc;
        for (const auto& e : k.entries[b]) {
            const int len = static_cast<int>(e.out.size());
            for (int mask = 0; mask < (1 << len); ++mask) {
                std::string s(len, '0');
                double p = e.prob;
                for (int i = 0; i < len; ++i) {
                    const int yi = (mask >> i) & 1;
                    s[i] = char('0' + yi);
                    p *= dmc.rows[e.out[i] - '0'][yi];
                }
                if (p > 0.0) acc[s] += p;
            }
        }
        for (const auto& [s, p] : acc) out.entries[b].push_back({s, p});
    }
    detail::validate_kernel(out, kProbTol);
    return out;
}

// Cascade decomposition example: a hypothetical synchronization-error channel
// that factors into a simpler synchronization channel followed by a BSC.
struct DecompositionPair {
    double alpha = 0.0;
    double beta = 0.0;
    SyncKernel first;
    DmcMatrix second;
    SyncKernel composed;
};

inline SyncKernel decomposition_target(double alpha, double beta) {
    const double g = 0.5 - (alpha + beta);
    const double s = std::sqrt((alpha - beta) / (alpha + beta));
    std::vector<std::tuple<int, std::string, double>> table;
    for (int b = 0; b < 2; ++b) {
        const std::string same(1, char('0' + b));
        const std::string other(1, char('0' + (1 - b)));
        table.emplace_back(b, same, g * (1.0 + s));
        table.emplace_back(b, other, g * (1.0 - s));
        table.emplace_back(b, "00", alpha);
        table.emplace_back(b, "01", beta);
        table.emplace_back(b, "10", beta);
        table.emplace_back(b, "11", alpha);
    }
    return custom_kernel(table);
}

inline DecompositionPair decompose_example(double alpha, double beta) {
    if (beta < 0.0 || beta > alpha || alpha + beta > 0.5 || alpha + beta <= 0.0)
        throw std::domain_error("decompose_example: need 0 <= beta <= alpha, 0 < alpha+beta <= 1/2");
    DecompositionPair d;
    d.alpha = alpha;
    d.beta = beta;
    const double ab = alpha + beta;
    // First stage: keep the bit w.p. 1-2(a+b), duplicate to 00 or 11 w.p. a+b each.
    std::vector<std::tuple<int, std::string, double>> table;
    for (int b = 0; b < 2; ++b) {
        table.emplace_back(b, std::string(1, char('0' + b)), 1.0 - 2.0 * ab);
        table.emplace_back(b, "00", ab);
        table.emplace_back(b, "11", ab);
    }
    d.first = custom_kernel(table);
    const double rho = 0.5 - 0.5 * std::sqrt((alpha - beta) / ab);
    d.second = bsc_dmc(rho);
    d.composed = compose_with_binary_dmc(d.first, d.second);

    // Composition must reproduce the analytic target entrywise.
    const SyncKernel target = decomposition_target(alpha, beta);
    for (int b = 0; b < 2; ++b) {
        std::map<std::string, double> got, want;
        for (const auto& e : d.composed.entries[b]) got[e.out] += e.prob;
        for (const auto& e : target.entries[b]) want[e.out] += e.prob;
        for (const auto& [s, p] : want)
            if (std::abs(got[s] - p) > kConstructTol)
                throw std::runtime_error("decompose_example: composition mismatch at output " + s);
    }
    return d;
}

// --- JSON serialization (CLI --channel-file format) ---

inline nlohmann::json kernel_to_json(const SyncKernel& k) {
    nlohmann::json inputs = nlohmann::json::object();
    for (int b = 0; b < 2; ++b) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& e : k.entries[b]) rows.push_back({e.out, e.prob});
        inputs[std::to_string(b)] = rows;
    }
    return nlohmann::json{{"inputs", inputs}};
}

inline SyncKernel kernel_from_json(const nlohmann::json& j) {
    std::vector<std::tuple<int, std::string, double>> table;
    const auto& inputs = j.at("inputs");
    for (int b = 0; b < 2; ++b)
        for (const auto& row : inputs.at(std::to_string(b)))
            table.emplace_back(b, row.at(0).get<std::string>(), row.at(1).get<double>());
    return custom_kernel(table);
}

inline nlohmann::json dmc_to_json(const DmcMatrix& m) {
    return nlohmann::json{{"q", m.q}, {"rows", {m.rows[0], m.rows[1]}}, {"labels", m.labels}};
}

inline DmcMatrix dmc_from_json(const nlohmann::json& j) {
    DmcMatrix m;
    m.q = j.at("q").get<int>();
    m.rows[0] = j.at("rows").at(0).get<std::vector<double>>();
    m.rows[1] = j.at("rows").at(1).get<std::vector<double>>();
    m.labels = j.contains("labels") ? j.at("labels").get<std::vector<int>>()
                                    : detail::make_labels(m.q);
    detail::validate_dmc(m, kProbTol);
    m.symmetric = check_symmetry(m);
    return m;
}

} // namespace syncap
