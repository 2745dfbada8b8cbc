// syncap: capacity lower bounds for noisy channels with synchronization
// errors, plus the exact small-blocklength verification suite.
//
// Exit codes: 0 ok, 1 data error, 2 argument error, 3 table mismatch,
// 4 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "syncap/suite.hpp"
#include "syncap/syncap.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitArgs = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitVerify = 4;

bool stdout_is_tty() { return isatty(fileno(stdout)) != 0; }

std::string bold(const std::string& s, bool enable) {
    return enable ? "\033[1m" + s + "\033[0m" : s;
}

void print_bound(const syncap::BoundResult& b, bool clamp, const std::string& csv_path) {
    const double value = clamp ? std::max(b.value, 0.0) : b.value;
    std::printf("%-16s %8.4f  (c_s=%.4f [%s], r=%.4f, penalty=%.4f)\n", b.formula.c_str(),
                value, b.c_s_input, b.c_s_provenance.c_str(), b.r, b.penalty);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open " + csv_path);
        char buf[256];
        out << "formula,value,c_s,r,penalty\n";
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g\n", b.formula.c_str(), value,
                      b.c_s_input, b.r, b.penalty);
        out << buf;
    }
}

double resolve_cs(const std::string& cs_table, double cs_value, double p_d, double p_i,
                  std::string* provenance) {
    if (!cs_table.empty()) {
        const auto table = syncap::load_table(cs_table);
        *provenance = "table:" + cs_table;
        return syncap::lookup_cs(table, p_d, p_i);
    }
    *provenance = "cli";
    return cs_value;
}

int cmd_table_v(const std::string& file, const std::string& cs_table) {
    const auto table = syncap::load_table(file);
    const auto cs = syncap::load_table(cs_table);
    if (table.comparison_rows.empty())
        throw std::runtime_error(file + " contains no comparison rows");
    const bool tty = stdout_is_tty();
    bool all_match = true;
    std::printf("%6s %6s %6s %10s %10s %10s %10s\n", "p_d", "p_i", "p_s", "gallager", "eq10",
                "dario2", "ub");
    for (const auto& row : table.comparison_rows) {
        const double gal = syncap::gallager_bound(row.p_d, row.p_i, row.p_s).value;
        const double c_id = syncap::lookup_cs(cs, row.p_d, row.p_i);
        const double eq10 = syncap::ids_bound(c_id, row.p_d, row.p_i, row.p_s).value;
        const bool gal_ok = std::abs(gal - row.lb_gallager) <= 5e-4;
        const bool eq10_ok = std::abs(eq10 - row.lb_eq10) <= 5e-4;
        if (!gal_ok || !eq10_ok) {
            all_match = false;
            std::fprintf(stderr,
                         "mismatch at (p_d=%g, p_i=%g, p_s=%g): gallager %.4f vs %.4f, "
                         "eq10 %.4f vs %.4f\n",
                         row.p_d, row.p_i, row.p_s, gal, row.lb_gallager, eq10, row.lb_eq10);
        }
        const double best = std::max({row.lb_gallager, row.lb_eq10, row.lb_dario2});
        auto cell = [&](double recomputed, double published) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%10.4f", recomputed);
            return std::abs(published - best) < 5e-4 ? bold(buf, tty) : std::string(buf);
        };
        std::printf("%6g %6g %6g %s %s %s %10.4f\n", row.p_d, row.p_i, row.p_s,
                    cell(gal, row.lb_gallager).c_str(), cell(eq10, row.lb_eq10).c_str(),
                    cell(row.lb_dario2, row.lb_dario2).c_str(), row.ub_dario2);
    }
    return all_match ? kExitOk : kExitMismatch;
}

int cmd_awgn_curve(const std::vector<double>& pds, double snr_min, double snr_max, int steps,
                   const std::string& quantizer, const std::string& cs_table,
                   const std::string& out_path, bool interpolate) {
    const auto cs = syncap::load_table(cs_table);
    const syncap::QuantKind kind =
        quantizer == "uniform" ? syncap::QuantKind::Uniform : syncap::QuantKind::Nonuniform;
    std::ostringstream csv;
    csv << "snr_db,sigma,p_d,bound\n";
    char buf[160];
    for (double p_d : pds) {
        const double c_s = interpolate ? syncap::lookup_cs_interpolated(cs, p_d, 0.0)
                                       : syncap::lookup_cs(cs, p_d, 0.0);
        const double r = 1.0 - p_d;
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < steps; ++i) {
            const double snr_db =
                steps == 1 ? snr_min : snr_min + (snr_max - snr_min) * i / double(steps - 1);
            // Unit-energy BPSK: SNR(dB) = 10 log10(1/sigma^2).
            const double sigma = std::pow(10.0, -snr_db / 20.0);
            const auto b = syncap::awgn_bound(c_s, r, sigma, {kind, 0});
            if (b.value < prev - 1e-12)
                throw std::runtime_error("curve not monotone nondecreasing in SNR");
            prev = b.value;
            std::snprintf(buf, sizeof buf, "%.6g,%.17g,%.17g,%.17g\n", snr_db, sigma, p_d,
                          b.value);
            csv << buf;
        }
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << csv.str();
    }
    return kExitOk;
}

int run_verify(const std::string& check, int q, int m, double alpha, double beta,
               std::uint64_t seed, const std::string& channel_file,
               const std::string& report_path, int workers) {
    std::vector<syncap::InequalityReport> reports;
    const std::size_t budget = syncap::budget_from_env();

    if (check == "all" || check == "lemmas") {
        if (channel_file.empty()) {
            auto r = syncap::run_inequality_suite(budget);
            reports.insert(reports.end(), r.begin(), r.end());
        } else {
            std::ifstream in(channel_file);
            if (!in) throw std::runtime_error("cannot open " + channel_file);
            nlohmann::json j;
            in >> j;
            const auto kernel = syncap::kernel_from_json(j);
            for (const auto& nd : syncap::default_dmcs())
                for (int n = 2; n <= 3; ++n) {
                    auto r = syncap::verify_configuration("custom x " + nd.name +
                                                              " n=" + std::to_string(n),
                                                          kernel, nd.dmc, n, budget);
                    reports.insert(reports.end(), r.begin(), r.end());
                }
        }
    }
    if (check == "all") {
        auto r = syncap::run_appendix_suite();
        reports.insert(reports.end(), r.begin(), r.end());
        auto d = syncap::run_decomposition_grid();
        reports.insert(reports.end(), d.begin(), d.end());
    }
    if (check == "appendix-sums") {
        std::vector<double> probs;
        if (q == 3) probs = {0.05, 0.1, 0.85};
        else if (q == 4) probs = {0.05, 0.1, 0.7, 0.15};
        else if (q == 5) probs = {0.02, 0.08, 0.1, 0.3, 0.5};
        else if (q == 6) probs = {0.02, 0.03, 0.1, 0.6, 0.15, 0.1};
        else throw std::runtime_error("appendix-sums: supported q are 3..6");
        const auto dmc =
            syncap::qary_dmc(probs, q % 2 == 1 ? syncap::Parity::Odd : syncap::Parity::Even);
        reports.push_back(syncap::verify_appendix_sums(dmc, m));
    }
    if (check == "decomposition") {
        syncap::InequalityReport r;
        r.config = "decomposition alpha=" + std::to_string(alpha) +
                   " beta=" + std::to_string(beta);
        syncap::decompose_example(alpha, beta);
        r.pass = true;
        reports.push_back(r);
    }
    if (check == "baa") {
        syncap::InequalityReport r;
        r.config = "baa BSC(0.11) vs 1-H_b(0.11)";
        r.lhs = syncap::baa_capacity(syncap::bsc_dmc(0.11), 1e-9);
        r.rhs = 1.0 - syncap::binary_entropy(0.11);
        r.slack = std::abs(r.lhs - r.rhs);
        r.pass = r.slack <= 1e-6;
        reports.push_back(r);
    }
    if (check == "mc-rate") {
        const auto est = syncap::mc_estimate_rate(syncap::deletion_kernel(0.1), 1000, 10000, seed);
        syncap::InequalityReport r;
        r.config = "mc-rate del(0.1) seed=" + std::to_string(seed);
        r.lhs = est.estimate;
        r.rhs = 0.9;
        r.slack = std::abs(est.estimate - 0.9);
        r.pass = r.slack <= 3.0 * est.stderror + 1e-12;
        reports.push_back(r);
    }
    if (reports.empty()) throw std::runtime_error("unknown --check selector '" + check + "'");

    bool all_pass = true;
    for (const auto& r : reports) {
        std::printf("%-4s %s", r.pass ? "PASS" : "FAIL", r.config.c_str());
        if (r.lhs != 0.0 || r.rhs != 0.0)
            std::printf("  (lhs=%.10g rhs=%.10g slack=%.3g)", r.lhs, r.rhs, r.slack);
        std::printf("\n");
        all_pass = all_pass && r.pass;
    }
    if (!report_path.empty()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reports) j.push_back(syncap::report_to_json(r));
        nlohmann::json doc{{"workers", workers}, {"seed", seed}, {"checks", j}};
        std::ofstream out(report_path);
        if (!out) throw std::runtime_error("cannot open " + report_path);
        out << doc.dump(2) << "\n";
    }
    return all_pass ? kExitOk : kExitVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity lower bounds for channels with synchronization errors"};
    app.require_subcommand(1);

    // --- bound ---
    auto* bound = app.add_subcommand("bound", "Evaluate a capacity lower bound");
    bound->require_subcommand(1);
    double p_d = 0.0, p_i = 0.0, p_s = 0.0, p_e = 0.0, cs_value = 1.0, r_value = 1.0;
    double sigma = 1.0;
    bool clamp = false;
    std::string cs_table, csv_path, quantizer = "nonuniform", parity = "odd";
    std::vector<double> qary_probs;
    int finite_m = 0;
    bound->fallthrough();
    bound->add_flag("--clamp", clamp, "Clamp reported bounds at 0");
    bound->add_option("--csv", csv_path, "Write machine-readable output to this CSV file");

    auto* b_gal = bound->add_subcommand("gallager", "Direct sub/ins/del bound");
    b_gal->add_option("--pd", p_d)->required();
    b_gal->add_option("--pi", p_i);
    b_gal->add_option("--ps", p_s)->required();

    auto* b_ids = bound->add_subcommand("ids", "Ins/del/sub composite bound");
    b_ids->add_option("--pd", p_d)->required();
    b_ids->add_option("--pi", p_i);
    b_ids->add_option("--ps", p_s)->required();
    b_ids->add_option("--cs-table", cs_table, "C_id lookup CSV (schema p_d,p_i,c_lb,source)");
    b_ids->add_option("--cid", cs_value, "C_id value (alternative to --cs-table)");

    auto* b_seid = bound->add_subcommand("seid", "Sub/ers/ins/del composite bound");
    b_seid->add_option("--pd", p_d)->required();
    b_seid->add_option("--pi", p_i);
    b_seid->add_option("--ps", p_s)->required();
    b_seid->add_option("--pe", p_e)->required();
    b_seid->add_option("--cs-table", cs_table);
    b_seid->add_option("--cid", cs_value);

    auto* b_ses = bound->add_subcommand("ses", "Sub/ers/synch composite bound");
    b_ses->add_option("--cs", cs_value)->required();
    b_ses->add_option("--r", r_value)->required();
    b_ses->add_option("--ps", p_s)->required();
    b_ses->add_option("--pe", p_e)->required();

    auto* b_qary = bound->add_subcommand("qary", "Symmetric q-ary output composite bound");
    b_qary->add_option("--probs", qary_probs, "p_k in ascending label order")->required();
    b_qary->add_option("--parity", parity, "odd|even");
    b_qary->add_option("--cs", cs_value)->required();
    b_qary->add_option("--r", r_value)->required();

    auto* b_awgn = bound->add_subcommand("awgn", "AWGN/synch composite bound");
    b_awgn->add_option("--sigma", sigma, "Noise std dev (unit-energy BPSK)")->required();
    b_awgn->add_option("--cs", cs_value)->required();
    b_awgn->add_option("--r", r_value)->required();
    b_awgn->add_option("--quantizer", quantizer, "uniform|nonuniform|finite");
    b_awgn->add_option("--levels", finite_m, "M for the finite quantizer (2M levels)");

    // Let the shared --clamp/--csv options appear after the formula subcommand.
    for (auto* sub : {b_gal, b_ids, b_seid, b_ses, b_qary, b_awgn}) sub->fallthrough();

    // --- tableV ---
    auto* tablev = app.add_subcommand("tableV", "Recompute and diff the comparison table");
    std::string tablev_file, tablev_cs;
    tablev->add_option("--file", tablev_file, "Comparison CSV")->required();
    tablev->add_option("--cs-table", tablev_cs, "C_id CSV")->required();

    // --- awgn-curve ---
    auto* curve = app.add_subcommand("awgn-curve", "Emit bound-vs-SNR CSV curves");
    std::vector<double> curve_pds;
    double snr_min = 0.0, snr_max = 10.0;
    int snr_steps = 11;
    std::string curve_out, curve_cs, curve_quant = "nonuniform";
    bool interpolate = false;
    curve->add_option("--pd", curve_pds, "Deletion probabilities")->required();
    curve->add_option("--snr-min", snr_min, "SNR(dB) = 10 log10(1/sigma^2)");
    curve->add_option("--snr-max", snr_max);
    curve->add_option("--snr-steps", snr_steps);
    curve->add_option("--quantizer", curve_quant, "uniform|nonuniform");
    curve->add_option("--cs-table", curve_cs, "C_s CSV covering the requested p_d")->required();
    curve->add_option("--out", curve_out, "Output CSV path (default stdout)");
    curve->add_flag("--interpolate", interpolate,
                    "Linear interpolation in p_d (non-rigorous, plotting only)");

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "Run the exact-enumeration verification suite");
    std::string check = "all", channel_file, report_path;
    int v_q = 5, v_m = 4, workers = 1;
    double v_alpha = 0.1, v_beta = 0.05;
    std::uint64_t seed = 12345;
    verify->add_option("--check", check,
                       "all|lemmas|appendix-sums|decomposition|baa|mc-rate");
    verify->add_option("--q", v_q, "Output alphabet size for appendix-sums");
    verify->add_option("--m", v_m, "Sequence length for appendix-sums");
    verify->add_option("--alpha", v_alpha);
    verify->add_option("--beta", v_beta);
    verify->add_option("--seed", seed);
    verify->add_option("--workers", workers, "Declared worker count (recorded in reports)");
    verify->add_option("--channel-file", channel_file, "Kernel JSON to verify against");
    verify->add_option("--report", report_path, "Write JSON report here");

    // --- decompose ---
    auto* decomp = app.add_subcommand("decompose", "Cascade decomposition example");
    double d_alpha = 0.1, d_beta = 0.05;
    decomp->add_option("--alpha", d_alpha)->required();
    decomp->add_option("--beta", d_beta)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitArgs;
    }

    try {
        if (b_gal->parsed()) {
            print_bound(syncap::gallager_bound(p_d, p_i, p_s), clamp, csv_path);
        } else if (b_ids->parsed()) {
            std::string prov;
            const double c_id = resolve_cs(cs_table, cs_value, p_d, p_i, &prov);
            print_bound(syncap::ids_bound(c_id, p_d, p_i, p_s, prov), clamp, csv_path);
        } else if (b_seid->parsed()) {
            std::string prov;
            const double c_id = resolve_cs(cs_table, cs_value, p_d, p_i, &prov);
            print_bound(syncap::seid_bound(c_id, p_d, p_i, p_s, p_e, prov), clamp, csv_path);
        } else if (b_ses->parsed()) {
            print_bound(syncap::ses_bound(cs_value, r_value, p_s, p_e), clamp, csv_path);
        } else if (b_qary->parsed()) {
            const bool odd = parity == "odd";
            const double pen = odd ? syncap::penalty_qary_odd(qary_probs)
                                   : syncap::penalty_qary_even(qary_probs);
            print_bound(
                syncap::composite_bound(cs_value, r_value, pen, odd ? "qary_odd" : "qary_even"),
                clamp, csv_path);
        } else if (b_awgn->parsed()) {
            syncap::AwgnMode mode;
            if (quantizer == "uniform") mode = {syncap::QuantKind::Uniform, 0};
            else if (quantizer == "nonuniform") mode = {syncap::QuantKind::Nonuniform, 0};
            else if (quantizer == "finite") mode = {syncap::QuantKind::Nonuniform, finite_m};
            else throw CLI::ValidationError("--quantizer", "unknown quantizer mode");
            print_bound(syncap::awgn_bound(cs_value, r_value, sigma, mode), clamp, csv_path);
        } else if (tablev->parsed()) {
            return cmd_table_v(tablev_file, tablev_cs);
        } else if (curve->parsed()) {
            return cmd_awgn_curve(curve_pds, snr_min, snr_max, snr_steps, curve_quant, curve_cs,
                                  curve_out, interpolate);
        } else if (verify->parsed()) {
            return run_verify(check, v_q, v_m, v_alpha, v_beta, seed, channel_file, report_path,
                              workers);
        } else if (decomp->parsed()) {
            const auto d = syncap::decompose_example(d_alpha, d_beta);
            std::printf("composed kernel (alpha=%g, beta=%g, bsc rho=%.6f):\n", d_alpha, d_beta,
                        0.5 - 0.5 * std::sqrt((d_alpha - d_beta) / (d_alpha + d_beta)));
            for (int b = 0; b < 2; ++b)
                for (const auto& e : d.composed.entries[b])
                    std::printf("  P(Y=%-2s | X=%d) = %.12f\n",
                                e.out.empty() ? "e" : e.out.c_str(), b, e.prob);
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitArgs;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
