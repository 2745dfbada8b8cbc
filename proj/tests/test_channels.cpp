#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "syncap/channels.hpp"

using namespace syncap;

namespace {

std::map<std::string, double> as_map(const SyncKernel& k, int b) {
    std::map<std::string, double> m;
    for (const auto& e : k.entries[b]) m[e.out] += e.prob;
    return m;
}

} // namespace

TEST_CASE("deletion kernel structure and rate") {
    const auto k = deletion_kernel(0.1);
    CHECK(k.l_max == 1);
    CHECK(as_map(k, 0).at("") == doctest::Approx(0.1));
    CHECK(as_map(k, 0).at("0") == doctest::Approx(0.9));
    CHECK(as_map(k, 1).at("1") == doctest::Approx(0.9));
    CHECK(expected_output_rate(k) == doctest::Approx(0.9).epsilon(1e-14));

    CHECK(deletion_kernel(0.0).entries[0].size() == 1);
    CHECK(deletion_kernel(1.0).entries[0].size() == 1);
    CHECK_THROWS_AS(deletion_kernel(-0.1), std::domain_error);
    CHECK_THROWS_AS(deletion_kernel(1.1), std::domain_error);
}

TEST_CASE("gallager kernel: rate identity 1 - p_d + p_i") {
    for (double p_d : {0.0, 0.01, 0.1, 0.3})
        for (double p_i : {0.0, 0.01, 0.1, 0.3}) {
            const auto k = gallager_kernel(p_d, p_i);
            CHECK(expected_output_rate(k) ==
                  doctest::Approx(1.0 - p_d + p_i).epsilon(1e-13));
        }
    const auto k = gallager_kernel(0.1, 0.2);
    CHECK(k.l_max == 2);
    const auto m = as_map(k, 1);
    CHECK(m.at("") == doctest::Approx(0.1));
    CHECK(m.at("1") == doctest::Approx(0.7));
    for (const char* s : {"00", "01", "10", "11"}) CHECK(m.at(s) == doctest::Approx(0.05));
    CHECK_THROWS_AS(gallager_kernel(0.6, 0.5), std::domain_error);
}

TEST_CASE("custom kernel validation") {
    CHECK_THROWS_AS(custom_kernel({{0, "0", 0.5}, {0, "", 0.4}, {1, "1", 1.0}}),
                    std::invalid_argument);  // bit-0 row sums to 0.9
    CHECK_THROWS_AS(custom_kernel({{2, "0", 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(custom_kernel({{0, "0x", 1.0}, {1, "1", 1.0}}), std::invalid_argument);
    const auto k = custom_kernel({{0, "0", 1.0}, {1, "1", 0.5}, {1, "11", 0.5}, {1, "", 0.0}});
    CHECK(k.l_max == 2);
    CHECK(k.entries[1].size() == 2);  // zero-probability row dropped
}

TEST_CASE("sub/ers matrix layout and symmetry") {
    const auto m = sub_ers_dmc(0.1, 0.2);
    CHECK(m.q == 3);
    CHECK(m.labels == std::vector<int>{-1, 0, 1});
    CHECK(m.rows[0][0] == doctest::Approx(0.7));
    CHECK(m.rows[0][1] == doctest::Approx(0.2));
    CHECK(m.rows[0][2] == doctest::Approx(0.1));
    CHECK(m.rows[1][0] == doctest::Approx(0.1));
    CHECK(m.rows[1][2] == doctest::Approx(0.7));
    CHECK(m.symmetric);
    CHECK_THROWS_AS(sub_ers_dmc(0.7, 0.4), std::domain_error);

    DmcMatrix asym = m;
    asym.rows[1][0] = 0.2;
    asym.rows[1][1] = 0.1;
    CHECK(!check_symmetry(asym));
}

TEST_CASE("q-ary matrix mirrors rows; BSC is the q=2 special case") {
    const auto m = qary_dmc({0.05, 0.1, 0.7, 0.15}, Parity::Even);
    CHECK(m.q == 4);
    CHECK(m.labels == std::vector<int>{-2, -1, 1, 2});
    CHECK(m.rows[1] == std::vector<double>{0.05, 0.1, 0.7, 0.15});
    CHECK(m.rows[0] == std::vector<double>{0.15, 0.7, 0.1, 0.05});
    CHECK(m.symmetric);

    const auto b = bsc_dmc(0.11);
    CHECK(b.q == 2);
    CHECK(b.labels == std::vector<int>{-1, 1});
    CHECK(b.rows[1][1] == doctest::Approx(0.89));

    CHECK_THROWS_AS(qary_dmc({0.5, 0.3, 0.2}, Parity::Even), std::invalid_argument);
    CHECK_THROWS_AS(qary_dmc({0.5, 0.4}, Parity::Even), std::invalid_argument);
}

TEST_CASE("composition with a binary matrix preserves lengths and mass") {
    const auto k = gallager_kernel(0.1, 0.2);
    const auto composed = compose_with_binary_dmc(k, bsc_dmc(0.0));
    // Identity BSC: same law up to entry merging.
    for (int b = 0; b < 2; ++b) {
        auto want = as_map(k, b);
        auto got = as_map(composed, b);
        REQUIRE(got.size() == want.size());
        for (const auto& [s, p] : want) CHECK(got.at(s) == doctest::Approx(p).epsilon(1e-14));
    }
    const auto noisy = compose_with_binary_dmc(k, bsc_dmc(0.25));
    CHECK(expected_output_rate(noisy) == doctest::Approx(expected_output_rate(k)).epsilon(1e-13));
    CHECK_THROWS_AS(compose_with_binary_dmc(k, sub_ers_dmc(0.1, 0.1)), std::invalid_argument);
}

TEST_CASE("decomposition example reproduces the target kernel on a grid") {
    for (double alpha = 0.01; alpha <= 0.451; alpha += 0.04)
        for (double beta = 0.01; beta <= alpha + 1e-12 && alpha + beta <= 0.5 + 1e-12;
             beta += 0.04) {
            const auto d = decompose_example(alpha, beta);
            const auto target = decomposition_target(alpha, beta);
            for (int b = 0; b < 2; ++b) {
                auto got = as_map(d.composed, b);
                for (const auto& [s, p] : as_map(target, b))
                    CHECK(std::abs(got[s] - p) <= 1e-12);
            }
            // BSC crossover stays in [0, 1/2].
            CHECK(d.second.rows[0][1] <= 0.5 + 1e-12);
        }
    CHECK_THROWS_AS(decompose_example(0.05, 0.1), std::domain_error);   // beta > alpha
    CHECK_THROWS_AS(decompose_example(0.4, 0.2), std::domain_error);    // alpha+beta > 1/2
}

TEST_CASE("JSON round trips") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double p_d = 0.5 * u(rng), p_i = 0.4 * u(rng);
        const auto k = gallager_kernel(p_d, p_i);
        const auto k2 = kernel_from_json(kernel_to_json(k));
        for (int b = 0; b < 2; ++b) {
            auto want = as_map(k, b);
            auto got = as_map(k2, b);
            REQUIRE(got.size() == want.size());
            for (const auto& [s, p] : want) CHECK(got.at(s) == p);  // exact
        }
    }
    const auto m = qary_dmc({0.02, 0.08, 0.1, 0.3, 0.5}, Parity::Odd);
    const auto m2 = dmc_from_json(dmc_to_json(m));
    CHECK(m2.q == m.q);
    CHECK(m2.labels == m.labels);
    CHECK(m2.rows[0] == m.rows[0]);
    CHECK(m2.rows[1] == m.rows[1]);
    CHECK(m2.symmetric);

    // Labels are optional on input.
    const auto j = nlohmann::json{{"q", 2}, {"rows", {{0.9, 0.1}, {0.1, 0.9}}}};
    CHECK(dmc_from_json(j).labels == std::vector<int>{-1, 1});
}
