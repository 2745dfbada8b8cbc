#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "syncap/litdata.hpp"

using namespace syncap;

namespace {

const std::string kDataDir = SYNCAP_DATA_DIR;

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "litdata_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("comparison table loads with all rows and columns") {
    const auto t = load_table(kDataDir + "/tableV.csv");
    REQUIRE(t.comparison_rows.size() == 11);
    CHECK(t.cs_rows.empty());
    const auto& r0 = t.comparison_rows.front();
    CHECK(r0.p_d == 0.001);
    CHECK(r0.p_i == 0.0);
    CHECK(r0.p_s == 0.001);
    CHECK(r0.lb_gallager == 0.9772);
    CHECK(r0.lb_eq10 == 0.9775);
    CHECK(r0.lb_dario2 == 0.9773);
    CHECK(r0.ub_dario2 == 0.9856);
    const auto& last = t.comparison_rows.back();
    CHECK(last.p_d == 0.10);
    CHECK(last.p_i == 0.10);
    CHECK(last.lb_eq10 == 0.0984);
}

TEST_CASE("C_s table loads with sources") {
    const auto t = load_table(kDataDir + "/cid.csv");
    REQUIRE(t.cs_rows.size() == 5);
    CHECK(t.cs_rows[0].source == "trivial");
    CHECK(t.cs_rows[3].c_lb == 0.5617);
    CHECK(t.cs_rows[3].source == "implied-inversion");
}

TEST_CASE("schema violations are rejected with line numbers") {
    const auto bad_header = write_temp("h.csv", "p_d,p_i,wrong\n0,0,1\n");
    CHECK_THROWS_WITH_AS(load_table(bad_header), doctest::Contains("line 1"),
                         std::runtime_error);

    const auto bad_value = write_temp("v.csv", "p_d,p_i,c_lb,source\n0.1,0,1.2,x\n");
    CHECK_THROWS_WITH_AS(load_table(bad_value), doctest::Contains("c_lb"), std::runtime_error);

    const auto bad_num = write_temp("n.csv", "p_d,p_i,c_lb,source\n0.1,zero,0.5,x\n");
    CHECK_THROWS_WITH_AS(load_table(bad_num), doctest::Contains("line 2"), std::runtime_error);

    const auto dup = write_temp("d.csv", "p_d,p_i,c_lb,source\n0.1,0,0.5,x\n0.1,0,0.4,y\n");
    CHECK_THROWS_WITH_AS(load_table(dup), doctest::Contains("duplicate"), std::runtime_error);

    const auto crossed = write_temp(
        "c.csv", "p_d,p_i,p_s,lb_gallager,lb_eq10,lb_dario2,ub_dario2\n"
                 "0.1,0,0.01,0.7,0.4,0.4,0.6\n");
    CHECK_THROWS_WITH_AS(load_table(crossed), doctest::Contains("exceeds"), std::runtime_error);

    CHECK_THROWS_AS(load_table(kDataDir + "/does_not_exist.csv"), std::runtime_error);

    for (const char* p : {"litdata_h.csv", "litdata_v.csv", "litdata_n.csv", "litdata_d.csv",
                          "litdata_c.csv"})
        std::remove(p);
}

TEST_CASE("empty file yields an empty table") {
    const auto path = write_temp("e.csv", "");
    const auto t = load_table(path);
    CHECK(t.cs_rows.empty());
    CHECK(t.comparison_rows.empty());
    std::remove(path.c_str());
}

TEST_CASE("save/load round trip is exact") {
    LiteratureTable t;
    t.cs_rows = {{0.0, 0.0, 1.0, "trivial"},
                 {0.1, 0.0, 0.5616999999999999, "implied-inversion"},
                 {1.0 / 3.0, 0.1, 0.123456789012345678, "synthetic"}};
    const std::string path = "litdata_rt.csv";
    save_table(t, path);
    const auto t2 = load_table(path);
    REQUIRE(t2.cs_rows.size() == t.cs_rows.size());
    for (std::size_t i = 0; i < t.cs_rows.size(); ++i) {
        CHECK(t2.cs_rows[i].p_d == t.cs_rows[i].p_d);    // exact: %.17g round trips
        CHECK(t2.cs_rows[i].p_i == t.cs_rows[i].p_i);
        CHECK(t2.cs_rows[i].c_lb == t.cs_rows[i].c_lb);
        CHECK(t2.cs_rows[i].source == t.cs_rows[i].source);
    }
    std::remove(path.c_str());

    LiteratureTable c;
    c.comparison_rows = {{0.01, 0.0, 0.01, 0.839, 0.842, 0.842, 0.886}};
    save_table(c, path);
    const auto c2 = load_table(path);
    REQUIRE(c2.comparison_rows.size() == 1);
    CHECK(c2.comparison_rows[0].lb_eq10 == 0.842);
    std::remove(path.c_str());
}

TEST_CASE("exact lookup and opt-in interpolation") {
    const auto t = load_table(kDataDir + "/cid.csv");
    CHECK(lookup_cs(t, 0.1, 0.0) == 0.5617);
    CHECK(lookup_cs(t, 0.1, 0.1) == 0.1792);
    CHECK_THROWS_WITH_AS(lookup_cs(t, 0.05, 0.0), doctest::Contains("nearest"),
                         std::runtime_error);

    // Linear in p_d at fixed p_i = 0: midpoint of the 0.01 and 0.1 rows.
    const double mid = lookup_cs_interpolated(t, 0.055, 0.0);
    CHECK(mid == doctest::Approx(0.5 * (0.92199 + 0.5617)).epsilon(1e-12));
    CHECK(lookup_cs_interpolated(t, 0.1, 0.0) == doctest::Approx(0.5617));
    CHECK_THROWS_AS(lookup_cs_interpolated(t, 0.5, 0.0), std::runtime_error);
}
