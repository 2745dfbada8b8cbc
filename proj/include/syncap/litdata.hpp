#pragma once

// Published capacity bounds as data: C_s lookup tables for composite bounds
// and the comparison columns used for table reproduction.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace syncap {

struct CsRow {
    double p_d = 0.0;
    double p_i = 0.0;
    double c_lb = 0.0;
    std::string source;
};

struct ComparisonRow {
    double p_d = 0.0;
    double p_i = 0.0;
    double p_s = 0.0;
    double lb_gallager = 0.0;
    double lb_eq10 = 0.0;
    double lb_dario2 = 0.0;
    double ub_dario2 = 0.0;
};

struct LiteratureTable {
    std::vector<CsRow> cs_rows;
    std::vector<ComparisonRow> comparison_rows;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    return fields;
}

inline double parse_prob_field(const std::string& s, int line_no, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("CSV line " + std::to_string(line_no) + ": bad " +
                                 std::string(what) + " value '" + s + "'");
    }
}

} // namespace detail

inline constexpr const char* kCsHeader = "p_d,p_i,c_lb,source";
inline constexpr const char* kComparisonHeader =
    "p_d,p_i,p_s,lb_gallager,lb_eq10,lb_dario2,ub_dario2";

// Load either CSV schema; the header line selects the row type.
inline LiteratureTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_table: cannot open " + path);
    LiteratureTable t;
    std::string line;
    int line_no = 0;
    bool comparison = false, have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!have_header) {
            if (line == kComparisonHeader) comparison = true;
            else if (line == kCsHeader) comparison = false;
            else throw std::runtime_error("CSV line 1: unrecognized header '" + line + "'");
            have_header = true;
            continue;
        }
        const auto f = detail::split_csv_line(line);
        if (comparison) {
            if (f.size() != 7)
                throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                         ": expected 7 fields");
            ComparisonRow r;
            r.p_d = detail::parse_prob_field(f[0], line_no, "p_d");
            r.p_i = detail::parse_prob_field(f[1], line_no, "p_i");
            r.p_s = detail::parse_prob_field(f[2], line_no, "p_s");
            r.lb_gallager = detail::parse_prob_field(f[3], line_no, "lb_gallager");
            r.lb_eq10 = detail::parse_prob_field(f[4], line_no, "lb_eq10");
            r.lb_dario2 = detail::parse_prob_field(f[5], line_no, "lb_dario2");
            r.ub_dario2 = detail::parse_prob_field(f[6], line_no, "ub_dario2");
            for (double p : {r.p_d, r.p_i, r.p_s})
                if (p < 0.0 || p > 1.0)
                    throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                             ": probability out of [0,1]");
            if (r.lb_gallager > r.ub_dario2 + 1e-12 || r.lb_eq10 > r.ub_dario2 + 1e-12 ||
                r.lb_dario2 > r.ub_dario2 + 1e-12)
                throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                         ": lower bound exceeds upper bound");
            t.comparison_rows.push_back(r);
        } else {
            if (f.size() != 4)
                throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                         ": expected 4 fields");
            CsRow r;
            r.p_d = detail::parse_prob_field(f[0], line_no, "p_d");
            r.p_i = detail::parse_prob_field(f[1], line_no, "p_i");
            r.c_lb = detail::parse_prob_field(f[2], line_no, "c_lb");
            r.source = f[3];
            if (r.p_d < 0.0 || r.p_d > 1.0 || r.p_i < 0.0 || r.p_i > 1.0)
                throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                         ": probability out of [0,1]");
            if (r.c_lb < 0.0 || r.c_lb > 1.0)
                throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                         ": c_lb out of [0,1]");
            for (const auto& prev : t.cs_rows)
                if (std::abs(prev.p_d - r.p_d) < 1e-12 && std::abs(prev.p_i - r.p_i) < 1e-12)
                    throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                             ": duplicate (p_d,p_i) key");
            t.cs_rows.push_back(r);
        }
    }
    return t;
}

inline void save_table(const LiteratureTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_table: cannot open " + path);
    char buf[256];
    if (!t.comparison_rows.empty()) {
        out << kComparisonHeader << "\n";
        for (const auto& r : t.comparison_rows) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          r.p_d, r.p_i, r.p_s, r.lb_gallager, r.lb_eq10, r.lb_dario2,
                          r.ub_dario2);
            out << buf;
        }
    } else {
        out << kCsHeader << "\n";
        for (const auto& r : t.cs_rows) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", r.p_d, r.p_i, r.c_lb);
            out << buf << r.source << "\n";
        }
    }
}

// Exact-key C_s lookup; no interpolation.
inline double lookup_cs(const LiteratureTable& t, double p_d, double p_i) {
    for (const auto& r : t.cs_rows)
        if (std::abs(r.p_d - p_d) < 1e-9 && std::abs(r.p_i - p_i) < 1e-9) return r.c_lb;
    std::string nearest;
    double best = 1e300;
    for (const auto& r : t.cs_rows) {
        const double d = std::abs(r.p_d - p_d) + std::abs(r.p_i - p_i);
        if (d < best) {
            best = d;
            nearest = "(" + std::to_string(r.p_d) + ", " + std::to_string(r.p_i) + ")";
        }
    }
    throw std::runtime_error("lookup_cs: no row for (p_d=" + std::to_string(p_d) +
                             ", p_i=" + std::to_string(p_i) + ")" +
                             (nearest.empty() ? "" : "; nearest available key " + nearest));
}

// Explicitly opt-in linear interpolation in p_d at fixed p_i, for curve
// plotting only (published bounds are not guaranteed smooth).
inline double lookup_cs_interpolated(const LiteratureTable& t, double p_d, double p_i) {
    std::optional<CsRow> lo, hi;
    for (const auto& r : t.cs_rows) {
        if (std::abs(r.p_i - p_i) >= 1e-9) continue;
        if (r.p_d <= p_d + 1e-12 && (!lo || r.p_d > lo->p_d)) lo = r;
        if (r.p_d >= p_d - 1e-12 && (!hi || r.p_d < hi->p_d)) hi = r;
    }
    if (!lo || !hi) throw std::runtime_error("lookup_cs_interpolated: p_d outside table range");
    if (std::abs(hi->p_d - lo->p_d) < 1e-12) return lo->c_lb;
    const double w = (p_d - lo->p_d) / (hi->p_d - lo->p_d);
    return (1.0 - w) * lo->c_lb + w * hi->c_lb;
}

} // namespace syncap
