#pragma once

// CSV and JSON renderings of the campaign results. Output is deterministic:
// fixed column and key order, exact rationals as "p/q", floats in %.17e.
// Timing fields appear only when requested. Requires nlohmann/json.

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crosscheck.hpp"
#include "cusick.hpp"
#include "moments.hpp"
#include "numeric.hpp"
#include "series.hpp"
#include "tudeng.hpp"

namespace carrystat {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Csv, Json };

struct ReportStyle {
    ReportFormat format = ReportFormat::Csv;
    bool timings = false;
};

namespace report {

using Json = nlohmann::ordered_json;

inline std::string fmt_float(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17e", static_cast<double>(v));
    return buf;
}

inline std::string fmt_ms(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
    os << '\n';
}

inline Json header(const char* kind) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = kind;
    j["exact_arithmetic"] = true;
    return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace report

inline std::string render_tudeng(const std::vector<TuDengLevelReport>& levels, const ReportStyle& style) {
    using report::fmt_float;
    std::ostringstream os;
    if (style.format == ReportFormat::Csv) {
        std::vector<std::string> head{"k", "epsilon", "violations", "max_gamma", "max_P", "max_P_float", "argmax_t",
                                      "window_inside", "window_outside", "fraction_inside", "normalized_outside",
                                      "sum_gamma", "sum_gamma_sq", "mean_P", "exact_arithmetic"};
        if (style.timings) head.push_back("wall_time_ms");
        report::csv_row(os, head);
        for (const auto& r : levels) {
            std::vector<std::string> row{std::to_string(r.k), to_fraction_string(r.epsilon), std::to_string(r.violations),
                                         std::to_string(r.max_gamma), to_fraction_string(r.max_P),
                                         fmt_float(to_long_double(r.max_P)), std::to_string(r.argmax_t),
                                         std::to_string(r.window_inside), std::to_string(r.window_outside),
                                         fmt_float(r.fraction_inside), fmt_float(r.normalized_outside),
                                         r.sum_gamma.get_str(), r.sum_gamma_sq.get_str(), to_fraction_string(r.mean_P),
                                         "true"};
            if (style.timings) row.push_back(report::fmt_ms(r.wall_time_ms));
            report::csv_row(os, row);
        }
        return os.str();
    }
    report::Json j = report::header("verify-tudeng");
    std::uint64_t total = 0;
    report::Json arr = report::Json::array();
    for (const auto& r : levels) {
        total += r.violations;
        report::Json e;
        e["k"] = r.k;
        e["epsilon"] = to_fraction_string(r.epsilon);
        e["violations"] = r.violations;
        e["max_gamma"] = r.max_gamma;
        e["max_P"] = to_fraction_string(r.max_P);
        e["max_P_float"] = fmt_float(to_long_double(r.max_P));
        e["argmax_t"] = r.argmax_t;
        e["window_inside"] = r.window_inside;
        e["window_outside"] = r.window_outside;
        e["fraction_inside"] = fmt_float(r.fraction_inside);
        e["normalized_outside"] = fmt_float(r.normalized_outside);
        e["moments"] = {{"sum_gamma", r.sum_gamma.get_str()},
                        {"sum_gamma_sq", r.sum_gamma_sq.get_str()},
                        {"mean_P", to_fraction_string(r.mean_P)}};
        if (style.timings) e["wall_time_ms"] = report::fmt_ms(r.wall_time_ms);
        arr.push_back(std::move(e));
    }
    if (!levels.empty()) {
        j["k_min"] = levels.front().k;
        j["k_max"] = levels.back().k;
        j["epsilon"] = to_fraction_string(levels.front().epsilon);
    }
    j["violations"] = total;
    j["levels"] = std::move(arr);
    return report::dump(j);
}

inline std::string render_cusick(const CusickReport& r, const ReportStyle& style) {
    using report::fmt_float;
    std::ostringstream os;
    if (style.format == ReportFormat::Csv) {
        std::vector<std::string> head{"record", "t", "alpha", "mu", "k_c", "k_c_tilde", "c", "c_float", "c_tilde",
                                      "c_tilde_float", "t_max", "checked", "violations", "min_c_margin", "argmin_c",
                                      "max_c_tilde_margin", "argmax_c_tilde", "max_width"};
        if (style.timings) head.push_back("wall_time_ms");
        report::csv_row(os, head);
        for (const auto& d : r.rows) {
            std::vector<std::string> row{"t", std::to_string(d.t), std::to_string(d.alpha), std::to_string(d.mu),
                                         std::to_string(d.k_used), std::to_string(d.k_tilde), to_fraction_string(d.c),
                                         fmt_float(to_long_double(d.c)), to_fraction_string(d.c_tilde),
                                         fmt_float(to_long_double(d.c_tilde)), "", "", "", "", "", "", "", ""};
            if (style.timings) row.push_back("");
            report::csv_row(os, row);
        }
        std::vector<std::string> summary{"summary", "", "", "", "", "", "", "", "", "",
                                         std::to_string(r.t_max), std::to_string(r.checked), std::to_string(r.violations),
                                         to_fraction_string(r.min_c_margin), std::to_string(r.argmin_c),
                                         to_fraction_string(r.max_c_tilde_margin), std::to_string(r.argmax_c_tilde),
                                         std::to_string(r.max_width)};
        if (style.timings) summary.push_back(report::fmt_ms(r.wall_time_ms));
        report::csv_row(os, summary);
        return os.str();
    }
    report::Json j = report::header("cusick");
    j["t_max"] = r.t_max;
    j["checked"] = r.checked;
    j["violations"] = r.violations;
    j["c_violations"] = r.c_violations;
    j["c_tilde_violations"] = r.c_tilde_violations;
    j["min_c_margin"] = to_fraction_string(r.min_c_margin);
    j["argmin_c"] = r.argmin_c;
    j["max_c_tilde_margin"] = to_fraction_string(r.max_c_tilde_margin);
    j["argmax_c_tilde"] = r.argmax_c_tilde;
    j["max_width"] = r.max_width;
    report::Json rows = report::Json::array();
    for (const auto& d : r.rows)
        rows.push_back({{"t", d.t}, {"alpha", d.alpha}, {"mu", d.mu}, {"k_c", d.k_used}, {"k_c_tilde", d.k_tilde},
                        {"c", to_fraction_string(d.c)}, {"c_float", fmt_float(to_long_double(d.c))},
                        {"c_tilde", to_fraction_string(d.c_tilde)},
                        {"c_tilde_float", fmt_float(to_long_double(d.c_tilde))}});
    j["rows"] = std::move(rows);
    if (style.timings) j["wall_time_ms"] = report::fmt_ms(r.wall_time_ms);
    return report::dump(j);
}

inline std::string render_crosscheck(const CrosscheckReport& r, const ReportStyle& style) {
    auto notes_text = [](const SuiteResult& s) {
        std::string out;
        for (const auto& [k, v] : s.notes) out += (out.empty() ? "" : "; ") + k + "=" + v;
        return out;
    };
    if (style.format == ReportFormat::Csv) {
        std::ostringstream os;
        report::csv_row(os, {"suite", "passed", "checked", "counterexample", "notes"});
        for (const auto& s : r.suites)
            report::csv_row(os, {s.name, s.passed ? "true" : "false", std::to_string(s.checked), s.counterexample,
                                 notes_text(s)});
        return os.str();
    }
    report::Json j = report::header("crosscheck");
    const auto& b = r.budgets;
    j["budgets"] = {{"k_max", b.k_max},           {"moments_k", b.moments_k},       {"series_k", b.series_k},
                    {"trivariate_k", b.trivariate_k}, {"theta_bits", b.theta_bits},   {"cusick_bits", b.cusick_bits},
                    {"monotone_bits", b.monotone_bits}, {"monotone_k", b.monotone_k}};
    j["passed"] = r.passed();
    report::Json suites = report::Json::array();
    for (const auto& s : r.suites) {
        report::Json e{{"suite", s.name}, {"passed", s.passed}, {"checked", s.checked}};
        e["counterexample"] = s.passed ? report::Json(nullptr) : report::Json(s.counterexample);
        report::Json notes = report::Json::object();
        for (const auto& [k, v] : s.notes) notes[k] = v;
        e["notes"] = std::move(notes);
        suites.push_back(std::move(e));
    }
    j["suites"] = std::move(suites);
    return report::dump(j);
}

inline std::string render_asymptotics(const std::vector<AsymptoticsRow>& rows, const ReportStyle& style) {
    using report::fmt_float;
    const std::vector<std::string> head{"k", "first_exact", "first_exact_float", "first_expansion", "first_error",
                                        "first_error_k7_2", "second_exact", "second_exact_float", "second_expansion",
                                        "second_error", "second_error_k5_2", "sigma_k_times_k", "sigma_limit",
                                        "sigma_relative_deviation"};
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows)
        table.push_back({std::to_string(r.k), to_fraction_string(r.first_exact), fmt_float(to_long_double(r.first_exact)),
                         fmt_float(r.first_expansion), fmt_float(r.first_error), fmt_float(r.first_error_scaled),
                         to_fraction_string(r.second_exact), fmt_float(to_long_double(r.second_exact)),
                         fmt_float(r.second_expansion), fmt_float(r.second_error), fmt_float(r.second_error_scaled),
                         fmt_float(r.sigma_times_k), fmt_float(r.sigma_limit), fmt_float(r.sigma_relative_deviation)});
    if (style.format == ReportFormat::Csv) {
        std::ostringstream os;
        report::csv_row(os, head);
        for (const auto& row : table) report::csv_row(os, row);
        return os.str();
    }
    report::Json j = report::header("asymptotics");
    report::Json arr = report::Json::array();
    for (const auto& row : table) {
        report::Json e;
        e["k"] = std::stoul(row[0]);
        for (std::size_t i = 1; i < head.size(); ++i) e[head[i]] = row[i];
        arr.push_back(std::move(e));
    }
    j["rows"] = std::move(arr);
    return report::dump(j);
}

/// Nonzero coefficients of an expansion, in (x, y, z) exponent order.
inline std::string render_coefficients(const std::string& function, const TruncatedSeries& s, const ReportStyle& style) {
    const std::size_t arity = s.shape().variables.size();
    const auto terms = s.nonzero_terms();
    if (style.format == ReportFormat::Csv) {
        std::ostringstream os;
        std::vector<std::string> head(s.shape().variables.begin(), s.shape().variables.end());
        for (auto& h : head) h = "deg_" + h;
        head.push_back("coefficient");
        report::csv_row(os, head);
        for (const auto& [e, c] : terms) {
            std::vector<std::string> row;
            for (std::size_t v = 0; v < arity; ++v) row.push_back(std::to_string(e[v]));
            row.push_back(to_fraction_string(*c));
            report::csv_row(os, row);
        }
        return os.str();
    }
    report::Json j = report::header("genfun");
    j["function"] = function;
    j["variables"] = s.shape().variables;
    j["truncation"] = std::vector<unsigned>(s.shape().bounds.begin(), s.shape().bounds.begin() + static_cast<long>(arity));
    report::Json arr = report::Json::array();
    for (const auto& [e, c] : terms)
        arr.push_back({{"exponent", std::vector<unsigned>(e.begin(), e.begin() + static_cast<long>(arity))},
                       {"coefficient", to_fraction_string(*c)}});
    j["coefficients"] = std::move(arr);
    return report::dump(j);
}

}  // namespace carrystat
