#include <catch2/catch_amalgamated.hpp>

#include "carrystat/crosscheck.hpp"
#include "carrystat/report.hpp"

using namespace carrystat;

TEST_CASE("crosscheck suites pass at reduced budgets") {
    CrosscheckBudgets b;
    b.k_max = 8;
    b.moments_k = 8;
    b.series_k = 8;
    b.trivariate_k = 6;
    b.theta_bits = 8;
    b.cusick_bits = 7;
    b.monotone_bits = 5;
    b.monotone_k = 9;
    const auto r = run_crosscheck(b);
    for (const auto& s : r.suites) {
        INFO(s.name << ": " << s.counterexample);
        CHECK(s.passed);
        CHECK(s.checked > 0);
    }
    CHECK(r.passed());
}

TEST_CASE("crosscheck budgets are enforced") {
    CrosscheckBudgets b;
    b.k_max = 13;
    CHECK_THROWS_AS(run_crosscheck(b), ResourceLimitError);
    b.k_max = 12;
    b.trivariate_k = 9;
    CHECK_THROWS_AS(run_crosscheck(b), ResourceLimitError);
}

TEST_CASE("a failing comparison reports its first counterexample") {
    auto levels = levels_dp<std::uint64_t>(4);
    levels[3].direct[5].ref(0) += 1;
    const auto r = suite_levels_vs_bruteforce(levels, 4);
    CHECK_FALSE(r.passed);
    CHECK(r.counterexample.rfind("k=3 t=5", 0) == 0);
}

TEST_CASE("reports are deterministic and well formed") {
    const auto levels = verify_tu_deng(2, 8, Rational(1, 10));
    for (const auto fmt : {ReportFormat::Csv, ReportFormat::Json}) {
        const ReportStyle style{fmt, false};
        CHECK(render_tudeng(levels, style) == render_tudeng(verify_tu_deng(2, 8, Rational(1, 10)), style));
    }
    const std::string csv = render_tudeng(levels, {ReportFormat::Csv, false});
    CHECK(csv.rfind("k,epsilon,violations,max_gamma,max_P,", 0) == 0);
    CHECK(csv.find("wall_time_ms") == std::string::npos);
    CHECK(render_tudeng(levels, {ReportFormat::Csv, true}).find("wall_time_ms") != std::string::npos);

    const auto parsed = nlohmann::json::parse(render_tudeng(levels, {ReportFormat::Json, false}));
    CHECK(parsed["schema_version"] == kReportSchemaVersion);
    CHECK(parsed["exact_arithmetic"] == true);
    CHECK(parsed["levels"].size() == 7);
    CHECK(parsed["levels"][0]["max_P"] == "1/2");

    const auto cusick = nlohmann::json::parse(render_cusick(verify_cusick(64, 4), {ReportFormat::Json, false}));
    CHECK(cusick["rows"][0]["c"] == "3/4");
    CHECK(cusick["rows"][0]["c_tilde"] == "1/2");
}

TEST_CASE("csv fields are quoted when needed") {
    CHECK(report::csv_field("plain") == "plain");
    CHECK(report::csv_field("a,b") == "\"a,b\"");
    CHECK(report::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
