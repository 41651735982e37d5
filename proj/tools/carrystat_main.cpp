// carrystat: batch verification campaigns over binary digit-sum statistics.
// Exit status: 0 all checks pass, 1 mathematical violation, 2 operational error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "carrystat/carrystat.hpp"
#include "carrystat/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitOperational = 2;

struct Common {
    std::string format = "csv";
    std::string output;
    std::string memory_budget;
    unsigned threads = 1;
    bool timings = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", c.output, "Report path (default: stdout)");
    cmd->add_option("--memory-budget", c.memory_budget, "Memory budget, e.g. 512M or 8G (overrides CARRYSTAT_MEMORY_BUDGET)");
    cmd->add_option("--threads", c.threads, "Worker threads, 0 = hardware concurrency");
    cmd->add_flag("--timings", c.timings, "Include wall-clock timings (makes reports non-reproducible)");
}

carrystat::ReportStyle style_of(const Common& c) {
    return {c.format == "json" ? carrystat::ReportFormat::Json : carrystat::ReportFormat::Csv, c.timings};
}

carrystat::RunOptions options_of(const Common& c) {
    carrystat::RunOptions o;
    if (!c.memory_budget.empty()) o.memory_budget = carrystat::parse_byte_size(c.memory_budget);
    o.threads = carrystat::resolve_threads(c.threads);
    return o;
}

/// Opened before any computation so an unwritable path fails fast.
class ReportSink {
public:
    explicit ReportSink(const std::string& path) : path_(path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    void write(const std::string& text) {
        std::ostream& os = path_.empty() ? std::cout : file_;
        os << text;
        os.flush();
        if (!os) throw std::runtime_error("write failed: " + (path_.empty() ? std::string("stdout") : path_));
    }

private:
    std::string path_;
    std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification campaigns for binary digit-sum conjectures"};
    app.require_subcommand(1);

    Common tudeng_common, cusick_common, cross_common, asym_common, gen_common;

    unsigned td_k_min = 2, td_k_max = 20;
    std::string td_epsilon = "0.1";
    std::string td_dump;
    std::uint64_t td_dump_limit = 1024;
    auto* tudeng = app.add_subcommand("verify-tudeng", "Check P_{t,k} <= 1/2 for all t in [1, 2^k - 2]");
    tudeng->add_option("--k-min", td_k_min, "Smallest k")->check(CLI::Range(2u, 40u));
    tudeng->add_option("--k-max", td_k_max, "Largest k")->check(CLI::Range(2u, 40u));
    tudeng->add_option("--epsilon", td_epsilon, "Window half-width, exact decimal or p/q");
    tudeng->add_option("--dump-per-t", td_dump, "Write per-t CSV (k,t,gamma1,P) to this path");
    tudeng->add_option("--dump-t-limit", td_dump_limit, "Only dump t below this bound")->check(CLI::Range(1ull, 1ull << 24));
    add_common(tudeng, tudeng_common);

    std::uint64_t cu_t_max = 1u << 16;
    std::uint64_t cu_rows = 16;
    auto* cusick = app.add_subcommand("cusick", "Check c~_t <= 1/2 < c_t for all 1 <= t < t_max");
    cusick->add_option("--t-max", cu_t_max, "Exclusive bound on t")->check(CLI::Range(2ull, 1ull << 40));
    cusick->add_option("--rows", cu_rows, "Per-t rows reported for t below this bound");
    add_common(cusick, cusick_common);

    carrystat::CrosscheckBudgets budgets;
    auto* cross = app.add_subcommand("crosscheck", "Run the oracle-equivalence suites");
    cross->add_option("--k-max", budgets.k_max, "Brute-force and first-moment legs");
    cross->add_option("--moments-k", budgets.moments_k, "Moment recurrence vs definitional sums");
    cross->add_option("--series-k", budgets.series_k, "Bivariate generating functions");
    cross->add_option("--trivariate-k", budgets.trivariate_k, "Trivariate generating function");
    add_common(cross, cross_common);

    unsigned as_k_min = 8, as_k_max = 20;
    auto* asym = app.add_subcommand("asymptotics", "Exact moments against their asymptotic expansions");
    asym->add_option("--k-min", as_k_min, "Smallest k")->check(CLI::Range(2u, 512u));
    asym->add_option("--k-max", as_k_max, "Largest k (cost grows like k^3)")->check(CLI::Range(8u, 512u));
    add_common(asym, asym_common);

    std::string gf_function = "G";
    unsigned gf_k_max = 8;
    unsigned gf_budget = carrystat::genfun::kDefaultTrivariateBudget;
    auto* gen = app.add_subcommand("genfun", "Dump coefficients of a generating function");
    gen->add_option("--function", gf_function, "Which function")->check(CLI::IsMember({"F", "Ftilde", "G", "F3"}));
    gen->add_option("--k-max", gf_k_max, "Truncation in x")->check(CLI::Range(0u, 64u));
    gen->add_option("--trivariate-budget", gf_budget, "Largest x-degree allowed for F3");
    add_common(gen, gen_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitOperational;
    }

    try {
        if (*tudeng) {
            if (td_k_min > td_k_max) throw std::invalid_argument("--k-min exceeds --k-max");
            const carrystat::Rational eps = carrystat::parse_exact_decimal(td_epsilon);
            ReportSink sink(tudeng_common.output);
            std::unique_ptr<ReportSink> dump_sink;
            std::optional<carrystat::PerTDump> dump;
            std::string dump_text;
            if (!td_dump.empty()) {
                dump_sink = std::make_unique<ReportSink>(td_dump);
                dump_text = "k,t,gamma1,P\n";
                dump = carrystat::PerTDump{[&](unsigned k, std::uint64_t t, std::uint64_t g) {
                                               dump_text += std::to_string(k) + "," + std::to_string(t) + "," +
                                                            std::to_string(g) + "," +
                                                            carrystat::to_fraction_string(carrystat::make_rational(
                                                                carrystat::from_u64(g), carrystat::pow2(k))) +
                                                            "\n";
                                           },
                                           td_dump_limit};
            }
            const auto levels = carrystat::verify_tu_deng(td_k_min, td_k_max, eps, options_of(tudeng_common),
                                                          dump ? &*dump : nullptr);
            sink.write(carrystat::render_tudeng(levels, style_of(tudeng_common)));
            if (dump_sink) dump_sink->write(dump_text);
            std::uint64_t violations = 0;
            for (const auto& l : levels) violations += l.violations;
            if (violations != 0) std::cerr << "verify-tudeng: " << violations << " violation(s) of P <= 1/2\n";
            return violations == 0 ? kExitPass : kExitViolation;
        }
        if (*cusick) {
            ReportSink sink(cusick_common.output);
            const auto r = carrystat::verify_cusick(cu_t_max, cu_rows);
            sink.write(carrystat::render_cusick(r, style_of(cusick_common)));
            if (r.violations != 0) std::cerr << "cusick: " << r.violations << " violation(s)\n";
            return r.violations == 0 ? kExitPass : kExitViolation;
        }
        if (*cross) {
            ReportSink sink(cross_common.output);
            budgets.trivariate_k = std::min(budgets.trivariate_k, budgets.k_max);
            budgets.moments_k = std::min(budgets.moments_k, budgets.k_max);
            budgets.theta_bits = std::min(budgets.theta_bits, budgets.k_max);
            const auto r = carrystat::run_crosscheck(budgets);
            sink.write(carrystat::render_crosscheck(r, style_of(cross_common)));
            for (const auto& s : r.suites)
                if (!s.passed) std::cerr << "crosscheck: " << s.name << " failed: " << s.counterexample << "\n";
            return r.passed() ? kExitPass : kExitViolation;
        }
        if (*asym) {
            if (as_k_min > as_k_max) throw std::invalid_argument("--k-min exceeds --k-max");
            ReportSink sink(asym_common.output);
            sink.write(carrystat::render_asymptotics(carrystat::asymptotics_table(as_k_min, as_k_max), style_of(asym_common)));
            return kExitPass;
        }
        if (*gen) {
            ReportSink sink(gen_common.output);
            carrystat::TruncatedSeries s(carrystat::SeriesShape::univariate("x", 0));
            if (gf_function == "F3") {
                s = carrystat::genfun::TrivariateExpansion(gf_k_max, gf_budget).series();
            } else {
                const auto spec = gf_function == "F"        ? carrystat::genfun::bivariate_F()
                                  : gf_function == "Ftilde" ? carrystat::genfun::bivariate_F_tilde()
                                                            : carrystat::genfun::bivariate_G();
                s = carrystat::expand_spec(spec, carrystat::SeriesShape::bivariate(gf_k_max, 2 * gf_k_max));
            }
            sink.write(carrystat::render_coefficients(gf_function, s, style_of(gen_common)));
            return kExitPass;
        }
    } catch (const carrystat::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitOperational;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOperational;
    }
    return kExitOperational;
}
