// Acceptance gate: one PASS/FAIL line per criterion. Exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "carrystat/carrystat.hpp"
#include "carrystat/report.hpp"

using namespace carrystat;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("%s  criterion %2d  %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

bool within_factor_two(double ratio, double target) { return ratio >= target / 2 && ratio <= target * 2; }

}  // namespace

int main() {
    const Rational eps(1, 10);

    // 1. No violation of P <= 1/2 for k <= 20.
    const auto levels20 = verify_tu_deng(2, 20, eps);
    {
        std::uint64_t violations = 0;
        Rational max_p = 0;
        for (const auto& l : levels20) {
            violations += l.violations;
            if (l.max_P > max_p) max_p = l.max_P;
        }
        verdict(1, violations == 0 && levels20.size() == 19,
                "k=2..20: violations=" + std::to_string(violations) + " max P=" + to_fraction_string(max_p));
    }

    const auto levels12 = levels_dp<std::uint64_t>(12);

    // 2. Recurrence = enumeration; Gamma = pair count = circular count.
    {
        const auto a = suite_levels_vs_bruteforce(levels12, 12);
        const auto b = suite_gamma_oracles(levels12, 12);
        verdict(2, a.passed && b.passed,
                "k<=12: histograms checked=" + std::to_string(a.checked) + " gamma checks=" + std::to_string(b.checked) +
                    (a.passed ? "" : " first mismatch " + a.counterexample) + (b.passed ? "" : " first mismatch " + b.counterexample));
    }

    // 3. First-moment identity, four routes, plus the offset of the stated form.
    {
        const auto s = suite_first_moment_identity(levels12, 12);
        std::string notes;
        for (const auto& [k, v] : s.notes) notes += " " + k + "=[" + v + "]";
        verdict(3, s.passed, "k=1..12 exact;" + notes + (s.passed ? "" : " " + s.counterexample));
    }

    // 4. Definitional sum of Gamma^2 = recurrence table = trivariate coefficient, k <= 8.
    {
        const auto rec = gamma_moment_sums(8);
        const genfun::TrivariateExpansion tri(8);
        bool ok = true;
        std::string seq;
        for (unsigned k = 1; k <= 8; ++k) {
            BigInt definitional = 0;
            for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t) {
                const BigInt g = from_u64(tu_deng_instance(t, k, levels12[k]).gamma1);
                definitional += g * g;
            }
            const BigInt series = tri.coefficient(k, k - 1, k - 1);
            ok = ok && definitional == rec[k - 1].sum_sq && definitional == series;
            seq += (k > 1 ? "," : "") + definitional.get_str();
        }
        verdict(4, ok, "k=1..8 sums " + seq);
    }

    const auto asym = asymptotics_table(8, 20);
    auto row = [&](unsigned k) -> const AsymptoticsRow& { return asym.at(k - 8); };

    // 5. First moment: error decay and 4 significant digits at k = 20.
    {
        const double ratio = static_cast<double>(row(16).first_error / row(8).first_error);
        const double target = std::pow(2.0, -3.5);
        const long double exact = to_long_double(row(20).first_exact);
        const bool digits = agrees_to_significant_digits(exact, row(20).first_expansion, 4);
        verdict(5, within_factor_two(ratio, target) && digits,
                fmt("err(16)/err(8)=%.4f", ratio) + fmt(" target 2^-3.5=%.4f (band x2)", target) +
                    fmt(" rel err k=20 %.2e", static_cast<double>(row(20).first_error / exact)));
    }

    // 6. Second moment: error decay and 3 significant digits at k = 16.
    {
        const double ratio = static_cast<double>(row(16).second_error / row(8).second_error);
        const double target = std::pow(2.0, -2.5);
        const long double exact = to_long_double(row(16).second_exact);
        const bool digits = agrees_to_significant_digits(exact, row(16).second_expansion, 3);
        const bool decay = within_factor_two(ratio, target);
        verdict(6, decay && digits,
                fmt("err(16)/err(8)=%.4f", ratio) + fmt(" band [%.4f,", target / 2) + fmt("%.4f]", target * 2) +
                    (decay ? " in band" : " outside band") +
                    fmt("; rel err k=16 %.2e", static_cast<double>(row(16).second_error / exact)) +
                    (digits ? " (>=3 digits)" : " (<3 digits)"));
    }

    // 7. k*sigma_k approaches the limit: no two consecutive increases of the gap, 20% at k = 20.
    {
        int consecutive = 0, worst = 0;
        long double prev_gap = -1;
        for (const auto& r : asym) {
            const long double gap = std::fabs(r.sigma_times_k - r.sigma_limit);
            consecutive = (prev_gap >= 0 && gap > prev_gap) ? consecutive + 1 : 0;
            worst = std::max(worst, consecutive);
            prev_gap = gap;
        }
        const double dev = static_cast<double>(std::fabs(row(20).sigma_relative_deviation));
        const bool trend = worst < 2;
        verdict(7, trend && dev <= 0.20,
                fmt("k*sigma_k(20)=%.5f", static_cast<double>(row(20).sigma_times_k)) +
                    fmt(" limit %.5f", static_cast<double>(sigma_limit())) + fmt(" deviation %.1f%%", 100 * dev) +
                    (trend ? "; trend monotone" : "; trend broken"));
    }

    // 8. Window fraction increases over k in {10,14,18,20}; normalized outside count bounded.
    {
        auto level = [&](unsigned k) -> const TuDengLevelReport& { return levels20.at(k - 2); };
        const unsigned ks[] = {10, 14, 18, 20};
        bool increasing = true;
        for (int i = 1; i < 4; ++i) increasing = increasing && level(ks[i]).fraction_inside > level(ks[i - 1]).fraction_inside;
        const double bound = 2 * level(10).normalized_outside;
        double worst = 0;
        for (unsigned k = 10; k <= 20; ++k) worst = std::max(worst, level(k).normalized_outside);
        verdict(8, increasing && worst <= bound,
                fmt("inside fraction k=10 %.4f", level(10).fraction_inside) +
                    fmt(" k=20 %.4f", level(20).fraction_inside) + fmt("; max outside*k/2^k %.4f", worst) +
                    fmt(" bound %.4f", bound));
    }

    // 9. c~_t <= 1/2 < c_t for 1 <= t < 2^16; c_1 and c~_1.
    {
        const auto r = verify_cusick(std::uint64_t{1} << 16, 2);
        const bool one = r.rows.size() == 1 && r.rows[0].c == Rational(3, 4) && r.rows[0].c_tilde == Rational(1, 2);
        verdict(9, r.violations == 0 && one,
                "t<2^16: violations=" + std::to_string(r.violations) + " min c-1/2=" + to_fraction_string(r.min_c_margin) +
                    " (t=" + std::to_string(r.argmin_c) + ") max c~-1/2=" + to_fraction_string(r.max_c_tilde_margin) +
                    "; c_1=" + to_fraction_string(r.rows.at(0).c) + " c~_1=" + to_fraction_string(r.rows.at(0).c_tilde));
    }

    // 10. Normalized tail counts nonincreasing in k.
    {
        std::uint64_t checked = 0, violations = 0;
        for (std::uint64_t t = 0; t < 256; ++t) {
            const auto r = check_v_monotonicity(t, 12);
            checked += r.checked;
            for (const auto& v : r.violations) violations += v.relation == "nonincreasing";
        }
        verdict(10, violations == 0, "t<2^8, k<=12: checked=" + std::to_string(checked) + " violations=" + std::to_string(violations));
    }

    // 11. theta identity.
    {
        const auto s = suite_theta(levels12, 10);
        verdict(11, s.passed, "t<2^10: checked=" + std::to_string(s.checked) + (s.passed ? "" : " " + s.counterexample));
    }

    // 12. Every campaign renders byte-identically twice (the CLI file comparison runs as its own test).
    {
        bool same = true;
        for (const auto fmt_kind : {ReportFormat::Csv, ReportFormat::Json}) {
            const ReportStyle style{fmt_kind, false};
            same = same && render_tudeng(verify_tu_deng(2, 14, eps), style) == render_tudeng(verify_tu_deng(2, 14, eps), style);
            same = same && render_cusick(verify_cusick(1024, 8), style) == render_cusick(verify_cusick(1024, 8), style);
            same = same && render_asymptotics(asymptotics_table(8, 20), style) == render_asymptotics(asymptotics_table(8, 20), style);
            const auto g = expand_spec(genfun::bivariate_G(), SeriesShape::bivariate(6, 12));
            same = same && render_coefficients("G", g, style) ==
                               render_coefficients("G", expand_spec(genfun::bivariate_G(), SeriesShape::bivariate(6, 12)), style);
            CrosscheckBudgets b;
            b.k_max = 6; b.moments_k = 6; b.series_k = 6; b.trivariate_k = 4;
            b.theta_bits = 6; b.cusick_bits = 5; b.monotone_bits = 4; b.monotone_k = 8;
            same = same && render_crosscheck(run_crosscheck(b), style) == render_crosscheck(run_crosscheck(b), style);
        }
        verdict(12, same, "verify-tudeng, cusick, crosscheck, asymptotics, genfun in csv and json");
    }

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
