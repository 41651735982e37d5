#include <catch2/catch_amalgamated.hpp>

#include "carrystat/carry.hpp"
#include "carrystat/tudeng.hpp"
#include "frozen_values.hpp"

using namespace carrystat;

TEST_CASE("brute-force histograms match the reference enumeration") {
    for (const auto& e : frozen::beta_k3) CHECK(beta_bruteforce(e.t, 3).at(e.j) == e.count);
    for (std::uint64_t t = 0; t < 8; ++t) CHECK(beta_bruteforce(t, 3).total() == t + 1);
    const auto b = beta_bruteforce(2, 2);
    CHECK(b.at(1) == 2);
    CHECK(b.at(0) == 1);
    CHECK_THROWS_AS(beta_bruteforce(4, 2), std::out_of_range);
}

TEST_CASE("level seeds and edges") {
    const auto levels = levels_dp(6);
    CHECK(levels[0].direct[0].at(0) == 1);
    CHECK(levels[0].complemented[0].at(0) == 1);
    for (unsigned k = 1; k <= 6; ++k) {
        const long kk = k;
        CHECK(levels[k].direct[0] == DeltaHistogram<std::uint64_t>::point_mass(k, kk, 1));
        CHECK(levels[k].complemented[0] == DeltaHistogram<std::uint64_t>::point_mass(k, 0, std::uint64_t{1} << k));
        CHECK(levels[k].direct.back() == DeltaHistogram<std::uint64_t>::point_mass(k, 0, std::uint64_t{1} << k));
    }
}

TEST_CASE("recurrence levels equal enumeration up to k = 10") {
    const auto levels = levels_dp(10);
    for (unsigned k = 0; k <= 10; ++k)
        for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t) {
            REQUIRE(levels[k].direct[t] == beta_bruteforce(t, k));
            REQUIRE(levels[k].complemented[t] == levels[k].direct[(std::uint64_t{1} << k) - 1 - t]);
        }
}

TEST_CASE("memory budget is enforced") {
    CHECK_THROWS_AS(levels_dp(20, 1024), ResourceLimitError);
    LevelStream<std::uint32_t> s;
    RunOptions tight;
    tight.memory_budget = 64;
    CHECK_THROWS_AS([&] { for (int i = 0; i < 6; ++i) s.step(tight); }(), ResourceLimitError);
}

TEST_CASE("threaded streaming matches sequential") {
    LevelStream<std::uint32_t> a, b;
    RunOptions par;
    par.threads = 4;
    for (int i = 0; i < 12; ++i) {
        a.step();
        b.step(par);
    }
    for (std::uint64_t t = 0; t < a.size(); ++t) REQUIRE(a.histogram(t) == b.histogram(t));
}

TEST_CASE("pair counts") {
    const std::vector<const std::vector<std::uint64_t>*> ref{&frozen::pair_count_k2, &frozen::pair_count_k3,
                                                              &frozen::pair_count_k4, &frozen::pair_count_k5};
    for (unsigned k = 2; k <= 5; ++k) {
        const auto& expected = *ref[k - 2];
        const auto levels = levels_dp(k);
        for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t) {
            CHECK(s_size_pair_oracle(t, k) == expected[t]);
            if (t >= 1 && t + 1 < (std::uint64_t{1} << k)) {
                CHECK(circ_count_oracle(t, k) == expected[t]);
                CHECK(tu_deng_instance(t, k, levels[k]).gamma1 == expected[t]);
            }
        }
    }
    CHECK_THROWS_AS(circ_count_oracle(0, 4), std::out_of_range);
    CHECK_THROWS_AS(s_size_pair_oracle(16, 4), std::out_of_range);
}

TEST_CASE("tu-deng instances") {
    const auto levels = levels_dp(4);
    const auto i0 = tu_deng_instance(0, 4, levels[4]);
    CHECK(i0.gamma1 == 1);
    CHECK(i0.P == Rational(1, 16));
    const auto levels2 = levels_dp(2);
    CHECK(tu_deng_instance(1, 2, levels2[2]).P == Rational(1, 2));
    CHECK(tu_deng_instance(2, 2, levels2[2]).gamma1 == 2);
    CHECK_THROWS_AS(tu_deng_instance(1, 3, levels2[2]), std::invalid_argument);

    LevelStream<std::uint64_t> s;
    for (int i = 0; i < 4; ++i) s.step();
    for (std::uint64_t t = 0; t < 16; ++t) {
        const auto a = tu_deng_instance(t, 4, levels[4]);
        const auto b = tu_deng_instance(t, 4, s);
        CHECK(a.gamma == b.gamma);
        CHECK(s.gamma1(t) == a.gamma1);
    }
}

TEST_CASE("theta rows") {
    for (std::uint64_t n = 0; n < frozen::theta_rows.size(); ++n) CHECK(theta_row(n) == frozen::theta_rows[n]);
    CHECK(theta(0, 2) == 2);
    CHECK(theta(0, 31) == 32);
    CHECK(theta(9, 31) == 0);
}

TEST_CASE("verification summaries") {
    const auto reports = verify_tu_deng(2, 10, Rational(1, 10));
    CHECK(reports.front().k == 2);
    CHECK(reports.front().violations == 0);
    CHECK(reports.front().max_P == Rational(1, 2));
    for (const auto& ref : frozen::tudeng_levels) {
        const auto& r = reports[ref.k - 2];
        CHECK(r.max_gamma == ref.max_gamma);
        CHECK(r.argmax_t == ref.argmax_t);
        CHECK(r.window_inside == ref.inside);
        CHECK(r.window_outside == ref.outside);
        CHECK(r.window_inside + r.window_outside == (std::uint64_t{1} << ref.k) - 2);
    }
    CHECK_THROWS_AS(verify_tu_deng(2, 4, Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(verify_tu_deng(1, 4, Rational(1, 10)), std::invalid_argument);
}

TEST_CASE("per-t dump respects its limit") {
    std::vector<std::uint64_t> seen;
    PerTDump dump{[&](unsigned k, std::uint64_t t, std::uint64_t g) {
                      if (k == 5) {
                          seen.push_back(t);
                          CHECK(g == frozen::pair_count_k5[t]);
                      }
                  },
                  10};
    verify_tu_deng(5, 5, Rational(1, 10), {}, &dump);
    CHECK(seen.size() == 9);  // t = 1..9
}
