#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "carrystat/carry.hpp"
#include "carrystat/moments.hpp"
#include "frozen_values.hpp"

using namespace carrystat;

TEST_CASE("first-moment tables") {
    const auto rec = moment_table_recurrence(10);
    for (long j = -4; j <= 4; ++j) {
        CHECK(rec[4].m.at(j) == from_u64(frozen::m_k4[static_cast<std::size_t>(j + 4)]));
        CHECK(rec[4].m_tilde.at(j) == from_u64(frozen::m_tilde_k4[static_cast<std::size_t>(j + 4)]));
    }
    const auto levels = levels_dp(8);
    for (unsigned k = 0; k <= 8; ++k) {
        const auto direct = moment_table_direct(levels[k]);
        for (long j = -static_cast<long>(k); j <= static_cast<long>(k); ++j) {
            CHECK(rec[k].m.at(j) == direct.m.at(j));
            CHECK(rec[k].m_tilde.at(j) == rec[k].m.at(-j));
        }
        for (long l = 0; l <= 2 * static_cast<long>(k); ++l) CHECK(rec[k].big_m(l) == direct.big_m(l));
    }
}

TEST_CASE("first-moment identity and the plus-one form") {
    const auto rec = moment_table_recurrence(8);
    for (unsigned k = 1; k <= 8; ++k) {
        const BigInt expected = from_u64(frozen::gamma_sum[k - 1]);
        CHECK(rec[k].big_m(k - 1) == expected);
        CHECK(first_moment_gamma_form(k) == expected);
        CHECK(first_moment_closed_form(k) == expected + 1);
    }
    const auto e = endpoint_gammas(70);
    CHECK(e.at_zero == 1);
    CHECK(e.at_all_ones == 0);
}

TEST_CASE("second-moment recurrences equal definitional sums") {
    const auto levels = levels_dp(7);
    const auto rec = second_moment_tables(7);
    for (unsigned k = 0; k <= 7; ++k) {
        const auto direct = second_moment_direct(levels[k]);
        const long dim = static_cast<long>(rec[k].dim());
        for (long l = 0; l < dim; ++l)
            for (long m = 0; m < dim; ++m) {
                REQUIRE(rec[k].a.at(l, m) == direct.a.at(l, m));
                REQUIRE(rec[k].b.at(l, m) == direct.b.at(l, m));
                REQUIRE(rec[k].c.at(l, m) == direct.c.at(l, m));
                REQUIRE(rec[k].a1.at(l, m) == direct.a1.at(l, m));
                REQUIRE(rec[k].b1.at(l, m) == direct.b1.at(l, m));
                REQUIRE(rec[k].c1.at(l, m) == direct.c1.at(l, m));
                REQUIRE(rec[k].a3.at(l, m) == direct.a3.at(l, m));
                REQUIRE(rec[k].b3.at(l, m) == direct.b3.at(l, m));
                REQUIRE(rec[k].c3.at(l, m) == direct.c3.at(l, m));
                REQUIRE(rec[k].M2.at(l, m) == direct.M2.at(l, m));
            }
    }
    for (long l = 0; l <= 3; ++l)
        for (long m = 0; m <= 3; ++m)
            CHECK(rec[3].M2.at(l, m) == from_u64(frozen::m2_k3[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)]));
}

TEST_CASE("capped grids agree with full grids") {
    const auto full = second_moment_tables(9);
    const auto capped = second_moment_tables(9, 10);
    for (unsigned k = 0; k <= 9; ++k)
        for (long l = 0; l < 10; ++l)
            for (long m = 0; m < 10; ++m) REQUIRE(full[k].M2.at(l, m) == capped[k].M2.at(l, m));
}

TEST_CASE("gamma moment sums") {
    const auto sums = gamma_moment_sums(8);
    REQUIRE(sums.size() == 8);
    for (unsigned k = 1; k <= 8; ++k) {
        CHECK(sums[k - 1].sum == from_u64(frozen::gamma_sum[k - 1]));
        CHECK(sums[k - 1].sum_sq == from_u64(frozen::gamma_sq_sum[k - 1]));
    }
}

TEST_CASE("asymptotic table matches reference") {
    const auto rows = asymptotics_table(8, 20);
    REQUIRE(rows.size() == frozen::asymptotics.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& ref = frozen::asymptotics[i];
        CHECK(rows[i].k == ref.k);
        CHECK(static_cast<double>(rows[i].first_error) == Catch::Approx(ref.first_error).epsilon(1e-9));
        CHECK(static_cast<double>(rows[i].second_error) == Catch::Approx(ref.second_error).epsilon(1e-12));
        CHECK(static_cast<double>(rows[i].sigma_times_k) == Catch::Approx(ref.sigma_times_k).epsilon(1e-12));
    }
    CHECK(static_cast<double>(sigma_limit()) == Catch::Approx(frozen::sigma_limit).epsilon(1e-15));
    CHECK_THROWS(asymptotics_table(1, 5));
    CHECK_THROWS(variance(1));
}
