#include <catch2/catch_amalgamated.hpp>

#include "carrystat/cusick.hpp"
#include "frozen_values.hpp"

using namespace carrystat;

TEST_CASE("densities match enumeration reference") {
    for (const auto& d : frozen::cusick_densities) {
        const auto r = c_density(d.t);
        CHECK(r.c == Rational(d.c_num, d.c_den));
        CHECK(r.c_tilde == Rational(d.ct_num, d.ct_den));
    }
    const auto one = c_density(1);
    CHECK(one.c == Rational(3, 4));
    CHECK(one.c_tilde == Rational(1, 2));
    CHECK(one.k_used == 2);
}

TEST_CASE("t = 0 is trivial") {
    const auto zero = c_density(0);
    CHECK(zero.c == 1);
    CHECK(zero.c_tilde == 0);
}

TEST_CASE("fast counts equal enumeration") {
    for (std::uint64_t t = 0; t < 64; ++t)
        for (unsigned k = 0; k <= 10; ++k) {
            const auto a = delta_distribution(t, k);
            const auto b = delta_distribution_fast(t, k);
            for (long j = a.min_index() - 1; j <= a.max_index() + 1; ++j) REQUIRE(a.v(j) == b.v(j));
        }
}

TEST_CASE("counts are clamped outside the stored range") {
    const auto d = delta_distribution(5, 4);
    CHECK(d.v(-100) == 16);
    CHECK(d.v(100) == 0);
    std::uint64_t mass = 0;
    for (long j = d.min_index(); j <= d.max_index(); ++j) mass += d.point(j);
    CHECK(mass == 16);
}

TEST_CASE("tail counts nonincreasing in k") {
    for (std::uint64_t t = 0; t < 32; ++t) CHECK(check_v_monotonicity(t, 10).ok());
}

TEST_CASE("campaign summary") {
    const auto r = verify_cusick(1024, 3);
    CHECK(r.checked == 1023);
    CHECK(r.violations == 0);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].c == Rational(3, 4));
    CHECK(r.max_c_tilde_margin == 0);
    CHECK(r.min_c_margin > 0);
    CHECK_THROWS(verify_cusick(0));
}
