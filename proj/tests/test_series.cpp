#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "carrystat/genfun.hpp"
#include "carrystat/moments.hpp"
#include "carrystat/series.hpp"
#include "frozen_values.hpp"

using namespace carrystat;

namespace {

TruncatedSeries random_series(const SeriesShape& shape, std::mt19937& rng, bool unit) {
    std::uniform_int_distribution<int> coef(-3, 3);
    TruncatedSeries s(shape);
    for (unsigned i = 0; i <= shape.bounds[0]; ++i)
        for (unsigned j = 0; j <= shape.bounds[1]; ++j)
            for (unsigned l = 0; l <= shape.bounds[2]; ++l) s.ref(i, j, l) = coef(rng);
    if (unit && sgn(s.constant_term()) == 0) s.ref(0, 0, 0) = 1;
    return s;
}

}  // namespace

TEST_CASE("geometric series") {
    const auto shape = SeriesShape::univariate("z", 12);
    const auto z = TruncatedSeries::variable(shape, 0);
    const auto one = TruncatedSeries::constant(shape, 1);
    const auto inv = (one - z * Rational(4)).inverse();
    for (unsigned n = 0; n <= 12; ++n) CHECK(inv.coefficient(n) == Rational(pow_ui(4, n)));
    const auto g = (one - z).inverse();
    for (unsigned n = 0; n <= 12; ++n) CHECK(g.coefficient(n) == 1);
    CHECK(g.coefficient(13) == 0);
}

TEST_CASE("inverse of a non-unit throws") {
    const auto shape = SeriesShape::bivariate(3, 3);
    CHECK_THROWS_AS(TruncatedSeries::variable(shape, 0).inverse(), std::domain_error);
    const Expr x = genfun::x();
    CHECK_THROWS_AS(expand_spec({"bad", 1 / x, 1}, SeriesShape::univariate("x", 3)), std::domain_error);
}

TEST_CASE("incompatible truncations are rejected") {
    const auto a = TruncatedSeries::constant(SeriesShape::bivariate(3, 3), 1);
    const auto b = TruncatedSeries::constant(SeriesShape::bivariate(3, 4), 1);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("ring laws and inverse on random instances") {
    std::mt19937 rng(20240611);
    const auto shape = SeriesShape::trivariate(3, 2, 2);
    const auto one = TruncatedSeries::constant(shape, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(shape, rng, true);
        const auto b = random_series(shape, rng, false);
        const auto c = random_series(shape, rng, false);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * a.inverse() == one);
    }
}

TEST_CASE("bivariate expansions match the moment tables") {
    const unsigned K = 10;
    const auto shape = SeriesShape::bivariate(K, 2 * K);
    const auto f = expand_spec(genfun::bivariate_F(), shape);
    const auto ft = expand_spec(genfun::bivariate_F_tilde(), shape);
    const auto g = expand_spec(genfun::bivariate_G(), shape);
    const auto tables = moment_table_recurrence(K);
    for (unsigned k = 0; k <= K; ++k)
        for (long l = 0; l <= 2 * static_cast<long>(k); ++l) {
            CHECK(f.coefficient(k, l) == Rational(tables[k].m.at(static_cast<long>(k) - l)));
            CHECK(ft.coefficient(k, l) == Rational(tables[k].m_tilde.at(static_cast<long>(k) - l)));
            CHECK(g.coefficient(k, l) == Rational(tables[k].big_m(l)));
        }
}

TEST_CASE("diagonal first moment") {
    const auto d = genfun::diagonal_first_moment(12);
    CHECK(d[0] == 1);
    CHECK(d[1] == 5);
    for (unsigned k = 1; k <= 8; ++k) CHECK(d[k - 1] == from_u64(frozen::gamma_sum[k - 1]));
    const auto g = expand_spec(genfun::bivariate_G(), SeriesShape::bivariate(12, 12));
    const auto shifted = genfun::diagonal(g, -1);
    for (unsigned k = 1; k <= 12; ++k) CHECK(shifted[k] == Rational(d[k - 1]));
    CHECK_THROWS(genfun::diagonal_first_moment(0));
}

TEST_CASE("trivariate coefficients") {
    CHECK(genfun::trivariate_coefficient(1, 0, 0) == 1);
    const genfun::TrivariateExpansion e(8);
    for (unsigned k = 1; k <= 8; ++k) CHECK(e.coefficient(k, k - 1, k - 1) == from_u64(frozen::gamma_sq_sum[k - 1]));
    for (unsigned l = 0; l <= 3; ++l)
        for (unsigned m = 0; m <= 3; ++m) {
            CHECK(e.coefficient(3, l, m) == from_u64(frozen::m2_k3[l][m]));
            CHECK(genfun::trivariate_coefficient(3, l, m) == from_u64(frozen::m2_k3[l][m]));
        }
    CHECK_THROWS_AS(e.coefficient(9, 0, 0), ResourceLimitError);
    CHECK_THROWS_AS(genfun::TrivariateExpansion(11), ResourceLimitError);
    CHECK_THROWS_AS(genfun::trivariate_coefficient(11, 0, 0), ResourceLimitError);
}

TEST_CASE("integrality is asserted on extraction") {
    const auto shape = SeriesShape::univariate("x", 2);
    auto s = TruncatedSeries::constant(shape, Rational(1, 2));
    CHECK_THROWS_AS(integer_coefficient(s, 0), std::logic_error);
}
