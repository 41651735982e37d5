#include <catch2/catch_amalgamated.hpp>

#include "carrystat/config.hpp"
#include "carrystat/digits.hpp"
#include "carrystat/numeric.hpp"

using namespace carrystat;

TEST_CASE("hamming weight and 2-valuation") {
    CHECK(hamming_weight(std::uint64_t{0}) == 0);
    CHECK(hamming_weight(std::uint64_t{0b1011}) == 3);
    CHECK(hamming_weight(BigInt("340282366920938463463374607431768211455")) == 128);
    CHECK(nu2(std::uint64_t{12}) == 2);
    CHECK(nu2(BigInt(1) << 100) == 100);
    CHECK_THROWS_AS(nu2(std::uint64_t{0}), std::domain_error);
}

TEST_CASE("complement within k bits") {
    CHECK(complement(std::uint64_t{0}, 4) == 15);
    CHECK(complement(std::uint64_t{5}, 3) == 2);
    CHECK(complement(BigInt(5), 70) == pow2(70) - 6);
    CHECK_THROWS_AS(complement(std::uint64_t{8}, 3), std::out_of_range);
}

TEST_CASE("circular addition wraps the carry") {
    CHECK(circ_add(std::uint64_t{5}, std::uint64_t{3}, 3) == 1);  // 8 mod 7
    CHECK(circ_add(std::uint64_t{3}, std::uint64_t{4}, 3) == 0);  // all-ones identified with 0
    CHECK(circ_add(BigInt(6), BigInt(6), 3) == 5);
    for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b)
            CHECK(circ_add(a, b, 4) == (a + b) % 15);
}

TEST_CASE("digit context") {
    DigitContext ctx(6, 4);
    CHECK(ctx.complement() == 9);
    CHECK(ctx.weight() == 2);
    CHECK(ctx.bit_length() == 3);
    CHECK_THROWS(DigitContext(16, 4));
}

TEST_CASE("exact decimal parsing") {
    CHECK(parse_exact_decimal("0.1") == Rational(1, 10));
    CHECK(parse_exact_decimal("1e-3") == Rational(1, 1000));
    CHECK(parse_exact_decimal("2.5E1") == Rational(25));
    CHECK(parse_exact_decimal("3/40") == Rational(3, 40));
    CHECK_THROWS(parse_exact_decimal("0.1.2"));
    CHECK_THROWS(parse_exact_decimal("abc"));
    CHECK_THROWS(parse_exact_decimal(""));
}

TEST_CASE("rational rendering is always p/q") {
    CHECK(to_fraction_string(Rational(3, 4)) == "3/4");
    CHECK(to_fraction_string(Rational(2)) == "2/1");
    CHECK(to_fraction_string(Rational(0)) == "0/1");
}

TEST_CASE("byte sizes") {
    CHECK(parse_byte_size("1024") == 1024);
    CHECK(parse_byte_size("2K") == 2048);
    CHECK(parse_byte_size("3G") == (std::size_t{3} << 30));
    CHECK_THROWS(parse_byte_size("lots"));
}

TEST_CASE("significant digit agreement") {
    CHECK(agrees_to_significant_digits(1.0L, 1.00004L, 4));
    CHECK_FALSE(agrees_to_significant_digits(1.0L, 1.0006L, 4));
}
