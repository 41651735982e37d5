#pragma once

// Bit-level primitives on nonnegative integers. Machine-word overloads cover
// every width the enumerations use; the BigInt overloads serve the moment
// accumulators.

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "numeric.hpp"

namespace carrystat {

inline constexpr unsigned kMaxWordBits = 64;

/// Number of 1-bits in the binary expansion of n.
constexpr unsigned hamming_weight(std::uint64_t n) noexcept { return static_cast<unsigned>(std::popcount(n)); }

inline unsigned long hamming_weight(const BigInt& n) {
    if (sgn(n) < 0) throw std::domain_error("hamming_weight: negative argument");
    return mpz_popcount(n.get_mpz_t());
}

/// 2-adic valuation of n >= 1.
constexpr unsigned nu2(std::uint64_t n) {
    if (n == 0) throw std::domain_error("nu2: undefined for 0");
    return static_cast<unsigned>(std::countr_zero(n));
}

inline unsigned long nu2(const BigInt& n) {
    if (sgn(n) <= 0) throw std::domain_error("nu2: requires n >= 1");
    return mpz_scan1(n.get_mpz_t(), 0);
}

/// Number of binary digits of n (0 for n = 0).
constexpr unsigned bit_length(std::uint64_t n) noexcept { return static_cast<unsigned>(std::bit_width(n)); }

/// 2^k - 1 as a word; k must be at most 64.
constexpr std::uint64_t all_ones(unsigned k) {
    if (k > kMaxWordBits) throw std::out_of_range("all_ones: width exceeds 64 bits");
    return k == kMaxWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
}

constexpr bool fits_width(std::uint64_t t, unsigned k) noexcept { return k >= kMaxWordBits || (t >> k) == 0; }

/// k-bit complement 2^k - 1 - t.
constexpr std::uint64_t complement(std::uint64_t t, unsigned k) {
    if (k == 0 || k > kMaxWordBits) throw std::out_of_range("complement: width must be in [1, 64]");
    if (!fits_width(t, k)) throw std::out_of_range("complement: t >= 2^k");
    return all_ones(k) - t;
}

inline BigInt complement(const BigInt& t, unsigned long k) {
    if (k == 0) throw std::out_of_range("complement: width must be positive");
    BigInt top = pow2(k) - 1;
    if (sgn(t) < 0 || t > top) throw std::out_of_range("complement: t >= 2^k");
    return top - t;
}

/// Circular addition (a + b) mod (2^k - 1); a sum of exactly 2^k - 1 yields 0.
constexpr std::uint64_t circ_add(std::uint64_t a, std::uint64_t b, unsigned k) {
    if (k == 0 || k >= kMaxWordBits) throw std::out_of_range("circ_add: width must be in [1, 63]");
    if (!fits_width(a, k) || !fits_width(b, k)) throw std::out_of_range("circ_add: operand >= 2^k");
    return (a + b) % all_ones(k);
}

inline BigInt circ_add(const BigInt& a, const BigInt& b, unsigned long k) {
    if (k == 0) throw std::out_of_range("circ_add: width must be positive");
    BigInt modulus = pow2(k) - 1;
    if (sgn(a) < 0 || sgn(b) < 0 || a > modulus || b > modulus) throw std::out_of_range("circ_add: operand >= 2^k");
    return BigInt((a + b) % modulus);
}

/// An instance (t, k) with 0 <= t < 2^k.
class DigitContext {
public:
    DigitContext(std::uint64_t t, unsigned k) : t_(t), k_(k) {
        if (k == 0 || k >= kMaxWordBits) throw std::out_of_range("DigitContext: k must be in [1, 63]");
        if (!fits_width(t, k)) throw std::out_of_range("DigitContext: t >= 2^k");
    }

    std::uint64_t t() const noexcept { return t_; }
    unsigned k() const noexcept { return k_; }
    std::uint64_t complement() const { return carrystat::complement(t_, k_); }
    unsigned bit_length() const noexcept { return carrystat::bit_length(t_); }
    unsigned weight() const noexcept { return hamming_weight(t_); }

    friend bool operator==(const DigitContext&, const DigitContext&) = default;

private:
    std::uint64_t t_;
    unsigned k_;
};

}  // namespace carrystat
