#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace carrystat {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Raised when a computation would exceed a configured memory or size budget.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline BigInt pow2(unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline BigInt pow_ui(unsigned long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt from_u64(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

inline std::uint64_t to_u64(const BigInt& v) {
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64)
        throw std::overflow_error("value does not fit in 64 bits");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Exact "p/q" rendering; integers keep the "/1" suffix so the column shape is stable.
inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Converts through long double via mpf with enough precision for report values.
inline double to_double(const Rational& q) {
    mpf_class f(0, 256);
    f = q;
    return f.get_d();
}

inline long double to_long_double(const Rational& q) {
    // mpf get_d truncates to double; split for the extra bits.
    mpf_class f(0, 256);
    f = q;
    const double hi = f.get_d();
    mpf_class rest(0, 256);
    rest = f - mpf_class(hi, 256);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

/// Parses a decimal literal such as "0.1", "1e-3" or "3/40" into an exact rational.
inline Rational parse_exact_decimal(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty number");
    if (s.find('/') != std::string::npos) {
        Rational q(s);
        q.canonicalize();
        return q;
    }
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        exp10 = std::stol(s.substr(e + 1));
        s.resize(e);
    }
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    if (std::count(s.begin(), s.end(), '.') > 1) throw std::invalid_argument("not a decimal number: " + std::string(text));
    std::string digits;
    for (char c : s) {
        if (c == '.') continue;
        if (c < '0' || c > '9') throw std::invalid_argument("not a decimal number: " + std::string(text));
        digits.push_back(c);
    }
    if (digits.empty()) throw std::invalid_argument("not a decimal number: " + std::string(text));
    if (auto dot = s.find('.'); dot != std::string::npos) exp10 -= static_cast<long>(s.size() - dot - 1);
    BigInt num(digits);
    if (negative) num = -num;
    Rational q;
    if (exp10 >= 0) {
        q = Rational(num * pow_ui(10, static_cast<unsigned long>(exp10)));
    } else {
        q = make_rational(num, pow_ui(10, static_cast<unsigned long>(-exp10)));
    }
    return q;
}

/// |exact - approx| / |exact| <= 5 * 10^-digits.
inline bool agrees_to_significant_digits(long double exact, long double approx, int digits) {
    if (exact == 0) return approx == 0;
    return std::fabs(exact - approx) / std::fabs(exact) <= 5.0L * std::pow(10.0L, -digits);
}

}  // namespace carrystat
