#pragma once

// Exhaustive Tu-Deng campaigns: P_{t,k} = Gamma_{t,k,1} / 2^k <= 1/2 for all
// t in [1, 2^k - 2], plus the window counts behind the concentration result.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "carry.hpp"
#include "config.hpp"
#include "numeric.hpp"

namespace carrystat {

struct TuDengLevelReport {
    unsigned k = 0;
    Rational epsilon;
    std::uint64_t violations = 0;       // t with P_{t,k} > 1/2
    std::uint64_t max_gamma = 0;        // max Gamma_{t,k,1}
    Rational max_P;
    std::uint64_t argmax_t = 0;         // smallest t attaining max_P
    std::uint64_t window_inside = 0;    // P in (1/2 - eps, 1/2)
    std::uint64_t window_outside = 0;
    double fraction_inside = 0;         // window_inside / 2^k
    double normalized_outside = 0;      // window_outside * k / 2^k
    BigInt sum_gamma;                   // sum over t in [1, 2^k - 2] of Gamma_{t,k,1}
    BigInt sum_gamma_sq;
    Rational mean_P;                    // over t in [1, 2^k - 2]
    double wall_time_ms = 0;
};

/// Called with (k, t, Gamma_{t,k,1}) for each t the caller asks to see.
using PerTSink = std::function<void(unsigned, std::uint64_t, std::uint64_t)>;

struct PerTDump {
    PerTSink sink;
    std::uint64_t t_limit = 0;  // only t < t_limit are reported
};

namespace detail {

/// Largest integer L with Gamma > L  <=>  Gamma / 2^k > 1/2 - eps.
inline BigInt window_floor(unsigned k, const Rational& epsilon) {
    Rational bound = Rational(pow2(k)) * (Rational(1, 2) - epsilon);
    bound.canonicalize();
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
    return fl;
}

template <typename Count>
TuDengLevelReport summarize_level(const LevelStream<Count>& stream, const Rational& epsilon, const PerTDump* dump) {
    const unsigned k = stream.k();
    TuDengLevelReport r;
    r.k = k;
    r.epsilon = epsilon;
    const std::uint64_t half = std::uint64_t{1} << (k - 1);
    const BigInt lower_big = window_floor(k, epsilon);
    const bool lower_negative = sgn(lower_big) < 0;
    const std::uint64_t lower = lower_negative ? 0 : to_u64(lower_big);
    unsigned __int128 sum = 0;
    unsigned __int128 sum_sq = 0;
    const std::uint64_t last = all_ones(k) - 1;
    for (std::uint64_t t = 1; t <= last; ++t) {
        const std::uint64_t g = stream.gamma1(t);
        if (dump != nullptr && dump->sink && t < dump->t_limit) dump->sink(k, t, g);
        sum += g;
        sum_sq += static_cast<unsigned __int128>(g) * g;
        if (g > half) ++r.violations;
        if (t == 1 || g > r.max_gamma) {
            r.max_gamma = g;
            r.argmax_t = t;
        }
        if (g < half && (lower_negative || g > lower))
            ++r.window_inside;
        else
            ++r.window_outside;
    }
    auto to_big = [](unsigned __int128 v) {
        BigInt hi = from_u64(static_cast<std::uint64_t>(v >> 64));
        return BigInt(hi * pow2(64) + from_u64(static_cast<std::uint64_t>(v)));
    };
    r.sum_gamma = to_big(sum);
    r.sum_gamma_sq = to_big(sum_sq);
    r.max_P = make_rational(from_u64(r.max_gamma), pow2(k));
    const double denom = static_cast<double>(std::uint64_t{1} << k);
    r.fraction_inside = static_cast<double>(r.window_inside) / denom;
    r.normalized_outside = static_cast<double>(r.window_outside) * k / denom;
    r.mean_P = make_rational(r.sum_gamma, pow2(k) * from_u64(last));
    return r;
}

}  // namespace detail

/// One report per k in [k_min, k_max] from a single streaming pass of the level recurrences.
template <typename Count = std::uint32_t>
std::vector<TuDengLevelReport> verify_tu_deng_range(unsigned k_min, unsigned k_max, const Rational& epsilon,
                                                    const RunOptions& options = {}, const PerTDump* dump = nullptr) {
    if (k_min < 2 || k_min > k_max) throw std::invalid_argument("verify_tu_deng: need 2 <= k_min <= k_max");
    if (epsilon <= 0 || epsilon >= Rational(1, 2)) throw std::invalid_argument("verify_tu_deng: need 0 < epsilon < 1/2");
    if (k_max >= 8 * sizeof(Count)) throw ResourceLimitError("verify_tu_deng: count type too narrow for k_max");
    std::vector<TuDengLevelReport> out;
    LevelStream<Count> stream;
    auto started = std::chrono::steady_clock::now();
    while (stream.k() < k_max) {
        stream.step(options);
        if (stream.k() >= k_min) {
            out.push_back(detail::summarize_level(stream, epsilon, dump));
            const auto now = std::chrono::steady_clock::now();
            out.back().wall_time_ms = std::chrono::duration<double, std::milli>(now - started).count();
            started = now;
        }
    }
    return out;
}

/// Single-level campaign. Counts are 32-bit up to k = 31 and 64-bit beyond.
inline TuDengLevelReport verify_tu_deng(unsigned k, const Rational& epsilon, const RunOptions& options = {}) {
    if (k < 32) return verify_tu_deng_range<std::uint32_t>(k, k, epsilon, options).front();
    return verify_tu_deng_range<std::uint64_t>(k, k, epsilon, options).front();
}

inline std::vector<TuDengLevelReport> verify_tu_deng(unsigned k_min, unsigned k_max, const Rational& epsilon,
                                                     const RunOptions& options = {}, const PerTDump* dump = nullptr) {
    if (k_max < 32) return verify_tu_deng_range<std::uint32_t>(k_min, k_max, epsilon, options, dump);
    return verify_tu_deng_range<std::uint64_t>(k_min, k_max, epsilon, options, dump);
}

}  // namespace carrystat
