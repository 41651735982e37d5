#pragma once

// Carry histograms beta_{t,k,j} = #{a in [0, t] : w(a + 2^k - 1 - t) - w(a) = j}.
//
// Two routes: the definitional loop (beta_bruteforce) and the level-doubling
// recurrences, which build level k+1 from level k only:
//
//   beta_{2t,   k+1, j} = beta_{t, k, j-1} + beta_{t-1, k, j+1}
//   beta_{2t+1, k+1, j} = 2 beta_{t, k, j}
//   beta_{(2t)^c,   k+1, j} = 2 beta_{t^c, k, j}
//   beta_{(2t+1)^c, k+1, j} = beta_{t^c, k, j-1} + beta_{(t+1)^c, k, j+1}
//
// with beta_{-1,.,.} = 0 and the level-0 seeds beta_{0,0,j} = delta_{0,j}.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "digits.hpp"
#include "histogram.hpp"
#include "numeric.hpp"

namespace carrystat {

inline constexpr unsigned kMaxLevel = 40;

template <typename Count = std::uint64_t>
DeltaHistogram<Count> beta_bruteforce(std::uint64_t t, unsigned k) {
    if (k >= kMaxWordBits - 1) throw std::out_of_range("beta_bruteforce: k too large");
    if (!fits_width(t, k)) throw std::out_of_range("beta_bruteforce: t >= 2^k");
    const std::uint64_t tc = all_ones(k) - t;
    DeltaHistogram<Count> h(k);
    for (std::uint64_t a = 0; a <= t; ++a) {
        const long j = static_cast<long>(hamming_weight(a + tc)) - static_cast<long>(hamming_weight(a));
        h.ref(j) += Count{1};
    }
    return h;
}

/// Bytes needed to hold the flat direct family of one level.
constexpr std::size_t level_bytes(unsigned k, std::size_t count_size) {
    return (std::size_t{1} << k) * (2 * std::size_t{k} + 1) * count_size;
}

/// Full two-family table for one level. Intended for small k (self-checks, oracles).
template <typename Count = std::uint64_t>
struct LevelTables {
    unsigned k = 0;
    std::vector<DeltaHistogram<Count>> direct;        // beta_{t,k,.}
    std::vector<DeltaHistogram<Count>> complemented;  // beta_{t^c,k,.}

    std::size_t size() const noexcept { return direct.size(); }
};

namespace detail {

template <typename Count>
void add_shifted(DeltaHistogram<Count>& out, const DeltaHistogram<Count>& in, int shift) {
    for (long j = in.min_index(); j <= in.max_index(); ++j) {
        const Count c = in.at(j);
        if (c != Count{0}) out.ref(j + shift) += c;
    }
}

template <typename Count>
void add_scaled(DeltaHistogram<Count>& out, const DeltaHistogram<Count>& in, Count factor) {
    for (long j = in.min_index(); j <= in.max_index(); ++j) {
        const Count c = in.at(j);
        if (c != Count{0}) out.ref(j) += factor * c;
    }
}

/// Runs body(begin, end) over [0, n) split into contiguous chunks.
inline void parallel_chunks(std::size_t n, unsigned threads, const std::function<void(std::size_t, std::size_t)>& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || n < 4096) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned i = 0; i < threads; ++i) {
        const std::size_t begin = i * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(body, begin, end);
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

template <typename Count = std::uint64_t>
LevelTables<Count> initial_level() {
    LevelTables<Count> level;
    level.k = 0;
    level.direct.push_back(DeltaHistogram<Count>::point_mass(0, 0, Count{1}));
    level.complemented.push_back(DeltaHistogram<Count>::point_mass(0, 0, Count{1}));
    return level;
}

/// Builds level k+1 from level k using all four recurrences.
template <typename Count>
LevelTables<Count> next_level(const LevelTables<Count>& prev) {
    const unsigned k = prev.k;
    const std::size_t n = prev.direct.size();
    LevelTables<Count> next;
    next.k = k + 1;
    next.direct.assign(2 * n, DeltaHistogram<Count>(k + 1));
    next.complemented.assign(2 * n, DeltaHistogram<Count>(k + 1));
    for (std::size_t t = 0; t < n; ++t) {
        auto& even = next.direct[2 * t];
        detail::add_shifted(even, prev.direct[t], +1);
        if (t > 0) detail::add_shifted(even, prev.direct[t - 1], -1);
        detail::add_scaled(next.direct[2 * t + 1], prev.direct[t], Count{2});

        detail::add_scaled(next.complemented[2 * t], prev.complemented[t], Count{2});
        auto& odd = next.complemented[2 * t + 1];
        detail::add_shifted(odd, prev.complemented[t], +1);
        if (t + 1 < n) detail::add_shifted(odd, prev.complemented[t + 1], -1);
    }
    return next;
}

/// All levels 0..k_max, each entry equal to beta_bruteforce on that index.
template <typename Count = std::uint64_t>
std::vector<LevelTables<Count>> levels_dp(unsigned k_max, std::size_t memory_budget = default_memory_budget()) {
    if (k_max > kMaxLevel) throw ResourceLimitError("levels_dp: k_max exceeds supported range");
    // Histogram objects carry vector overhead on top of the payload.
    std::size_t total = 0;
    for (unsigned k = 0; k <= k_max; ++k)
        total += 2 * (level_bytes(k, sizeof(Count)) + (std::size_t{1} << k) * sizeof(DeltaHistogram<Count>));
    if (total > memory_budget)
        throw ResourceLimitError("levels_dp: tables for k <= " + std::to_string(k_max) + " need " +
                                 std::to_string(total) + " bytes, budget is " + std::to_string(memory_budget));
    std::vector<LevelTables<Count>> levels;
    levels.reserve(k_max + 1);
    levels.push_back(initial_level<Count>());
    for (unsigned k = 0; k < k_max; ++k) levels.push_back(next_level(levels.back()));
    return levels;
}

/// Streaming direct-family table: one flat row of width 2k+1 per t.
/// The complemented family is read as direct[2^k - 1 - t].
template <typename Count = std::uint64_t>
class LevelStream {
public:
    LevelStream() : k_(0), data_{Count{1}} {}

    unsigned k() const noexcept { return k_; }
    std::size_t size() const noexcept { return std::size_t{1} << k_; }
    std::size_t width() const noexcept { return 2 * std::size_t{k_} + 1; }

    std::span<const Count> row(std::uint64_t t) const {
        if (t >= size()) throw std::out_of_range("LevelStream: t >= 2^k");
        return {data_.data() + t * width(), width()};
    }

    Count beta(std::uint64_t t, long j) const {
        if (j < -static_cast<long>(k_) || j > static_cast<long>(k_)) return Count{0};
        return row(t)[static_cast<std::size_t>(j + static_cast<long>(k_))];
    }

    Count beta_complemented(std::uint64_t t, long j) const { return beta(size() - 1 - t, j); }

    DeltaHistogram<Count> histogram(std::uint64_t t) const {
        auto r = row(t);
        return DeltaHistogram<Count>(k_, std::vector<Count>(r.begin(), r.end()));
    }

    /// Gamma_{t,k,1} = sum_{j>=1} beta_{t,k,j} + beta_{t^c,k,-j}.
    std::uint64_t gamma1(std::uint64_t t) const {
        const auto direct = row(t);
        const auto comp = row(size() - 1 - t);
        std::uint64_t s = 0;
        for (std::size_t i = k_ + 1; i < width(); ++i) s += direct[i];
        for (std::size_t i = 0; i < k_; ++i) s += comp[i];
        return s;
    }

    /// Memory needed to advance from the current level.
    std::size_t step_bytes() const { return level_bytes(k_, sizeof(Count)) + level_bytes(k_ + 1, sizeof(Count)); }

    void step(const RunOptions& options = {}) {
        if (k_ + 1 > kMaxLevel) throw ResourceLimitError("LevelStream: level exceeds supported range");
        if (step_bytes() > options.memory_budget)
            throw ResourceLimitError("LevelStream: level " + std::to_string(k_ + 1) + " needs " +
                                     std::to_string(step_bytes()) + " bytes, budget is " +
                                     std::to_string(options.memory_budget));
        const std::size_t n = size();
        const std::size_t w_old = width();
        const std::size_t w_new = w_old + 2;
        std::vector<Count> next(2 * n * w_new, Count{0});
        // Old index i (j = i - k) maps to new index i + 1 at the same j.
        detail::parallel_chunks(n, options.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t t = begin; t < end; ++t) {
                const Count* cur = data_.data() + t * w_old;
                Count* even = next.data() + (2 * t) * w_new;
                Count* odd = even + w_new;
                for (std::size_t i = 0; i < w_old; ++i) {
                    even[i + 2] += cur[i];  // j-1 -> j
                    odd[i + 1] = Count{2} * cur[i];
                }
                if (t > 0) {
                    const Count* prev = cur - w_old;
                    for (std::size_t i = 0; i < w_old; ++i) even[i] += prev[i];  // j+1 -> j
                }
            }
        });
        data_ = std::move(next);
        ++k_;
    }

private:
    unsigned k_;
    std::vector<Count> data_;
};

struct TuDengInstance {
    DigitContext context;
    DeltaHistogram<std::uint64_t> gamma;  // gamma_{t,k,j} = beta_{t,k,j} + beta_{t^c,k,-j}
    std::uint64_t gamma1 = 0;             // Gamma_{t,k,1}
    Rational P;                           // Gamma_{t,k,1} / 2^k
};

template <typename Count>
TuDengInstance tu_deng_instance(std::uint64_t t, unsigned k, const LevelTables<Count>& tables) {
    if (tables.k != k) throw std::invalid_argument("tu_deng_instance: level mismatch");
    DigitContext ctx(t, k);
    const auto& direct = tables.direct.at(t);
    const auto& comp = tables.complemented.at(t);
    DeltaHistogram<std::uint64_t> gamma(k);
    for (long j = -static_cast<long>(k); j <= static_cast<long>(k); ++j)
        gamma.ref(j) = static_cast<std::uint64_t>(direct.at(j)) + static_cast<std::uint64_t>(comp.at(-j));
    const std::uint64_t g1 = gamma.upper_tail(1);
    return {ctx, std::move(gamma), g1, make_rational(from_u64(g1), pow2(k))};
}

template <typename Count>
TuDengInstance tu_deng_instance(std::uint64_t t, unsigned k, const LevelStream<Count>& stream) {
    if (stream.k() != k) throw std::invalid_argument("tu_deng_instance: level mismatch");
    DigitContext ctx(t, k);
    DeltaHistogram<std::uint64_t> gamma(k);
    for (long j = -static_cast<long>(k); j <= static_cast<long>(k); ++j)
        gamma.ref(j) = static_cast<std::uint64_t>(stream.beta(t, j)) +
                       static_cast<std::uint64_t>(stream.beta_complemented(t, -j));
    const std::uint64_t g1 = gamma.upper_tail(1);
    return {ctx, std::move(gamma), g1, make_rational(from_u64(g1), pow2(k))};
}

/// |S_{t,k}| by enumerating a in [0, 2^k - 2]; b is determined modulo 2^k - 1.
inline std::uint64_t s_size_pair_oracle(std::uint64_t t, unsigned k) {
    if (k == 0 || k >= 40) throw std::out_of_range("s_size_pair_oracle: k out of range");
    if (!fits_width(t, k)) throw std::out_of_range("s_size_pair_oracle: t >= 2^k");
    const std::uint64_t modulus = all_ones(k);
    const std::uint64_t target = t % modulus;
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < modulus; ++a) {
        const std::uint64_t b = (target + modulus - a) % modulus;
        if (hamming_weight(a) + hamming_weight(b) < k) ++count;
    }
    return count;
}

/// #{a in [0, 2^k - 1] : w(a circ+ t) < w(a)} for t in [1, 2^k - 2].
inline std::uint64_t circ_count_oracle(std::uint64_t t, unsigned k) {
    if (k < 2 || k >= 40) throw std::out_of_range("circ_count_oracle: k out of range");
    if (t < 1 || t > all_ones(k) - 1) throw std::out_of_range("circ_count_oracle: t outside [1, 2^k - 2]");
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a <= all_ones(k); ++a)
        if (hamming_weight(circ_add(a, t, k)) < hamming_weight(a)) ++count;
    return count;
}

/// Histogram j -> #{i in [0, n] : nu2(C(n, i)) = j}, via nu2(C(n,i)) = w(i) + w(n-i) - w(n).
inline std::vector<std::uint64_t> theta_row(std::uint64_t n) {
    const unsigned wn = hamming_weight(n);
    std::vector<std::uint64_t> row(bit_length(n) + 1, 0);
    for (std::uint64_t i = 0; i <= n; ++i) {
        const unsigned j = hamming_weight(i) + hamming_weight(n - i) - wn;
        if (j >= row.size()) row.resize(j + 1, 0);
        ++row[j];
    }
    while (row.size() > 1 && row.back() == 0) row.pop_back();
    return row;
}

/// Number of entries in row n of Pascal's triangle with 2-valuation exactly j.
inline std::uint64_t theta(unsigned j, std::uint64_t n) {
    const auto row = theta_row(n);
    return j < row.size() ? row[j] : 0;
}

}  // namespace carrystat
