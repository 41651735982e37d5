#pragma once

// Cusick's densities c_t = dens{n : w(n+t) >= w(n)} and c~_t = dens{n : w(n+t) > w(n)}
// together with the raw tail counts V_{t,k,j} = #{n < 2^k : w(n+t) - w(n) >= j}.
//
// Raw counts satisfy V_{2t,k+1,j} = 2 V_{t,k,j} and
// V_{2t+1,k+1,j} = V_{t,k,j-1} + V_{t+1,k,j+1}, with V_{t,0,j} = [w(t) >= j].

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "digits.hpp"
#include "numeric.hpp"

namespace carrystat {

inline constexpr unsigned kMaxCusickWidth = 62;

/// Raw counts v_{t,k,j} stored for j in [-k, w(t) + 1].
class DeltaDistribution {
public:
    DeltaDistribution(std::uint64_t t, unsigned k, std::vector<std::uint64_t> counts)
        : t_(t), k_(k), counts_(std::move(counts)) {
        if (counts_.size() != static_cast<std::size_t>(k_) + hamming_weight(t_) + 2)
            throw std::invalid_argument("DeltaDistribution: wrong number of counts");
    }

    std::uint64_t t() const noexcept { return t_; }
    unsigned k() const noexcept { return k_; }
    long min_index() const noexcept { return -static_cast<long>(k_); }
    long max_index() const noexcept { return static_cast<long>(hamming_weight(t_)) + 1; }

    /// #{n < 2^k : w(n+t) - w(n) >= j}; 2^k below the stored range, 0 above it.
    std::uint64_t v(long j) const noexcept {
        if (j < min_index()) return std::uint64_t{1} << k_;
        if (j > max_index()) return 0;
        return counts_[static_cast<std::size_t>(j - min_index())];
    }

    Rational normalized(long j) const { return make_rational(from_u64(v(j)), pow2(k_)); }

    /// #{n < 2^k : w(n+t) - w(n) = j}.
    std::uint64_t point(long j) const noexcept { return v(j) - v(j + 1); }

    friend bool operator==(const DeltaDistribution&, const DeltaDistribution&) = default;

private:
    std::uint64_t t_;
    unsigned k_;
    std::vector<std::uint64_t> counts_;
};

namespace detail {

inline std::vector<std::uint64_t> suffix_counts(const std::vector<std::uint64_t>& hist, long lo, long hi) {
    // hist indexed by d - lo for d in [lo, hi]; returns #{d >= j} for the same range.
    std::vector<std::uint64_t> out(hist.size(), 0);
    std::uint64_t run = 0;
    for (long j = hi; j >= lo; --j) {
        run += hist[static_cast<std::size_t>(j - lo)];
        out[static_cast<std::size_t>(j - lo)] = run;
    }
    return out;
}

inline void check_cusick_args(std::uint64_t t, unsigned k) {
    if (k > kMaxCusickWidth) throw ResourceLimitError("delta distribution width exceeds 62 bits");
    if (bit_length(t) > kMaxCusickWidth) throw std::out_of_range("t too large");
}

}  // namespace detail

/// Direct O(2^k) enumeration.
inline DeltaDistribution delta_distribution(std::uint64_t t, unsigned k, std::size_t max_enumeration = std::size_t{1} << 34) {
    detail::check_cusick_args(t, k);
    if ((std::uint64_t{1} << k) > max_enumeration) throw ResourceLimitError("delta_distribution: 2^k exceeds enumeration budget");
    const long lo = -static_cast<long>(k);
    const long hi = static_cast<long>(hamming_weight(t)) + 1;
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(hi - lo + 1), 0);
    const std::uint64_t end = std::uint64_t{1} << k;
    for (std::uint64_t n = 0; n < end; ++n) {
        const long d = static_cast<long>(hamming_weight(n + t)) - static_cast<long>(hamming_weight(n));
        ++hist[static_cast<std::size_t>(d - lo)];
    }
    return {t, k, detail::suffix_counts(hist, lo, hi)};
}

/// Direct enumeration to width k_max, snapshotting every width 0..k_max in one pass.
inline std::vector<DeltaDistribution> delta_distributions_upto(std::uint64_t t, unsigned k_max) {
    detail::check_cusick_args(t, k_max);
    if (k_max > 34) throw ResourceLimitError("delta_distributions_upto: width exceeds enumeration budget");
    const long hi = static_cast<long>(hamming_weight(t)) + 1;
    const long lo_all = -static_cast<long>(k_max);
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(hi - lo_all + 1), 0);
    std::vector<DeltaDistribution> out;
    out.reserve(k_max + 1);
    std::uint64_t n = 0;
    for (unsigned k = 0; k <= k_max; ++k) {
        const std::uint64_t end = std::uint64_t{1} << k;
        for (; n < end; ++n) {
            const long d = static_cast<long>(hamming_weight(n + t)) - static_cast<long>(hamming_weight(n));
            ++hist[static_cast<std::size_t>(d - lo_all)];
        }
        const long lo = -static_cast<long>(k);
        std::vector<std::uint64_t> sub(hist.begin() + (lo - lo_all), hist.end());
        out.emplace_back(t, k, detail::suffix_counts(sub, lo, hi));
    }
    return out;
}

/// Same counts as delta_distribution, via the binary recurrences in O(k * (k + log t)).
inline DeltaDistribution delta_distribution_fast(std::uint64_t t, unsigned k) {
    detail::check_cusick_args(t, k);
    const long lo = -static_cast<long>(k) - 1;
    const long hi = static_cast<long>(bit_length(t)) + 2;
    const std::size_t span = static_cast<std::size_t>(hi - lo + 1);
    using Row = std::vector<std::uint64_t>;
    auto at = [&](const Row& row, unsigned width, long j) -> std::uint64_t {
        if (j < lo) return std::uint64_t{1} << width;
        if (j > hi) return 0;
        return row[static_cast<std::size_t>(j - lo)];
    };
    auto base = [&](std::uint64_t u) {
        Row row(span);
        const long wu = hamming_weight(u);
        for (long j = lo; j <= hi; ++j) row[static_cast<std::size_t>(j - lo)] = wu >= j ? 1 : 0;
        return row;
    };
    auto doubled = [&](const Row& src) {
        Row row(span);
        for (std::size_t i = 0; i < span; ++i) row[i] = 2 * src[i];
        return row;
    };
    auto odd = [&](const Row& a, const Row& b, unsigned width) {
        Row row(span);
        for (long j = lo; j <= hi; ++j) row[static_cast<std::size_t>(j - lo)] = at(a, width, j - 1) + at(b, width, j + 1);
        return row;
    };
    const std::uint64_t u0 = k >= 64 ? 0 : (t >> k);
    Row cur = base(u0);       // V_{u, i}
    Row cur_next = base(u0 + 1);  // V_{u+1, i}
    for (unsigned i = 0; i < k; ++i) {
        const unsigned shift = k - i - 1;
        const std::uint64_t u_child = shift >= 64 ? 0 : (t >> shift);
        if ((u_child & 1) == 0) {
            Row a = doubled(cur);
            Row b = odd(cur, cur_next, i);
            cur = std::move(a);
            cur_next = std::move(b);
        } else {
            Row a = odd(cur, cur_next, i);
            Row b = doubled(cur_next);
            cur = std::move(a);
            cur_next = std::move(b);
        }
    }
    const long out_lo = -static_cast<long>(k);
    const long out_hi = static_cast<long>(hamming_weight(t)) + 1;
    std::vector<std::uint64_t> counts;
    counts.reserve(static_cast<std::size_t>(out_hi - out_lo + 1));
    for (long j = out_lo; j <= out_hi; ++j) counts.push_back(at(cur, k, j));
    return {t, k, std::move(counts)};
}

struct CusickDensities {
    std::uint64_t t = 0;
    unsigned alpha = 0;       // w(t) + 1
    unsigned mu = 0;          // floor(log2 t), t >= 1
    unsigned k_used = 0;      // width n < 2^k_used at which c is evaluated
    unsigned k_tilde = 0;     // first width >= alpha + mu + 1 whose value matches the next width
    Rational c;
    Rational c_tilde;
};

/// c_t at width alpha + mu; c~_t at the first width (from alpha + mu + 1) agreeing with its successor.
inline CusickDensities c_density(std::uint64_t t) {
    CusickDensities out;
    out.t = t;
    out.alpha = hamming_weight(t) + 1;
    if (t == 0) {
        out.c = 1;
        out.c_tilde = 0;
        return out;
    }
    out.mu = bit_length(t) - 1;
    out.k_used = out.alpha + out.mu;
    if (out.k_used + 2 > kMaxCusickWidth) throw ResourceLimitError("c_density: required width exceeds 62 bits");
    out.c = delta_distribution_fast(t, out.k_used).normalized(0);
    unsigned width = out.k_used + 1;
    Rational current = delta_distribution_fast(t, width).normalized(1);
    while (true) {
        if (width + 1 > kMaxCusickWidth) throw ResourceLimitError("c_density: c~ did not stabilize below width 62");
        Rational next = delta_distribution_fast(t, width + 1).normalized(1);
        if (next == current) break;
        current = std::move(next);
        ++width;
    }
    out.k_tilde = width;
    out.c_tilde = std::move(current);
    return out;
}

struct MonotonicityViolation {
    std::string relation;
    std::uint64_t t = 0;
    unsigned k = 0;
    long j = 0;
};

struct MonotonicityReport {
    std::uint64_t t = 0;
    unsigned k_max = 0;
    std::uint64_t checked = 0;
    std::vector<MonotonicityViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Checks, for j in [-k_max, w(t) + 1]:
///   normalized v_{t,k,j} nonincreasing in k (k <= k_max),
///   v_{2t,k+1,j} = v_{t,k,j} (normalized), and
///   v_{2t+1,k+1,j} = v_{t,k,j-1}/2 + v_{t+1,k,j+1}/2 (normalized).
inline MonotonicityReport check_v_monotonicity(std::uint64_t t, unsigned k_max) {
    MonotonicityReport report;
    report.t = t;
    report.k_max = k_max;
    const auto base = delta_distributions_upto(t, k_max);
    const auto next_t = delta_distributions_upto(t + 1, k_max);
    const auto even = delta_distributions_upto(2 * t, k_max);
    const auto odd = delta_distributions_upto(2 * t + 1, k_max);
    const long lo = -static_cast<long>(k_max);
    const long hi = static_cast<long>(hamming_weight(t)) + 1;
    auto flag = [&](const char* relation, unsigned k, long j) { report.violations.push_back({relation, t, k, j}); };
    for (unsigned k = 0; k < k_max; ++k) {
        for (long j = lo; j <= hi; ++j) {
            ++report.checked;
            // v_{k+1} / 2^{k+1} <= v_k / 2^k
            if (base[k + 1].v(j) > 2 * base[k].v(j)) flag("nonincreasing", k + 1, j);
            if (even[k + 1].v(j) != 2 * base[k].v(j)) flag("even", k + 1, j);
            if (odd[k + 1].v(j) != base[k].v(j - 1) + next_t[k].v(j + 1)) flag("odd", k + 1, j);
        }
    }
    return report;
}

struct CusickReport {
    std::uint64_t t_max = 0;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;   // t with !(c~_t <= 1/2 < c_t)
    std::uint64_t c_violations = 0;
    std::uint64_t c_tilde_violations = 0;
    Rational min_c_margin;          // min over t of c_t - 1/2
    std::uint64_t argmin_c = 0;
    Rational max_c_tilde_margin;    // max over t of c~_t - 1/2
    std::uint64_t argmax_c_tilde = 0;
    unsigned max_width = 0;         // largest width any evaluation needed
    std::vector<CusickDensities> rows;  // t < row_limit
    double wall_time_ms = 0;
};

/// Checks c~_t <= 1/2 < c_t for all 1 <= t < t_max (t = 0 is trivial and skipped).
inline CusickReport verify_cusick(std::uint64_t t_max, std::uint64_t row_limit = 2) {
    if (t_max < 1) throw std::invalid_argument("verify_cusick: t_max must be >= 1");
    CusickReport r;
    r.t_max = t_max;
    const auto started = std::chrono::steady_clock::now();
    const Rational half(1, 2);
    for (std::uint64_t t = 1; t < t_max; ++t) {
        CusickDensities d = c_density(t);
        ++r.checked;
        const Rational c_margin = d.c - half;
        const Rational ct_margin = d.c_tilde - half;
        const bool c_ok = c_margin > 0;
        const bool ct_ok = ct_margin <= 0;
        if (!c_ok) ++r.c_violations;
        if (!ct_ok) ++r.c_tilde_violations;
        if (!c_ok || !ct_ok) ++r.violations;
        if (t == 1 || c_margin < r.min_c_margin) {
            r.min_c_margin = c_margin;
            r.argmin_c = t;
        }
        if (t == 1 || ct_margin > r.max_c_tilde_margin) {
            r.max_c_tilde_margin = ct_margin;
            r.argmax_c_tilde = t;
        }
        r.max_width = std::max({r.max_width, d.k_used, d.k_tilde + 1});
        if (t < row_limit) r.rows.push_back(std::move(d));
    }
    r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return r;
}

}  // namespace carrystat
