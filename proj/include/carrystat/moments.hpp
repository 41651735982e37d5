#pragma once

// First and second moments of t -> Gamma_{t,k,.}.
//
//   m_{k,j}   = sum_t beta_{t,k,j}          m~_{k,j} = sum_t beta_{t^c,k,-j} = m_{k,-j}
//   M_{k,l}   = sum_t Gamma_{t,k,k-l}
//   M2_{k,l,m} = sum_t Gamma_{t,k,k-l} Gamma_{t,k,k-m}
//
// Each quantity has a recurrence route (level k from level k-1, big integers)
// and a definitional route summing over the level tables.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "carry.hpp"
#include "numeric.hpp"

namespace carrystat {

/// Big-integer vector indexed by j in [-k, k].
class SignedRow {
public:
    SignedRow() = default;
    explicit SignedRow(unsigned k) : k_(k), values_(2 * static_cast<std::size_t>(k) + 1) {}

    unsigned k() const noexcept { return k_; }
    BigInt at(long j) const {
        if (j < -static_cast<long>(k_) || j > static_cast<long>(k_)) return 0;
        return values_[static_cast<std::size_t>(j + static_cast<long>(k_))];
    }
    BigInt& ref(long j) { return values_.at(static_cast<std::size_t>(j + static_cast<long>(k_))); }

    friend bool operator==(const SignedRow&, const SignedRow&) = default;

private:
    unsigned k_ = 0;
    std::vector<BigInt> values_ = std::vector<BigInt>(1);
};

struct MomentTable {
    unsigned k = 0;
    SignedRow m;
    SignedRow m_tilde;
    std::vector<BigInt> M;  // l in [0, 2k]; larger l saturate at M[2k]

    BigInt big_m(long l) const {
        if (l < 0) return 0;
        return M.at(std::min(static_cast<std::size_t>(l), M.size() - 1));
    }
};

namespace detail {

inline void fill_tail_moments(MomentTable& t) {
    const long k = t.k;
    t.M.assign(2 * static_cast<std::size_t>(k) + 1, 0);
    BigInt run = 0;
    for (long j = 0; j <= 2 * k; ++j) {
        run += t.m.at(k - j) + t.m_tilde.at(k - j);
        t.M[static_cast<std::size_t>(j)] = run;
    }
}

}  // namespace detail

/// m and m~ by their three-term recurrences with the 2^{k-1} boundary corrections.
inline std::vector<MomentTable> moment_table_recurrence(unsigned k_max) {
    std::vector<MomentTable> out;
    MomentTable level;
    level.k = 0;
    level.m = SignedRow(0);
    level.m_tilde = SignedRow(0);
    level.m.ref(0) = 1;
    level.m_tilde.ref(0) = 1;
    detail::fill_tail_moments(level);
    out.push_back(level);
    for (unsigned k = 1; k <= k_max; ++k) {
        const MomentTable& prev = out.back();
        MomentTable next;
        next.k = k;
        next.m = SignedRow(k);
        next.m_tilde = SignedRow(k);
        const BigInt correction = pow2(k - 1);
        for (long j = -static_cast<long>(k); j <= static_cast<long>(k); ++j) {
            next.m.ref(j) = prev.m.at(j - 1) + 2 * prev.m.at(j) + prev.m.at(j + 1);
            next.m_tilde.ref(j) = prev.m_tilde.at(j - 1) + 2 * prev.m_tilde.at(j) + prev.m_tilde.at(j + 1);
        }
        next.m.ref(-1) -= correction;
        next.m_tilde.ref(1) -= correction;
        detail::fill_tail_moments(next);
        out.push_back(std::move(next));
    }
    return out;
}

/// Definitional sums over a full level table.
template <typename Count>
MomentTable moment_table_direct(const LevelTables<Count>& level) {
    MomentTable t;
    t.k = level.k;
    t.m = SignedRow(level.k);
    t.m_tilde = SignedRow(level.k);
    const long k = level.k;
    for (std::size_t i = 0; i < level.size(); ++i) {
        for (long j = -k; j <= k; ++j) {
            t.m.ref(j) += from_u64(level.direct[i].at(j));
            t.m_tilde.ref(j) += from_u64(level.complemented[i].at(-j));
        }
    }
    // M_{k,l} summed from Gamma directly rather than through m.
    t.M.assign(2 * static_cast<std::size_t>(k) + 1, 0);
    for (std::size_t i = 0; i < level.size(); ++i) {
        for (long l = 0; l <= 2 * k; ++l) {
            std::uint64_t gamma_tail = 0;
            for (long j = k - l; j <= k; ++j)
                gamma_tail += level.direct[i].at(j) + level.complemented[i].at(-j);
            t.M[static_cast<std::size_t>(l)] += from_u64(gamma_tail);
        }
    }
    return t;
}

/// Stated closed form for M_{k,k-1}: (4^k - C(2k,k))/2 + 1.
inline BigInt first_moment_closed_form(unsigned k) {
    if (k < 1) throw std::invalid_argument("first_moment_closed_form: k >= 1");
    return BigInt((pow2(2 * k) - binomial(2 * k, k)) / 2 + 1);
}

/// (4^k - C(2k,k))/2, the value of sum_{t < 2^k} Gamma_{t,k,1}.
inline BigInt first_moment_gamma_form(unsigned k) {
    if (k < 1) throw std::invalid_argument("first_moment_gamma_form: k >= 1");
    return BigInt((pow2(2 * k) - binomial(2 * k, k)) / 2);
}

/// Gamma_{t,k,1} at the endpoints t = 0 and t = 2^k - 1, from the level seeds
/// beta_{0,k,.} = delta_{k,.} and beta_{2^k-1,k,.} = 2^k delta_{0,.}.
struct EndpointGammas {
    BigInt at_zero = 0;
    BigInt at_all_ones = 0;
};

inline EndpointGammas endpoint_gammas(unsigned k) {
    if (k < 1) throw std::out_of_range("endpoint_gammas: k >= 1");
    const auto zero = DeltaHistogram<BigInt>::point_mass(k, static_cast<int>(k), 1);
    const auto ones = DeltaHistogram<BigInt>::point_mass(k, 0, pow2(k));
    EndpointGammas e;
    for (long j = 1; j <= static_cast<long>(k); ++j) {
        e.at_zero += zero.at(j) + ones.at(-j);
        e.at_all_ones += ones.at(j) + zero.at(-j);
    }
    return e;
}

/// Dense (l, m) grid of big integers; reads outside the grid are zero.
class Grid {
public:
    Grid() = default;
    explicit Grid(std::size_t dim) : dim_(dim), values_(dim * dim) {}

    std::size_t dim() const noexcept { return dim_; }
    BigInt at(long l, long m) const {
        if (l < 0 || m < 0 || static_cast<std::size_t>(l) >= dim_ || static_cast<std::size_t>(m) >= dim_) return 0;
        return values_[static_cast<std::size_t>(l) * dim_ + static_cast<std::size_t>(m)];
    }
    BigInt& ref(long l, long m) { return values_.at(static_cast<std::size_t>(l) * dim_ + static_cast<std::size_t>(m)); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<BigInt> values_;
};

/// The nine second-moment families at one level, indices (l, m) in [0, dim).
struct SecondMomentTables {
    unsigned k = 0;
    Grid a, b, c;            // beta_t beta_t, beta_t beta_{t+1}, beta_{t+1} beta_t
    Grid a1, b1, c1;         // primed: direct against complemented
    Grid a2;                 // double-primed: a2(l, m) = a1(m, l)
    Grid a3, b3, c3;         // triple-primed: complemented against complemented
    Grid M2;                 // M2_{k,l,m}

    std::size_t dim() const noexcept { return a.dim(); }
};

namespace detail {

inline void fill_second_moment(SecondMomentTables& s) {
    const std::size_t dim = s.dim();
    s.a2 = Grid(dim);
    for (std::size_t l = 0; l < dim; ++l)
        for (std::size_t m = 0; m < dim; ++m) s.a2.ref(static_cast<long>(l), static_cast<long>(m)) = s.a1.at(static_cast<long>(m), static_cast<long>(l));
    s.M2 = Grid(dim);
    for (long l = 0; l < static_cast<long>(dim); ++l) {
        for (long m = 0; m < static_cast<long>(dim); ++m) {
            s.M2.ref(l, m) = s.a.at(l, m) + s.a1.at(l, m) + s.a2.at(l, m) + s.a3.at(l, m) + s.M2.at(l - 1, m) +
                             s.M2.at(l, m - 1) - s.M2.at(l - 1, m - 1);
        }
    }
}

inline std::size_t second_moment_dim(unsigned k, std::size_t index_cap) {
    const std::size_t full = 2 * static_cast<std::size_t>(k) + 2;
    return index_cap == 0 ? full : std::min(full, index_cap);
}

}  // namespace detail

inline SecondMomentTables second_moment_initial(std::size_t index_cap = 0) {
    SecondMomentTables s;
    const std::size_t dim = detail::second_moment_dim(0, index_cap);
    for (Grid* g : {&s.a, &s.b, &s.c, &s.a1, &s.b1, &s.c1, &s.a3, &s.b3, &s.c3}) *g = Grid(dim);
    s.a.ref(0, 0) = 1;
    s.a1.ref(0, 0) = 1;
    s.a3.ref(0, 0) = 1;
    detail::fill_second_moment(s);
    return s;
}

/// Level k from level k-1 by the nine coupled recurrences. Entries with
/// index >= index_cap are dropped; recurrences only read equal or smaller
/// indices, so retained entries stay exact.
inline SecondMomentTables second_moment_next(const SecondMomentTables& p, std::size_t index_cap = 0) {
    SecondMomentTables s;
    const unsigned k = p.k + 1;
    s.k = k;
    const std::size_t dim = detail::second_moment_dim(k, index_cap);
    for (Grid* g : {&s.a, &s.b, &s.c, &s.a1, &s.b1, &s.c1, &s.a3, &s.b3, &s.c3}) *g = Grid(dim);
    const BigInt sq = pow2(2 * (k - 1));  // 2^{2(k-1)}
    const BigInt half_cross = pow2(2 * k - 1);
    auto kd = [](long x, long y) { return x == y ? 1 : 0; };
    const long kk = k;
    for (long l = 0; l < static_cast<long>(dim); ++l) {
        for (long m = 0; m < static_cast<long>(dim); ++m) {
            s.a.ref(l, m) = p.a.at(l, m) + p.b.at(l - 2, m) + p.c.at(l, m - 2) + p.a.at(l - 2, m - 2) +
                            4 * p.a.at(l - 1, m - 1) - sq * kd(kk + 1, l) * kd(kk + 1, m);
            s.b.ref(l, m) = 2 * p.a.at(l, m - 1) + 2 * p.b.at(l - 2, m - 1) + 2 * p.b.at(l - 1, m) +
                            2 * p.a.at(l - 1, m - 2) - half_cross * kd(kk, l) * kd(kk + 1, m);
            s.c.ref(l, m) = 2 * p.a.at(l - 1, m) + 2 * p.c.at(l - 1, m - 2) + 2 * p.c.at(l, m - 1) +
                            2 * p.a.at(l - 2, m - 1) - half_cross * kd(kk + 1, l) * kd(kk, m);

            s.a1.ref(l, m) = 2 * p.a1.at(l, m - 1) + 2 * p.b1.at(l - 2, m - 1) + 2 * p.a1.at(l - 1, m - 2) +
                             2 * p.b1.at(l - 1, m);
            s.b1.ref(l, m) = p.a1.at(l, m - 2) + p.b1.at(l - 2, m - 2) + p.b1.at(l, m) + p.c1.at(l - 2, m) +
                             4 * p.b1.at(l - 1, m - 1);
            s.c1.ref(l, m) = 2 * p.b1.at(l - 1, m - 2) + 2 * p.c1.at(l - 1, m) + 2 * p.b1.at(l, m - 1) +
                             2 * p.c1.at(l - 2, m - 1);

            s.a3.ref(l, m) = 4 * p.a3.at(l - 1, m - 1) + p.a3.at(l - 2, m - 2) + p.b3.at(l - 2, m) +
                             p.c3.at(l, m - 2) + p.a3.at(l, m) - sq * kd(kk, l + 1) * kd(kk, m + 1);
            s.b3.ref(l, m) = 2 * p.a3.at(l - 1, m - 2) + 2 * p.b3.at(l - 1, m) + 2 * p.b3.at(l - 2, m - 1) +
                             2 * p.a3.at(l, m - 1) - half_cross * kd(kk, l + 1) * kd(kk, m);
            s.c3.ref(l, m) = 2 * p.a3.at(l - 2, m - 1) + 2 * p.c3.at(l, m - 1) + 2 * p.c3.at(l - 1, m - 2) +
                             2 * p.a3.at(l - 1, m) - half_cross * kd(kk, l) * kd(kk, m + 1);
        }
    }
    detail::fill_second_moment(s);
    return s;
}

/// Streams levels 0..k_max to a callback without keeping them.
inline void for_each_second_moment_level(unsigned k_max, std::size_t index_cap,
                                         const std::function<void(const SecondMomentTables&)>& visit) {
    SecondMomentTables level = second_moment_initial(index_cap);
    visit(level);
    for (unsigned k = 1; k <= k_max; ++k) {
        level = second_moment_next(level, index_cap);
        visit(level);
    }
}

inline std::vector<SecondMomentTables> second_moment_tables(unsigned k_max, std::size_t index_cap = 0) {
    std::vector<SecondMomentTables> out;
    for_each_second_moment_level(k_max, index_cap, [&](const SecondMomentTables& s) { out.push_back(s); });
    return out;
}

/// Definitional sums of all nine families and of Gamma products over one level.
template <typename Count>
SecondMomentTables second_moment_direct(const LevelTables<Count>& level) {
    using Acc = unsigned __int128;
    SecondMomentTables s;
    s.k = level.k;
    const long k = level.k;
    const std::size_t dim = detail::second_moment_dim(level.k, 0);
    const long n = static_cast<long>(level.size());
    auto beta = [&](long t, long j) -> std::uint64_t {
        if (t < 0 || t >= n) return 0;
        return level.direct[static_cast<std::size_t>(t)].at(j);
    };
    auto beta_c = [&](long t, long j) -> std::uint64_t {
        if (t < 0 || t >= n) return 0;
        return level.complemented[static_cast<std::size_t>(t)].at(j);
    };
    auto to_big = [](Acc v) {
        return BigInt(from_u64(static_cast<std::uint64_t>(v >> 64)) * pow2(64) + from_u64(static_cast<std::uint64_t>(v)));
    };
    for (Grid* g : {&s.a, &s.b, &s.c, &s.a1, &s.b1, &s.c1, &s.a3, &s.b3, &s.c3}) *g = Grid(dim);
    Grid gamma_products(dim);
    for (long l = 0; l < static_cast<long>(dim); ++l) {
        for (long m = 0; m < static_cast<long>(dim); ++m) {
            Acc a = 0, b = 0, c = 0, a1 = 0, b1 = 0, c1 = 0, a3 = 0, b3 = 0, c3 = 0;
            for (long t = 0; t < n; ++t) {
                a += Acc{beta(t, k - l)} * beta(t, k - m);
                b += Acc{beta(t, k - l)} * beta(t + 1, k - m);
                c += Acc{beta(t + 1, k - l)} * beta(t, k - m);
                a1 += Acc{beta(t, k - l)} * beta_c(t, -k + m);
                b1 += Acc{beta(t, k - l)} * beta_c(t + 1, -k + m);
                c1 += Acc{beta(t - 1, k - l)} * beta_c(t + 1, -k + m);
                a3 += Acc{beta_c(t, -k + l)} * beta_c(t, -k + m);
                b3 += Acc{beta_c(t, -k + l)} * beta_c(t + 1, -k + m);
                c3 += Acc{beta_c(t + 1, -k + l)} * beta_c(t, -k + m);
            }
            s.a.ref(l, m) = to_big(a);
            s.b.ref(l, m) = to_big(b);
            s.c.ref(l, m) = to_big(c);
            s.a1.ref(l, m) = to_big(a1);
            s.b1.ref(l, m) = to_big(b1);
            s.c1.ref(l, m) = to_big(c1);
            s.a3.ref(l, m) = to_big(a3);
            s.b3.ref(l, m) = to_big(b3);
            s.c3.ref(l, m) = to_big(c3);
        }
    }
    s.a2 = Grid(dim);
    for (long l = 0; l < static_cast<long>(dim); ++l)
        for (long m = 0; m < static_cast<long>(dim); ++m) {
            Acc a2 = 0;
            for (long t = 0; t < n; ++t) a2 += Acc{beta_c(t, -k + l)} * beta(t, k - m);
            s.a2.ref(l, m) = to_big(a2);
        }
    // M2 straight from Gamma products.
    std::vector<std::vector<std::uint64_t>> tails(static_cast<std::size_t>(n), std::vector<std::uint64_t>(dim, 0));
    for (long t = 0; t < n; ++t) {
        std::uint64_t run = 0;
        for (long l = 0; l < static_cast<long>(dim); ++l) {
            run += beta(t, k - l) + beta_c(t, -(k - l));
            tails[static_cast<std::size_t>(t)][static_cast<std::size_t>(l)] = run;
        }
    }
    s.M2 = Grid(dim);
    for (long l = 0; l < static_cast<long>(dim); ++l)
        for (long m = 0; m < static_cast<long>(dim); ++m) {
            Acc sum = 0;
            for (long t = 0; t < n; ++t)
                sum += Acc{tails[static_cast<std::size_t>(t)][static_cast<std::size_t>(l)]} *
                       tails[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)];
            s.M2.ref(l, m) = to_big(sum);
        }
    return s;
}

/// Exact first and second moment sums of Gamma_{t,k,1} over all t < 2^k.
struct GammaMomentSums {
    unsigned k = 0;
    BigInt sum;      // M_{k,k-1}
    BigInt sum_sq;   // M2_{k,k-1,k-1}
};

/// Recurrence route for every k in [1, k_max]; O(k_max^3) big-integer work.
inline std::vector<GammaMomentSums> gamma_moment_sums(unsigned k_max) {
    std::vector<GammaMomentSums> out;
    const auto first = moment_table_recurrence(k_max);
    for_each_second_moment_level(k_max, k_max + 1, [&](const SecondMomentTables& s) {
        if (s.k == 0) return;
        out.push_back({s.k, first[s.k].big_m(s.k - 1), s.M2.at(s.k - 1, s.k - 1)});
    });
    return out;
}

struct VarianceResult {
    unsigned k = 0;
    Rational mean;        // E X_k over t in [1, 2^k - 2]
    Rational second;      // E X_k^2
    Rational variance;
    long double sigma = 0;
    long double sigma_times_k = 0;
};

/// Restricts the all-t sums to t in [1, 2^k - 2] by removing the endpoint terms.
inline VarianceResult variance_from_sums(const GammaMomentSums& sums) {
    const unsigned k = sums.k;
    if (k < 2) throw std::invalid_argument("variance: k >= 2");
    const EndpointGammas e = endpoint_gammas(k);
    const BigInt s1 = sums.sum - e.at_zero - e.at_all_ones;
    const BigInt s2 = sums.sum_sq - e.at_zero * e.at_zero - e.at_all_ones * e.at_all_ones;
    const BigInt count = pow2(k) - 2;
    VarianceResult v;
    v.k = k;
    v.mean = make_rational(s1, pow2(k) * count);
    v.second = make_rational(s2, pow2(2 * k) * count);
    v.variance = v.second - v.mean * v.mean;
    v.variance.canonicalize();
    v.sigma = std::sqrt(to_long_double(v.variance));
    v.sigma_times_k = v.sigma * k;
    return v;
}

inline VarianceResult variance(unsigned k) {
    if (k < 2) throw std::invalid_argument("variance: k >= 2");
    return variance_from_sums(gamma_moment_sums(k).back());
}

/// sqrt(43) / (12 sqrt(pi)), the limit of k * sigma_k.
inline long double sigma_limit() { return std::sqrt(43.0L) / (12.0L * std::sqrt(std::numbers::pi_v<long double>)); }

/// Four-term expansion of M_{k,k-1} / 4^k.
inline long double first_moment_expansion(unsigned k) {
    if (k < 1) throw std::invalid_argument("first_moment_expansion: k >= 1");
    const long double pk = std::numbers::pi_v<long double> * k;
    return 0.5L * (1.0L - 1.0L / std::sqrt(pk) + 1.0L / (8.0L * std::sqrt(pk * k * k)) -
                   1.0L / (128.0L * std::sqrt(pk * k * k * k * k)));
}

/// Five-term expansion of M2_{k,k-1,k-1} / 8^k.
inline long double second_moment_expansion(unsigned k) {
    if (k < 1) throw std::invalid_argument("second_moment_expansion: k >= 1");
    const long double pi = std::numbers::pi_v<long double>;
    const long double kk = k;
    return 0.25L - 1.0L / (2.0L * std::sqrt(pi * kk)) + 1.0L / (4.0L * pi * kk) +
           1.0L / (16.0L * std::sqrt(pi) * std::pow(kk, 1.5L)) + 17.0L / (72.0L * pi * kk * kk);
}

struct AsymptoticsRow {
    unsigned k = 0;
    Rational first_exact;           // sum_t Gamma_{t,k,1} / 4^k
    long double first_expansion = 0;
    long double first_error = 0;    // |exact - expansion|
    long double first_error_scaled = 0;  // error * k^{7/2}
    Rational second_exact;          // sum_t Gamma_{t,k,1}^2 / 8^k
    long double second_expansion = 0;
    long double second_error = 0;
    long double second_error_scaled = 0;  // error * k^{5/2}
    long double sigma_times_k = 0;
    long double sigma_limit = 0;
    long double sigma_relative_deviation = 0;  // (k sigma_k - limit) / limit
};

inline std::vector<AsymptoticsRow> asymptotics_table(unsigned k_min, unsigned k_max) {
    if (k_min < 2 || k_min > k_max) throw std::invalid_argument("asymptotics_table: need 2 <= k_min <= k_max");
    std::vector<AsymptoticsRow> rows;
    const long double limit = sigma_limit();
    for (const GammaMomentSums& sums : gamma_moment_sums(k_max)) {
        if (sums.k < k_min) continue;
        const unsigned k = sums.k;
        AsymptoticsRow r;
        r.k = k;
        r.first_exact = make_rational(sums.sum, pow2(2 * k));
        r.first_expansion = first_moment_expansion(k);
        r.first_error = std::fabs(to_long_double(r.first_exact) - r.first_expansion);
        r.first_error_scaled = r.first_error * std::pow(static_cast<long double>(k), 3.5L);
        r.second_exact = make_rational(sums.sum_sq, pow2(3 * k));
        r.second_expansion = second_moment_expansion(k);
        r.second_error = std::fabs(to_long_double(r.second_exact) - r.second_expansion);
        r.second_error_scaled = r.second_error * std::pow(static_cast<long double>(k), 2.5L);
        const VarianceResult v = variance_from_sums(sums);
        r.sigma_times_k = v.sigma_times_k;
        r.sigma_limit = limit;
        r.sigma_relative_deviation = (v.sigma_times_k - limit) / limit;
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace carrystat
