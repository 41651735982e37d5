#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace carrystat {

/// Dense map j -> count over j in [-k, k]; reads outside the range are zero.
template <typename Count = std::uint64_t>
class DeltaHistogram {
public:
    using count_type = Count;

    DeltaHistogram() = default;
    explicit DeltaHistogram(unsigned k) : k_(k), counts_(2 * static_cast<std::size_t>(k) + 1, Count{0}) {}
    DeltaHistogram(unsigned k, std::vector<Count> counts) : k_(k), counts_(std::move(counts)) {
        if (counts_.size() != 2 * static_cast<std::size_t>(k) + 1)
            throw std::invalid_argument("DeltaHistogram: counts must have length 2k+1");
    }

    static DeltaHistogram point_mass(unsigned k, int j, Count mass) {
        DeltaHistogram h(k);
        h.ref(j) = mass;
        return h;
    }

    unsigned k() const noexcept { return k_; }
    int min_index() const noexcept { return -static_cast<int>(k_); }
    int max_index() const noexcept { return static_cast<int>(k_); }

    Count at(long j) const noexcept {
        if (j < -static_cast<long>(k_) || j > static_cast<long>(k_)) return Count{0};
        return counts_[static_cast<std::size_t>(j + static_cast<long>(k_))];
    }
    Count operator[](long j) const noexcept { return at(j); }

    Count& ref(long j) {
        if (j < -static_cast<long>(k_) || j > static_cast<long>(k_))
            throw std::out_of_range("DeltaHistogram: index outside [-k, k]");
        return counts_[static_cast<std::size_t>(j + static_cast<long>(k_))];
    }

    Count total() const noexcept {
        Count s{0};
        for (Count c : counts_) s += c;
        return s;
    }

    /// Sum of counts at indices >= from.
    Count upper_tail(long from) const noexcept {
        Count s{0};
        for (long j = std::max(from, static_cast<long>(min_index())); j <= max_index(); ++j) s += at(j);
        return s;
    }

    std::span<const Count> counts() const noexcept { return counts_; }

    friend bool operator==(const DeltaHistogram&, const DeltaHistogram&) = default;

private:
    unsigned k_ = 0;
    std::vector<Count> counts_ = std::vector<Count>(1, Count{0});
};

/// Entrywise equality regardless of the stored widths.
template <typename A, typename B>
bool same_distribution(const DeltaHistogram<A>& a, const DeltaHistogram<B>& b) {
    const long lo = std::min(a.min_index(), b.min_index());
    const long hi = std::max(a.max_index(), b.max_index());
    for (long j = lo; j <= hi; ++j)
        if (static_cast<std::uint64_t>(a.at(j)) != static_cast<std::uint64_t>(b.at(j))) return false;
    return true;
}

}  // namespace carrystat
