#pragma once

// Truncated power series in up to three variables with exact rational
// coefficients. Storage is dense: one (y, z) grid per power of x.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace carrystat {

/// Variable names and per-variable maximum degrees. Unused trailing variables have bound 0.
struct SeriesShape {
    std::vector<std::string> variables;
    std::array<unsigned, 3> bounds{0, 0, 0};

    static SeriesShape univariate(std::string v, unsigned n) { return {{std::move(v)}, {n, 0, 0}}; }
    static SeriesShape bivariate(unsigned nx, unsigned ny) { return {{"x", "y"}, {nx, ny, 0}}; }
    static SeriesShape trivariate(unsigned nx, unsigned ny, unsigned nz) { return {{"x", "y", "z"}, {nx, ny, nz}}; }

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(bounds[0] + 1) * (bounds[1] + 1) * (bounds[2] + 1);
    }

    friend bool operator==(const SeriesShape&, const SeriesShape&) = default;
};

class TruncatedSeries {
public:
    explicit TruncatedSeries(SeriesShape shape) : shape_(std::move(shape)), coeffs_(shape_.size()) {
        if (shape_.variables.empty() || shape_.variables.size() > 3)
            throw std::invalid_argument("TruncatedSeries: between one and three variables");
        for (std::size_t v = shape_.variables.size(); v < 3; ++v)
            if (shape_.bounds[v] != 0) throw std::invalid_argument("TruncatedSeries: bound set for unused variable");
    }

    static TruncatedSeries constant(const SeriesShape& shape, const Rational& c) {
        TruncatedSeries s(shape);
        s.coeffs_[0] = c;
        return s;
    }

    /// The monomial consisting of variable `index` (0 = x, 1 = y, 2 = z).
    static TruncatedSeries variable(const SeriesShape& shape, unsigned index) {
        if (index >= shape.variables.size()) throw std::out_of_range("TruncatedSeries: no such variable");
        TruncatedSeries s(shape);
        std::array<unsigned, 3> e{0, 0, 0};
        e[index] = 1;
        if (e[0] <= shape.bounds[0] && e[1] <= shape.bounds[1] && e[2] <= shape.bounds[2]) s.ref(e[0], e[1], e[2]) = 1;
        return s;
    }

    const SeriesShape& shape() const noexcept { return shape_; }

    /// Coefficient of x^i y^j z^l; zero beyond the truncation.
    Rational coefficient(unsigned i, unsigned j = 0, unsigned l = 0) const {
        if (!in_range(i, j, l)) return 0;
        return coeffs_[index(i, j, l)];
    }

    Rational& ref(unsigned i, unsigned j = 0, unsigned l = 0) {
        if (!in_range(i, j, l)) throw std::out_of_range("TruncatedSeries: exponent beyond truncation");
        return coeffs_[index(i, j, l)];
    }

    const Rational& constant_term() const noexcept { return coeffs_[0]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (sgn(c) != 0) return false;
        return true;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        require_compatible(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        require_compatible(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    TruncatedSeries& operator*=(const Rational& c) {
        for (auto& v : coeffs_) v *= c;
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator-(TruncatedSeries a) {
        for (auto& v : a.coeffs_) v = -v;
        return a;
    }
    friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
    friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) { return a *= c; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.require_compatible(b);
        TruncatedSeries out(a.shape_);
        const auto rhs = b.nonzero_terms();
        Rational prod;
        for (const auto& [ea, ca] : a.nonzero_terms()) {
            for (const auto& [eb, cb] : rhs) {
                const unsigned i = ea[0] + eb[0], j = ea[1] + eb[1], l = ea[2] + eb[2];
                if (!out.in_range(i, j, l)) continue;
                mpq_mul(prod.get_mpq_t(), ca->get_mpq_t(), cb->get_mpq_t());
                Rational& dst = out.coeffs_[out.index(i, j, l)];
                mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), prod.get_mpq_t());
            }
        }
        return out;
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    TruncatedSeries inverse() const {
        if (sgn(coeffs_[0]) == 0) throw std::domain_error("TruncatedSeries: inverse of a series with zero constant term");
        TruncatedSeries out(shape_);
        const Rational inv0 = 1 / coeffs_[0];
        out.coeffs_[0] = inv0;
        std::vector<std::pair<std::array<unsigned, 3>, const Rational*>> terms;
        for (auto& term : nonzero_terms())
            if (term.first != std::array<unsigned, 3>{0, 0, 0}) terms.push_back(term);
        const auto& bd = shape_.bounds;
        Rational acc, prod;
        // Lexicographic order: every e - e' with e' != 0 precedes e.
        for (unsigned i = 0; i <= bd[0]; ++i) {
            for (unsigned j = 0; j <= bd[1]; ++j) {
                for (unsigned l = 0; l <= bd[2]; ++l) {
                    if (i == 0 && j == 0 && l == 0) continue;
                    acc = 0;
                    for (const auto& [e, c] : terms) {
                        if (e[0] > i || e[1] > j || e[2] > l) continue;
                        const Rational& r = out.coeffs_[out.index(i - e[0], j - e[1], l - e[2])];
                        if (sgn(r) == 0) continue;
                        mpq_mul(prod.get_mpq_t(), c->get_mpq_t(), r.get_mpq_t());
                        mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), prod.get_mpq_t());
                    }
                    if (sgn(acc) != 0) out.coeffs_[out.index(i, j, l)] = -acc * inv0;
                }
            }
        }
        return out;
    }

    friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b.inverse(); }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

    /// Nonzero coefficients as (exponent, pointer) pairs in storage order.
    std::vector<std::pair<std::array<unsigned, 3>, const Rational*>> nonzero_terms() const {
        std::vector<std::pair<std::array<unsigned, 3>, const Rational*>> out;
        const auto& bd = shape_.bounds;
        for (unsigned i = 0; i <= bd[0]; ++i)
            for (unsigned j = 0; j <= bd[1]; ++j)
                for (unsigned l = 0; l <= bd[2]; ++l) {
                    const Rational& c = coeffs_[index(i, j, l)];
                    if (sgn(c) != 0) out.push_back({{i, j, l}, &c});
                }
        return out;
    }

private:
    bool in_range(unsigned i, unsigned j, unsigned l) const noexcept {
        return i <= shape_.bounds[0] && j <= shape_.bounds[1] && l <= shape_.bounds[2];
    }
    std::size_t index(unsigned i, unsigned j, unsigned l) const noexcept {
        return (static_cast<std::size_t>(i) * (shape_.bounds[1] + 1) + j) * (shape_.bounds[2] + 1) + l;
    }
    void require_compatible(const TruncatedSeries& o) const {
        if (!(shape_ == o.shape_)) throw std::invalid_argument("TruncatedSeries: incompatible variables or truncation");
    }

    SeriesShape shape_;
    std::vector<Rational> coeffs_;
};

/// Integer coefficient; throws if the coefficient is not integral.
inline BigInt integer_coefficient(const TruncatedSeries& s, unsigned i, unsigned j = 0, unsigned l = 0) {
    const Rational c = s.coefficient(i, j, l);
    if (c.get_den() != 1)
        throw std::logic_error("non-integral coefficient at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                               std::to_string(l) + "): " + c.get_str());
    return c.get_num();
}

}  // namespace carrystat
