#pragma once

// Symbolic rational functions over {constants, x, y, z, +, -, *, /} and their
// exact truncated expansions, plus the generating functions of the moment
// tables:
//
//   F(x,y)  = (1 - 2xy - xy^2) / ((1 - 2xy)(1 - x(1+y)^2))          -> m_{k,k-l}
//   F~(x,y) = (1 - 2xy - x)    / ((1 - 2xy)(1 - x(1+y)^2))          -> m~_{k,k-l}
//   G(x,y)  = (2 - 4xy - x - xy^2) / ((1-y)(1 - 2xy)(1 - x(1+y)^2)) -> M_{k,l}
//   F(x,y,z) = (A + A' + A'' + A''') / ((1-y)(1-z))                 -> M2_{k,l,m}

#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "numeric.hpp"
#include "series.hpp"

namespace carrystat {

class Expr {
public:
    enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Neg };

    struct Node {
        Kind kind;
        Rational value;
        unsigned variable = 0;
        std::shared_ptr<const Node> lhs, rhs;
    };

    Expr(long c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Expr(const Rational& c) : node_(std::make_shared<const Node>(Node{Kind::Constant, c, 0, nullptr, nullptr})) {}  // NOLINT

    static Expr var(unsigned index) { return Expr(std::make_shared<const Node>(Node{Kind::Variable, 0, index, nullptr, nullptr})); }

    const Node& node() const noexcept { return *node_; }
    const Node* id() const noexcept { return node_.get(); }

    friend Expr operator+(const Expr& a, const Expr& b) { return binary(Kind::Add, a, b); }
    friend Expr operator-(const Expr& a, const Expr& b) { return binary(Kind::Sub, a, b); }
    friend Expr operator*(const Expr& a, const Expr& b) { return binary(Kind::Mul, a, b); }
    friend Expr operator/(const Expr& a, const Expr& b) { return binary(Kind::Div, a, b); }
    friend Expr operator-(const Expr& a) {
        return Expr(std::make_shared<const Node>(Node{Kind::Neg, 0, 0, a.node_, nullptr}));
    }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr binary(Kind k, const Expr& a, const Expr& b) {
        return Expr(std::make_shared<const Node>(Node{k, 0, 0, a.node_, b.node_}));
    }
    friend class SeriesEvaluator;

    std::shared_ptr<const Node> node_;
};

/// A named rational function; the expression is the whole specification.
struct RationalFunctionSpec {
    std::string name;
    Expr expr;
    unsigned arity = 1;
};

/// Expands expressions into truncated series, sharing work across common subexpressions.
class SeriesEvaluator {
public:
    explicit SeriesEvaluator(SeriesShape shape) : shape_(std::move(shape)) {}

    const SeriesShape& shape() const noexcept { return shape_; }

    const TruncatedSeries& expand(const Expr& e) { return expand(e.node_); }

private:
    const TruncatedSeries& expand(const std::shared_ptr<const Expr::Node>& n) {
        if (auto it = cache_.find(n.get()); it != cache_.end()) return it->second;
        TruncatedSeries result = compute(*n);
        keep_alive_.push_back(n);
        return cache_.emplace(n.get(), std::move(result)).first->second;
    }

    TruncatedSeries compute(const Expr::Node& n) {
        using K = Expr::Kind;
        switch (n.kind) {
            case K::Constant: return TruncatedSeries::constant(shape_, n.value);
            case K::Variable: return TruncatedSeries::variable(shape_, n.variable);
            case K::Neg: return -expand(n.lhs);
            case K::Add: return expand(n.lhs) + expand(n.rhs);
            case K::Sub: return expand(n.lhs) - expand(n.rhs);
            case K::Mul: return expand(n.lhs) * expand(n.rhs);
            case K::Div: {
                const TruncatedSeries& den = expand(n.rhs);
                if (sgn(den.constant_term()) == 0) throw std::domain_error("division by a non-unit series");
                return expand(n.lhs) * den.inverse();
            }
        }
        throw std::logic_error("unknown expression kind");
    }

    SeriesShape shape_;
    std::unordered_map<const Expr::Node*, TruncatedSeries> cache_;
    std::vector<std::shared_ptr<const Expr::Node>> keep_alive_;
};

inline TruncatedSeries expand_spec(const RationalFunctionSpec& spec, const SeriesShape& shape) {
    if (spec.arity > shape.variables.size()) throw std::invalid_argument("expand_spec: shape has too few variables");
    SeriesEvaluator eval(shape);
    return eval.expand(spec.expr);
}

namespace genfun {

inline Expr x() { return Expr::var(0); }
inline Expr y() { return Expr::var(1); }
inline Expr z() { return Expr::var(2); }

inline RationalFunctionSpec bivariate_F() {
    const Expr X = x(), Y = y();
    return {"F", (1 - 2 * X * Y - X * Y * Y) / ((1 - 2 * X * Y) * (1 - X * (1 + Y) * (1 + Y))), 2};
}

inline RationalFunctionSpec bivariate_F_tilde() {
    const Expr X = x(), Y = y();
    return {"Ftilde", (1 - 2 * X * Y - X) / ((1 - 2 * X * Y) * (1 - X * (1 + Y) * (1 + Y))), 2};
}

inline RationalFunctionSpec bivariate_G() {
    const Expr X = x(), Y = y();
    return {"G", (2 - 4 * X * Y - X - X * Y * Y) / ((1 - Y) * (1 - 2 * X * Y) * (1 - X * (1 + Y) * (1 + Y))), 2};
}

/// Building blocks of the trivariate second-moment generating function.
struct TrivariateBlocks {
    Expr D, A, A1, A2, A3, F;
};

inline TrivariateBlocks trivariate_blocks() {
    const Expr X = x(), Y = y(), Z = z();
    const Expr yz1 = 1 + Y * Z;
    const Expr py = 1 - 2 * X * Y * yz1;  // 1 - 2xy(1+yz)
    const Expr pz = 1 - 2 * X * Z * yz1;  // 1 - 2xz(1+yz)
    const Expr q = 1 - 4 * X * Y * Z;
    const Expr xyz = X * Y * Z;
    const Expr core = 1 - X * yz1 * yz1;
    const Expr D = core - xyz / py - xyz / pz;
    const Expr A = (1 - (X * Y * Y * Z * Z / q) * (1 + 2 * X * Y / py + 2 * X * Z / pz)) / D;
    const Expr A1 = (1 / pz) * ((core - xyz / py - xyz) / D);
    const Expr A2 = (1 / py) * ((core - xyz / pz - xyz) / D);
    const Expr A3 = (1 - (X / q) * (1 + 2 * X * Y * Y * Z / py + 2 * X * Y * Z * Z / pz)) / D;
    const Expr F = ((A + A1 + A2 + A3) / (1 - Y)) / (1 - Z);
    return {D, A, A1, A2, A3, F};
}

inline RationalFunctionSpec trivariate_F() { return {"F3", trivariate_blocks().F, 3}; }

/// [z^k] (1/2)((1-4z)^{-1} - (1-4z)^{-1/2}) = (4^k - C(2k,k))/2 for k = 1..k_max,
/// with C(2k,k) from the recurrence C(2k,k) = C(2k-2,k-1) * 2(2k-1)/k.
inline std::vector<BigInt> diagonal_first_moment(unsigned k_max) {
    if (k_max < 1) throw std::invalid_argument("diagonal_first_moment: k_max >= 1");
    std::vector<BigInt> out;
    BigInt central = 1;
    BigInt four_pow = 1;
    for (unsigned k = 1; k <= k_max; ++k) {
        central = central * 2 * (2 * k - 1);
        central /= k;
        four_pow *= 4;
        out.push_back(BigInt((four_pow - central) / 2));
    }
    return out;
}

/// Shifted diagonal [x^k y^{k+shift}] of a bivariate expansion, k = 0..bound.
inline std::vector<Rational> diagonal(const TruncatedSeries& s, int shift) {
    std::vector<Rational> out;
    for (unsigned k = 0; k <= s.shape().bounds[0]; ++k) {
        const long j = static_cast<long>(k) + shift;
        out.push_back(j < 0 ? Rational(0) : s.coefficient(k, static_cast<unsigned>(j)));
    }
    return out;
}

inline constexpr unsigned kDefaultTrivariateBudget = 10;

/// Cached expansion of F(x,y,z) truncated at x^k_max y^k_max z^k_max.
class TrivariateExpansion {
public:
    explicit TrivariateExpansion(unsigned k_max, unsigned budget = kDefaultTrivariateBudget)
        : series_(expand(k_max, budget)) {}

    unsigned k_max() const noexcept { return series_.shape().bounds[0]; }
    const TruncatedSeries& series() const noexcept { return series_; }

    /// M2_{k,l,m} = [x^k y^l z^m] F(x,y,z).
    BigInt coefficient(unsigned k, unsigned l, unsigned m) const {
        const auto& b = series_.shape().bounds;
        if (k > b[0] || l > b[1] || m > b[2]) throw ResourceLimitError("trivariate coefficient beyond truncation");
        return integer_coefficient(series_, k, l, m);
    }

private:
    static TruncatedSeries expand(unsigned k_max, unsigned budget) {
        if (k_max > budget)
            throw ResourceLimitError("trivariate expansion: k_max " + std::to_string(k_max) + " exceeds budget " +
                                     std::to_string(budget));
        return expand_spec(trivariate_F(), SeriesShape::trivariate(k_max, k_max, k_max));
    }

    TruncatedSeries series_;
};

/// One-off coefficient [x^k y^l z^m] F(x,y,z), truncated exactly at (k, l, m).
inline BigInt trivariate_coefficient(unsigned k, unsigned l, unsigned m, unsigned budget = kDefaultTrivariateBudget) {
    if (k > budget) throw ResourceLimitError("trivariate_coefficient: k exceeds budget");
    const TruncatedSeries s = expand_spec(trivariate_F(), SeriesShape::trivariate(k, l, m));
    return integer_coefficient(s, k, l, m);
}

}  // namespace genfun
}  // namespace carrystat
