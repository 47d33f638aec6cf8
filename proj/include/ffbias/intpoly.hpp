#pragma once

/**
 * @file intpoly.hpp
 * @brief Polynomials in u with exact integer coefficients (ascending).
 *
 * Used for L-polynomials and the numerators and denominators of the bias
 * generating functions. The representation is a trimmed vector; the zero
 * polynomial is empty.
 */

#include "ffbias/bigint.hpp"
#include "ffbias/field.hpp"

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

namespace ffbias {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> c) : c_(std::move(c)) { trim(); }
    IntPoly(std::initializer_list<long long> c) {
        for (auto x : c) c_.emplace_back(x);
        trim();
    }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] std::size_t size() const { return c_.size(); }
    /// Degree; -1 for the zero polynomial (internal use only).
    [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
    [[nodiscard]] BigInt const& operator[](std::size_t i) const {
        static BigInt const zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }
    [[nodiscard]] BigInt const& leading() const { return (*this)[c_.empty() ? 0 : c_.size() - 1]; }
    [[nodiscard]] std::vector<BigInt> const& coeffs() const { return c_; }

    bool operator==(IntPoly const&) const = default;

    friend IntPoly operator+(IntPoly const& a, IntPoly const& b) {
        std::vector<BigInt> r(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(IntPoly const& a, IntPoly const& b) {
        std::vector<BigInt> r(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(IntPoly const& a, IntPoly const& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> r(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(BigInt const& s, IntPoly const& a) {
        std::vector<BigInt> r(a.c_);
        for (auto& x : r) x *= s;
        return IntPoly(std::move(r));
    }

    /// Value at a complex point, Horner in double precision.
    [[nodiscard]] std::complex<double> eval(std::complex<double> z) const {
        std::complex<double> r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * z + static_cast<double>(c_[i]);
        return r;
    }
    [[nodiscard]] double eval(double x) const {
        double r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + static_cast<double>(c_[i]);
        return r;
    }
    [[nodiscard]] BigInt eval(BigInt const& x) const {
        BigInt r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    [[nodiscard]] IntPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<BigInt> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long long>(i);
        return IntPoly(std::move(r));
    }

    /// Content: gcd of the coefficients, sign of the leading coefficient.
    [[nodiscard]] BigInt content() const {
        BigInt g = 0;
        for (auto const& x : c_) g = gcd(g, x);
        if (!c_.empty() && c_.back() < 0) g = -g;
        return g;
    }

    [[nodiscard]] IntPoly primitive_part() const {
        if (is_zero()) return {};
        BigInt const g = content();
        std::vector<BigInt> r(c_);
        for (auto& x : r) x /= g;
        return IntPoly(std::move(r));
    }

private:
    static BigInt gcd(BigInt a, BigInt b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            BigInt t = a % b;
            a = std::move(b);
            b = std::move(t);
        }
        return a;
    }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

/// 1 - c u^k
inline IntPoly one_minus_monomial(BigInt const& c, std::size_t k) {
    std::vector<BigInt> v(k + 1);
    v[0] += 1;
    v[k] -= c;
    return IntPoly(std::move(v));
}

/// Pseudo-division: lc(b)^{deg a - deg b + 1} a = quot * b + rem.
inline std::pair<IntPoly, IntPoly> pseudo_divmod(IntPoly const& a, IntPoly const& b) {
    if (b.is_zero()) throw DomainError("pseudo-division by the zero polynomial");
    if (a.degree() < b.degree()) return {IntPoly{}, a};
    std::vector<BigInt> r(a.coeffs());
    std::size_t const db = b.size() - 1;
    std::vector<BigInt> quot(r.size() - db);
    BigInt const lb = b.leading();
    for (std::size_t d = r.size(); d-- > db;) {
        for (auto& x : quot) x *= lb;
        for (std::size_t i = 0; i < d + 1; ++i) r[i] *= lb;
        BigInt const c = r[d] / lb;
        quot[d - db] += c;
        for (std::size_t i = 0; i <= db; ++i) r[d - db + i] -= c * b[i];
    }
    r.resize(db);
    return {IntPoly(std::move(quot)), IntPoly(std::move(r))};
}

/// Exact division a / b in Z[u]; throws when b does not divide a.
inline IntPoly exact_divide(IntPoly const& a, IntPoly const& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) throw DomainError("exact_divide: not divisible");
    std::vector<BigInt> r(a.coeffs());
    std::size_t const db = b.size() - 1;
    std::vector<BigInt> quot(r.size() - db);
    BigInt const& lb = b.leading();
    for (std::size_t d = r.size(); d-- > db;) {
        if (r[d] % lb != 0) throw DomainError("exact_divide: not divisible over Z");
        BigInt const c = r[d] / lb;
        quot[d - db] = c;
        for (std::size_t i = 0; i <= db; ++i) r[d - db + i] -= c * b[i];
    }
    for (std::size_t i = 0; i < db; ++i)
        if (r[i] != 0) throw DomainError("exact_divide: nonzero remainder");
    return IntPoly(std::move(quot));
}

/// Primitive gcd over Q[u] (content removed, positive leading coefficient),
/// via the primitive polynomial remainder sequence.
inline IntPoly gcd_over_q(IntPoly a, IntPoly b) {
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? IntPoly{} : r.primitive_part();
    }
    return a;
}

} // namespace ffbias
