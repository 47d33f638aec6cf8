#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over F_q.
 *
 * A Poly is a plain value: ascending coefficients with no trailing zero.
 * The zero polynomial has no coefficients and no degree (degree() returns
 * an empty optional). All arithmetic takes the ambient Field explicitly.
 */

#include "ffbias/bigint.hpp"
#include "ffbias/field.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ffbias {

class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Fe> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Fe> coeffs) : c_(coeffs) { trim(); }

    /// Polynomial with small nonnegative integer coefficients (ascending).
    static Poly from_ints(Field const& F, std::initializer_list<long long> coeffs) {
        std::vector<Fe> c;
        c.reserve(coeffs.size());
        for (auto x : coeffs) c.push_back(F.from_int(x));
        return Poly(std::move(c));
    }

    static Poly constant(Fe c) { return Poly({c}); }
    /// c * T^n
    static Poly monomial(Fe c, std::size_t n) {
        if (c.is_zero()) return {};
        std::vector<Fe> v(n + 1);
        v[n] = c;
        return Poly(std::move(v));
    }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    /// Number of stored coefficients: deg + 1, or 0 for the zero polynomial.
    [[nodiscard]] std::size_t size() const { return c_.size(); }
    [[nodiscard]] bool is_constant() const { return c_.size() <= 1; }

    [[nodiscard]] Fe operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Fe{0}; }
    [[nodiscard]] Fe leading() const { return c_.empty() ? Fe{0} : c_.back(); }
    [[nodiscard]] bool is_monic() const { return !c_.empty() && c_.back() == Fe{1}; }
    [[nodiscard]] std::span<Fe const> coeffs() const { return c_; }

    bool operator==(Poly const&) const = default;
    auto operator<=>(Poly const& o) const {
        if (c_.size() != o.c_.size()) return c_.size() <=> o.c_.size();
        return std::lexicographical_compare_three_way(c_.rbegin(), c_.rend(), o.c_.rbegin(), o.c_.rend());
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Fe> c_;
};

inline Poly poly_x() { return Poly({Fe{0}, Fe{1}}); }

/// |f| = q^{deg f}. The zero polynomial has no norm.
inline BigInt norm(Field const& F, Poly const& f) {
    if (f.is_zero()) throw DomainError("|0| is undefined");
    return ipow(BigInt(F.q()), static_cast<unsigned>(*f.degree()));
}

inline Poly add(Field const& F, Poly const& f, Poly const& g) {
    std::vector<Fe> r(std::max(f.size(), g.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(f[i], g[i]);
    return Poly(std::move(r));
}

inline Poly neg(Field const& F, Poly const& f) {
    std::vector<Fe> r(f.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.neg(f[i]);
    return Poly(std::move(r));
}

inline Poly sub(Field const& F, Poly const& f, Poly const& g) {
    std::vector<Fe> r(std::max(f.size(), g.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(f[i], g[i]);
    return Poly(std::move(r));
}

inline Poly scale(Field const& F, Poly const& f, Fe c) {
    std::vector<Fe> r(f.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(f[i], c);
    return Poly(std::move(r));
}

inline Poly mul(Field const& F, Poly const& f, Poly const& g) {
    if (f.is_zero() || g.is_zero()) return {};
    if (F.is_prime_field()) {
        // accumulate in 64 bits, reduce once per output coefficient
        std::uint64_t const p = F.p();
        std::vector<std::uint64_t> acc(f.size() + g.size() - 1, 0);
        auto fc = f.coeffs();
        auto gc = g.coeffs();
        for (std::size_t i = 0; i < fc.size(); ++i) {
            if (fc[i].is_zero()) continue;
            for (std::size_t j = 0; j < gc.size(); ++j) {
                acc[i + j] += static_cast<std::uint64_t>(fc[i].v) * gc[j].v;
                if (acc[i + j] >= (1ull << 62)) acc[i + j] %= p;
            }
        }
        std::vector<Fe> r(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) r[i] = Fe{static_cast<std::uint32_t>(acc[i] % p)};
        return Poly(std::move(r));
    }
    std::vector<Fe> r(f.size() + g.size() - 1, Fe{0});
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(f[i], g[j]));
    return Poly(std::move(r));
}

/// Euclidean division: f = quot * g + rem with deg rem < deg g.
inline std::pair<Poly, Poly> divmod(Field const& F, Poly const& f, Poly const& g) {
    if (g.is_zero()) throw DomainError("division by the zero polynomial");
    if (f.size() < g.size()) return {Poly{}, f};
    std::vector<Fe> r(f.coeffs().begin(), f.coeffs().end());
    std::vector<Fe> quot(f.size() - g.size() + 1);
    Fe const lead_inv = F.inv(g.leading());
    std::size_t const dg = g.size() - 1;
    for (std::size_t d = r.size(); d-- > dg;) {
        Fe c = r[d];
        if (c.is_zero()) continue;
        c = F.mul(c, lead_inv);
        quot[d - dg] = c;
        for (std::size_t i = 0; i <= dg; ++i) r[d - dg + i] = F.sub(r[d - dg + i], F.mul(c, g[i]));
    }
    r.resize(dg);
    return {Poly(std::move(quot)), Poly(std::move(r))};
}

inline Poly rem(Field const& F, Poly const& f, Poly const& g) {
    if (g.is_zero()) throw DomainError("division by the zero polynomial");
    if (f.size() < g.size()) return f;
    if (!F.is_prime_field()) return divmod(F, f, g).second;
    std::uint64_t const p = F.p();
    std::vector<std::uint32_t> r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i].v;
    std::uint64_t const lead_inv = F.inv(g.leading()).v;
    std::size_t const dg = g.size() - 1;
    for (std::size_t d = r.size(); d-- > dg;) {
        std::uint64_t c = r[d];
        if (c == 0) continue;
        c = c * lead_inv % p;
        std::uint64_t const nc = p - c;
        for (std::size_t i = 0; i < dg; ++i)
            r[d - dg + i] = static_cast<std::uint32_t>((r[d - dg + i] + nc * g[i].v) % p);
        r[d] = 0;
    }
    r.resize(dg);
    std::vector<Fe> out(dg);
    for (std::size_t i = 0; i < dg; ++i) out[i] = Fe{r[i]};
    return Poly(std::move(out));
}

inline Poly make_monic(Field const& F, Poly const& f) {
    if (f.is_zero() || f.is_monic()) return f;
    return scale(F, f, F.inv(f.leading()));
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Field const& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(F, a);
}

inline Poly mulmod(Field const& F, Poly const& a, Poly const& b, Poly const& m) {
    return rem(F, mul(F, a, b), m);
}

/// base^e mod m by square-and-multiply.
inline Poly mod_pow(Field const& F, Poly base, std::uint64_t e, Poly const& m) {
    if (m.is_zero()) throw DomainError("mod_pow with zero modulus");
    Poly result = rem(F, Poly::constant(F.one()), m);
    base = rem(F, base, m);
    while (e) {
        if (e & 1) result = mulmod(F, result, base, m);
        e >>= 1;
        if (e) base = mulmod(F, base, base, m);
    }
    return result;
}

inline Poly mod_pow(Field const& F, Poly base, BigInt const& e, Poly const& m) {
    if (m.is_zero()) throw DomainError("mod_pow with zero modulus");
    if (e < 0) throw DomainError("mod_pow with negative exponent");
    Poly result = rem(F, Poly::constant(F.one()), m);
    base = rem(F, base, m);
    auto const bits = e == 0 ? 0u : static_cast<unsigned>(msb(e)) + 1;
    for (unsigned i = bits; i-- > 0;) {
        result = mulmod(F, result, result, m);
        if (bit_test(e, i)) result = mulmod(F, result, base, m);
    }
    return result;
}

inline Fe eval(Field const& F, Poly const& f, Fe x) {
    Fe r{0};
    for (std::size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
    return r;
}

inline Poly derivative(Field const& F, Poly const& f) {
    if (f.size() <= 1) return {};
    std::vector<Fe> r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<long long>(i % F.p())), f[i]);
    return Poly(std::move(r));
}

/// g with g(T)^p = f(T), for f whose derivative vanishes (only T^{pi} terms).
inline Poly pth_root(Field const& F, Poly const& f) {
    std::size_t const p = F.p();
    std::vector<Fe> r(f.is_zero() ? 0 : (f.size() - 1) / p + 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        if (i % p != 0) throw DomainError("pth_root of a polynomial with nonzero derivative");
        r[i / p] = F.pth_root(f[i]);
    }
    return Poly(std::move(r));
}

} // namespace ffbias
