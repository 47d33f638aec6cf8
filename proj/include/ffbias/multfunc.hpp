#pragma once

/**
 * @file multfunc.hpp
 * @brief Irreducibility, factorization, the Moebius and Liouville functions,
 * and the quadratic residue character chi_m on F_q[T].
 */

#include "ffbias/bigint.hpp"
#include "ffbias/enumerate.hpp"
#include "ffbias/field.hpp"
#include "ffbias/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace ffbias {

namespace detail {

inline std::vector<std::size_t> prime_divisors(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline Poly exact_div(Field const& F, Poly const& f, Poly const& g) {
    auto [quot, r] = divmod(F, f, g);
    if (!r.is_zero()) throw DomainError("exact_div: nonzero remainder");
    return quot;
}

} // namespace detail

/// Rabin's test: f of degree n is irreducible iff T^{q^n} = T mod f and
/// gcd(T^{q^{n/r}} - T, f) = 1 for every prime r | n.
inline bool is_irreducible(Field const& F, Poly const& f) {
    if (f.is_constant()) throw DomainError("is_irreducible on a constant polynomial");
    std::size_t const n = *f.degree();
    if (n == 1) return true;
    Poly const g = make_monic(F, f);
    Poly const x = poly_x();
    // frob[i] = T^{q^i} mod g
    std::vector<Poly> frob(n + 1);
    frob[0] = rem(F, x, g);
    for (std::size_t i = 1; i <= n; ++i) frob[i] = mod_pow(F, frob[i - 1], F.q(), g);
    if (frob[n] != rem(F, x, g)) return false;
    for (std::size_t r : detail::prime_divisors(n)) {
        Poly const h = sub(F, frob[n / r], x);
        if (gcd(F, h, g).size() != 1) return false;
    }
    return true;
}

/// Field with a validated (irreducible) extension modulus.
inline Field make_field(FieldSpec spec) {
    Field F(spec);
    if (F.k() > 1) {
        Field base(FieldSpec{spec.p, 1, {}});
        std::vector<Fe> c;
        for (auto v : F.spec().ext_modulus) c.push_back(Fe{v});
        if (!is_irreducible(base, Poly(std::move(c))))
            throw DomainError("extension modulus is not irreducible over F_" + std::to_string(spec.p));
    }
    return F;
}

struct Factor {
    Poly poly;              ///< monic irreducible
    unsigned exponent = 1;

    bool operator==(Factor const&) const = default;
};

struct Factorization {
    Fe unit{1};
    std::vector<Factor> factors;

    /// Omega: number of irreducible factors with multiplicity.
    [[nodiscard]] unsigned omega() const {
        unsigned s = 0;
        for (auto const& f : factors) s += f.exponent;
        return s;
    }
    [[nodiscard]] bool is_squarefree() const {
        return std::all_of(factors.begin(), factors.end(), [](Factor const& f) { return f.exponent == 1; });
    }
    [[nodiscard]] Poly product(Field const& F) const {
        Poly r = Poly::constant(unit);
        for (auto const& fac : factors)
            for (unsigned e = 0; e < fac.exponent; ++e) r = mul(F, r, fac.poly);
        return r;
    }
};

namespace detail {

/// Square-free decomposition of a monic f: pairs (squarefree g, multiplicity),
/// the g pairwise coprime.
inline std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(Field const& F, Poly const& f) {
    std::vector<std::pair<Poly, unsigned>> out;
    if (f.is_constant()) return out;
    Poly const fd = derivative(F, f);
    if (fd.is_zero()) {
        for (auto& [g, e] : squarefree_decomposition(F, pth_root(F, f))) out.emplace_back(std::move(g), e * F.p());
        return out;
    }
    Poly c = gcd(F, f, fd);
    Poly w = exact_div(F, f, c);
    unsigned i = 1;
    while (!w.is_constant()) {
        Poly y = gcd(F, w, c);
        Poly fac = exact_div(F, w, y);
        if (!fac.is_constant()) out.emplace_back(std::move(fac), i);
        w = std::move(y);
        c = exact_div(F, c, w);
        ++i;
    }
    if (!c.is_constant()) {
        for (auto& [g, e] : squarefree_decomposition(F, pth_root(F, c))) out.emplace_back(std::move(g), e * F.p());
    }
    return out;
}

/// Distinct-degree factorization of a monic squarefree f: pairs (g_d, d) where
/// g_d is the product of all irreducible factors of degree d.
inline std::vector<std::pair<Poly, std::size_t>> distinct_degree(Field const& F, Poly f) {
    std::vector<std::pair<Poly, std::size_t>> out;
    Poly const x = poly_x();
    Poly h = rem(F, x, f);
    for (std::size_t d = 1; f.size() > 2 * d; ++d) {
        h = mod_pow(F, h, F.q(), f);
        Poly g = gcd(F, sub(F, h, x), f);
        if (!g.is_constant()) {
            f = exact_div(F, f, g);
            h = rem(F, h, f);
            out.emplace_back(std::move(g), d);
        }
    }
    if (!f.is_constant()) {
        std::size_t const d = *f.degree();
        out.emplace_back(std::move(f), d);
    }
    return out;
}

/// Cantor-Zassenhaus splitting of a monic squarefree g whose irreducible
/// factors all have degree d.
inline void equal_degree(Field const& F, Poly const& g, std::size_t d, std::mt19937_64& rng,
                         std::vector<Poly>& out) {
    std::size_t const n = *g.degree();
    if (n == d) {
        out.push_back(g);
        return;
    }
    BigInt const e = (ipow(BigInt(F.q()), static_cast<unsigned>(d)) - 1) / 2;
    std::uniform_int_distribution<std::uint32_t> coin(0, F.q() - 1);
    for (;;) {
        std::vector<Fe> a(n);
        for (auto& c : a) c = Fe{coin(rng)};
        Poly const ap(std::move(a));
        if (ap.is_constant()) continue;
        Poly b = sub(F, mod_pow(F, ap, e, g), Poly::constant(F.one()));
        Poly h = gcd(F, b, g);
        if (h.is_constant() || h.size() == g.size()) continue;
        equal_degree(F, h, d, rng, out);
        equal_degree(F, exact_div(F, g, h), d, rng, out);
        return;
    }
}

/// Trial division for small degree: divide out every monic candidate of
/// degree 1..deg/2 in increasing order; a composite candidate never divides
/// because its own factors were removed first.
inline std::vector<Factor> trial_division(Field const& F, Poly g) {
    std::vector<Factor> out;
    for (std::uint32_t a = 0; a < F.q() && g.size() > 1; ++a) {
        Fe const root = F.neg(Fe{a});
        unsigned e = 0;
        while (g.size() > 1 && eval(F, g, root).is_zero()) {
            g = exact_div(F, g, Poly({Fe{a}, F.one()}));
            ++e;
        }
        if (e) out.push_back({Poly({Fe{a}, F.one()}), e});
    }
    for (std::size_t d = 2; 2 * d <= *g.degree(); ++d) {
        for (auto const& cand : enumerate_monic(F, d)) {
            if (2 * d > *g.degree()) break;
            unsigned e = 0;
            for (;;) {
                auto [quot, r] = divmod(F, g, cand);
                if (!r.is_zero()) break;
                g = std::move(quot);
                ++e;
            }
            if (e) out.push_back({cand, e});
        }
    }
    if (!g.is_constant()) out.push_back({g, 1});
    return out;
}

} // namespace detail

/// Seed for the equal-degree splitting; fixed so factor() is reproducible.
inline constexpr std::uint64_t kFactorSeed = 0x5eed'f1e1'd0b1'a5edULL;
/// Below this degree factor() uses trial division.
inline constexpr std::size_t kTrialDivisionBelow = 6;

/// Complete factorization; factors sorted by (degree, coefficients).
inline Factorization factor(Field const& F, Poly const& f) {
    if (f.is_zero()) throw DomainError("factor of the zero polynomial");
    Factorization out;
    out.unit = f.leading();
    Poly const g = make_monic(F, f);
    if (g.is_constant()) return out;
    if (*g.degree() < kTrialDivisionBelow) {
        out.factors = detail::trial_division(F, g);
    } else {
        std::mt19937_64 rng(kFactorSeed);
        for (auto const& [sq, mult] : detail::squarefree_decomposition(F, g)) {
            for (auto const& [block, d] : detail::distinct_degree(F, sq)) {
                std::vector<Poly> irr;
                detail::equal_degree(F, block, d, rng, irr);
                for (auto& p : irr) out.factors.push_back({std::move(p), mult});
            }
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](Factor const& a, Factor const& b) { return a.poly < b.poly; });
    return out;
}

/// Degree pattern of f: Omega, number of distinct irreducible factors, and
/// squarefreeness, from the square-free and distinct-degree steps alone.
struct FactorPattern {
    unsigned omega = 0;
    unsigned distinct = 0;
    bool squarefree = true;
};

inline FactorPattern factor_pattern(Field const& F, Poly const& f) {
    if (f.is_zero()) throw DomainError("factor_pattern of the zero polynomial");
    FactorPattern out;
    Poly const g = make_monic(F, f);
    for (auto const& [sq, mult] : detail::squarefree_decomposition(F, g)) {
        if (mult > 1) out.squarefree = false;
        for (auto const& [block, d] : detail::distinct_degree(F, sq)) {
            auto const r = static_cast<unsigned>(*block.degree() / d);
            out.distinct += r;
            out.omega += r * mult;
        }
    }
    return out;
}

/// mu(f) in {-1, 0, 1}; constants map to 1.
inline int mobius(Field const& F, Poly const& f) {
    auto const pat = factor_pattern(F, f);
    if (!pat.squarefree) return 0;
    return pat.distinct % 2 ? -1 : 1;
}

/// lambda(f) = (-1)^Omega(f); constants map to 1.
inline int liouville(Field const& F, Poly const& f) { return factor_pattern(F, f).omega % 2 ? -1 : 1; }

inline bool is_squarefree(Field const& F, Poly const& f) {
    if (f.is_zero()) return false;
    if (f.is_constant()) return true;
    Poly const d = derivative(F, f);
    if (d.is_zero()) return false;
    return gcd(F, f, d).is_constant();
}

/**
 * The quadratic character chi_m(f) = (f/m) for a monic squarefree
 * nonconstant m, evaluated by quadratic reciprocity in F_q[T]:
 *
 *   (a/b)(b/a) = (-1)^{((q-1)/2) deg a deg b}     for monic a, b,
 *   (c/b)      = sgn(c)^{deg b}                   for c in F_q^*,
 *
 * where sgn is the quadratic character of F_q^*.
 */
class QuadraticCharacter {
public:
    QuadraticCharacter(Field F, Poly m) : F_(std::move(F)), m_(std::move(m)) {
        if (m_.is_constant()) throw DomainError("character modulus must be nonconstant");
        if (!m_.is_monic()) throw DomainError("character modulus must be monic");
        if (!is_squarefree(F_, m_)) throw DomainError("character modulus must be squarefree");
    }

    [[nodiscard]] Field const& field() const { return F_; }
    [[nodiscard]] Poly const& modulus() const { return m_; }

    [[nodiscard]] int operator()(Poly const& f) const { return jacobi(f, m_); }

    /// Jacobi symbol (a/b) for monic nonconstant b.
    [[nodiscard]] int jacobi(Poly a, Poly b) const {
        bool const half_odd = ((F_.q() - 1) / 2) % 2 == 1;
        int s = 1;
        for (;;) {
            a = rem(F_, a, b);
            if (a.is_zero()) return 0;
            bool const b_odd = *b.degree() % 2 == 1;
            if (b_odd && F_.quadratic_sign(a.leading()) < 0) s = -s;
            a = make_monic(F_, a);
            if (a.is_constant()) return s;
            if (half_odd && b_odd && *a.degree() % 2 == 1) s = -s;
            std::swap(a, b);
        }
    }

private:
    Field F_;
    Poly m_;
};

inline int chi(Field const& F, Poly const& m, Poly const& f) { return QuadraticCharacter(F, m)(f); }

/// chi_m(f) by Euler's criterion on each irreducible factor P of m:
/// (f/P) = f^{(|P|-1)/2} mod P. Independent of the reciprocity path.
inline int chi_euler(Field const& F, Poly const& m, Poly const& f) {
    if (m.is_constant() || !m.is_monic() || !is_squarefree(F, m))
        throw DomainError("character modulus must be monic, squarefree and nonconstant");
    int s = 1;
    for (auto const& fac : factor(F, m).factors) {
        Poly const r = rem(F, f, fac.poly);
        if (r.is_zero()) return 0;
        BigInt const e = (norm(F, fac.poly) - 1) / 2;
        Poly const v = mod_pow(F, r, e, fac.poly);
        if (v == Poly::constant(F.one())) continue;
        if (v == Poly::constant(F.neg(F.one()))) {
            s = -s;
            continue;
        }
        throw DomainError("Euler criterion produced a non-unit; modulus factor is not irreducible");
    }
    return s;
}

} // namespace ffbias
