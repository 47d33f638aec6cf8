#pragma once

/**
 * @file biasseries.hpp
 * @brief Exact bias sequences b(n), B(n) of mu*chi_m and lambda*chi_m.
 *
 * The generating functions are rational in u:
 *
 *     sum b_mu(n) u^n     = 1 / L(u)
 *     sum b_lambda(n) u^n = prod_i (1 - u^{2 M_i}) / ((1 - q u^2) L(u))
 *     sum_{n>=1} B(n) u^n = (G(u) - 1) / (1 - u)
 *
 * where m = m_1 ... m_r with deg m_i = M_i. All series arithmetic is exact;
 * brute_force() recounts the same quantities by enumerating F_q[T].
 */

#include "ffbias/bigint.hpp"
#include "ffbias/enumerate.hpp"
#include "ffbias/intpoly.hpp"
#include "ffbias/lfunc.hpp"
#include "ffbias/multfunc.hpp"
#include "ffbias/report.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffbias {

enum class BiasKind { mu, lambda };

inline char const* to_string(BiasKind k) { return k == BiasKind::mu ? "mu" : "lambda"; }

inline BiasKind parse_bias_kind(std::string const& s) {
    if (s == "mu") return BiasKind::mu;
    if (s == "lambda") return BiasKind::lambda;
    throw DomainError("unknown bias kind '" + s + "' (expected mu or lambda)");
}

/// Refusal to run an enumeration beyond the configured budget.
class ResourceGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// numerator / denominator with denominator(0) = 1 and no common factor.
class RationalGF {
public:
    RationalGF(IntPoly numerator, IntPoly denominator) {
        if (denominator.is_zero()) throw DomainError("rational function with zero denominator");
        if (!numerator.is_zero()) {
            IntPoly const g = gcd_over_q(numerator, denominator);
            if (g.degree() > 0) {
                numerator = exact_divide(numerator, g);
                denominator = exact_divide(denominator, g);
            }
        }
        BigInt const d0 = denominator[0];
        if (d0 == -1) {
            numerator = BigInt(-1) * numerator;
            denominator = BigInt(-1) * denominator;
        } else if (d0 != 1) {
            throw DomainError("denominator constant term must be +-1, got " + d0.str());
        }
        num_ = std::move(numerator);
        den_ = std::move(denominator);
    }

    [[nodiscard]] IntPoly const& numerator() const { return num_; }
    [[nodiscard]] IntPoly const& denominator() const { return den_; }

private:
    IntPoly num_, den_;
};

/// b(n) for 0 <= n <= N and running sums B(n) = sum_{1 <= k <= n} b(k).
/// Index = degree; b[0] is the constant polynomial's contribution and is
/// excluded from B and from every density.
struct BiasSeries {
    BiasKind kind = BiasKind::lambda;
    std::string modulus;  ///< canonical text, informational
    std::vector<BigInt> b;
    std::vector<BigInt> B;

    [[nodiscard]] std::size_t horizon() const { return b.empty() ? 0 : b.size() - 1; }
};

inline std::vector<BigInt> running_sums_from_one(std::vector<BigInt> const& b) {
    std::vector<BigInt> B(b.size());
    for (std::size_t n = 1; n < b.size(); ++n) B[n] = B[n - 1] + b[n];
    return B;
}

/// 1 / L(u)
inline RationalGF gf_mu(LPolynomial const& L) { return RationalGF(IntPoly{1}, L.coeffs); }

/// prod_i (1 - u^{2 M_i}) / ((1 - q u^2) L(u)), from the irreducible factors
/// of the modulus.
inline RationalGF gf_lambda(LPolynomial const& L, Factorization const& mfac) {
    if (mfac.product(L.field) != L.modulus) throw DomainError("factorization does not match the modulus");
    IntPoly num{1};
    for (auto const& f : mfac.factors) {
        if (f.exponent != 1) throw DomainError("modulus is not squarefree");
        num = num * one_minus_monomial(1, 2 * *f.poly.degree());
    }
    IntPoly const den = one_minus_monomial(L.field.q(), 2) * L.coeffs;
    return RationalGF(std::move(num), den);
}

inline RationalGF gf_lambda(LPolynomial const& L) { return gf_lambda(L, factor(L.field, L.modulus)); }

inline RationalGF gf_for(BiasKind kind, LPolynomial const& L) {
    return kind == BiasKind::mu ? gf_mu(L) : gf_lambda(L);
}

/// (G(u) - 1) / (1 - u): the generating function of B(n), n >= 1.
inline RationalGF cumulative_gf(RationalGF const& gf) {
    return RationalGF(gf.numerator() - gf.denominator(), gf.denominator() * one_minus_monomial(1, 1));
}

/// Power series coefficients c_0..c_N of num/den by exact division.
inline std::vector<BigInt> series_coefficients(RationalGF const& gf, std::size_t N) {
    auto const& num = gf.numerator();
    auto const& den = gf.denominator();
    std::vector<BigInt> c(N + 1);
    std::size_t const L = den.size();
    for (std::size_t n = 0; n <= N; ++n) {
        BigInt v = num[n];
        for (std::size_t i = 1; i < L && i <= n; ++i) v -= den[i] * c[n - i];
        c[n] = std::move(v);
    }
    return c;
}

inline BiasSeries expand(RationalGF const& gf, std::size_t N, BiasKind kind = BiasKind::lambda,
                         std::string modulus = {}) {
    if (N < 1) throw DomainError("expand needs N >= 1");
    BiasSeries s;
    s.kind = kind;
    s.modulus = std::move(modulus);
    s.b = series_coefficients(gf, N);
    s.B = running_sums_from_one(s.b);
    return s;
}

/// b(n) = sum_i c_i b(n - i) for n >= valid_from, with b(k) = 0 for k < 0.
struct Recurrence {
    std::vector<BigInt> coefficients;  ///< c_1..c_L
    std::size_t valid_from = 0;
    std::vector<BigInt> initial;       ///< b(0)..b(K-1), K = max(valid_from, L)

    [[nodiscard]] std::size_t order() const { return coefficients.size(); }
};

/// The recurrence given by the denominator, validated against expand() on a
/// 50-term window past its starting index.
inline Recurrence recurrence_from(RationalGF const& gf) {
    Recurrence r;
    auto const& den = gf.denominator();
    for (std::size_t i = 1; i < den.size(); ++i) r.coefficients.push_back(-den[i]);
    r.valid_from = gf.numerator().size();
    std::size_t const K = std::max(r.valid_from, r.order());
    constexpr std::size_t kWindow = 50;
    auto const c = series_coefficients(gf, K + kWindow);
    r.initial.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(K));
    for (std::size_t n = r.valid_from; n < c.size(); ++n) {
        BigInt v = 0;
        for (std::size_t i = 1; i <= r.order() && i <= n; ++i) v += r.coefficients[i - 1] * c[n - i];
        if (v != c[n]) throw IntegrityError("recurrence does not reproduce the series at n = " + std::to_string(n));
    }
    return r;
}

namespace detail {

using BigMatrix = std::vector<std::vector<BigInt>>;

inline BigMatrix mat_mul(BigMatrix const& A, BigMatrix const& B) {
    std::size_t const n = A.size();
    BigMatrix C(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (A[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

} // namespace detail

/// b(n) by companion-matrix exponentiation: O(L^3 log n) big-integer products.
inline BigInt nth_term_fast(Recurrence const& rec, std::size_t n) {
    std::size_t const K = rec.initial.size();
    if (n < K) return rec.initial[n];
    std::size_t const L = rec.order();
    if (L == 0) return 0;
    // state_t = (b(t), b(t-1), ..., b(t-L+1)); state_{t+1} = C * state_t
    detail::BigMatrix C(L, std::vector<BigInt>(L));
    for (std::size_t j = 0; j < L; ++j) C[0][j] = rec.coefficients[j];
    for (std::size_t i = 1; i < L; ++i) C[i][i - 1] = 1;
    detail::BigMatrix P(L, std::vector<BigInt>(L));
    for (std::size_t i = 0; i < L; ++i) P[i][i] = 1;
    std::size_t e = n - (K - 1);
    while (e) {
        if (e & 1) P = detail::mat_mul(P, C);
        e >>= 1;
        if (e) C = detail::mat_mul(C, C);
    }
    BigInt v = 0;
    for (std::size_t j = 0; j < L; ++j) v += P[0][j] * rec.initial[K - 1 - j];
    return v;
}

/// Per-degree sign counts of mu(f)chi_m(f) or lambda(f)chi_m(f).
struct BruteForceCounts {
    std::vector<std::uint64_t> plus, minus, zero;
    BiasSeries series;
};

inline constexpr std::uint64_t kBruteForceBudget = 100'000'000;

inline void check_brute_force_budget(Field const& F, std::size_t N) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < N; ++i) {
        total *= F.q();
        if (total > kBruteForceBudget)
            throw ResourceGuardError("brute force over q^N = " + std::to_string(F.q()) + "^" + std::to_string(N) +
                                     " polynomials exceeds the budget of " + std::to_string(kBruteForceBudget));
    }
}

/// Counts by full enumeration of the monic polynomials of degree 0..N.
/// Refuses (ResourceGuardError) when q^N exceeds kBruteForceBudget.
inline BruteForceCounts brute_force(Field const& F, Poly const& m, BiasKind kind, std::size_t N) {
    check_brute_force_budget(F, N);
    QuadraticCharacter const chi_m(F, m);
    BruteForceCounts out;
    out.plus.assign(N + 1, 0);
    out.minus.assign(N + 1, 0);
    out.zero.assign(N + 1, 0);
    out.series.kind = kind;
    out.series.modulus = format_poly(F, m);
    out.series.b.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        for (auto const& f : enumerate_monic(F, n)) {
            int const c = chi_m(f);
            if (c == 0) {
                ++out.zero[n];
                continue;
            }
            auto const pat = factor_pattern(F, f);
            int w = 0;
            if (kind == BiasKind::lambda)
                w = pat.omega % 2 ? -1 : 1;
            else
                w = pat.squarefree ? (pat.distinct % 2 ? -1 : 1) : 0;
            int const s = w * c;
            if (s > 0)
                ++out.plus[n];
            else if (s < 0)
                ++out.minus[n];
            else
                ++out.zero[n];
        }
        out.series.b[n] = BigInt(out.plus[n]) - BigInt(out.minus[n]);
    }
    out.series.B = running_sums_from_one(out.series.b);
    return out;
}

/// lambda(f) and mu(f) for every monic f of degree <= N, indexed by degree
/// and monic_index(); factoring once lets many moduli share the work.
struct ArithmeticTable {
    std::size_t N = 0;
    std::vector<std::vector<std::int8_t>> lambda, mu;
};

inline ArithmeticTable arithmetic_table(Field const& F, std::size_t N) {
    check_brute_force_budget(F, N);
    ArithmeticTable t;
    t.N = N;
    t.lambda.resize(N + 1);
    t.mu.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n)
        for (auto const& f : enumerate_monic(F, n)) {
            auto const pat = factor_pattern(F, f);
            t.lambda[n].push_back(pat.omega % 2 ? -1 : 1);
            t.mu[n].push_back(pat.squarefree ? (pat.distinct % 2 ? -1 : 1) : 0);
        }
    return t;
}

/// brute_force() with lambda and mu looked up in a precomputed table.
inline BruteForceCounts brute_force(Field const& F, ArithmeticTable const& table, Poly const& m, BiasKind kind,
                                    std::size_t N) {
    if (N > table.N) throw DomainError("arithmetic table is shorter than the requested degree");
    QuadraticCharacter const chi_m(F, m);
    auto const& w = kind == BiasKind::lambda ? table.lambda : table.mu;
    BruteForceCounts out;
    out.plus.assign(N + 1, 0);
    out.minus.assign(N + 1, 0);
    out.zero.assign(N + 1, 0);
    out.series.kind = kind;
    out.series.modulus = format_poly(F, m);
    out.series.b.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        std::size_t i = 0;
        for (auto const& f : enumerate_monic(F, n)) {
            int const s = w[n][i++] * chi_m(f);
            (s > 0 ? out.plus[n] : s < 0 ? out.minus[n] : out.zero[n])++;
        }
        out.series.b[n] = BigInt(out.plus[n]) - BigInt(out.minus[n]);
    }
    out.series.B = running_sums_from_one(out.series.b);
    return out;
}

struct EmpiricalDensities {
    DensityReport noncumulative;  ///< signs of b(k), 1 <= k <= n
    DensityReport cumulative;     ///< signs of B(k), 1 <= k <= n
};

/// Fractions of k in [1, n] with b(k) (resp. B(k)) positive, zero, negative.
inline EmpiricalDensities empirical_densities(BiasSeries const& s, std::size_t n) {
    if (n < 1 || s.horizon() < n) throw DomainError("series shorter than the requested horizon");
    auto tally = [n](std::vector<BigInt> const& v, bool cumulative) {
        std::uint64_t pos = 0, zero = 0, neg = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            int const sg = v[k].sign();
            (sg > 0 ? pos : sg < 0 ? neg : zero)++;
        }
        DensityReport r;
        r.cumulative = cumulative;
        double const dn = static_cast<double>(n);
        r.delta_plus = static_cast<double>(pos) / dn;
        r.delta_zero = static_cast<double>(zero) / dn;
        r.delta_minus = static_cast<double>(neg) / dn;
        r.source = DensitySource::empirical;
        return r;
    };
    EmpiricalDensities out{tally(s.b, false), tally(s.B, true)};
    for (auto* r : {&out.noncumulative, &out.cumulative}) {
        r->modulus = s.modulus;
        r->kind = to_string(s.kind);
    }
    return out;
}

/// Closed form of sum_{k=1}^{n} a^k sin(k theta + omega).
inline double sin_geometric_sum(double a, double theta, double omega, long n) {
    double const nn = static_cast<double>(n);
    double const num = a * std::sin(theta + omega) - a * a * std::sin(omega) -
                       std::pow(a, nn + 1) * std::sin((nn + 1) * theta + omega) +
                       std::pow(a, nn + 2) * std::sin(nn * theta + omega);
    return num / (1 - 2 * a * std::cos(theta) + a * a);
}

/// sin(2t) + sin(4t) + ... + sin(2kt)
inline double sin_even_sum(double theta, long k) {
    return (std::cos(theta) - std::cos((2.0 * static_cast<double>(k) + 1) * theta)) / (2 * std::sin(theta));
}

/// sin(t) + sin(3t) + ... + sin((2k+1)t)
inline double sin_odd_sum(double theta, long k) {
    return (1 - std::cos((2.0 * static_cast<double>(k) + 2) * theta)) / (2 * std::sin(theta));
}

} // namespace ffbias
