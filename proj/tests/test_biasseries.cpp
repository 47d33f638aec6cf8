#include "ffbias/biasseries.hpp"
#include "ffbias/poly_text.hpp"
#include "test_moduli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace ffbias;

namespace {

Field const F3(FieldSpec{3, 1, {}});
Field const F5(FieldSpec{5, 1, {}});

std::vector<BigInt> ints(std::initializer_list<long long> v) {
    std::vector<BigInt> out;
    for (auto x : v) out.emplace_back(x);
    return out;
}

std::vector<BigInt> slice(std::vector<BigInt> const& v, std::size_t from, std::size_t to) {
    return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to)};
}

LPolynomial lpoly(Field const& F, char const* m) { return l_polynomial(F, parse_poly(m, F)); }

/// b(n) at each requested index (ascending) by running the recurrence with
/// a rolling window, O(L) memory
std::vector<BigInt> rolling(Recurrence const& r, std::vector<std::size_t> const& at) {
    std::vector<BigInt> w(r.initial), out;
    std::size_t const L = r.order();
    std::size_t n = w.size() - 1;  // index of w.back()
    for (auto target : at) {
        if (target < r.initial.size()) {
            out.push_back(r.initial[target]);
            continue;
        }
        while (n < target) {
            BigInt v = 0;
            for (std::size_t i = 1; i <= L; ++i) v += r.coefficients[i - 1] * w[w.size() - i];
            w.push_back(std::move(v));
            ++n;
            if (w.size() > 4 * L + 4) w.erase(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() - L));
        }
        out.push_back(w.back());
    }
    return out;
}

} // namespace

TEST(BiasSeries, GoldenQ5) {
    auto const s = expand(gf_lambda(lpoly(F5, "T^3+T+4")), 20);
    EXPECT_EQ(slice(s.b, 1, 7), ints({-3, 9, -12, 16, 12, 8}));
}

TEST(BiasSeries, GoldenDegree5) {
    auto const s = expand(gf_lambda(lpoly(F3, "(T^2+1)*(T^3+2*T+1)")), 20);
    EXPECT_EQ(slice(s.b, 0, 7), ints({1, -1, 0, 1, 1, 4, 12}));
}

TEST(BiasSeries, DegreeOneClosedForm) {
    for (auto const* F : {&F3, &F5}) {
        auto const s = expand(gf_lambda(l_polynomial(*F, parse_poly("T", *F))), 40);
        long long const q = F->q();
        for (std::size_t n = 1; n <= 40; ++n) {
            if (n % 2) {
                EXPECT_EQ(s.b[n], 0);
            } else {
                EXPECT_EQ(s.b[n], (q - 1) * ipow(BigInt(q), static_cast<unsigned>(n / 2 - 1)));
            }
            if (n > 1) EXPECT_GT(s.B[n], 0);
        }
    }
}

TEST(BiasSeries, DegreeTwoMoebiusIsOne) {
    auto const s = expand(gf_mu(lpoly(F3, "T^2+1")), 30, BiasKind::mu);
    for (std::size_t n = 0; n <= 30; ++n) EXPECT_EQ(s.b[n], 1);
}

TEST(BiasSeries, GshViolatorCumulativeAllPositive) {
    auto const s = expand(cumulative_gf(gf_lambda(lpoly(F3, "T^3-T+1"))), 200);
    for (std::size_t n = 1; n <= 200; ++n) EXPECT_GT(s.b[n], 0) << n;
}

TEST(Recurrence, KnownRecurrences) {
    auto const r = recurrence_from(gf_lambda(lpoly(F5, "T^3+T+4")));
    EXPECT_EQ(r.coefficients, ints({-3, 0, 15, 25}));
    EXPECT_EQ(r.valid_from, 7u);

    auto const g = gf_lambda(lpoly(F3, "(T^2+1)*(T^3+2*T+1)"));
    auto const r5 = recurrence_from(g);
    EXPECT_EQ(r5.coefficients, ints({-1, -1, 0, 3, 9, 27}));
    // verified over a 100-term window from the first index where it applies
    auto const s = series_coefficients(g, r5.valid_from + 100);
    for (std::size_t n = r5.valid_from; n < s.size(); ++n) {
        BigInt v = 0;
        for (std::size_t i = 1; i <= 6; ++i) v += r5.coefficients[i - 1] * s[n - i];
        EXPECT_EQ(v, s[n]) << n;
    }

    auto const r1 = recurrence_from(gf_lambda(lpoly(F5, "T")));
    EXPECT_EQ(r1.coefficients, ints({0, 5}));
}

TEST(Recurrence, FastTermMatchesExpansion) {
    auto const g = gf_lambda(lpoly(F5, "T^3+T+4"));
    auto const r = recurrence_from(g);
    auto const s = expand(g, 3000);
    EXPECT_EQ(nth_term_fast(r, 20), s.b[20]);
    for (std::size_t n = 0; n < 10; ++n) EXPECT_EQ(nth_term_fast(r, n), s.b[n]);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        std::size_t const n = 1 + rng() % 3000;
        EXPECT_EQ(nth_term_fast(r, n), s.b[n]) << n;
    }
}

TEST(Recurrence, FastTermAtLargeIndices) {
    auto const g = gf_lambda(lpoly(F3, "(T^2+1)*(T^3+2*T+1)"));
    auto const r = recurrence_from(g);
    std::mt19937_64 rng(12);
    std::vector<std::size_t> at;
    for (int i = 0; i < 20; ++i) at.push_back(1 + rng() % 100000);
    std::sort(at.begin(), at.end());
    auto const want = rolling(r, at);
    for (std::size_t i = 0; i < at.size(); ++i) EXPECT_EQ(nth_term_fast(r, at[i]), want[i]) << at[i];
    // degree one: b(2k) = (q - 1) q^{k-1}
    auto const r1 = recurrence_from(gf_lambda(lpoly(F5, "T")));
    EXPECT_EQ(nth_term_fast(r1, 100000), 4 * ipow(BigInt(5), 49999));
    EXPECT_EQ(nth_term_fast(r1, 99999), 0);
}

TEST(GeneratingFunction, TruncatedIdentities) {
    for (auto const& tm : ffbias::testing::oracle_moduli()) {
        Field const F(FieldSpec{tm.q, 1, {}});
        Poly const m = parse_poly(tm.text, F);
        auto const L = l_polynomial(F, m);
        std::size_t const N = 30;
        auto trunc = [N](IntPoly const& p) {
            std::vector<BigInt> c(p.coeffs());
            if (c.size() > N + 1) c.resize(N + 1);
            return IntPoly(std::move(c));
        };
        auto const mu = expand(gf_mu(L), N);
        EXPECT_EQ(trunc(IntPoly(mu.b) * L.coeffs), IntPoly{1}) << tm.text;
        auto const la = expand(gf_lambda(L), N);
        IntPoly num{1};
        for (auto const& f : factor(F, m).factors) num = num * one_minus_monomial(1, 2 * *f.poly.degree());
        EXPECT_EQ(trunc(IntPoly(la.b) * one_minus_monomial(F.q(), 2) * L.coeffs), trunc(num)) << tm.text;
        // cumulative generating function = running sums from n = 1
        auto const cum = expand(cumulative_gf(gf_lambda(L)), N);
        for (std::size_t n = 1; n <= N; ++n) EXPECT_EQ(cum.b[n], la.B[n]);
        EXPECT_EQ(cum.b[0], 0);
    }
}

TEST(BruteForce, MatchesExpansion) {
    for (auto const& tm : ffbias::testing::oracle_moduli()) {
        Field const F(FieldSpec{tm.q, 1, {}});
        Poly const m = parse_poly(tm.text, F);
        std::size_t const N = tm.q == 3 ? 8 : 5;
        auto const L = l_polynomial(F, m);
        for (auto kind : {BiasKind::mu, BiasKind::lambda}) {
            auto const bf = brute_force(F, m, kind, N);
            auto const ex = expand(gf_for(kind, L), N);
            EXPECT_EQ(bf.series.b, ex.b) << tm.text << ' ' << to_string(kind);
            EXPECT_EQ(bf.series.B, ex.B);
            std::uint64_t qn = 1;
            for (std::size_t n = 0; n <= N; ++n, qn *= F.q())
                EXPECT_EQ(bf.plus[n] + bf.minus[n] + bf.zero[n], qn);
        }
    }
}

TEST(BruteForce, TableOverloadAgrees) {
    auto const table = arithmetic_table(F3, 7);
    for (char const* text : {"T^3-T+1", "T*(T+1)"}) {
        Poly const m = parse_poly(text, F3);
        for (auto kind : {BiasKind::mu, BiasKind::lambda})
            EXPECT_EQ(brute_force(F3, table, m, kind, 7).series.b, brute_force(F3, m, kind, 7).series.b);
    }
    EXPECT_THROW(brute_force(F3, table, parse_poly("T", F3), BiasKind::mu, 8), DomainError);
}

TEST(BruteForce, GuardRefuses) {
    EXPECT_THROW(brute_force(F5, parse_poly("T", F5), BiasKind::mu, 12), ResourceGuardError);
    EXPECT_THROW(arithmetic_table(F3, 17), ResourceGuardError);
}

TEST(BiasSeries, GrowthBound) {
    for (auto const& tm : ffbias::testing::oracle_moduli()) {
        Field const F(FieldSpec{tm.q, 1, {}});
        Poly const m = parse_poly(tm.text, F);
        auto const L = l_polynomial(F, m);
        std::size_t const M = *m.degree(), Mp = L.num_angles();
        auto const s = expand(gf_lambda(L), 2 * M + 200);
        for (std::size_t n = 2 * M; n <= s.horizon(); ++n) {
            long double const bound = 10.0L * static_cast<long double>(Mp + 2) *
                                      std::pow(static_cast<long double>(F.q()), 0.5L * static_cast<long double>(n));
            EXPECT_LE(std::abs(to_long_double(s.b[n])), bound) << tm.text << " n=" << n;
        }
    }
}

TEST(Empirical, TableRowsAtSmallHorizon) {
    auto const s = expand(gf_lambda(lpoly(F5, "T^3+T+4")), 10);
    auto const e = empirical_densities(s, 10);
    EXPECT_DOUBLE_EQ(e.noncumulative.delta_plus, 0.6);
    EXPECT_DOUBLE_EQ(e.cumulative.delta_plus, 0.6);
    EXPECT_DOUBLE_EQ(e.noncumulative.delta_plus + e.noncumulative.delta_zero + e.noncumulative.delta_minus, 1.0);
    EXPECT_THROW(empirical_densities(s, 11), DomainError);
}

TEST(Empirical, TiesCountAsZero) {
    // degree one: b vanishes at odd degrees
    auto const s = expand(gf_lambda(lpoly(F3, "T")), 100);
    auto const e = empirical_densities(s, 100);
    EXPECT_DOUBLE_EQ(e.noncumulative.delta_plus, 0.5);
    EXPECT_DOUBLE_EQ(e.noncumulative.delta_zero, 0.5);
}

TEST(SinLemma, ClosedFormsMatchDirectSums) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ua(0.1, 0.95), ut(0.05, std::numbers::pi - 0.05), uw(-3, 3);
    for (int i = 0; i < 100; ++i) {
        double const a = ua(rng), t = ut(rng), w = uw(rng);
        long const n = 1 + static_cast<long>(rng() % 200);
        double direct = 0;
        for (long k = 1; k <= n; ++k) direct += std::pow(a, k) * std::sin(k * t + w);
        EXPECT_NEAR(sin_geometric_sum(a, t, w, n), direct, 1e-10);
        double even = 0, odd = 0;
        for (long k = 1; k <= n; ++k) even += std::sin(2 * k * t);
        for (long k = 0; k <= n; ++k) odd += std::sin((2 * k + 1) * t);
        EXPECT_NEAR(sin_even_sum(t, n), even, 1e-10);
        EXPECT_NEAR(sin_odd_sum(t, n), odd, 1e-10);
    }
}

TEST(RationalGF, NormalizesAndRejects) {
    RationalGF const g(IntPoly{-2, 2}, IntPoly{-1, 1});  // (2u - 2)/(u - 1) = 2
    EXPECT_EQ(g.numerator(), IntPoly{2});
    EXPECT_EQ(g.denominator(), IntPoly{1});
    EXPECT_THROW(RationalGF(IntPoly{1}, IntPoly{}), DomainError);
    EXPECT_THROW(RationalGF(IntPoly{1}, IntPoly{2, 1}), DomainError);
}
