#pragma once

/**
 * @file lfunc.hpp
 * @brief The L-polynomial of a quadratic character, its inverse zeros, and
 * heuristic diagnostics for linear relations among their angles.
 *
 * For a monic squarefree m of degree M the Dirichlet series of chi_m is a
 * polynomial L(u) in u = q^{-s} of degree M - 1. Its inverse zeros have
 * absolute value sqrt(q), apart from a simple zero at u = 1 when M is even,
 * so L factors as
 *
 *     L(u) = (1 - u)^{[M even]} * prod_j (1 - 2 sqrt(q) cos(theta_j) u + q u^2)
 *
 * with M' = floor((M - 1) / 2) angles theta_j in [0, pi].
 */

#include "ffbias/bigint.hpp"
#include "ffbias/enumerate.hpp"
#include "ffbias/field.hpp"
#include "ffbias/intpoly.hpp"
#include "ffbias/multfunc.hpp"
#include "ffbias/poly.hpp"
#include "ffbias/poly_text.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffbias {

/// A result contradicting a theorem the computation relies on. Signals a bug
/// upstream (character, enumeration, root finding), not a mathematical fact.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LPolynomial {
    Field field;
    Poly modulus;
    IntPoly coeffs;  ///< ascending in u, trailing zeros trimmed

    [[nodiscard]] std::size_t modulus_degree() const { return *modulus.degree(); }
    [[nodiscard]] std::size_t num_angles() const { return (modulus_degree() - 1) / 2; }
    [[nodiscard]] bool has_unit_zero() const { return modulus_degree() % 2 == 0; }
};

/// Sum of chi_m(f) over monic f of degree n.
inline BigInt character_sum(QuadraticCharacter const& chi_m, std::size_t n) {
    long long s = 0;
    for (auto const& f : enumerate_monic(chi_m.field(), n)) s += chi_m(f);
    return s;
}

/// L(u, chi_m) by full enumeration of the monic polynomials of degree < M.
inline LPolynomial l_polynomial(Field const& F, Poly const& m) {
    QuadraticCharacter const chi_m(F, m);
    std::size_t const M = *m.degree();
    std::vector<BigInt> c(M);
    for (std::size_t n = 0; n < M; ++n) c[n] = character_sum(chi_m, n);
    LPolynomial L{F, m, IntPoly(std::move(c))};
    if (L.coeffs[0] != 1) throw IntegrityError("L-polynomial constant term is not 1");
    return L;
}

// --- inverse zeros ---------------------------------------------------------

enum class AngleVerdict { plausibly_irrational, rational_multiple, unresolved };

inline char const* to_string(AngleVerdict v) {
    switch (v) {
    case AngleVerdict::plausibly_irrational: return "plausibly-irrational";
    case AngleVerdict::rational_multiple: return "rational-multiple";
    case AngleVerdict::unresolved: return "unresolved";
    }
    return "?";
}

struct AngleDiagnostic {
    AngleVerdict verdict = AngleVerdict::plausibly_irrational;
    long numerator = 0;    ///< theta / pi ~ numerator / denominator when rational
    long denominator = 0;
};

/// c0*pi + ci*theta_i + cj*theta_j = 0 with small integer coefficients.
struct AngleRelation {
    std::size_t i = 0, j = 0;
    int c_pi = 0, c_i = 0, c_j = 0;
};

/// Overall verdict on the Q-linear independence of {pi, theta_1, ...}.
/// Heuristic: single angles are tested against small-denominator rationals
/// and pairs against small integer relations; joint independence of three or
/// more angles is not examined.
enum class GshVerdict { plausible, rational_multiple, pairwise_relation, unresolved };

inline char const* to_string(GshVerdict v) {
    switch (v) {
    case GshVerdict::plausible: return "plausible";
    case GshVerdict::rational_multiple: return "rational-multiple";
    case GshVerdict::pairwise_relation: return "pairwise-relation";
    case GshVerdict::unresolved: return "unresolved";
    }
    return "?";
}

struct GshReport {
    GshVerdict verdict = GshVerdict::plausible;
    std::vector<AngleDiagnostic> angles;
    std::vector<AngleRelation> relations;
};

struct InverseZeroData {
    double sqrt_q = 0;
    std::vector<double> angles;  ///< theta_j in [0, pi], ascending
    std::size_t num_angles = 0;  ///< M'
    bool has_unit_zero = false;
    double rh_residual = 0;      ///< max | |z| - sqrt(q) | over inverse zeros
    bool repeated_roots = false;
    GshReport gsh;
};

inline constexpr double kRhTolerance = 1e-9;
inline constexpr double kClusterTolerance = 1e-6;
inline constexpr long kMaxRationalDenominator = 120;
inline constexpr double kRationalTolerance = 1e-10;
inline constexpr double kUnresolvedTolerance = 1e-7;
inline constexpr int kMaxRelationCoefficient = 20;

namespace detail {

/// Roots of a monic real polynomial z^d + a_{d-1} z^{d-1} + ... + a_0
/// (coefficients ascending, leading 1 omitted) via companion eigenvalues,
/// each refined by one Newton step.
inline std::vector<std::complex<double>> monic_roots(std::vector<double> const& a) {
    std::size_t const d = a.size();
    if (d == 0) return {};
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -a[i];
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    if (es.info() != Eigen::Success) throw IntegrityError("companion eigenvalue iteration failed");
    std::vector<std::complex<double>> roots;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        std::complex<double> z = es.eigenvalues()[i];
        std::complex<double> p = 1.0, dp = 0.0;
        for (std::size_t k = d; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + a[k];
        }
        if (std::abs(dp) > 1e-300) {
            std::complex<double> const step = p / dp;
            if (std::abs(step) < 1e-3 * std::max(1.0, std::abs(z))) z -= step;
        }
        roots.push_back(z);
    }
    return roots;
}

/// Best rational approximation a/b of x with b <= max_den, from the
/// continued fraction convergents and semiconvergents.
inline std::pair<long, long> best_rational(double x, long max_den) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    std::pair<long, long> best{static_cast<long>(std::lround(x)), 1};
    for (int it = 0; it < 64; ++it) {
        double const a = std::floor(r);
        auto const ai = static_cast<long>(a);
        long const p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) {
            long const t = (max_den - q0) / q1;
            long const ps = t * p1 + p0, qs = t * q1 + q0;
            auto err = [x](long pp, long qq) { return std::abs(x - static_cast<double>(pp) / static_cast<double>(qq)); };
            best = (qs > 0 && err(ps, qs) < err(p1, q1)) ? std::pair{ps, qs} : std::pair{p1, q1};
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        best = {p1, q1};
        double const frac = r - a;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    return best;
}

} // namespace detail

/// Heuristic test for rational multiples of pi and small pairwise relations.
inline GshReport gsh_diagnostic(std::vector<double> const& angles) {
    using std::numbers::pi;
    GshReport rep;
    bool any_rational = false, any_unresolved = false;
    for (double theta : angles) {
        double const x = theta / pi;
        auto [a, b] = detail::best_rational(x, kMaxRationalDenominator);
        double const err = std::abs(x - static_cast<double>(a) / static_cast<double>(b));
        AngleDiagnostic d;
        if (err <= kRationalTolerance * std::max(1.0, std::abs(x))) {
            d = {AngleVerdict::rational_multiple, a, b};
            any_rational = true;
        } else if (err <= kUnresolvedTolerance) {
            d = {AngleVerdict::unresolved, a, b};
            any_unresolved = true;
        }
        rep.angles.push_back(d);
    }
    for (std::size_t i = 0; i < angles.size(); ++i) {
        for (std::size_t j = i + 1; j < angles.size(); ++j) {
            if (rep.angles[i].verdict == AngleVerdict::rational_multiple ||
                rep.angles[j].verdict == AngleVerdict::rational_multiple)
                continue;
            for (int ci = 1; ci <= kMaxRelationCoefficient; ++ci) {
                for (int cj = -kMaxRelationCoefficient; cj <= kMaxRelationCoefficient; ++cj) {
                    if (cj == 0) continue;
                    double const v = (ci * angles[i] + cj * angles[j]) / pi;
                    double const c0 = std::round(v);
                    if (std::abs(c0) > kMaxRelationCoefficient) continue;
                    if (std::abs(v - c0) <= kRationalTolerance * std::max(1.0, std::abs(v)))
                        rep.relations.push_back({i, j, -static_cast<int>(c0), ci, cj});
                }
            }
        }
    }
    if (any_rational)
        rep.verdict = GshVerdict::rational_multiple;
    else if (!rep.relations.empty())
        rep.verdict = GshVerdict::pairwise_relation;
    else if (any_unresolved)
        rep.verdict = GshVerdict::unresolved;
    return rep;
}

/// Exact quotient L(u) / (1 - u); throws IntegrityError if 1 - u does not divide.
inline IntPoly remove_unit_zero(IntPoly const& L) {
    BigInt total = 0;
    for (auto const& c : L.coeffs()) total += c;
    if (total != 0) throw IntegrityError("even-degree modulus but L(1) != 0");
    // synthetic division by (1 - u): q_i = sum_{k <= i} c_k
    std::vector<BigInt> quot(L.size() - 1);
    BigInt run = 0;
    for (std::size_t i = 0; i + 1 < L.size(); ++i) {
        run += L[i];
        quot[i] = run;
    }
    return IntPoly(std::move(quot));
}

inline InverseZeroData inverse_zeros(LPolynomial const& L) {
    InverseZeroData z;
    double const q = L.field.q();
    z.sqrt_q = std::sqrt(q);
    z.has_unit_zero = L.has_unit_zero();
    z.num_angles = L.num_angles();
    IntPoly const core = z.has_unit_zero ? remove_unit_zero(L.coeffs) : L.coeffs;
    std::size_t const d = 2 * z.num_angles;
    if (core.degree() != static_cast<long>(d))
        throw IntegrityError("L-polynomial has degree " + std::to_string(L.coeffs.degree()) + ", expected " +
                             std::to_string(L.modulus_degree() - 1));
    if (d == 0) {
        z.gsh = gsh_diagnostic({});
        return z;
    }
    // inverse zeros are the roots of the reversed polynomial, which is monic
    // because the constant term of L is 1
    std::vector<double> a(d);
    for (std::size_t i = 0; i < d; ++i) a[i] = static_cast<double>(core[d - i]);
    auto roots = detail::monic_roots(a);
    // a multiple root splits into a cluster of width ~ eps^{1/mult}; its mean
    // is accurate, so clustered roots are replaced by the cluster mean
    for (std::size_t i = 0; i < roots.size(); ++i) {
        std::vector<std::size_t> cluster{i};
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (j != i && std::abs(roots[j] - roots[i]) < kClusterTolerance) cluster.push_back(j);
        if (cluster.size() == 1) continue;
        z.repeated_roots = true;
        std::complex<double> mean = 0;
        for (auto j : cluster) mean += roots[j];
        mean /= static_cast<double>(cluster.size());
        for (auto j : cluster) roots[j] = mean;
    }
    std::vector<double> args;
    for (auto const& r : roots) {
        z.rh_residual = std::max(z.rh_residual, std::abs(std::abs(r) - z.sqrt_q));
        args.push_back(std::abs(std::arg(r)));
    }
    if (z.rh_residual > kRhTolerance * std::max(1.0, z.sqrt_q))
        throw IntegrityError("inverse zero off the circle |z| = sqrt(q): residual " + std::to_string(z.rh_residual));
    // each angle occurs twice (z and its conjugate); pair neighbours
    std::sort(args.begin(), args.end());
    for (std::size_t i = 0; i < d; i += 2) {
        if (std::abs(args[i] - args[i + 1]) > kClusterTolerance)
            throw IntegrityError("inverse zeros do not come in conjugate pairs");
        z.angles.push_back(0.5 * (args[i] + args[i + 1]));
    }
    for (std::size_t i = 1; i < z.angles.size(); ++i)
        if (z.angles[i] - z.angles[i - 1] < kClusterTolerance) z.repeated_roots = true;
    for (double t : z.angles)
        if (t < kClusterTolerance || std::numbers::pi - t < kClusterTolerance) z.repeated_roots = true;
    z.gsh = gsh_diagnostic(z.angles);
    return z;
}

struct CentralValue {
    double horner = 0;        ///< L(q^{-1/2}) evaluated directly
    double product_form = 0;  ///< (1 - q^{-1/2})^{[M even]} prod (2 - 2 cos theta_j)
};

inline CentralValue central_l_value(LPolynomial const& L, InverseZeroData const& z) {
    double const u = 1.0 / std::sqrt(static_cast<double>(L.field.q()));
    CentralValue v;
    v.horner = L.coeffs.eval(u);
    v.product_form = z.has_unit_zero ? 1.0 - u : 1.0;
    for (double t : z.angles) v.product_form *= 2.0 - 2.0 * std::cos(t);
    return v;
}

inline CentralValue central_l_value(LPolynomial const& L) { return central_l_value(L, inverse_zeros(L)); }

/// Coefficients as text: "1 + 3u + 5u^2", "1 - u".
inline std::string format_l_polynomial(IntPoly const& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        BigInt c = p[i];
        if (c == 0) continue;
        bool const negative = c < 0;
        if (negative) c = -c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (i == 0 || c != 1) out += c.str();
        if (i >= 1) out += "u";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

} // namespace ffbias
