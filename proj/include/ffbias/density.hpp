#pragma once

/**
 * @file density.hpp
 * @brief Limiting sign densities of the bias sequences.
 *
 * For n past a small threshold every bias sequence is an exact finite sum of
 * pole contributions of its rational generating function N(u)/D(u):
 *
 *     q^{-n/2} b(n) = alpha_{n mod 2} + sum_j beta_j sin(n theta_j + omega_j)
 *                     + q^{-n/2} P(n)
 *
 * where alpha comes from the poles +-q^{-1/2}, each conjugate pair of poles
 * q^{-1/2} e^{-+i theta_j} gives one sinusoid, and P is the polynomial
 * contributed by a pole at u = 1. When {pi, theta_1, ...} is Q-linearly
 * independent the vectors (n theta_j) equidistribute on the torus and the
 * density of {b(n) > 0} is a Haar measure on it.
 */

#include "ffbias/biasseries.hpp"
#include "ffbias/lfunc.hpp"
#include "ffbias/multfunc.hpp"
#include "ffbias/report.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffbias {

/// A model density was requested for a modulus whose angles are not
/// plausibly independent; periodic_density() is the appropriate path.
class GshViolationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SeriesKind { noncumulative, cumulative };

inline char const* to_string(SeriesKind k) {
    return k == SeriesKind::noncumulative ? "noncumulative" : "cumulative";
}

struct OscillatoryTerm {
    double theta = 0;  ///< in (0, pi)
    double beta = 0;   ///< amplitude, >= 0
    double omega = 0;  ///< phase
};

struct OscillatoryModel {
    BiasKind bias = BiasKind::lambda;
    SeriesKind kind = SeriesKind::noncumulative;
    std::uint32_t q = 0;
    std::size_t modulus_degree = 0;  ///< M
    double alpha_even = 0, alpha_odd = 0;
    /// u = 1 contribution when that pole is simple (0 otherwise).
    double constant_C = 0;
    /// Principal part at u = 1: sum_j unit_pole[j-1] / (1 - u)^j.
    std::vector<double> unit_pole;
    std::vector<OscillatoryTerm> terms;
    std::size_t valid_from = 0;  ///< 2M
    GshVerdict gsh = GshVerdict::plausible;
    bool degenerate = false;     ///< a dominant pole is not simple
    std::string warning;

    [[nodiscard]] double alpha(long n) const { return n % 2 == 0 ? alpha_even : alpha_odd; }

    /// alpha_n + sum_j beta_j sin(n theta_j + omega_j)
    [[nodiscard]] double dominant(long n) const {
        double v = alpha(n);
        for (auto const& t : terms) v += t.beta * std::sin(static_cast<double>(n) * t.theta + t.omega);
        return v;
    }

    /// P(n): the (unnormalized) contribution of the pole at u = 1.
    [[nodiscard]] double subdominant(long n) const {
        double v = 0, binom = 1;  // binom = C(n + j - 1, j - 1)
        for (std::size_t j = 1; j <= unit_pole.size(); ++j) {
            if (j > 1) binom *= static_cast<double>(n + static_cast<long>(j) - 1) / static_cast<double>(j - 1);
            v += unit_pole[j - 1] * binom;
        }
        return v;
    }

    /// Sign of P(n) as n -> infinity.
    [[nodiscard]] int subdominant_sign() const {
        if (unit_pole.empty()) return 0;
        double const lead = unit_pole.back();
        return lead > 0 ? 1 : lead < 0 ? -1 : 0;
    }

    /// Model value of q^{-n/2} b(n).
    [[nodiscard]] double predict_normalized(long n) const {
        return dominant(n) + subdominant(n) * std::pow(static_cast<double>(q), -0.5 * static_cast<double>(n));
    }
};

namespace detail {

/// Coefficients of p(1 - t) in t.
inline IntPoly shift_to_one(IntPoly const& p) {
    // Horner: p(1 - t) = (...(p_d (1 - t) + p_{d-1})(1 - t) + ...)
    IntPoly r;
    IntPoly const one_minus_t = one_minus_monomial(1, 1);
    for (std::size_t i = p.size(); i-- > 0;) r = r * one_minus_t + IntPoly(std::vector<BigInt>{p[i]});
    return r;
}

inline double to_double(BigInt const& x) { return static_cast<double>(to_long_double(x)); }

inline std::complex<double> eval_c(IntPoly const& p, std::complex<double> z) { return p.eval(z); }

/// Scale for judging |p(z)| ~ 0: sum |p_i| |z|^i.
inline double eval_scale(IntPoly const& p, double r) {
    double s = 0, rk = 1;
    for (std::size_t i = 0; i < p.size(); ++i, rk *= r) s += std::abs(to_double(p[i])) * rk;
    return s;
}

} // namespace detail

inline constexpr double kPoleTolerance = 1e-9;

/// Residue extraction from gf (= the generating function of b for
/// SeriesKind::noncumulative, of B for cumulative).
inline OscillatoryModel oscillatory_model(RationalGF const& gf, InverseZeroData const& zeros, BiasKind bias,
                                          SeriesKind kind) {
    OscillatoryModel m;
    m.bias = bias;
    m.kind = kind;
    m.q = static_cast<std::uint32_t>(std::lround(zeros.sqrt_q * zeros.sqrt_q));
    m.modulus_degree = 2 * zeros.num_angles + 1 + (zeros.has_unit_zero ? 1 : 0);
    m.valid_from = 2 * m.modulus_degree;
    m.gsh = zeros.gsh.verdict;

    IntPoly const& N = gf.numerator();
    IntPoly const& D = gf.denominator();
    IntPoly const Dp = D.derivative();
    double const r = 1.0 / zeros.sqrt_q;
    std::size_t poles_found = 0;
    auto note = [&m](std::string const& w) {
        m.degenerate = true;
        if (!m.warning.empty()) m.warning += "; ";
        m.warning += w;
    };
    // residue coefficient: the pole rho contributes A rho^{-n} to b(n)
    auto residue = [&](std::complex<double> rho, bool& is_pole) -> std::complex<double> {
        double const scale = detail::eval_scale(D, std::abs(rho));
        is_pole = std::abs(detail::eval_c(D, rho)) < kPoleTolerance * scale;
        if (!is_pole) return 0;
        ++poles_found;
        std::complex<double> const dD = detail::eval_c(Dp, rho);
        if (std::abs(dD) < kPoleTolerance * detail::eval_scale(Dp, std::abs(rho))) {
            note("non-simple pole at |u| = q^{-1/2}");
            return 0;
        }
        return -detail::eval_c(N, rho) / (rho * dD);
    };

    bool pole = false;
    std::complex<double> const a_plus = residue(r, pole);
    std::complex<double> const a_minus = residue(-r, pole);
    m.alpha_even = (a_plus + a_minus).real();
    m.alpha_odd = (a_plus - a_minus).real();

    for (double theta : zeros.angles) {
        if (theta < kClusterTolerance || std::numbers::pi - theta < kClusterTolerance) {
            note("inverse zero on the real axis");
            continue;
        }
        // rho^{-n} = q^{n/2} e^{i n theta}; the pair sums to 2|A| cos(n theta + arg A)
        std::complex<double> const rho = std::polar(r, -theta);
        std::complex<double> const A = residue(rho, pole);
        if (!pole) continue;  // cancelled against the numerator
        ++poles_found;        // the conjugate
        m.terms.push_back({theta, 2 * std::abs(A), std::arg(A) + std::numbers::pi / 2});
    }
    if (zeros.repeated_roots) note("repeated inverse zeros");

    // pole at u = 1: D = (1 - u)^k E with E(1) != 0
    IntPoly E = D;
    std::size_t k = 0;
    IntPoly const one_minus_u = one_minus_monomial(1, 1);
    while (E.degree() > 0 && E.eval(BigInt(1)) == 0) {
        E = exact_divide(E, one_minus_u);
        ++k;
    }
    if (k > 0) {
        // h(t) = N(1 - t) / E(1 - t); a_j = h_{k-j}
        IntPoly const Nt = detail::shift_to_one(N), Et = detail::shift_to_one(E);
        std::vector<double> h(k);
        double const e0 = detail::to_double(Et[0]);
        for (std::size_t i = 0; i < k; ++i) {
            double v = detail::to_double(Nt[i]);
            for (std::size_t j = 1; j <= i; ++j) v -= detail::to_double(Et[j]) * h[i - j];
            h[i] = v / e0;
        }
        m.unit_pole.resize(k);
        for (std::size_t j = 1; j <= k; ++j) m.unit_pole[j - 1] = h[k - j];
        if (k == 1) m.constant_C = m.unit_pole[0];
        poles_found += k;
    }
    if (!m.degenerate && poles_found != static_cast<std::size_t>(D.degree()))
        note("found " + std::to_string(poles_found) + " poles for a denominator of degree " +
             std::to_string(D.degree()));
    return m;
}

struct SymmetricConstants {
    double C_m = 0;
    double e_even = 1, e_odd = 0;
    std::vector<double> cosines;
};

/// C_m = prod_i (1 - q^{-M_i}) / (2^{M'} prod_j sin^2 theta_j) and the even and
/// odd parts of prod_j (1 + cos theta_j).
inline SymmetricConstants symmetric_constants(InverseZeroData const& zeros, Factorization const& mfac,
                                              std::uint32_t q) {
    SymmetricConstants s;
    double num = 1;
    for (auto const& f : mfac.factors)
        num *= 1.0 - std::pow(static_cast<double>(q), -static_cast<double>(*f.poly.degree()));
    double den = 1;
    for (double t : zeros.angles) {
        den *= 2 * std::sin(t) * std::sin(t);
        s.cosines.push_back(std::cos(t));
    }
    s.C_m = num / den;
    // e[k] = elementary symmetric polynomial of degree k
    std::vector<double> e{1.0};
    for (double c : s.cosines) {
        e.push_back(0.0);
        for (std::size_t k = e.size() - 1; k > 0; --k) e[k] += c * e[k - 1];
    }
    s.e_even = s.e_odd = 0;
    for (std::size_t k = 0; k < e.size(); ++k) (k % 2 ? s.e_odd : s.e_even) += e[k];
    return s;
}

/// Closed forms of (alpha_even, alpha_odd) of the Liouville model in terms of
/// the symmetric constants, by parity of M and series kind.
inline std::pair<double, double> lambda_alpha_closed_form(SymmetricConstants const& s, std::uint32_t q,
                                                          std::size_t M, SeriesKind kind) {
    double const qq = q, rq = std::sqrt(qq), C = s.C_m, ee = s.e_even, eo = s.e_odd;
    int const summations = (M % 2 == 0 ? 1 : 0) + (kind == SeriesKind::cumulative ? 1 : 0);
    switch (summations) {
    case 0: return {C * ee, C * eo};
    case 1: return {C * (qq * ee + rq * eo) / (qq - 1), C * (rq * ee + qq * eo) / (qq - 1)};
    default: {
        double const d = (qq - 1) * (qq - 1);
        return {C * ((qq * qq + qq) * ee + 2 * qq * rq * eo) / d, C * (2 * qq * rq * ee + (qq * qq + qq) * eo) / d};
    }
    }
}

/// {y on the torus : c_plus > sum_j beta_j sin y_j > -c_minus}
struct TorusRegion {
    double c_plus = 0, c_minus = 0;
    std::vector<double> beta;
};

struct TorusMeasure {
    double measure = 0;  ///< signed: negative when -c_minus > c_plus
    double error_bound = 0;
    DensitySource method = DensitySource::model_closed_form;
};

struct TorusOptions {
    std::size_t quadrature_nodes = 4096 * 4096;  ///< 1-D section, M' = 2
    std::size_t qmc_points = 10'000'000;         ///< total over all shifts
    std::size_t qmc_shifts = 8;
    std::uint64_t qmc_seed = 0x51d0'7a11'c0ffee01ULL;
};

/// arcsin extended by +-pi/2 outside [-1, 1]
inline double asin_clamped(double x) { return std::asin(std::clamp(x, -1.0, 1.0)); }

namespace detail {

/// P(beta sin y <= c) for y uniform on the circle
inline double sine_cdf(double beta, double c) {
    if (beta == 0) return c >= 0 ? 1.0 : 0.0;
    return 0.5 + asin_clamped(c / beta) / std::numbers::pi;
}

/// Periodic trapezoid for P(b0 sin x + b1 sin y <= c) with n nodes in x.
inline double two_torus_cdf(double b0, double b1, double c, std::size_t n) {
    double sum = 0;
    double const h = 2 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) sum += sine_cdf(b1, c - b0 * std::sin(h * static_cast<double>(i)));
    return sum / static_cast<double>(n);
}

inline std::vector<double> kronecker_generators(std::size_t dim) {
    std::vector<double> g;
    for (unsigned p = 2; g.size() < dim; ++p) {
        bool prime = true;
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime) g.push_back(std::sqrt(static_cast<double>(p)) - std::floor(std::sqrt(static_cast<double>(p))));
    }
    return g;
}

} // namespace detail

/// Randomly shifted Kronecker lattice estimate of the signed measure; the
/// error bound is three standard errors across shifts.
inline TorusMeasure torus_measure_qmc(TorusRegion const& region, TorusOptions const& opt = {}) {
    std::size_t const d = region.beta.size();
    double const lo = std::min(-region.c_minus, region.c_plus), hi = std::max(-region.c_minus, region.c_plus);
    double const sgn = region.c_plus >= -region.c_minus ? 1.0 : -1.0;
    auto const gen = detail::kronecker_generators(d);
    std::mt19937_64 rng(opt.qmc_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::size_t const per_shift = std::max<std::size_t>(1, opt.qmc_points / opt.qmc_shifts);
    std::vector<double> est;
    std::vector<double> x(d), step(gen);
    for (std::size_t s = 0; s < opt.qmc_shifts; ++s) {
        for (auto& xi : x) xi = unif(rng);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < per_shift; ++i) {
            double g = 0;
            for (std::size_t j = 0; j < d; ++j) {
                x[j] += step[j];
                if (x[j] >= 1) x[j] -= 1;
                g += region.beta[j] * std::sin(2 * std::numbers::pi * x[j]);
            }
            if (g > lo && g < hi) ++hits;
        }
        est.push_back(sgn * static_cast<double>(hits) / static_cast<double>(per_shift));
    }
    double mean = 0;
    for (double v : est) mean += v;
    mean /= static_cast<double>(est.size());
    double var = 0;
    for (double v : est) var += (v - mean) * (v - mean);
    var /= static_cast<double>(est.size() > 1 ? est.size() - 1 : 1);
    double const se = std::sqrt(var / static_cast<double>(est.size()));
    return {mean, 3 * se, DensitySource::model_qmc};
}

/// Signed Haar measure F(c_plus) - F(-c_minus), F the distribution function
/// of sum_j beta_j sin y_j.
inline TorusMeasure torus_measure(TorusRegion const& region, TorusOptions const& opt = {}) {
    std::size_t const d = region.beta.size();
    for (double b : region.beta)
        if (!(b >= 0)) throw DomainError("torus amplitudes must be non-negative");
    if (d == 0) {
        bool const inside = -region.c_minus < 0 && 0 < region.c_plus;
        bool const inverted = region.c_plus < 0 && 0 < -region.c_minus;
        return {inside ? 1.0 : inverted ? -1.0 : 0.0, 0.0, DensitySource::model_closed_form};
    }
    if (d == 1) {
        double const b = region.beta[0];
        double const v = detail::sine_cdf(b, region.c_plus) - detail::sine_cdf(b, -region.c_minus);
        return {v, 1e-14, DensitySource::model_closed_form};
    }
    if (d == 2) {
        std::size_t const n = std::max<std::size_t>(opt.quadrature_nodes, 16);
        auto F = [&](std::size_t nodes, double c) {
            return detail::two_torus_cdf(region.beta[0], region.beta[1], c, nodes);
        };
        double const full = F(n, region.c_plus) - F(n, -region.c_minus);
        double const half = F(n / 2, region.c_plus) - F(n / 2, -region.c_minus);
        return {full, std::max(std::abs(full - half), 1e-12), DensitySource::model_quadrature};
    }
    return torus_measure_qmc(region, opt);
}

/// Model densities for one series kind.
inline DensityReport density_lambda(OscillatoryModel const& model, SymmetricConstants const& constants,
                                    TorusOptions const& opt = {}) {
    if (model.degenerate)
        throw GshViolationError("degenerate oscillatory model (" + model.warning + "); use periodic_density");
    if (!model.terms.empty() && model.gsh != GshVerdict::plausible)
        throw GshViolationError(std::string("GSH verdict is ") + to_string(model.gsh) +
                                "; model densities need independent angles, use periodic_density");
    if (model.bias == BiasKind::lambda) {
        auto const [ce, co] = lambda_alpha_closed_form(constants, model.q, model.modulus_degree, model.kind);
        double const tol = 1e-9 * std::max({1.0, std::abs(ce), std::abs(co)});
        if (std::abs(ce - model.alpha_even) > tol || std::abs(co - model.alpha_odd) > tol)
            throw IntegrityError("residue alpha disagrees with the symmetric-function closed form");
    }
    DensityReport rep;
    rep.q = model.q;
    rep.kind = to_string(model.bias);
    rep.cumulative = model.kind == SeriesKind::cumulative;
    rep.gsh_verdict = to_string(model.gsh);
    if (model.terms.empty()) {
        // no oscillation: the sign is decided per parity, by alpha or, when
        // alpha vanishes, by the contribution of the pole at u = 1
        int pos = 0, zero = 0, neg = 0;
        for (double a : {model.alpha_even, model.alpha_odd}) {
            int s = std::abs(a) > kPoleTolerance ? (a > 0 ? 1 : -1) : model.subdominant_sign();
            (s > 0 ? pos : s < 0 ? neg : zero)++;
        }
        rep.delta_plus = pos / 2.0;
        rep.delta_zero = zero / 2.0;
        rep.delta_minus = neg / 2.0;
        rep.source = DensitySource::model_closed_form;
        rep.error_bound = 0;
        return rep;
    }
    TorusRegion region{model.alpha_even, model.alpha_odd, {}};
    for (auto const& t : model.terms) region.beta.push_back(t.beta);
    TorusMeasure const tm = torus_measure(region, opt);
    rep.delta_plus = 0.5 + 0.5 * tm.measure;
    rep.delta_minus = 0.5 - 0.5 * tm.measure;
    rep.delta_zero = 0;
    rep.source = tm.method;
    rep.error_bound = 0.5 * tm.error_bound;
    if (model.bias == BiasKind::lambda && model.gsh == GshVerdict::plausible && !(rep.delta_plus > 0.5))
        throw IntegrityError("Liouville model density does not exceed 1/2");
    return rep;
}

/// Moebius densities: 1/2 each way when the angles are independent, because
/// 1/L has no pole at +-q^{-1/2}. Without angles the sign is read per parity.
inline DensityReport density_mu(OscillatoryModel const& model) {
    if (model.bias != BiasKind::mu) throw DomainError("density_mu needs a Moebius model");
    if (std::abs(model.alpha_even) > 1e-9 || std::abs(model.alpha_odd) > 1e-9)
        throw IntegrityError("Moebius model has a nonzero constant term");
    if (model.terms.empty()) return density_lambda(model, SymmetricConstants{});
    if (model.degenerate)
        throw GshViolationError("degenerate oscillatory model (" + model.warning + "); use periodic_density");
    if (model.gsh != GshVerdict::plausible)
        throw GshViolationError(std::string("GSH verdict is ") + to_string(model.gsh) + "; use periodic_density");
    DensityReport rep;
    rep.q = model.q;
    rep.kind = to_string(model.bias);
    rep.cumulative = model.kind == SeriesKind::cumulative;
    rep.gsh_verdict = to_string(model.gsh);
    rep.delta_plus = rep.delta_minus = 0.5;
    rep.delta_zero = 0;
    rep.source = DensitySource::theorem_mu;
    return rep;
}

struct PeriodicDensities {
    DensityReport noncumulative;
    DensityReport cumulative;
};

namespace detail {

inline DensityReport periodic_one(std::vector<BigInt> const& v, std::size_t start, std::size_t window,
                                  bool cumulative) {
    std::size_t const last = v.size() - 1;
    std::vector<int> s;
    for (std::size_t n = start; n <= last; ++n) s.push_back(v[n].sign());
    DensityReport rep;
    rep.cumulative = cumulative;
    for (std::size_t P = 1; P <= window && 3 * P <= s.size(); ++P) {
        bool ok = true;
        for (std::size_t i = 0; i + P < s.size() && ok; ++i) ok = s[i] == s[i + P];
        if (!ok) continue;
        PeriodicFractions f;
        f.period = P;
        for (std::size_t i = 0; i < P; ++i) (s[i] > 0 ? f.plus : s[i] < 0 ? f.minus : f.zero)++;
        rep.exact = f;
        double const dp = static_cast<double>(P);
        rep.delta_plus = static_cast<double>(f.plus) / dp;
        rep.delta_zero = static_cast<double>(f.zero) / dp;
        rep.delta_minus = static_cast<double>(f.minus) / dp;
        rep.source = DensitySource::periodic_exact;
        return rep;
    }
    std::uint64_t pos = 0, zero = 0, neg = 0;
    for (int x : s) (x > 0 ? pos : x < 0 ? neg : zero)++;
    double const dn = static_cast<double>(s.size());
    rep.delta_plus = static_cast<double>(pos) / dn;
    rep.delta_zero = static_cast<double>(zero) / dn;
    rep.delta_minus = static_cast<double>(neg) / dn;
    rep.source = DensitySource::empirical;
    rep.warning = "no period <= " + std::to_string(window) + " repeating over the available terms";
    return rep;
}

} // namespace detail

/// Exact densities of an eventually periodic sign pattern, read from n >= start
/// (normally 2M). The minimal period P <= window must repeat over every
/// available term, and the available terms must cover at least 3 periods.
inline PeriodicDensities periodic_density(BiasSeries const& series, std::size_t window, std::size_t start) {
    if (start < 1) start = 1;
    if (series.horizon() < start || series.horizon() - start + 1 < 3)
        throw DomainError("series too short for period detection");
    PeriodicDensities out{detail::periodic_one(series.b, start, window, false),
                          detail::periodic_one(series.B, start, window, true)};
    for (auto* r : {&out.noncumulative, &out.cumulative}) {
        r->modulus = series.modulus;
        r->kind = to_string(series.kind);
    }
    return out;
}

struct KwCheck {
    double empirical = 0;
    double analytic = 0;
};

/// Fraction of 1 <= n <= N with sin(n theta + omega) > c, against the Haar
/// measure 1/2 - arcsin(c)/pi of {sin y > c}.
inline KwCheck kw_density_check(double theta, double omega, double c, std::size_t N) {
    if (N == 0) throw DomainError("kw_density_check needs N >= 1");
    std::size_t hits = 0;
    for (std::size_t n = 1; n <= N; ++n)
        if (std::sin(static_cast<double>(n) * theta + omega) > c) ++hits;
    return {static_cast<double>(hits) / static_cast<double>(N), 0.5 - asin_clamped(c) / std::numbers::pi};
}

// --- end-to-end ------------------------------------------------------------

struct ModelDensities {
    DensityReport noncumulative;
    DensityReport cumulative;
    OscillatoryModel model_nc, model_cum;
};

inline constexpr std::size_t kPeriodWindow = 240;
inline constexpr std::size_t kPeriodHorizonFactor = 8;  ///< series length = max(2M, 1) + factor * window

/// Densities of one bias kind for modulus m: the oscillatory model when the
/// angles are plausibly independent, exact period detection otherwise.
inline ModelDensities model_densities(Field const& F, Poly const& m, BiasKind bias, TorusOptions const& opt = {}) {
    LPolynomial const L = l_polynomial(F, m);
    InverseZeroData const z = inverse_zeros(L);
    Factorization const mfac = factor(F, m);
    RationalGF const gf = bias == BiasKind::mu ? gf_mu(L) : gf_lambda(L, mfac);
    ModelDensities out;
    out.model_nc = oscillatory_model(gf, z, bias, SeriesKind::noncumulative);
    out.model_cum = oscillatory_model(cumulative_gf(gf), z, bias, SeriesKind::cumulative);
    std::string const text = format_poly(F, m);
    bool const use_model =
        !out.model_nc.degenerate && !out.model_cum.degenerate && (z.angles.empty() || z.gsh.verdict == GshVerdict::plausible);
    if (use_model) {
        SymmetricConstants const sc = symmetric_constants(z, mfac, F.q());
        if (bias == BiasKind::mu) {
            out.noncumulative = density_mu(out.model_nc);
            out.cumulative = density_mu(out.model_cum);
        } else {
            out.noncumulative = density_lambda(out.model_nc, sc, opt);
            out.cumulative = density_lambda(out.model_cum, sc, opt);
        }
    } else {
        std::size_t const start = out.model_nc.valid_from;
        BiasSeries const s = expand(gf, start + kPeriodHorizonFactor * kPeriodWindow, bias, text);
        auto p = periodic_density(s, kPeriodWindow, start);
        out.noncumulative = std::move(p.noncumulative);
        out.cumulative = std::move(p.cumulative);
    }
    for (auto* r : {&out.noncumulative, &out.cumulative}) {
        r->modulus = text;
        r->q = F.q();
        r->kind = to_string(bias);
        r->gsh_verdict = to_string(z.gsh.verdict);
    }
    return out;
}

} // namespace ffbias
