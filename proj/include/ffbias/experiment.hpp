#pragma once

/**
 * @file experiment.hpp
 * @brief Experiment records, their JSON form, the JSON-lines result cache,
 * CSV emission, table reproduction and modulus scans.
 *
 * JSON objects are nlohmann::json, whose default object type keeps keys
 * sorted, so dump() output is canonical.
 */

#include "ffbias/density.hpp"
#include "ffbias/enumerate.hpp"
#include "ffbias/poly_text.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ffbias {

using json = nlohmann::json;

inline constexpr char const* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// --- fields given by q ------------------------------------------------------

/// (p, k) with q = p^k, p an odd prime; throws DomainError otherwise.
inline std::pair<std::uint32_t, std::uint32_t> split_prime_power(std::uint64_t q) {
    if (q < 3 || q % 2 == 0) throw DomainError("q must be a power of an odd prime, got " + std::to_string(q));
    std::uint64_t p = 3;
    while (p * p <= q && q % p != 0) p += 2;
    if (q % p != 0) p = q;
    std::uint32_t k = 0;
    while (q % p == 0) {
        q /= p;
        ++k;
    }
    if (q != 1) throw DomainError("q must be a power of an odd prime");
    return {static_cast<std::uint32_t>(p), k};
}

/// F_q; for q = p^k with k > 1 the extension modulus is given as text in T
/// over F_p, or else the first monic irreducible of degree k in enumeration
/// order is used.
inline Field field_for_q(std::uint64_t q, std::optional<std::string> const& ext_modulus = std::nullopt) {
    auto const [p, k] = split_prime_power(q);
    if (k == 1) {
        if (ext_modulus) throw DomainError("an extension modulus only applies when q is not prime");
        return Field(FieldSpec{p, 1, {}});
    }
    Field const Fp(FieldSpec{p, 1, {}});
    Poly g;
    if (ext_modulus) {
        g = parse_poly(*ext_modulus, Fp);
        if (g.degree() != std::optional<std::size_t>(k) || !g.is_monic())
            throw DomainError("extension modulus must be monic of degree " + std::to_string(k));
    } else {
        for (auto const& f : enumerate_monic(Fp, k))
            if (is_irreducible(Fp, f)) {
                g = f;
                break;
            }
    }
    std::vector<std::uint32_t> c;
    for (auto x : g.coeffs()) c.push_back(x.v);
    return make_field(FieldSpec{p, k, c});
}

// --- JSON -------------------------------------------------------------------

inline json field_spec_json(FieldSpec const& s) {
    json j{{"p", s.p}, {"k", s.k}, {"q", s.q()}};
    if (s.k > 1) j["ext_modulus"] = s.ext_modulus;
    return j;
}

inline FieldSpec field_spec_from_json(json const& j) {
    FieldSpec s{j.at("p").get<std::uint32_t>(), j.at("k").get<std::uint32_t>(), {}};
    if (j.contains("ext_modulus")) s.ext_modulus = j.at("ext_modulus").get<std::vector<std::uint32_t>>();
    return s;
}

inline DensitySource parse_density_source(std::string const& s) {
    for (auto v : {DensitySource::empirical, DensitySource::model_closed_form, DensitySource::model_quadrature,
                   DensitySource::model_qmc, DensitySource::periodic_exact, DensitySource::theorem_mu})
        if (s == to_string(v)) return v;
    throw DomainError("unknown density source '" + s + "'");
}

inline json to_json(DensityReport const& r) {
    json j{{"modulus", r.modulus},
           {"q", r.q},
           {"kind", r.kind},
           {"cumulative", r.cumulative},
           {"delta_plus", r.delta_plus},
           {"delta_zero", r.delta_zero},
           {"delta_minus", r.delta_minus},
           {"source", to_string(r.source)},
           {"error_bound", r.error_bound},
           {"gsh_verdict", r.gsh_verdict},
           {"schema_version", kSchemaVersion}};
    if (r.exact)
        j["exact"] = {{"period", r.exact->period},
                      {"plus", r.exact->plus},
                      {"zero", r.exact->zero},
                      {"minus", r.exact->minus}};
    if (!r.warning.empty()) j["warning"] = r.warning;
    return j;
}

inline DensityReport density_report_from_json(json const& j) {
    DensityReport r;
    r.modulus = j.at("modulus").get<std::string>();
    r.q = j.at("q").get<std::uint32_t>();
    r.kind = j.at("kind").get<std::string>();
    r.cumulative = j.at("cumulative").get<bool>();
    r.delta_plus = j.at("delta_plus").get<double>();
    r.delta_zero = j.at("delta_zero").get<double>();
    r.delta_minus = j.at("delta_minus").get<double>();
    r.source = parse_density_source(j.at("source").get<std::string>());
    r.error_bound = j.at("error_bound").get<double>();
    r.gsh_verdict = j.at("gsh_verdict").get<std::string>();
    if (j.contains("exact")) {
        auto const& e = j.at("exact");
        r.exact = PeriodicFractions{e.at("period").get<std::uint64_t>(), e.at("plus").get<std::uint64_t>(),
                                    e.at("zero").get<std::uint64_t>(), e.at("minus").get<std::uint64_t>()};
    }
    if (j.contains("warning")) r.warning = j.at("warning").get<std::string>();
    return r;
}

inline std::vector<std::string> decimal_strings(IntPoly const& p) {
    std::vector<std::string> out;
    for (auto const& c : p.coeffs()) out.push_back(c.str());
    return out;
}

/// {coeffs (decimal strings, ascending), m, q, schema_version}
inline json to_json(LPolynomial const& L) {
    return {{"q", L.field.q()},
            {"m", format_poly(L.field, L.modulus)},
            {"coeffs", decimal_strings(L.coeffs)},
            {"schema_version", kSchemaVersion}};
}

inline std::string utc_timestamp() {
    std::time_t const t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct ExperimentRecord {
    FieldSpec field;
    std::string modulus;                  ///< canonical text
    std::vector<std::string> l_coeffs;    ///< decimal, ascending in u
    std::vector<double> angles;
    std::string gsh_verdict;
    std::vector<DensityReport> densities;
    std::string created_at;
    std::string tool_version = kToolVersion;
};

inline json to_json(ExperimentRecord const& r) {
    json d = json::array();
    for (auto const& x : r.densities) d.push_back(to_json(x));
    return {{"field", field_spec_json(r.field)}, {"modulus", r.modulus},     {"l_coeffs", r.l_coeffs},
            {"angles", r.angles},                {"gsh_verdict", r.gsh_verdict}, {"densities", d},
            {"created_at", r.created_at},        {"tool_version", r.tool_version}, {"schema_version", kSchemaVersion}};
}

inline ExperimentRecord experiment_record_from_json(json const& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw DomainError("unsupported record schema version");
    ExperimentRecord r;
    r.field = field_spec_from_json(j.at("field"));
    r.modulus = j.at("modulus").get<std::string>();
    r.l_coeffs = j.at("l_coeffs").get<std::vector<std::string>>();
    r.angles = j.at("angles").get<std::vector<double>>();
    r.gsh_verdict = j.at("gsh_verdict").get<std::string>();
    for (auto const& d : j.at("densities")) r.densities.push_back(density_report_from_json(d));
    r.created_at = j.at("created_at").get<std::string>();
    r.tool_version = j.at("tool_version").get<std::string>();
    return r;
}

/// L-polynomial, angles and the model densities (both kinds, both series).
inline ExperimentRecord run_experiment(Field const& F, Poly const& m, TorusOptions const& opt = {}) {
    ExperimentRecord r;
    r.field = F.spec();
    r.modulus = format_poly(F, m);
    LPolynomial const L = l_polynomial(F, m);
    InverseZeroData const z = inverse_zeros(L);
    r.l_coeffs = decimal_strings(L.coeffs);
    r.angles = z.angles;
    r.gsh_verdict = to_string(z.gsh.verdict);
    for (auto kind : {BiasKind::lambda, BiasKind::mu}) {
        auto d = model_densities(F, m, kind, opt);
        r.densities.push_back(std::move(d.noncumulative));
        r.densities.push_back(std::move(d.cumulative));
    }
    r.created_at = utc_timestamp();
    return r;
}

// --- cache ------------------------------------------------------------------

/// Append-only JSON-lines store of experiment records keyed by
/// (field, canonical modulus, tool version); the last matching line wins.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    [[nodiscard]] std::filesystem::path file() const { return dir_ / "records.jsonl"; }

    [[nodiscard]] std::optional<ExperimentRecord> load(FieldSpec const& field, std::string const& modulus) const {
        std::ifstream in(file());
        if (!in) return std::nullopt;
        json const want = field_spec_json(field);
        std::optional<ExperimentRecord> hit;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json const j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object()) continue;  // tolerate a torn final line
            if (j.value("modulus", "") != modulus || j.value("tool_version", "") != kToolVersion) continue;
            if (!j.contains("field") || j.at("field") != want) continue;
            hit = experiment_record_from_json(j);
        }
        return hit;
    }

    void store(ExperimentRecord const& r) const {
        std::filesystem::create_directories(dir_);
        std::ofstream out(file(), std::ios::app);
        out << to_json(r).dump() << '\n';
        if (!out) throw std::runtime_error("cannot append to " + file().string());
    }

private:
    std::filesystem::path dir_;
};

// --- CSV --------------------------------------------------------------------

inline char sign_char(BigInt const& x) { return x > 0 ? '+' : x < 0 ? '-' : '0'; }

/// n,b,B,sign_b,sign_B for 1 <= n <= N.
inline void write_series_csv(std::ostream& os, BiasSeries const& s) {
    os << "n,b,B,sign_b,sign_B\n";
    for (std::size_t n = 1; n <= s.horizon(); ++n)
        os << n << ',' << s.b[n].str() << ',' << s.B[n].str() << ',' << sign_char(s.b[n]) << ',' << sign_char(s.B[n])
           << '\n';
}

/// n, q^{-n/2} b(n), q^{-n/2} B(n): plot data for the normalized bias.
inline void write_normalized_csv(std::ostream& os, BiasSeries const& s, std::uint32_t q) {
    os << "n,b_normalized,B_normalized\n";
    char buf[64];
    for (std::size_t n = 1; n <= s.horizon(); ++n) {
        long double const scale = std::pow(static_cast<long double>(q), -0.5L * static_cast<long double>(n));
        std::snprintf(buf, sizeof buf, "%.12Lg,%.12Lg", to_long_double(s.b[n]) * scale,
                      to_long_double(s.B[n]) * scale);
        os << n << ',' << buf << '\n';
    }
}

/// n, empirical delta_+ (non-cumulative), delta_+ (cumulative) every `step`.
inline void write_density_curve_csv(std::ostream& os, BiasSeries const& s, std::size_t step) {
    os << "n,delta_plus_nc,delta_plus\n";
    char buf[64];
    for (std::size_t n = step; n <= s.horizon(); n += step) {
        auto const e = empirical_densities(s, n);
        std::snprintf(buf, sizeof buf, "%.6f,%.6f", e.noncumulative.delta_plus, e.cumulative.delta_plus);
        os << n << ',' << buf << '\n';
    }
}

// --- tables -----------------------------------------------------------------

struct TableRow {
    std::size_t n = 0;
    double lambda_nc = 0, lambda = 0, mu_nc = 0, mu = 0;  ///< empirical delta_+
};

struct DensityTable {
    std::string name;
    std::uint32_t q = 0;
    std::string modulus;
    std::vector<TableRow> rows;
};

/// Empirical delta_+ for lambda and mu, both series, at each horizon.
inline DensityTable density_table(std::string name, Field const& F, Poly const& m,
                                  std::vector<std::size_t> const& horizons) {
    DensityTable t{std::move(name), F.q(), format_poly(F, m), {}};
    std::size_t const N = *std::max_element(horizons.begin(), horizons.end());
    LPolynomial const L = l_polynomial(F, m);
    BiasSeries const sl = expand(gf_lambda(L), N, BiasKind::lambda, t.modulus);
    BiasSeries const sm = expand(gf_mu(L), N, BiasKind::mu, t.modulus);
    for (auto n : horizons) {
        auto const a = empirical_densities(sl, n), b = empirical_densities(sm, n);
        t.rows.push_back({n, a.noncumulative.delta_plus, a.cumulative.delta_plus, b.noncumulative.delta_plus,
                          b.cumulative.delta_plus});
    }
    return t;
}

inline std::vector<std::size_t> const kTableHorizons{10, 100, 1000, 10000};

/// The two reference density tables: q = 5, T^3 + T + 4 and
/// q = 3, (T^2 + 1)(T^3 + 2T + 1).
inline std::vector<DensityTable> reproduce_tables() {
    Field const F5(FieldSpec{5, 1, {}}), F3(FieldSpec{3, 1, {}});
    return {density_table("table1", F5, parse_poly("T^3+T+4", F5), kTableHorizons),
            density_table("table2", F3, parse_poly("(T^2+1)*(T^3+2*T+1)", F3), kTableHorizons)};
}

inline void write_tables_csv(std::ostream& os, std::vector<DensityTable> const& tables) {
    os << "table,q,modulus,n,lambda_nc,lambda,mu_nc,mu\n";
    char buf[128];
    for (auto const& t : tables)
        for (auto const& r : t.rows) {
            std::snprintf(buf, sizeof buf, "%.4f,%.4f,%.4f,%.4f", r.lambda_nc, r.lambda, r.mu_nc, r.mu);
            os << t.name << ',' << t.q << ",\"" << t.modulus << "\"," << r.n << ',' << buf << '\n';
        }
}

// --- scans ------------------------------------------------------------------

struct ScanRow {
    std::string modulus;
    double central_value = 0;
    std::string gsh_verdict;
    DensityReport lambda_nc, lambda;
};

/// Liouville densities of every squarefree monic modulus of the given degree,
/// sorted by the central value L(q^{-1/2}) (ties by modulus text).
inline std::vector<ScanRow> scan_moduli(Field const& F, std::size_t degree, TorusOptions const& opt = {}) {
    if (degree < 1) throw DomainError("scan degree must be >= 1");
    std::vector<ScanRow> rows;
    for (auto const& m : enumerate_monic(F, degree)) {
        if (!is_squarefree(F, m)) continue;
        LPolynomial const L = l_polynomial(F, m);
        auto d = model_densities(F, m, BiasKind::lambda, opt);
        rows.push_back({format_poly(F, m), central_l_value(L).horner, d.noncumulative.gsh_verdict,
                        std::move(d.noncumulative), std::move(d.cumulative)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](ScanRow const& a, ScanRow const& b) {
        return a.central_value != b.central_value ? a.central_value < b.central_value : a.modulus < b.modulus;
    });
    return rows;
}

inline void write_scan_csv(std::ostream& os, std::vector<ScanRow> const& rows) {
    os << "modulus,central_value,gsh_verdict,delta_plus_nc,delta_plus,source_nc,source\n";
    char buf[128];
    for (auto const& r : rows) {
        std::snprintf(buf, sizeof buf, "%.12g", r.central_value);
        os << '"' << r.modulus << "\"," << buf << ',' << r.gsh_verdict << ',';
        std::snprintf(buf, sizeof buf, "%.6f,%.6f", r.lambda_nc.delta_plus, r.lambda.delta_plus);
        os << buf << ',' << to_string(r.lambda_nc.source) << ',' << to_string(r.lambda.source) << '\n';
    }
}

/// Spearman rank correlation (average ranks for ties).
inline double spearman(std::vector<double> const& x, std::vector<double> const& y) {
    auto ranks = [](std::vector<double> const& v) {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * static_cast<double>(i + j) + 1;
            i = j + 1;
        }
        return r;
    };
    if (x.size() != y.size() || x.size() < 2) throw DomainError("spearman needs two samples of equal size >= 2");
    auto const rx = ranks(x), ry = ranks(y);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) mx += rx[i], my += ry[i];
    mx /= static_cast<double>(rx.size());
    my /= static_cast<double>(ry.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxx == 0 || syy == 0 ? 0.0 : sxy / std::sqrt(sxx * syy);
}

} // namespace ffbias
