// ffbias: command-line front end for Shanks-bias experiments in F_q[T].
//
// Exit codes: 0 success, 2 usage or parse error, 3 internal integrity
// failure, 4 resource guard refused the request.

#include "CLI11.hpp"
#include "ffbias/ffbias.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

using namespace ffbias;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kIntegrity = 3, kResource = 4 };

struct ModulusArgs {
    std::uint64_t q = 0;
    std::string m;
    std::string field_modulus;
};

void add_modulus_options(CLI::App* cmd, ModulusArgs& a) {
    cmd->add_option("--q", a.q, "field size, a power of an odd prime")->required();
    cmd->add_option("--m", a.m, "monic squarefree modulus, e.g. \"T^3+T+4\"")->required();
    cmd->add_option("--field-modulus", a.field_modulus,
                    "monic irreducible over F_p defining F_q when q = p^k, k > 1 (in T)");
}

std::pair<Field, Poly> resolve(ModulusArgs const& a) {
    Field F = field_for_q(a.q, a.field_modulus.empty() ? std::nullopt : std::optional(a.field_modulus));
    Poly m = parse_poly(a.m, F);
    // validates monic, squarefree and nonconstant
    QuadraticCharacter{F, m};
    return {std::move(F), std::move(m)};
}

// b and B of length N hold ~ N^2 log2(q) / 8 bytes of digits in total
constexpr double kMaxSeriesBytes = 1024.0 * 1024 * 1024;
constexpr double kMaxTermBits = 1 << 27;

void guard_series(std::size_t N, std::uint32_t q) {
    double const bytes = static_cast<double>(N) * static_cast<double>(N) * std::log2(q) / 8;
    if (bytes > kMaxSeriesBytes)
        throw ResourceGuardError(fmt::format("expanding {} terms at q = {} needs ~{:.1f} GiB; the limit is 1 GiB", N,
                                             q, bytes / kMaxSeriesBytes));
}

void guard_term(std::size_t n, std::uint32_t q) {
    double const bits = static_cast<double>(n) * std::log2(q) / 2;
    if (bits > kMaxTermBits)
        throw ResourceGuardError(fmt::format("b({}) at q = {} has ~{:.0f} bits; the limit is 2^27", n, q, bits));
}

int cmd_lfunc(ModulusArgs const& a, bool as_json) {
    auto const [F, m] = resolve(a);
    LPolynomial const L = l_polynomial(F, m);
    InverseZeroData const z = inverse_zeros(L);
    CentralValue const cv = central_l_value(L, z);
    if (as_json) {
        json j = to_json(L);
        j["angles"] = z.angles;
        j["rh_residual"] = z.rh_residual;
        j["gsh_verdict"] = to_string(z.gsh.verdict);
        j["central_value"] = cv.horner;
        std::cout << j.dump() << '\n';
        return kOk;
    }
    fmt::print("{}\n", format_l_polynomial(L.coeffs));
    fmt::print("modulus: {} over F_{}\n", format_poly(F, m), F.q());
    fmt::print("unit zero: {}\n", z.has_unit_zero ? "yes" : "no");
    for (std::size_t i = 0; i < z.angles.size(); ++i) {
        auto const& d = z.gsh.angles[i];
        std::string note = to_string(d.verdict);
        if (d.verdict == AngleVerdict::rational_multiple) note += fmt::format(" ({}/{} pi)", d.numerator, d.denominator);
        fmt::print("theta_{} = {:.12f}  cos = {:.12f}  {}\n", i + 1, z.angles[i], std::cos(z.angles[i]), note);
    }
    for (auto const& r : z.gsh.relations)
        fmt::print("relation: {} pi + {} theta_{} + {} theta_{} = 0\n", r.c_pi, r.c_i, r.i + 1, r.c_j, r.j + 1);
    fmt::print("rh residual: {:.3e}\n", z.rh_residual);
    fmt::print("gsh verdict: {}\n", to_string(z.gsh.verdict));
    fmt::print("central value L(q^-1/2): {:.12f}\n", cv.horner);
    return kOk;
}

struct BiasArgs {
    std::string kind = "lambda";
    std::size_t N = 20;
    std::optional<std::size_t> fast;
    bool brute = false;
    bool normalized = false;
    std::size_t curve = 0;
};

int cmd_bias(ModulusArgs const& a, BiasArgs const& o) {
    auto const [F, m] = resolve(a);
    BiasKind const kind = parse_bias_kind(o.kind);
    LPolynomial const L = l_polynomial(F, m);
    RationalGF const gf = gf_for(kind, L);
    if (o.fast) {
        guard_term(*o.fast, F.q());
        Recurrence const rec = recurrence_from(gf);
        fmt::print("n,b\n{},{}\n", *o.fast, nth_term_fast(rec, *o.fast).str());
        return kOk;
    }
    if (o.N < 1) throw DomainError("--N must be >= 1");
    guard_series(o.N, F.q());
    BiasSeries const s = o.brute ? brute_force(F, m, kind, o.N).series : expand(gf, o.N, kind, format_poly(F, m));
    if (o.curve > 0)
        write_density_curve_csv(std::cout, s, o.curve);
    else if (o.normalized)
        write_normalized_csv(std::cout, s, F.q());
    else
        write_series_csv(std::cout, s);
    return kOk;
}

struct DensityArgs {
    std::string kind = "lambda";
    std::optional<std::size_t> empirical;
    bool model = false;
    bool no_cache = false;
    std::string cache_dir;
};

int cmd_density(ModulusArgs const& a, DensityArgs const& o) {
    auto const [F, m] = resolve(a);
    BiasKind const kind = parse_bias_kind(o.kind);
    json out = json::array();
    if (o.empirical) {
        guard_series(*o.empirical, F.q());
        LPolynomial const L = l_polynomial(F, m);
        InverseZeroData const z = inverse_zeros(L);
        BiasSeries const s = expand(gf_for(kind, L), *o.empirical, kind, format_poly(F, m));
        auto e = empirical_densities(s, *o.empirical);
        for (auto* r : {&e.noncumulative, &e.cumulative}) {
            r->q = F.q();
            r->gsh_verdict = to_string(z.gsh.verdict);
            out.push_back(to_json(*r));
        }
    } else {
        std::optional<ResultCache> cache;
        if (!o.no_cache && !o.cache_dir.empty()) cache.emplace(o.cache_dir);
        std::string const text = format_poly(F, m);
        std::optional<ExperimentRecord> rec;
        if (cache) rec = cache->load(F.spec(), text);
        if (!rec) {
            rec = run_experiment(F, m);
            if (cache) cache->store(*rec);
        }
        for (auto const& r : rec->densities)
            if (r.kind == to_string(kind)) out.push_back(to_json(r));
    }
    std::cout << out.dump() << '\n';
    return kOk;
}

int cmd_reproduce_tables() {
    write_tables_csv(std::cout, reproduce_tables());
    return kOk;
}

struct ScanArgs {
    std::uint64_t q = 0;
    std::size_t degree = 0;
    std::string field_modulus;
    bool relate = false;
    std::size_t nodes = 1 << 16;
};

int cmd_scan(ScanArgs const& o) {
    Field const F = field_for_q(o.q, o.field_modulus.empty() ? std::nullopt : std::optional(o.field_modulus));
    TorusOptions opt;
    opt.quadrature_nodes = o.nodes;
    opt.qmc_points = 1'000'000;
    auto const rows = scan_moduli(F, o.degree, opt);
    write_scan_csv(std::cout, rows);
    if (o.relate) {
        std::vector<double> cv, bias;
        for (auto const& r : rows)
            if (r.gsh_verdict == "plausible") {
                cv.push_back(r.central_value);
                bias.push_back(r.lambda_nc.delta_plus - 0.5);
            }
        if (cv.size() >= 2)
            fmt::print(stderr, "spearman(central_value, delta_plus_nc - 1/2) over {} GSH-plausible moduli: {:.4f}\n",
                       cv.size(), spearman(cv, bias));
        else
            fmt::print(stderr, "fewer than two GSH-plausible moduli; no correlation reported\n");
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shanks bias of the Liouville and Moebius functions in F_q[T]"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    ModulusArgs lf_args;
    bool lf_json = false;
    auto* lf = app.add_subcommand("lfunc", "L-polynomial, inverse-zero angles and GSH diagnostic");
    add_modulus_options(lf, lf_args);
    lf->add_flag("--json", lf_json, "print JSON instead of text");

    ModulusArgs bias_mod;
    BiasArgs bias_args;
    auto* bias = app.add_subcommand("bias", "exact bias series b(n), B(n) as CSV");
    add_modulus_options(bias, bias_mod);
    bias->add_option("--kind", bias_args.kind, "mu or lambda")->check(CLI::IsMember({"mu", "lambda"}));
    bias->add_option("--N", bias_args.N, "last degree");
    bias->add_option("--fast", bias_args.fast, "print only b(n) via the recurrence");
    bias->add_flag("--brute", bias_args.brute, "count by enumerating F_q[T] instead of expanding");
    bias->add_flag("--normalized", bias_args.normalized, "emit q^{-n/2} b(n), q^{-n/2} B(n)");
    bias->add_option("--curve", bias_args.curve, "emit empirical densities every STEP degrees");

    ModulusArgs dens_mod;
    DensityArgs dens_args;
    auto* dens = app.add_subcommand("density", "sign densities as JSON (non-cumulative, cumulative)");
    add_modulus_options(dens, dens_mod);
    dens->add_option("--kind", dens_args.kind, "mu or lambda")->check(CLI::IsMember({"mu", "lambda"}));
    auto* emp = dens->add_option("--empirical", dens_args.empirical, "empirical densities up to degree n");
    auto* mod = dens->add_flag("--model", dens_args.model, "limiting densities (default)");
    emp->excludes(mod);
    dens->add_flag("--no-cache", dens_args.no_cache, "ignore the result cache");
    dens->add_option("--cache-dir", dens_args.cache_dir, "result cache directory")->envname("FFBIAS_CACHE_DIR");

    auto* tables = app.add_subcommand("reproduce-tables", "the two reference density tables as CSV");

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "Liouville densities over all squarefree monic moduli of a degree");
    scan->add_option("--q", scan_args.q, "field size")->required();
    scan->add_option("--degree", scan_args.degree, "modulus degree")->required();
    scan->add_option("--field-modulus", scan_args.field_modulus, "extension modulus when q is not prime");
    scan->add_flag("--relate-central-value", scan_args.relate, "report rank correlation with L(q^-1/2)");
    scan->add_option("--quadrature-nodes", scan_args.nodes, "nodes for two-angle quadrature");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForVersion const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*lf) return cmd_lfunc(lf_args, lf_json);
        if (*bias) return cmd_bias(bias_mod, bias_args);
        if (*dens) return cmd_density(dens_mod, dens_args);
        if (*tables) return cmd_reproduce_tables();
        if (*scan) return cmd_scan(scan_args);
    } catch (ParseError const& e) {
        fmt::print(stderr, "parse error: {}\n", e.what());
        return kUsage;
    } catch (DomainError const& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kUsage;
    } catch (ResourceGuardError const& e) {
        fmt::print(stderr, "refused: {}\n", e.what());
        return kResource;
    } catch (IntegrityError const& e) {
        fmt::print(stderr, "integrity failure: {}\n", e.what());
        return kIntegrity;
    } catch (GshViolationError const& e) {
        fmt::print(stderr, "integrity failure: {}\n", e.what());
        return kIntegrity;
    } catch (std::exception const& e) {
        fmt::print(stderr, "internal error: {}\n", e.what());
        return kIntegrity;
    }
    return kUsage;
}
