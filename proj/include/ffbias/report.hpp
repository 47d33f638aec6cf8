#pragma once

// Sign densities delta_+, delta_0, delta_- and where they came from.

#include <cstdint>
#include <optional>
#include <string>

namespace ffbias {

enum class DensitySource {
    empirical,
    model_closed_form,
    model_quadrature,
    model_qmc,
    periodic_exact,
    theorem_mu,
};

inline char const* to_string(DensitySource s) {
    switch (s) {
    case DensitySource::empirical: return "empirical";
    case DensitySource::model_closed_form: return "model-closed-form";
    case DensitySource::model_quadrature: return "model-quadrature";
    case DensitySource::model_qmc: return "model-qmc";
    case DensitySource::periodic_exact: return "periodic-exact";
    case DensitySource::theorem_mu: return "theorem-mu";
    }
    return "?";
}

/// Exact densities as counts over one period of the sign pattern.
struct PeriodicFractions {
    std::uint64_t period = 0;
    std::uint64_t plus = 0, zero = 0, minus = 0;
};

struct DensityReport {
    std::string modulus;
    std::uint32_t q = 0;
    std::string kind;        ///< "mu" or "lambda"
    bool cumulative = false;
    double delta_plus = 0, delta_zero = 0, delta_minus = 0;
    DensitySource source = DensitySource::empirical;
    double error_bound = 0;
    std::string gsh_verdict;
    std::optional<PeriodicFractions> exact;
    std::string warning;
};

} // namespace ffbias
