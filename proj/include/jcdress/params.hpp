// params.hpp - single-site system parameters and branch/approach conventions

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace jcdress {

// Direction from which delta approaches zero. Consulted only when delta is
// exactly zero; it decides which ladder carries the minus label there.
enum class ZeroDetuningSign { FromAbove, FromBelow };

enum class Branch { Minus, Plus };

struct SystemParams {
    double omega_c{1.0};                 // cavity frequency (hbar = 1 units)
    double delta{0.0};                   // detuning: omega_a - omega_c
    double g{1.0};                       // light-matter coupling, g >= 0
    std::optional<double> gamma_scale{}; // optional display normalization, > 0
    ZeroDetuningSign zero_detuning_sign{ZeroDetuningSign::FromAbove};

    double omega_a() const { return omega_c + delta; }

    // Sign carried by the square-root term of the spectrum. For delta == 0 the
    // approach convention decides; the value is never zero.
    double sign_eff() const {
        if (delta > 0.0) return 1.0;
        if (delta < 0.0) return -1.0;
        return zero_detuning_sign == ZeroDetuningSign::FromAbove ? 1.0 : -1.0;
    }

    // lambda = g / delta is undefined on resonance; callers that need it must
    // handle the throw (internal formulas use delta-regular forms instead).
    double lambda() const {
        if (delta == 0.0)
            throw std::domain_error("SystemParams::lambda: delta is zero, lambda = g/delta is undefined");
        return g / delta;
    }

    void validate() const {
        if (!(g >= 0.0))
            throw std::domain_error("SystemParams: g must be >= 0");
        if (!std::isfinite(omega_c) || !std::isfinite(delta) || !std::isfinite(g))
            throw std::domain_error("SystemParams: parameters must be finite");
        if (gamma_scale && !(*gamma_scale > 0.0))
            throw std::domain_error("SystemParams: gamma_scale must be > 0");
    }
};

// Builds params from (g, lambda) instead of (g, delta). Requires lambda != 0;
// the delta -> 0 limit is reached through the approach enum, not lambda -> inf.
inline SystemParams params_from_lambda(double omega_c, double g, double lambda,
                                       ZeroDetuningSign approach = ZeroDetuningSign::FromAbove) {
    if (lambda == 0.0)
        throw std::domain_error("params_from_lambda: lambda must be nonzero (use delta = 0 with an approach sign)");
    if (!(g > 0.0))
        throw std::domain_error("params_from_lambda: g must be > 0 to convert lambda to delta");
    SystemParams p;
    p.omega_c = omega_c;
    p.g = g;
    p.delta = g / lambda;
    p.zero_detuning_sign = approach;
    p.validate();
    return p;
}

} // namespace jcdress
