// kbody.hpp - exact k-body coefficients C_k, limiting forms, and on-site effective parameters

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "jcdress/params.hpp"

namespace jcdress::kbody {

// Raised when the escalating extended-precision evaluation hits the hard
// precision cap before reaching a trustworthy result.
struct PrecisionExhausted : std::domain_error {
    explicit PrecisionExhausted(const std::string& what) : std::domain_error(what) {}
};

struct CoeffValue {
    double value{0.0};
    long precision_bits{53}; // mantissa bits of the arithmetic that produced value
};

struct CoefficientTable {
    Branch branch{Branch::Minus};
    int k_max{0};
    std::vector<double> values;  // C_k for k = 0..k_max, hbar = 1
    long precision_bits{53};     // largest precision used by any entry
};

// C_k for one branch from the defining alternating binomial sum,
//   C_k^-/+ = -/+ (sign_eff/2) * sum_p binom(k,p) (-1)^(k+p) sqrt(delta^2 + 4 g^2 p_eff),
// with p_eff = p on the minus branch and p + 1 on the plus branch. Small k is
// evaluated in doubles; once the measured cancellation eats into the result
// the evaluation escalates to MPFR with increasing mantissa width (the sum
// loses about k bits, so k of a few hundred is routine).
CoeffValue coeff_exact_info(const SystemParams& params, int k, Branch branch);
double coeff_exact(const SystemParams& params, int k, Branch branch);

// Same quantity through an iterated forward-difference table. Deliberately a
// second code path for cross-checking; identical escalation policy.
CoeffValue coeff_forward_difference_info(const SystemParams& params, int k, Branch branch);
double coeff_forward_difference(const SystemParams& params, int k, Branch branch);

CoefficientTable coefficient_table(const SystemParams& params, int k_max, Branch branch);

// Resonant (delta -> 0) closed form for C_k^-:
//   +/-(-1)^k [sum_{p=1}^{k} binom(k,p) (-1)^(p+1) sqrt(p)] g,
// upper sign for approach from above.
CoeffValue coeff_resonant_info(double g, int k, ZeroDetuningSign approach);
double coeff_resonant(double g, int k, ZeroDetuningSign approach);

// Dispersive leading order C_k^- = -k! binom(1/2, k) (2 lambda)^(2k-1) g,
// valid for 0 < lambda < sqrt(1/(4k)).
double coeff_dispersive(double g, double lambda, int k);

// Large-k magnitude of the resonant C_k^-: g / sqrt(pi ln k), k >= 2.
double asymptotic_resonant_magnitude(double g, double k);

struct EffectiveOnSite {
    double omega_eff{0.0}; // Omega_0 = omega_c + C_1
    double u_eff{0.0};     // U_eff   = C_2
    double e0{0.0};        // E_0     = C_0 -/+ omega_c/2 (minus/plus branch sign)
    Branch branch{Branch::Minus};
};

EffectiveOnSite effective_onsite_n2(const SystemParams& params, Branch branch);

// sum_{k=0}^{k_max} binom(n_b, k) C_k with n_b = n (minus) or n - 1 (plus);
// equals the ladder energy measured from (n - 1/2) omega_c. Requires
// k_max >= n; terms beyond k = n_b carry vanishing binomial weight.
double ladder_energy_from_kbody(const SystemParams& params, int n, Branch branch, int k_max);

// The two coefficients added by the n <= 3 effective Hamiltonian: (C_3^-, C_2^+).
std::pair<double, double> effective_hamiltonian_n3_terms(const SystemParams& params);

} // namespace jcdress::kbody
