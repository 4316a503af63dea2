// dressed.hpp - closed-form JC spectrum, mixing angle, and dressed-operator algebra

#pragma once

#include <optional>

#include "jcdress/params.hpp"

namespace jcdress {

// Dressed ladder label |n, b> in manifold notation: n counts total excitations.
// |0, Plus> is not a physical state and is rejected everywhere.
struct DressedLabel {
    int n{0};
    Branch branch{Branch::Minus};
};

void validate_label(const DressedLabel& label);

// The nine dressed operators whose actions stay closed on the labels.
enum class OperatorLabel {
    A,              // dressed annihilation
    ADag,           // dressed creation
    ADagA,          // dressed number
    SigmaMinus,     // dressed TLS lowering
    SigmaPlus,      // dressed TLS raising
    SigmaZ,         // dressed TLS inversion
    SigmaPlusMinus, // projector onto the upper dressed TLS state
    SigmaMinusPlus, // projector onto the lower dressed TLS state
    NTotal          // total excitation number
};

struct CosSin {
    double c{1.0};
    double s{0.0};
};

// Mixing angle theta(n) in [-pi/4, pi/4]. Evaluated as
// sign_eff * atan2(2 g sqrt(n), |delta|) / 2 so that the sign follows delta
// (or the approach convention on resonance) and delta = 0 is regular.
double mixing_angle(const SystemParams& params, int n);

// E_{n,-} and E_{n,+} = (n - 1/2) omega_c -/+ sign_eff * sqrt(delta^2 + 4 g^2 n) / 2.
// With this labeling the minus ladder always contains the global ground state
// and the g = 0 limit gives E_{n,-} = (n - 1/2) omega_c - delta/2 for either
// sign of delta.
double eigenvalue(const SystemParams& params, const DressedLabel& label);

// (c, s) with |n,-> = c|n,g> - s|n-1,e> and |n,+> = s|n,g> + c|n-1,e>.
CosSin eigenvector_coeffs(const SystemParams& params, int n);

struct ApplyResult {
    double coefficient{0.0};
    std::optional<DressedLabel> state{}; // empty means annihilated to zero
};

// Action of a dressed operator on a single ladder state. A zero coefficient is
// always paired with an empty state, including number-operator eigenvalue 0.
ApplyResult dressed_apply(OperatorLabel op, const DressedLabel& label);

} // namespace jcdress
