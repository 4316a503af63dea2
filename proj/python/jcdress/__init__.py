"""Dressed-basis k-body representation of the Jaynes-Cummings ladder.

Thin python layer over the C++ core; see the project README for the model
conventions and the CLI equivalents of these functions.
"""

from ._jcdress import (
    Branch,
    DressedLabel,
    OperatorLabel,
    SystemParams,
    TwoSiteParams,
    ZeroDetuningSign,
    asymptotic_resonant_magnitude,
    coeff_dispersive,
    coeff_exact,
    coeff_forward_difference,
    coeff_resonant,
    coefficient_table,
    dispersive_hamiltonian,
    dressed_apply,
    dressed_hamiltonian,
    effective_onsite,
    eigenvalue,
    eigenvector_coeffs,
    ground_state,
    hbar_blocks,
    j_eff,
    ladder_energy_from_kbody,
    mixing_angle,
    outcoupling,
    params_from_lambda,
    spectrum,
    sweep_config_csv,
    sweep_preset_csv,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "DressedLabel",
    "OperatorLabel",
    "SystemParams",
    "TwoSiteParams",
    "ZeroDetuningSign",
    "asymptotic_resonant_magnitude",
    "coeff_dispersive",
    "coeff_exact",
    "coeff_forward_difference",
    "coeff_resonant",
    "coefficient_table",
    "dispersive_hamiltonian",
    "dressed_apply",
    "dressed_hamiltonian",
    "effective_onsite",
    "eigenvalue",
    "eigenvector_coeffs",
    "ground_state",
    "hbar_blocks",
    "j_eff",
    "ladder_energy_from_kbody",
    "mixing_angle",
    "outcoupling",
    "params_from_lambda",
    "spectrum",
    "sweep_config_csv",
    "sweep_preset_csv",
    "verify",
]
