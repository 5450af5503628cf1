from .cochain import (CochainSpec, Target, Witness, eta_cyclotomic, eta_frak_p, eta_frak_pbar,
                      eta_phi, reciprocity_eval, required_digits)
from .invariants import (LInvariantSet, L_p, L_phi_lambda, L_psi_ell, anticyclotomic_L,
                         compute_invariants, ell_L_invariant, eta_phi_frobenius,
                         fundamental_unit_H, p_unit_witness, slope)

__all__ = [
    "CochainSpec", "Target", "Witness", "eta_cyclotomic", "eta_frak_p", "eta_frak_pbar", "eta_phi",
    "reciprocity_eval", "required_digits", "LInvariantSet", "L_p", "L_phi_lambda", "L_psi_ell",
    "anticyclotomic_L", "compute_invariants", "ell_L_invariant", "eta_phi_frobenius",
    "fundamental_unit_H", "p_unit_witness", "slope",
]
