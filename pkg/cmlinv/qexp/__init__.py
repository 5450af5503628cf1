from .cyclotomic import CyclotomicInteger
from .eigenforms import (family_F_derivative, gen_eigenform_F, gen_eigenform_psi,
                         gen_eigenform_theta, linear_relation_check, theta_derivative,
                         theta_vs_oracle)
from .expansion import (QExpansion, epsilon_K, factorizations, hecke_expansion,
                        hecke_recursion_check, prime_kind)
from .family import (FamilyWeight, derivative_oracle, family_at_weight, family_expansion,
                     family_prime_value, oracle_convergence, oracle_expansion)
from .theta import ideal_sum_oracle, oracle_check, theta_exact, theta_qexp

__all__ = [
    "CyclotomicInteger", "QExpansion", "FamilyWeight", "epsilon_K", "factorizations",
    "hecke_expansion", "hecke_recursion_check", "prime_kind", "theta_exact", "theta_qexp",
    "ideal_sum_oracle", "oracle_check", "family_prime_value", "family_expansion",
    "family_at_weight", "derivative_oracle", "oracle_expansion", "oracle_convergence",
    "theta_derivative", "family_F_derivative", "gen_eigenform_theta", "gen_eigenform_F",
    "gen_eigenform_psi", "linear_relation_check", "theta_vs_oracle",
]
