from .biquad import GALOIS, P_PLACES, BiquadElement, EigenUnit, Place, compose, eigen_project
from .classpoly import ClassPolyData, PeriodData, class_polynomial
from .frobenius import class_poly_data, local_square_class, psi_tau_gamma, psi_tau_gamma_any
from .places import (LambdaPlace, SplitLambda, lambda_valuation, prime_above_in, split_lambda,
                     splitting_subfield)
from .setting import (CMSetting, admissible_settings, character_table, characters_of_order,
                      embed_p, genus_character, genus_splits, place_valuation)

__all__ = [
    "GALOIS", "P_PLACES", "BiquadElement", "EigenUnit", "Place", "compose", "eigen_project",
    "ClassPolyData", "PeriodData", "class_polynomial", "class_poly_data", "local_square_class",
    "psi_tau_gamma", "psi_tau_gamma_any", "LambdaPlace", "SplitLambda", "lambda_valuation",
    "prime_above_in", "split_lambda", "splitting_subfield", "CMSetting",
    "admissible_settings", "character_table", "characters_of_order", "embed_p",
    "genus_character", "genus_splits", "place_valuation",
]
