from .arith import is_fundamental, kronecker, prime_discriminants, require_fundamental
from .element import QuadElement
from .forms import BinaryQF, ClassGroup, class_group, reduced_forms
from .ideals import (Inert, QuadIdeal, Ramified, Split, ell_adic_sqrt, prime_ideals_above,
                     split_type, valuation)
from .units import (fundamental_unit, generator_of_power, ideal_power_generator, s_unit_search,
                    search_generator_by_norm)

__all__ = [
    "QuadElement", "QuadIdeal", "BinaryQF", "ClassGroup", "Split", "Inert", "Ramified",
    "class_group", "reduced_forms", "split_type", "prime_ideals_above", "valuation",
    "ell_adic_sqrt", "fundamental_unit", "generator_of_power", "ideal_power_generator", "s_unit_search",
    "search_generator_by_norm", "is_fundamental", "kronecker", "prime_discriminants",
    "require_fundamental",
]
