from .dual import DualScalar
from .field import UnramifiedField, residue_generator, unramified_field, vp_int
from .functions import (from_rational, hensel_sqrt, iwasawa_log, log_one_plus_p, padic_exp,
                        principal_part, root_in_principal_units, teichmuller)
from .roots import RootOfUnity
from .scalar import PadicScalar

__all__ = [
    "DualScalar", "PadicScalar", "RootOfUnity", "UnramifiedField", "unramified_field",
    "residue_generator", "vp_int", "from_rational", "hensel_sqrt", "iwasawa_log",
    "log_one_plus_p", "padic_exp", "principal_part", "root_in_principal_units", "teichmuller",
]
