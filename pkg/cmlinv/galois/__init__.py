from .crossratio import (FAMILIES, FAMILY_F, FAMILY_F_EPS, TAU_FIXED, THETA_PSI, THETA_PSIBAR,
                         harmonic_set, ordinary_line, six_set, cross_ratio_report)
from .elements import GroupElementData
from .matrix import DualMatrix, Line, cross_ratio
from .rho import (det_F_at, ramified_eigenvalue, ramified_fixed_line, rho_F_at, rho_F_diagonal,
                  tangent_point, trace_F_at, unramified_quotient)

__all__ = [
    "GroupElementData", "DualMatrix", "Line", "cross_ratio", "rho_F_at", "rho_F_diagonal",
    "trace_F_at", "det_F_at", "unramified_quotient", "ramified_eigenvalue", "tangent_point",
    "ramified_fixed_line", "ordinary_line", "harmonic_set", "six_set", "cross_ratio_report",
    "FAMILIES", "FAMILY_F", "FAMILY_F_EPS", "TAU_FIXED", "THETA_PSI", "THETA_PSIBAR",
]
