"""Closed-form first derivatives of the CM and non-CM families through f.

Every family is built as an eigenform over the dual numbers Q_{p^f}[X]/(X^2),
so the coefficient recursions of the generalized eigenforms hold by
construction; the X-parts are read off afterwards.
"""
from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional

from ..cmfield import CMSetting
from ..errors import RelationViolated, UnsupportedCase
from ..linv import LInvariantSet, required_digits
from ..metrics import computations_total
from ..padic import DualScalar, PadicScalar, iwasawa_log
from ..quadfield import split_type
from .expansion import QExpansion, epsilon_K, hecke_expansion, prime_kind
from .family import oracle_expansion
from .theta import theta_qexp

logger = logging.getLogger(__name__)

PrimeDerivative = Callable[[int], PadicScalar]


def _log_ell(setting: CMSetting, ell: int) -> PadicScalar:
    return iwasawa_log(setting.field.element(ell, setting.prec + 2))


def _missing(ell: int, what: str) -> UnsupportedCase:
    return UnsupportedCase(f"{what} not computed for l = {ell}", ell=ell)


def _split_values(inv: LInvariantSet, ell: int):
    if ell not in inv.split:
        raise _missing(ell, "split L-invariants")
    return inv.split[ell]


def _L_psi(inv: LInvariantSet, ell: int) -> PadicScalar:
    if ell not in inv.L_psi:
        raise _missing(ell, "L_psi")
    return inv.L_psi[ell]


def _dual_family(setting: CMSetting, nmax: int, derivative: PrimeDerivative,
                 base: QExpansion) -> Dict[int, DualScalar]:
    """Eigenform over the dual numbers with prime values a_l(f) + derivative(l) X."""
    prec = setting.prec + 2
    A = setting.A

    def prime_value(ell: int) -> DualScalar:
        a = base[ell]
        if isinstance(a, int):
            a = setting.field.element(a, prec)
        return DualScalar(a, derivative(ell))

    def det(ell: int):
        if ell == setting.p or setting.D % ell == 0:
            return 0
        # eps_K(l) l^(k-1) to first order in X
        one = setting.field.one(prec)
        return DualScalar(one, _log_ell(setting, ell) / A) * epsilon_K(setting, ell)

    return hecke_expansion(nmax, prime_value, det, DualScalar(setting.field.one(prec), 0))


def _derivative_part(coeffs: Dict[int, DualScalar], label: str, setting: CMSetting,
                     nmax: int) -> QExpansion:
    return QExpansion({n: c.b for n, c in coeffs.items()}, label, "1", setting.prec, nmax)


def theta_derivative(setting: CMSetting, inv: LInvariantSet, nmax: int, conj: bool = False,
                     base: Optional[QExpansion] = None) -> QExpansion:
    """d/dX at X = 0 of a_n(Theta_psi), or of a_n(Theta_psibar) when ``conj``."""
    base = base or theta_qexp(setting, nmax, stabilized=True)
    A = setting.A
    zero = setting.field.zero(setting.prec + 2)

    def derivative(ell: int) -> PadicScalar:
        kind = prime_kind(setting, ell)
        if kind == "inert":
            return zero
        if kind == "p":
            return setting.to_padic(setting.psi_p()) * inv.L_p / A
        st = split_type(-setting.D, ell)
        if kind == "ramified":
            return setting.to_padic(setting.psi_of(st.ideal)) * _log_ell(setting, ell) / (2 * A)
        L_l, L_lbar = _split_values(inv, ell)
        z = setting.to_padic(setting.psi_of(st.ideal))
        zbar = setting.to_padic(setting.psi_of(st.conjugate))
        if conj:
            z, zbar = zbar, z
        return -(z * L_l + zbar * L_lbar) / A

    coeffs = _dual_family(setting, nmax, derivative, base)
    return _derivative_part(coeffs, "dTheta_psibar" if conj else "dTheta_psi", setting, nmax)


def family_F_derivative(setting: CMSetting, inv: LInvariantSet, nmax: int, twist: bool = False,
                        base: Optional[QExpansion] = None) -> QExpansion:
    """d/dX at X = 0 of a_n(F), or of a_n(F (x) eps_K) when ``twist``."""
    base = base or theta_qexp(setting, nmax, stabilized=True)
    A = setting.A
    L, Lbar = inv.L, inv.Lbar
    xi = -inv.xi if twist else inv.xi

    def derivative(ell: int) -> PadicScalar:
        kind = prime_kind(setting, ell)
        if kind == "p":
            return setting.to_padic(setting.psi_p()) * (L * inv.Lminus_phibar + inv.L_p / A)
        if kind == "inert":
            return -xi * L * _L_psi(inv, ell)
        st = split_type(-setting.D, ell)
        if kind == "ramified":
            z = setting.to_padic(setting.psi_of(st.ideal))
            return z * (_log_ell(setting, ell) / (2 * A) - xi * L * _L_psi(inv, ell))
        L_l, L_lbar = _split_values(inv, ell)
        z = setting.to_padic(setting.psi_of(st.ideal))
        zbar = setting.to_padic(setting.psi_of(st.conjugate))
        return -z * (Lbar * L_l + L * L_lbar) - zbar * (Lbar * L_lbar + L * L_l)

    coeffs = _dual_family(setting, nmax, derivative, base)
    return _derivative_part(coeffs, "dF_eps" if twist else "dF", setting, nmax)


def gen_eigenform_theta(setting: CMSetting, inv: LInvariantSet, qmax: int) -> QExpansion:
    """f_dag_Theta = A d/dX (Theta_psibar - Theta_psi)."""
    base = theta_qexp(setting, qmax, stabilized=True)
    d = theta_derivative(setting, inv, qmax, True, base) - theta_derivative(setting, inv, qmax, False, base)
    computations_total.labels(kind="gen_eigenform").inc()
    return d.scale(setting.A, "f_dag_Theta")


def gen_eigenform_F(setting: CMSetting, inv: LInvariantSet, qmax: int) -> QExpansion:
    """f_dag_F = A d/dX (F (x) eps_K - F)."""
    base = theta_qexp(setting, qmax, stabilized=True)
    d = family_F_derivative(setting, inv, qmax, True, base) - family_F_derivative(setting, inv, qmax, False, base)
    computations_total.labels(kind="gen_eigenform").inc()
    return d.scale(setting.A, "f_dag_F")


def gen_eigenform_psi(setting: CMSetting, inv: LInvariantSet, qmax: int) -> QExpansion:
    """f_dag_psi = d/dX (F - Theta_psi)."""
    base = theta_qexp(setting, qmax, stabilized=True)
    d = family_F_derivative(setting, inv, qmax, False, base) - theta_derivative(setting, inv, qmax, False, base)
    computations_total.labels(kind="gen_eigenform").inc()
    d.label = "f_dag_psi"
    return d


def _relation_lhs(setting: CMSetting, inv: LInvariantSet, dTheta: QExpansion, dTheta_bar: QExpansion,
                  dF: QExpansion, dF_eps: QExpansion) -> QExpansion:
    """A^2 d/dX (Lbar Theta_psi + L Theta_psibar - ((L + Lbar)/2)(F + F (x) eps_K))."""
    A2 = setting.A * setting.A
    L, Lbar = inv.L, inv.Lbar
    half = (L + Lbar) / 2
    nmax = min(dTheta.nmax, dTheta_bar.nmax, dF.nmax, dF_eps.nmax)
    coeffs = {n: A2 * (Lbar * dTheta[n] + L * dTheta_bar[n] - half * (dF[n] + dF_eps[n]))
              for n in range(1, nmax + 1)}
    return QExpansion(coeffs, "relation_lhs", "1", setting.prec, nmax)


def _relation_rhs(setting: CMSetting, inv: LInvariantSet, nmax: int) -> QExpansion:
    """(Lm Lm_bar / (Lm + Lm_bar)) (f - theta_psi)."""
    Lm, Lmb = inv.Lminus_phi, inv.Lminus_phibar
    C = Lm * Lmb / (Lm + Lmb)
    diff = theta_qexp(setting, nmax, stabilized=True) - theta_qexp(setting, nmax, stabilized=False)
    return diff.scale(C, "relation_rhs")


def _violations(lhs: QExpansion, rhs: QExpansion, digits: int) -> Dict:
    ok, first_bad, worst = lhs.compare(rhs, digits)
    return {"ok": ok, "first_bad": first_bad, "digits": worst, "required": digits}


def linear_relation_check(setting: CMSetting, inv: LInvariantSet, qmax: int,
                          depth: Optional[int] = None, oracle_nmax: Optional[int] = None,
                          raise_on_failure: bool = True) -> Dict:
    """Check the linear relation among the four family derivatives coefficientwise.

    The closed-form pass uses the exact derivative formulas. With ``depth`` set,
    a second pass replaces the Theta-side derivatives by finite differences at
    that depth, compared to depth - 2 digits.
    """
    base = theta_qexp(setting, qmax, stabilized=True)
    dTheta = theta_derivative(setting, inv, qmax, False, base)
    dTheta_bar = theta_derivative(setting, inv, qmax, True, base)
    dF = family_F_derivative(setting, inv, qmax, False, base)
    dF_eps = family_F_derivative(setting, inv, qmax, True, base)
    rhs = _relation_rhs(setting, inv, qmax)
    # the A^2 prefactor and the 1/A inside L cost two digits
    need = required_digits(setting) - 2
    passes: List[Dict] = []

    closed = _violations(_relation_lhs(setting, inv, dTheta, dTheta_bar, dF, dF_eps), rhs, need)
    closed["pass"] = "closed_form"
    passes.append(closed)

    if depth is not None:
        nmax = min(oracle_nmax or qmax, qmax)
        o = oracle_expansion(setting, depth, nmax, conj=False)
        o_bar = oracle_expansion(setting, depth, nmax, conj=True)
        lhs = _relation_lhs(setting, inv, o, o_bar, dF.truncate(nmax), dF_eps.truncate(nmax))
        oracle = _violations(lhs, rhs.truncate(nmax), max(depth - 2, 1))
        oracle["pass"] = f"oracle[m={depth}]"
        passes.append(oracle)

    report = {"qmax": qmax, "passes": passes, "ok": all(p["ok"] for p in passes)}
    for p in passes:
        logger.info("linear relation %s: ok=%s digits=%d", p["pass"], p["ok"], p["digits"])
        if not p["ok"] and raise_on_failure:
            raise RelationViolated("linear relation fails", index=p["first_bad"], stage=p["pass"])
    return report


def theta_vs_oracle(setting: CMSetting, inv: LInvariantSet, depth: int, nmax: int) -> Dict:
    """f_dag_Theta against A times the oracle difference (Theta_psibar - Theta_psi)."""
    closed = gen_eigenform_theta(setting, inv, nmax)
    diff = oracle_expansion(setting, depth, nmax, conj=True) - oracle_expansion(setting, depth, nmax)
    numeric = diff.scale(setting.A, "oracle_f_dag_Theta")
    return _violations(closed, numeric, max(depth - 2, 1))
