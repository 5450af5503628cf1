"""The weight-one theta series of psi, its p-stabilization, and the ideal-sum oracle."""
from __future__ import annotations

import logging
import math
from typing import Dict

from ..cmfield import CMSetting
from ..metrics import computations_total
from ..quadfield import split_type
from .cyclotomic import CyclotomicInteger
from .expansion import QExpansion, epsilon_K, hecke_expansion, prime_kind

logger = logging.getLogger(__name__)


def _psi_cyc(setting: CMSetting, ideal) -> CyclotomicInteger:
    return CyclotomicInteger.root(setting.psi_order, setting.psi_of(ideal))


def theta_prime_exact(setting: CMSetting, ell: int) -> CyclotomicInteger:
    """a_l(theta_psi) in Z[zeta]: psi(l) + psi(lbar), 0 or psi(l)."""
    n = setting.psi_order
    kind = prime_kind(setting, ell)
    if kind == "inert":
        return CyclotomicInteger.integer(n, 0)
    st = split_type(-setting.D, ell)
    if kind == "ramified":
        return _psi_cyc(setting, st.ideal)
    return _psi_cyc(setting, st.ideal) + _psi_cyc(setting, st.conjugate)


def theta_exact(setting: CMSetting, nmax: int, stabilized: bool = False) -> Dict[int, CyclotomicInteger]:
    """Exact coefficients of theta_psi, or of its U_p-stabilization f (a_p = psi(frak p))."""
    order = setting.psi_order

    def prime_value(ell: int) -> CyclotomicInteger:
        if stabilized and ell == setting.p:
            return _psi_cyc(setting, setting.frak_p)
        return theta_prime_exact(setting, ell)

    def det(ell: int) -> int:
        if ell == setting.p:
            return 0 if stabilized else 1
        return epsilon_K(setting, ell)

    return hecke_expansion(nmax, prime_value, det, CyclotomicInteger.integer(order, 1))


def theta_qexp(setting: CMSetting, qmax: int, stabilized: bool = False) -> QExpansion:
    """theta_psi (label "theta") or f (label "f") with coefficients in Q_{p^f}."""
    exact = theta_exact(setting, qmax, stabilized)
    prec = setting.prec + 2
    coeffs = {n: a.to_padic(setting.field, prec) for n, a in exact.items()}
    computations_total.labels(kind="theta_qexp").inc()
    return QExpansion(coeffs, "f" if stabilized else "theta", "1", setting.prec, qmax)


def _representation_counts(form, nmax: int) -> Dict[int, int]:
    """r_Q(n) for 1 <= n <= nmax, Q positive definite."""
    a, b, c = form
    disc = b * b - 4 * a * c
    counts: Dict[int, int] = {}
    ymax = math.isqrt(4 * a * nmax // -disc) + 1
    for y in range(-ymax, ymax + 1):
        # a x^2 + b y x + c y^2 <= nmax
        rest = b * b * y * y - 4 * a * (c * y * y - nmax)
        if rest < 0:
            continue
        s = math.isqrt(rest)
        lo = (-b * y - s) // (2 * a) - 1
        hi = (-b * y + s) // (2 * a) + 1
        for x in range(lo, hi + 1):
            n = a * x * x + b * x * y + c * y * y
            if 1 <= n <= nmax:
                counts[n] = counts.get(n, 0) + 1
    return counts


def _units(d: int) -> int:
    return {-3: 6, -4: 4}.get(d, 2)


def ideal_sum_oracle(setting: CMSetting, nmax: int, stabilized: bool = False
                     ) -> Dict[int, CyclotomicInteger]:
    """sum over ideals of norm n of psi(a), by enumerating each reduced form.

    The stabilized variant drops ideals divisible by frak pbar:
    a_n(f) = a_n(theta) - psi(frak pbar) a_{n/p}(theta).
    """
    cg = setting.cg
    order = setting.psi_order
    w = _units(cg.d)
    out = {n: CyclotomicInteger(order) for n in range(1, nmax + 1)}
    for c, form in enumerate(cg.forms):
        z = CyclotomicInteger.root(order, setting.psi[c])
        for n, r in _representation_counts(tuple(form), nmax).items():
            if r % w:
                raise AssertionError(f"representation count {r} not divisible by {w}")
            out[n] = out[n] + z * (r // w)
    if stabilized:
        p = setting.p
        zbar = _psi_cyc(setting, setting.frak_pbar)
        theta = dict(out)
        for n in range(p, nmax + 1, p):
            out[n] = theta[n] - zbar * theta[n // p]
    computations_total.labels(kind="ideal_sum_oracle").inc()
    logger.debug("ideal-sum oracle to %d over %d forms", nmax, cg.h)
    return out


def oracle_check(setting: CMSetting, nmax: int, stabilized: bool = False):
    """(ok, first mismatching index) comparing theta_exact with the ideal-sum oracle."""
    exact = theta_exact(setting, nmax, stabilized)
    oracle = ideal_sum_oracle(setting, nmax, stabilized)
    for n in range(1, nmax + 1):
        if exact[n] != oracle[n]:
            return False, n
    return True, None
