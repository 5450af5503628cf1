"""psi(tau gamma) for gamma a Frobenius (l inert) or inertia (l | D) element.

Gal(H_psi/Q) is dihedral, generated by rho = sigma_c with psi(c) = i and by
complex conjugation tau.  On the psi-periods E_k = sum_{psi(a) = i^k} j(a)^s
the element tau rho^n acts as the permutation k -> n - k, and composing it
with conjugation (k -> -k) leaves the translation by n, so psi(tau gamma) = i^n.

For l nonsplit in K, gamma lies over the subfield E (F or K2) where l splits,
so gamma is tau rho^m or tau rho^(m+2) with m = 0 for F and m = 1 for K2.
Gal(H_psi/E) is abelian and gamma is the Artin symbol of the prime q of E
below lambda.  The fixed field of tau rho^m is E(sqrt Delta) with Delta from
:class:`PeriodData`, hence

    inert:    gamma = tau rho^m  iff  Delta is a square in E_q
    ramified: gamma = tau rho^m  iff  ord_q(Delta) is even
"""
from __future__ import annotations

import logging
import threading
from typing import Dict, Optional, Tuple

from ..errors import AmbiguousMatching, UnsupportedCase
from ..metrics import computations_total
from ..padic import RootOfUnity
from ..padic.field import vp_int
from ..quadfield import QuadElement, QuadIdeal, ell_adic_sqrt, kronecker
from .classpoly import ClassPolyData, PeriodData, class_polynomial
from .places import prime_above_in
from .setting import CMSetting

logger = logging.getLogger(__name__)

_lock = threading.Lock()
_class_polys: Dict[int, ClassPolyData] = {}
_periods: Dict[Tuple[int, Tuple[int, ...], int], PeriodData] = {}


def class_poly_data(D: int, cache=None) -> ClassPolyData:
    """H_D, computed once per process and recorded in ``cache`` when one is given."""
    with _lock:
        data = _class_polys.get(D)
    if data is None:
        data = class_polynomial(D, cache)
        with _lock:
            data = _class_polys.setdefault(D, data)
    elif cache is not None and cache.get("class_polynomial", {"D": D}) is None:
        cache.put("class_polynomial", {"D": D}, list(data.coeffs))
    return data


def psi_kappa(setting: CMSetting) -> Dict[int, int]:
    """Class index -> k with psi(class) = i^k."""
    return {c: z.exponent_in(4) for c, z in setting.psi.items()}


def period_data(setting: CMSetting, s: int, cache=None) -> PeriodData:
    cp = class_poly_data(setting.D, cache)
    key = (setting.D, tuple(setting.psi_exponents), s)
    with _lock:
        data = _periods.get(key)
    if data is None:
        data = cp.period_data(psi_kappa(setting), setting.d1, setting.d2, s)
        logger.debug("psi-period data D=%d s=%d: %s", setting.D, s, data.poly)
        with _lock:
            data = _periods.setdefault(key, data)
    return data


def local_square_class(x: QuadElement, ideal: QuadIdeal) -> Tuple[int, int]:
    """(ord_q(x), Legendre symbol of the unit part of x) at a degree-one prime q."""
    ell = ideal.a
    num = QuadElement(x.d, x.a, x.b, 1)
    bound = int(vp_int(int(num.norm()), ell)) + 2
    mod = ell ** bound
    root = ell_adic_sqrt(x.d, ell, ideal.b, bound)
    value = (x.a + x.b * root) % mod
    v = int(vp_int(value, ell)) if value else bound
    if v >= bound:
        raise AmbiguousMatching("valuation beyond the working l-adic precision", ell=ell)
    vc = int(vp_int(x.c, ell))
    unit = (value // ell ** v) * pow(x.c // ell ** vc, -1, ell) % ell
    return v - vc, kronecker(unit, ell)


def psi_tau_gamma(setting: CMSetting, ell: int, choice: int = 0, s: int = 1,
                  cache=None) -> RootOfUnity:
    """psi(tau gamma_lambda) for the place lambda of the given choice, using
    the periods of j^s."""
    if ell == setting.p or setting.p % ell == 0:
        raise UnsupportedCase("l = p", ell=ell)
    if kronecker(-setting.D, ell) == 1:
        raise UnsupportedCase("l splits in K", ell=ell)
    place = prime_above_in(setting, ell, choice)
    if place.ideal is None:
        raise UnsupportedCase("l is inert in the subfield below lambda", ell=ell,
                              subfield=place.subfield)
    ramified = setting.D % ell == 0
    m = 0 if place.subfield == "F" else 1
    delta = period_data(setting, s, cache).delta(place.subfield)
    computations_total.labels(kind="psi_tau_gamma").inc()
    if delta.is_zero():
        raise AmbiguousMatching("periods do not separate the two candidates", ell=ell, s=s)
    v, legendre = local_square_class(delta, place.ideal)
    if ramified:
        fixed = v % 2 == 0
    else:
        if v % 2:
            raise AmbiguousMatching("odd valuation at an unramified prime", ell=ell, s=s, v=v)
        fixed = legendre == 1
    n = m if fixed else m + 2
    logger.debug("psi(tau gamma) at l=%d choice=%d: tau rho^%d (s=%d, ord=%d)",
                 ell, choice, n, s, v)
    return RootOfUnity(4, n)


def psi_tau_gamma_any(setting: CMSetting, ell: int, choice: int = 0,
                      powers=(1, 2, 3), cache=None) -> RootOfUnity:
    """psi_tau_gamma, moving on to the next period power while the periods collide."""
    last: Optional[AmbiguousMatching] = None
    for s in powers:
        try:
            return psi_tau_gamma(setting, ell, choice, s, cache)
        except AmbiguousMatching as e:
            logger.info("ambiguous periods at l=%d with s=%d, retrying", ell, s)
            last = e
    raise last
