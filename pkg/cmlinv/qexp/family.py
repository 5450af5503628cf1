"""Classical specializations of the CM families Theta_psi and the finite-difference oracle."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from ..cmfield import CMSetting
from ..errors import DivisibleOrder, PrecisionLoss
from ..metrics import computations_total
from ..padic import PadicScalar, principal_part, root_in_principal_units
from ..quadfield import ideal_power_generator, split_type
from .expansion import QExpansion, epsilon_K, hecke_expansion, prime_kind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamilyWeight:
    """A classical weight k = 1 mod (p - 1) with coordinate X(k) = (1 + p)^(k-1) - 1."""
    k: int
    p: int

    def __post_init__(self):
        if (self.k - 1) % (self.p - 1):
            raise ValueError(f"weight {self.k} is not 1 mod {self.p - 1}")

    @classmethod
    def at_depth(cls, p: int, m: int) -> "FamilyWeight":
        """k_m = 1 + (p - 1) p^m."""
        return cls(1 + (p - 1) * p ** m, p)

    def X(self, setting: CMSetting, prec: int) -> PadicScalar:
        return setting.field.element(1 + self.p, prec) ** (self.k - 1) - 1


def _chi_root(setting: CMSetting, ideal, prec: int) -> PadicScalar:
    """<chi>(l) = h-th root in 1 + pZ of <iota_p(u)>, with (u) = l^h."""
    u, h = ideal_power_generator(ideal, -setting.D)
    if h % setting.p == 0:
        raise DivisibleOrder("p divides the class order", h=h, p=setting.p)
    x = principal_part(setting.embed_K(u).with_prec(prec))
    return root_in_principal_units(x, h)


@lru_cache(maxsize=256)
def _chi_values(setting: CMSetting, ell: int, prec: int) -> Tuple[PadicScalar, ...]:
    """<chi> at the primes of K above l (one entry if ramified, two if split)."""
    if ell == setting.p:
        return (_chi_root(setting, setting.frak_pbar, prec),)
    st = split_type(-setting.D, ell)
    if prime_kind(setting, ell) == "ramified":
        return (_chi_root(setting, st.ideal, prec),)
    return (_chi_root(setting, st.ideal, prec), _chi_root(setting, st.conjugate, prec))


def family_prime_value(setting: CMSetting, weight: FamilyWeight, ell: int, prec: int,
                       conj: bool = False) -> PadicScalar:
    """a_l of Theta_psi (or Theta_psibar) at weight k."""
    kind = prime_kind(setting, ell)
    e = weight.k - 1
    if kind == "inert":
        return setting.field.zero(prec)
    if kind == "p":
        chi, = _chi_values(setting, ell, prec)
        return setting.to_padic(setting.psi_of(setting.frak_p)).with_prec(prec) * chi ** e
    st = split_type(-setting.D, ell)
    if kind == "ramified":
        chi, = _chi_values(setting, ell, prec)
        z = setting.psi_of(st.ideal)
        z = z.inverse() if conj else z
        return setting.to_padic(z).with_prec(prec) * chi ** e
    chi, chibar = _chi_values(setting, ell, prec)
    z, zbar = setting.psi_of(st.ideal), setting.psi_of(st.conjugate)
    if conj:
        z, zbar = zbar, z
    return (setting.to_padic(z).with_prec(prec) * chi ** e
            + setting.to_padic(zbar).with_prec(prec) * chibar ** e)


def family_expansion(setting: CMSetting, weight: FamilyWeight, nmax: int, conj: bool = False,
                     prec: int = 0) -> QExpansion:
    prec = prec or setting.prec + 2
    e = weight.k - 1

    def det(ell: int):
        if ell == setting.p or setting.D % ell == 0:
            return 0
        return setting.field.element(ell, prec) ** e * epsilon_K(setting, ell)

    coeffs = hecke_expansion(nmax, lambda ell: family_prime_value(setting, weight, ell, prec, conj),
                             det, setting.field.one(prec))
    computations_total.labels(kind="family_expansion").inc()
    label = "Theta_psibar" if conj else "Theta_psi"
    return QExpansion(coeffs, label, str(weight.k), prec, nmax)


def family_at_weight(setting: CMSetting, weight: FamilyWeight, n: int, conj: bool = False) -> PadicScalar:
    """a_n(Theta_psi) at weight k."""
    return family_expansion(setting, weight, n, conj)[n]


def oracle_expansion(setting: CMSetting, m: int, nmax: int, conj: bool = False) -> QExpansion:
    """(a_n(Theta at k_m) - a_n(Theta at 1)) / X(k_m) for n <= nmax."""
    if m < 2:
        raise ValueError("oracle depth must be at least 2")
    prec = setting.prec + 2
    if prec < 2 * (m + 1):
        raise PrecisionLoss("working precision too small for the oracle depth", prec=prec, m=m)
    w = FamilyWeight.at_depth(setting.p, m)
    top = family_expansion(setting, w, nmax, conj, prec)
    base = family_expansion(setting, FamilyWeight(1, setting.p), nmax, conj, prec)
    X = w.X(setting, prec)
    coeffs = {n: (top[n] - base[n]) / X for n in range(1, nmax + 1)}
    logger.debug("oracle depth %d to %d (conj=%s)", m, nmax, conj)
    return QExpansion(coeffs, f"d{top.label}[m={m}]", "1", prec - m - 1, nmax, {"depth": m})


def derivative_oracle(setting: CMSetting, n: int, m: int, conj: bool = False) -> PadicScalar:
    return oracle_expansion(setting, m, n, conj)[n]


def oracle_convergence(setting: CMSetting, m: int, nmax: int, conj: bool = False) -> Dict[str, int]:
    """Agreement digits between oracle depths m and m + 1."""
    a = oracle_expansion(setting, m, nmax, conj)
    b = oracle_expansion(setting, m + 1, nmax, conj)
    _, first_bad, digits = a.compare(b, setting.prec)
    return {"depth": m, "digits": digits, "first_bad": first_bad or 0}
