"""Cochains unramified outside p, witnesses, and the reciprocity evaluator.

A cochain on G_H (or G_K, inflated) that is unramified outside p and one
Galois orbit of a target place has local restriction c_w * log_p on the units
at each p-place w.  For every global S-unit u class field theory gives

    sum_w c_w log_p(iota_w(u)) + V * sum_{lambda in orbit} weight * ord_lambda(u) = 0,

and V is the value of the cochain at the Frobenius of the target.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

from ..cmfield import GALOIS, BiquadElement, CMSetting, Place
from ..errors import InconsistentWitnesses, ZeroTargetValuation
from ..metrics import witness_checks_total
from ..padic import PadicScalar
from ..padic.field import vp_int
from ..quadfield import QuadIdeal, valuation
from ..settings import settings

logger = logging.getLogger(__name__)

Coefficient = Union[int, Fraction, PadicScalar]


def _is_zero(c: Coefficient) -> bool:
    if isinstance(c, PadicScalar):
        return c.is_zero()
    return c == 0


def required_digits(setting: CMSetting) -> int:
    return setting.prec - settings.TOLERANCE_DIGITS


@dataclass(frozen=True)
class CochainSpec:
    """Local coefficients (c_pi, c_sigma pi, c_tau pi, c_sigma tau pi) of a cochain.

    ``base`` is "K" for classes inflated from G_K (their coefficients are
    constant on the two places above each prime of K) and "H" otherwise.
    """
    tag: str
    coeffs: Tuple[Coefficient, Coefficient, Coefficient, Coefficient]
    base: str = "H"
    equivariance: str = "trivial"

    def coefficient(self, place: Place) -> Coefficient:
        return self.coeffs[GALOIS.index(place.h)]

    def unramified_at(self, place: Place) -> bool:
        return _is_zero(self.coefficient(place))

    def __sub__(self, other: "CochainSpec") -> "CochainSpec":
        return CochainSpec(f"{self.tag} - {other.tag}",
                           tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), "H",
                           self.equivariance)

    def scale(self, k: Coefficient, tag: Optional[str] = None) -> "CochainSpec":
        return CochainSpec(tag or f"({k}){self.tag}", tuple(c * k for c in self.coeffs),
                           self.base, self.equivariance)


def eta_frak_p() -> CochainSpec:
    return CochainSpec("eta_p", (1, 1, 0, 0), base="K")


def eta_frak_pbar() -> CochainSpec:
    return CochainSpec("eta_pbar", (0, 0, 1, 1), base="K")


def eta_cyclotomic() -> CochainSpec:
    return CochainSpec("eta_cyc", (1, 1, 1, 1), base="K")


def eta_phi(S_phi: Coefficient) -> CochainSpec:
    """res_p(eta_phi) = log_p, phi-equivariant under Gal(H/K); S_phi ties in the tau-places."""
    return CochainSpec("eta_phi", (1, -1, S_phi, -S_phi), equivariance="phi")


@dataclass(frozen=True)
class Witness:
    """A formal product prod b_i^(e_i) of elements of H."""
    factors: Tuple[Tuple[BiquadElement, Fraction], ...]
    provenance: Tuple[str, ...] = ()

    @classmethod
    def of(cls, element: BiquadElement, exponent=1, label: str = "") -> "Witness":
        return cls(((element, Fraction(exponent)),), (label or repr(element),))

    def __mul__(self, other: "Witness") -> "Witness":
        return Witness(self.factors + other.factors, self.provenance + other.provenance)

    def apply(self, h: str) -> "Witness":
        return Witness(tuple((b.apply(h), e) for b, e in self.factors),
                       tuple(f"{h}({p})" for p in self.provenance))

    def log_at(self, setting: CMSetting, place: Place) -> PadicScalar:
        total = setting.field.zero(setting.prec + 2)
        for b, e in self.factors:
            total = total + setting.log_at(b, place) * e
        return total

    def ord_p(self, setting: CMSetting, place: Place) -> Fraction:
        return sum((e * setting.place_valuation(b, place) for b, e in self.factors), Fraction(0))

    def to_json(self) -> List[str]:
        return list(self.provenance)


@dataclass(frozen=True)
class Target:
    """A Galois orbit of places: (ord_lambda, weight) pairs, plus the p-places it covers."""
    name: str
    orbit: Tuple[Tuple[Callable[[BiquadElement], Fraction], Fraction], ...]
    p_places: Tuple[str, ...] = ()

    def ord(self, witness: Witness) -> Fraction:
        total = Fraction(0)
        for b, e in witness.factors:
            for val, weight in self.orbit:
                total += weight * e * val(b)
        return total

    # -- constructors --

    @classmethod
    def p_place(cls, setting: CMSetting, place: Place, weight=1) -> "Target":
        return cls(place.name, ((lambda x: Fraction(setting.place_valuation(x, place)),
                                 Fraction(weight)),), (place.h,))

    @classmethod
    def p_orbit(cls, setting: CMSetting, weights: Sequence[Tuple[Place, int]]) -> "Target":
        orbit = tuple((lambda x, pl=pl: Fraction(setting.place_valuation(x, pl)), Fraction(w))
                      for pl, w in weights)
        return cls("+".join(pl.name for pl, _ in weights), orbit, tuple(pl.h for pl, _ in weights))

    @classmethod
    def rational(cls, ell: int) -> "Target":
        """ord = v_l(N_{H/Q} x), the weight-one orbit of every place above l in H."""
        def val(x: BiquadElement) -> Fraction:
            n = x.absolute_norm()
            return Fraction(vp_int(n.numerator, ell) - vp_int(n.denominator, ell))
        return cls(f"l={ell}", ((val, Fraction(1)),))

    @classmethod
    def k_prime(cls, ideal: Union[QuadIdeal, int]) -> "Target":
        """ord = v_l(N_{H/K} x) at a prime of K (an int stands for an inert prime)."""
        def val(x: BiquadElement) -> Fraction:
            n = x.relative_norm("K").to_quad("K")
            if isinstance(ideal, int):
                return Fraction(valuation(n, ell=ideal))
            return Fraction(valuation(n, ideal))
        return cls(repr(ideal), ((val, Fraction(1)),))

    @classmethod
    def lambda_orbit(cls, place, weights: Sequence[Tuple[str, int]], name: str = "lambda") -> "Target":
        """sum_h weight_h * ord_{h lambda} for a place of H away from p."""
        orbit = tuple((lambda x, h=h: Fraction(place.ord_at(x, h)), Fraction(w)) for h, w in weights)
        return cls(name, orbit)


def _log_sum(setting: CMSetting, spec: CochainSpec, witness: Witness) -> PadicScalar:
    total = setting.field.zero(setting.prec + 2)
    for h in GALOIS:
        place = Place(h)
        c = spec.coefficient(place)
        if _is_zero(c):
            continue
        total = total + witness.log_at(setting, place) * c
    return total


def _check_support(setting: CMSetting, target: Target, witness: Witness) -> None:
    for h in GALOIS:
        if h in target.p_places:
            continue
        if witness.ord_p(setting, Place(h)) != 0:
            raise InconsistentWitnesses("witness has valuation at a non-target place above p",
                                        place=Place(h).name, witness=witness.to_json())


def reciprocity_eval(setting: CMSetting, spec: CochainSpec, target: Target,
                     witnesses: Sequence[Witness]) -> PadicScalar:
    """The value V of ``spec`` at the Frobenius of ``target``.

    V is solved from the first witness with nonzero target valuation and
    re-checked against every other witness.
    """
    for h in target.p_places:
        if not spec.unramified_at(Place(h)):
            raise ValueError(f"{spec.tag} is ramified at the target place {Place(h).name}")
    if not witnesses:
        raise ZeroTargetValuation("no witnesses supplied", target=target.name)
    rows = []
    for w in witnesses:
        _check_support(setting, target, w)
        rows.append((w, _log_sum(setting, spec, w), target.ord(w)))
    solving = next((r for r in rows if r[2] != 0), None)
    if solving is None:
        raise ZeroTargetValuation("every witness has zero valuation at the target",
                                  target=target.name, spec=spec.tag)
    _, log0, ord0 = solving
    V = -log0 / ord0
    need = required_digits(setting)
    for w, log_w, ord_w in rows:
        if w is solving[0]:
            continue
        residual = log_w + V * ord_w
        digits = residual.prec if residual.is_zero() else residual.val
        if digits < need:
            witness_checks_total.labels(outcome="fail").inc()
            raise InconsistentWitnesses("witnesses disagree", spec=spec.tag, target=target.name,
                                        digits=int(digits), required=need, witness=w.to_json())
        witness_checks_total.labels(outcome="ok").inc()
    logger.debug("reciprocity %s at %s from %d witnesses", spec.tag, target.name, len(rows))
    return V
