"""Places of H above a prime l different from p.

A nonsplit l (inert or ramified in K) splits in at most one of the quadratic
subfields F, K2; the place lambda is read off from a prime of that subfield E
through the relative norm H -> E.  A split l with phi(l) = 1 splits completely
in H and lambda is given by l-adic square roots of d1 and d2.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from sympy.ntheory import sqrt_mod

from ..errors import UnsupportedCase
from ..padic.field import vp_int
from ..quadfield import QuadIdeal, Split, ell_adic_sqrt, kronecker, split_type, valuation
from .biquad import BiquadElement
from .setting import CMSetting

logger = logging.getLogger(__name__)

# Galois tag fixing each quadratic subfield
_FIXER = {"F": "t", "K2": "st", "K": "s"}


def _smallest_root(d: int, ell: int) -> Optional[int]:
    roots = sqrt_mod(d % ell, ell, all_roots=True)
    return min(roots) if roots else None


def splitting_subfield(setting: CMSetting, ell: int) -> str:
    """For l inert in K, the subfield (F or K2) where l splits; for l | D, the
    subfield where l is unramified."""
    if ell == 2:
        raise UnsupportedCase("l = 2 is not supported for nonsplit primes", ell=ell)
    if setting.D % ell == 0:
        return "K2" if setting.d1 % ell == 0 else "F"
    if kronecker(-setting.D, ell) != -1:
        raise UnsupportedCase("l is not inert in K", ell=ell)
    return "F" if kronecker(setting.d1, ell) == 1 else "K2"


@dataclass(frozen=True)
class LambdaPlace:
    """A place lambda of H above a nonsplit l, seen through E = F or K2.

    ``ideal`` is the prime of E below lambda when l splits in E; it is None
    when l is inert in E, in which case lambda is the only place above l.
    """
    ell: int
    subfield: str
    ideal: Optional[QuadIdeal]
    e: int
    choice: int

    def ord(self, x: BiquadElement) -> Fraction:
        """ord_lambda(x) = e * v_L(N_{H/E} x) / 2."""
        n = x.relative_norm(self.subfield).to_quad(self.subfield)
        if self.ideal is None:
            v = valuation(n, ell=self.ell)
        else:
            v = valuation(n, self.ideal)
        return Fraction(self.e * v, 2)

    def apply(self, h: str) -> "LambdaPlace":
        """The place h(lambda)."""
        if self.ideal is None or h in ("1", _FIXER[self.subfield]):
            return self
        return LambdaPlace(self.ell, self.subfield, self.ideal.conjugate(), self.e, 1 - self.choice)

    def ord_at(self, x: BiquadElement, h: str) -> Fraction:
        """ord_{h lambda}(x) = ord_lambda(h^-1 x)."""
        return self.ord(x.apply(h))

    def describe(self) -> dict:
        return {"ell": self.ell, "subfield": self.subfield, "e": self.e, "choice": self.choice,
                "ideal": self.ideal.to_json() if self.ideal is not None else None}


def prime_above_in(setting: CMSetting, ell: int, choice: int = 0) -> LambdaPlace:
    """The place lambda above a nonsplit l for the given choice (0 or 1).

    Choice 0 takes the prime of E on which sqrt d_E reduces to the smallest
    residue; choice 1 is its sigma-conjugate.
    """
    if ell == setting.p:
        raise UnsupportedCase("l = p", ell=ell)
    if kronecker(-setting.D, ell) == 1:
        raise UnsupportedCase("l splits in K", ell=ell)
    E = splitting_subfield(setting, ell)
    dE = setting.d1 if E == "F" else setting.d2
    e = 2 if setting.D % ell == 0 else 1
    if kronecker(dE, ell) != 1:
        return LambdaPlace(ell, E, None, e, choice)
    s = _smallest_root(dE, ell)
    if choice:
        s = (-s) % ell
    st = split_type(dE, ell, root=s)
    assert isinstance(st, Split)
    return LambdaPlace(ell, E, st.ideal, e, choice)


def lambda_valuation(x: BiquadElement, place) -> Fraction:
    return place.ord(x)


@dataclass(frozen=True)
class SplitLambda:
    """A place of H above a prime l split in K with phi(l) = 1.

    iota_lambda sends sqrt d1 -> s1 and sqrt d2 -> s2 (l-adic), where s1 is the
    root of d1 with the smallest residue and s1 s2 is the root of -D that
    defines ``ideal``.
    """
    setting: CMSetting
    ideal: QuadIdeal

    @property
    def ell(self) -> int:
        return self.ideal.a

    def roots(self, digits: int) -> Tuple[int, int]:
        ell = self.ell
        mod = ell ** digits
        sK = ell_adic_sqrt(-self.setting.D, ell, self.ideal.b, digits)
        s1_res = _smallest_root(self.setting.d1, ell)
        s1 = next(r for r in sqrt_mod(self.setting.d1 % mod, mod, all_roots=True)
                  if r % ell == s1_res)
        s2 = sK * pow(s1, -1, mod) % mod
        return s1, s2

    def subfield_ideal(self, field: str) -> QuadIdeal:
        """The prime of F or K2 below lambda."""
        s1, s2 = self.roots(1)
        d, s = (self.setting.d1, s1) if field == "F" else (self.setting.d2, s2)
        st = split_type(d, self.ell, root=s)
        assert isinstance(st, Split)
        return st.ideal

    def ord(self, x: BiquadElement) -> int:
        ell = self.ell
        den = math.lcm(*[c.denominator for c in x.c])
        vals = [int(c * den) for c in x.c]
        num = BiquadElement(x.d1, x.d2, vals)
        digits = int(vp_int(num.absolute_norm().numerator, ell)) + 1
        s1, s2 = self.roots(digits)
        value = (vals[0] + vals[1] * s1 + vals[2] * s2 + vals[3] * s1 * s2) % ell ** digits
        return int(min(vp_int(value, ell), digits)) - int(vp_int(den, ell))

    def ord_at(self, x: BiquadElement, h: str) -> int:
        return self.ord(x.apply(h))


def split_lambda(setting: CMSetting, ell: int) -> SplitLambda:
    """The place above the first prime of K over l (smallest b)."""
    if ell in (2, setting.p) or setting.D % ell == 0:
        raise UnsupportedCase("split places need odd l prime to Dp", ell=ell)
    st = split_type(-setting.D, ell)
    if not isinstance(st, Split):
        raise UnsupportedCase("l does not split in K", ell=ell)
    if setting.phi_of(st.ideal) != 1:
        raise UnsupportedCase("phi(l) = -1: Frobenius at l is not in G_H", ell=ell)
    return SplitLambda(setting, st.ideal)
