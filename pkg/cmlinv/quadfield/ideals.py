"""Ideals of quadratic orders in the standard basis a Z + ((-b + sqrt d)/2) Z.

The ideal [a, (-b + sqrt d)/2] corresponds to the binary quadratic form
(a, b, (b^2 - d)/4a).  An element (x + y sqrt d)/2 lies in it exactly when y is
an integer, x + y b is even and a divides (x + y b)/2.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import sympy
from sympy.ntheory import sqrt_mod

from ..padic.field import vp_int
from .arith import kronecker
from .element import QuadElement

logger = logging.getLogger(__name__)


def _normalize_b(b: int, a: int) -> int:
    """Representative of b modulo 2a in (-a, a]."""
    b %= 2 * a
    if b > a:
        b -= 2 * a
    return b


class QuadIdeal:
    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a: int, b: int):
        if a <= 0:
            raise ValueError("ideal norm must be positive")
        if (b * b - d) % (4 * a):
            raise ValueError(f"b^2 = d mod 4a fails for (a, b) = ({a}, {b}), d = {d}")
        self.d = d
        self.a = a
        self.b = _normalize_b(b, a)

    def norm(self) -> int:
        return self.a

    def form(self) -> Tuple[int, int, int]:
        return (self.a, self.b, (self.b * self.b - self.d) // (4 * self.a))

    def conjugate(self) -> "QuadIdeal":
        return QuadIdeal(self.d, self.a, -self.b)

    def contains(self, x: Union[QuadElement, Tuple[int, int]]) -> bool:
        """Membership of (x + y sqrt d)/2, given as a QuadElement or an (x, y) pair."""
        if isinstance(x, QuadElement):
            u, v = x.coords
            x2, y2 = 2 * u, 2 * v
            if x2.denominator != 1 or y2.denominator != 1:
                return False
            x, y = int(x2), int(y2)
        else:
            x, y = x
        s = x + y * self.b
        return s % 2 == 0 and (s // 2) % self.a == 0

    __contains__ = contains

    def power(self, k: int) -> "QuadIdeal":
        """k-th power of a prime ideal of norm l coprime to its conjugate (split l)."""
        if k < 1:
            raise ValueError("power must be positive")
        if k == 1:
            return self
        ell = self.a
        if not sympy.isprime(ell) or kronecker(self.d, ell) != 1:
            raise ValueError("powers are only formed for split prime ideals")
        mod = 4 * ell ** k
        roots = sorted(r for r in sqrt_mod(self.d, mod, all_roots=True)
                       if (r - self.b) % (2 * ell) == 0)
        return QuadIdeal(self.d, ell ** k, roots[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadIdeal):
            return NotImplemented
        return (self.d, self.a, self.b) == (other.d, other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.d, self.a, self.b))

    def __repr__(self) -> str:
        return f"[{self.a}, ({-self.b} + sqrt({self.d}))/2]"

    def to_json(self):
        return [self.d, self.a, self.b]


@dataclass(frozen=True)
class Split:
    ideal: QuadIdeal
    conjugate: QuadIdeal


@dataclass(frozen=True)
class Inert:
    ell: int


@dataclass(frozen=True)
class Ramified:
    ideal: QuadIdeal


SplitType = Union[Split, Inert, Ramified]


def _roots_mod_4l(d: int, ell: int) -> List[int]:
    roots = {_normalize_b(r, ell) for r in sqrt_mod(d, 4 * ell, all_roots=True)}
    return sorted(roots)


def split_type(d: int, ell: int, root: Optional[int] = None) -> SplitType:
    """Decomposition of the prime ell in Q(sqrt d).

    For split ell the first ideal has the smallest b, unless ``root`` (an
    ell-adic square root of d) is given, in which case it is the ideal on which
    sqrt d reduces to that root.
    """
    if not sympy.isprime(ell):
        raise ValueError(f"{ell} is not prime")
    k = kronecker(d, ell)
    if k == -1:
        return Inert(ell)
    roots = _roots_mod_4l(d, ell)
    if k == 0:
        return Ramified(QuadIdeal(d, ell, roots[0]))
    first, second = roots[0], roots[1]
    if root is not None:
        step = 4 if ell == 2 else ell
        if (second - root) % step == 0:
            first, second = second, first
    return Split(QuadIdeal(d, ell, first), QuadIdeal(d, ell, second))


def prime_ideals_above(d: int, ell: int) -> List[QuadIdeal]:
    st = split_type(d, ell)
    if isinstance(st, Split):
        return [st.ideal, st.conjugate]
    if isinstance(st, Ramified):
        return [st.ideal]
    return []


def _v_fraction(q: Fraction, ell: int):
    return vp_int(q.numerator, ell) - vp_int(q.denominator, ell)


def ell_adic_sqrt(d: int, ell: int, b: int, digits: int) -> int:
    """sqrt(d) modulo ell^digits on the branch fixed by the ideal [ell, (-b + sqrt d)/2]."""
    step = 4 if ell == 2 else ell
    mod = ell ** (digits + 2)
    for r in sqrt_mod(d, mod, all_roots=True):
        if (r - b) % step == 0:
            return r % ell ** digits
    raise ValueError(f"no {ell}-adic root of {d} congruent to {b}")


def valuation(u: QuadElement, ideal: Optional[QuadIdeal] = None, *, ell: Optional[int] = None) -> Union[int, Fraction]:
    """ord of u at a prime ideal (or at the inert prime ell)."""
    if u.is_zero():
        raise ValueError("valuation of zero")
    if ideal is None:
        if ell is None:
            raise ValueError("need an ideal or an inert prime")
        return _v_fraction(u.norm(), ell) // 2
    ell = ideal.a
    k = kronecker(u.d, ell)
    if k == 0:
        return _v_fraction(u.norm(), ell)
    if k == -1:
        return _v_fraction(u.norm(), ell) // 2
    num = QuadElement(u.d, u.a, u.b, 1)
    bound = int(_v_fraction(num.norm(), ell)) + 1
    s = ell_adic_sqrt(u.d, ell, ideal.b, bound)
    return min(vp_int((u.a + u.b * s) % ell ** bound, ell), bound) - vp_int(u.c, ell)
