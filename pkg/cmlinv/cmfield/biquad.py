"""The biquadratic field H = Q(sqrt d1, sqrt d2) and its Galois group.

Elements are rational 4-vectors in the basis {1, sqrt d1, sqrt d2, sqrt(d1 d2)}.
Galois elements are tagged "1", "s", "t", "st":

    s  = sigma      negates sqrt d1 and sqrt d2       (fixes K = Q(sqrt(d1 d2)))
    t  = tau        negates sqrt d2 and sqrt(d1 d2)   (fixes F = Q(sqrt d1))
    st = sigma tau  negates sqrt d1 and sqrt(d1 d2)   (fixes K2 = Q(sqrt d2))
"""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from ..quadfield.element import QuadElement

GALOIS = ("1", "s", "t", "st")

_SIGNS: Dict[str, Tuple[int, int, int, int]] = {
    "1": (1, 1, 1, 1),
    "s": (1, -1, -1, 1),
    "t": (1, 1, -1, -1),
    "st": (1, -1, 1, -1),
}


def compose(g: str, h: str) -> str:
    """Tag of g*h in the Klein four group."""
    sg = _SIGNS[g]
    sh = _SIGNS[h]
    prod = tuple(a * b for a, b in zip(sg, sh))
    for tag, signs in _SIGNS.items():
        if signs == prod:
            return tag
    raise AssertionError("not a group element")


Rational = Union[int, Fraction]


class BiquadElement:
    __slots__ = ("d1", "d2", "c")

    def __init__(self, d1: int, d2: int, coords: Sequence[Rational]):
        if len(coords) != 4:
            raise ValueError("biquadratic elements have four coordinates")
        self.d1 = d1
        self.d2 = d2
        self.c: Tuple[Fraction, ...] = tuple(Fraction(x) for x in coords)

    # -- constructors --

    @classmethod
    def from_rational(cls, d1: int, d2: int, q: Rational) -> "BiquadElement":
        return cls(d1, d2, (q, 0, 0, 0))

    @classmethod
    def from_quad(cls, d1: int, d2: int, x: QuadElement) -> "BiquadElement":
        """Embed an element of F, K2 or K (recognized by its discriminant)."""
        u, v = x.coords
        if x.d == d1:
            return cls(d1, d2, (u, v, 0, 0))
        if x.d == d2:
            return cls(d1, d2, (u, 0, v, 0))
        if x.d == d1 * d2:
            return cls(d1, d2, (u, 0, 0, v))
        raise ValueError(f"Q(sqrt {x.d}) is not a quadratic subfield of H")

    def _like(self, coords) -> "BiquadElement":
        return BiquadElement(self.d1, self.d2, coords)

    # -- structure --

    def apply(self, h: str) -> "BiquadElement":
        return self._like(tuple(s * x for s, x in zip(_SIGNS[h], self.c)))

    def is_zero(self) -> bool:
        return not any(self.c)

    def subfield(self) -> str:
        """Smallest of "Q", "F", "K2", "K", "H" containing the element."""
        nz = tuple(x != 0 for x in self.c[1:])
        if nz == (False, False, False):
            return "Q"
        if nz == (True, False, False):
            return "F"
        if nz == (False, True, False):
            return "K2"
        if nz == (False, False, True):
            return "K"
        return "H"

    def to_quad(self, field: str) -> QuadElement:
        """Coordinates in the quadratic subfield ``field`` ("F", "K2" or "K")."""
        c0, c1, c2, c3 = self.c
        d = {"F": self.d1, "K2": self.d2, "K": self.d1 * self.d2}[field]
        v = {"F": c1, "K2": c2, "K": c3}[field]
        if self.subfield() not in ("Q", field):
            raise ValueError(f"{self} does not lie in {field}")
        den = c0.denominator * v.denominator
        return QuadElement(d, int(c0 * den), int(v * den), den)

    def relative_norm(self, field: str) -> "BiquadElement":
        """N_{H/E}(x) for E in {"F", "K2", "K"}."""
        h = {"F": "t", "K2": "st", "K": "s"}[field]
        return self * self.apply(h)

    def absolute_norm(self) -> Fraction:
        n = self.relative_norm("K")
        return n.to_quad("K").norm()

    def trace(self) -> Fraction:
        return 4 * self.c[0]

    # -- ring operations --

    def _coerce(self, other) -> "BiquadElement":
        if isinstance(other, BiquadElement):
            if (other.d1, other.d2) != (self.d1, self.d2):
                raise TypeError("elements of different biquadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return BiquadElement.from_rational(self.d1, self.d2, other)
        if isinstance(other, QuadElement):
            return BiquadElement.from_quad(self.d1, self.d2, other)
        return NotImplemented

    def __add__(self, other) -> "BiquadElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._like(tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self) -> "BiquadElement":
        return self._like(tuple(-a for a in self.c))

    def __sub__(self, other) -> "BiquadElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BiquadElement":
        return (-self) + other

    def __mul__(self, other) -> "BiquadElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = other.c
        d1, d2 = self.d1, self.d2
        return self._like((
            a0 * b0 + d1 * a1 * b1 + d2 * a2 * b2 + d1 * d2 * a3 * b3,
            a0 * b1 + a1 * b0 + d2 * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + d1 * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ))

    __rmul__ = __mul__

    def inverse(self) -> "BiquadElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        y = self * self.apply("t")          # in F
        n = (y * y.apply("s")).c[0]          # in Q
        return (self.apply("t") * y.apply("s")) / n

    def __truediv__(self, other) -> "BiquadElement":
        if isinstance(other, (int, Fraction)):
            return self._like(tuple(a / other for a in self.c))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int) -> "BiquadElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = BiquadElement.from_rational(self.d1, self.d2, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.c == other.c

    def __hash__(self) -> int:
        return hash((self.d1, self.d2, self.c))

    def sort_key(self) -> Tuple:
        return tuple((x.numerator, x.denominator) for x in self.c)

    def to_json(self) -> List[str]:
        return [str(x) for x in self.c]

    def __repr__(self) -> str:
        names = ("1", f"sqrt({self.d1})", f"sqrt({self.d2})", f"sqrt({self.d1 * self.d2})")
        terms = [f"{x}*{n}" if n != "1" else str(x) for x, n in zip(self.c, names) if x]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class Place:
    """One of the four places pi, s(pi), t(pi), st(pi) of H above p."""
    h: str = "1"

    @property
    def name(self) -> str:
        return {"1": "pi", "s": "sigma pi", "t": "tau pi", "st": "sigma tau pi"}[self.h]

    def apply(self, g: str) -> "Place":
        return Place(compose(g, self.h))


P_PLACES = tuple(Place(h) for h in GALOIS)


class EigenUnit:
    """Formal combination sum_i c_i (x) u_i with rational c_i and u_i in H^x.

    Terms are kept normalized: equal units merged, zero coefficients dropped,
    order fixed by the coordinates of the unit.
    """

    def __init__(self, terms: Iterable[Tuple[Rational, BiquadElement]]):
        merged: "OrderedDict[BiquadElement, Fraction]" = OrderedDict()
        for c, u in terms:
            if u.is_zero():
                raise ValueError("zero is not a unit")
            merged[u] = merged.get(u, Fraction(0)) + Fraction(c)
        self.terms: Tuple[Tuple[Fraction, BiquadElement], ...] = tuple(
            (c, u) for u, c in sorted(merged.items(), key=lambda kv: kv[0].sort_key()) if c
        )

    def apply(self, h: str) -> "EigenUnit":
        return EigenUnit((c, u.apply(h)) for c, u in self.terms)

    def scale(self, k: Rational) -> "EigenUnit":
        return EigenUnit((c * k, u) for c, u in self.terms)

    def __neg__(self) -> "EigenUnit":
        return self.scale(-1)

    def __add__(self, other: "EigenUnit") -> "EigenUnit":
        return EigenUnit(self.terms + other.terms)

    def log_at(self, setting, place: Place):
        """sum_i c_i log_p(iota_place(u_i))."""
        total = None
        for c, u in self.terms:
            term = setting.log_at(u, place) * c
            total = term if total is None else total + term
        return total if total is not None else setting.field.zero(setting.prec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EigenUnit):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        return " + ".join(f"{c}(x)[{u}]" for c, u in self.terms) or "0"


def eigen_project(u: BiquadElement) -> EigenUnit:
    """u_phi = 1 (x) u - 1 (x) sigma(u) for the quadratic character phi."""
    return EigenUnit([(1, u), (-1, u.apply("s"))])
