"""Exact elements of Z[zeta_n], kept as polynomials mod x^n - 1."""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence, Tuple

import sympy

from ..padic import PadicScalar, RootOfUnity, UnramifiedField

_x = sympy.Symbol("x")


@lru_cache(maxsize=32)
def _cyclotomic(n: int) -> sympy.Poly:
    return sympy.Poly(sympy.cyclotomic_poly(n, _x), _x)


class CyclotomicInteger:
    """sum_j c_j zeta_n^j; equality is taken modulo the n-th cyclotomic polynomial."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs: Sequence[int] = ()):
        c = [0] * n
        for j, v in enumerate(coeffs):
            c[j % n] += int(v)
        self.n = n
        self.c: Tuple[int, ...] = tuple(c)

    @classmethod
    def integer(cls, n: int, k: int) -> "CyclotomicInteger":
        return cls(n, [k])

    @classmethod
    def root(cls, n: int, z: RootOfUnity) -> "CyclotomicInteger":
        c = [0] * n
        c[z.exponent_in(n)] = 1
        return cls(n, c)

    def _coerce(self, other) -> "CyclotomicInteger":
        if isinstance(other, CyclotomicInteger):
            if other.n != self.n:
                raise TypeError("cyclotomic integers of different levels")
            return other
        if isinstance(other, int):
            return CyclotomicInteger.integer(self.n, other)
        return NotImplemented

    def __add__(self, other) -> "CyclotomicInteger":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicInteger(self.n, [a + b for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicInteger":
        return CyclotomicInteger(self.n, [-a for a in self.c])

    def __sub__(self, other) -> "CyclotomicInteger":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CyclotomicInteger":
        return (-self) + other

    def __mul__(self, other) -> "CyclotomicInteger":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = self.n
        out = [0] * n
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        out[(i + j) % n] += a * b
        return CyclotomicInteger(n, out)

    __rmul__ = __mul__

    def reduced(self) -> Tuple[int, ...]:
        """Coefficients of the remainder modulo Phi_n, lowest degree first."""
        phi = _cyclotomic(self.n)
        poly = sympy.Poly(list(reversed(self.c)), _x)
        rem = poly.rem(phi)
        coeffs = [int(v) for v in reversed(rem.all_coeffs())]
        deg = phi.degree()
        return tuple(coeffs + [0] * (deg - len(coeffs)))

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.n, self.reduced()))

    def to_padic(self, field: UnramifiedField, prec: int) -> PadicScalar:
        total = field.zero(prec)
        for j, a in enumerate(self.c):
            if a:
                total = total + RootOfUnity(self.n, j).to_padic(field, prec) * a
        return total

    def to_json(self):
        return {"n": self.n, "coeffs": list(self.reduced())}

    def __repr__(self) -> str:
        terms = [f"{a}*z{self.n}^{j}" if j else str(a) for j, a in enumerate(self.reduced()) if a]
        return " + ".join(terms) or "0"
