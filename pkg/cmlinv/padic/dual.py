"""Dual numbers a + bX with X^2 = 0 over capped p-adic scalars."""
from __future__ import annotations

from typing import Union

from .scalar import PadicScalar

Scalar = Union[PadicScalar, int]


class DualScalar:
    __slots__ = ("a", "b")

    def __init__(self, a: PadicScalar, b: Scalar = 0):
        if not isinstance(a, PadicScalar):
            raise TypeError("the constant term must be a PadicScalar")
        self.a = a
        self.b = b if isinstance(b, PadicScalar) else a.field.element(b, a.prec)

    def _coerce(self, other) -> "DualScalar":
        if isinstance(other, DualScalar):
            return other
        if isinstance(other, PadicScalar):
            return DualScalar(other, other.field.zero(other.prec))
        if isinstance(other, int):
            return DualScalar(self.a.field.element(other, self.a.prec + 10), 0)
        return NotImplemented

    def __add__(self, other) -> "DualScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DualScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "DualScalar":
        return DualScalar(-self.a, -self.b)

    def __sub__(self, other) -> "DualScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "DualScalar":
        return (-self) + other

    def __mul__(self, other) -> "DualScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return DualScalar(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inverse(self) -> "DualScalar":
        ia = self.a.inverse()
        return DualScalar(ia, -self.b * ia * ia)

    def __truediv__(self, other) -> "DualScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int) -> "DualScalar":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return DualScalar(self.a.field.one(self.a.prec), 0)
        # (a + bX)^n = a^n + n a^(n-1) b X
        return DualScalar(self.a ** n, n * self.a ** (n - 1) * self.b)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    __hash__ = None

    def agreement(self, other) -> int:
        other = self._coerce(other)
        return min(self.a.agreement(other.a), self.b.agreement(other.b))

    def __repr__(self) -> str:
        return f"DualScalar({self.a!r} + {self.b!r}*X)"
