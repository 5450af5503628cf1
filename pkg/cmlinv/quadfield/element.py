"""Elements (a + b*sqrt(d))/c of a quadratic field, kept in lowest terms."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Tuple, Union

Number = Union[int, Fraction]


class QuadElement:
    __slots__ = ("d", "a", "b", "c")

    def __init__(self, d: int, a: int, b: int = 0, c: int = 1):
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        self.d = d
        self.a = a // g
        self.b = b // g
        self.c = c // g

    @classmethod
    def from_rational(cls, d: int, q: Number) -> "QuadElement":
        q = Fraction(q)
        return cls(d, q.numerator, 0, q.denominator)

    @classmethod
    def from_half(cls, d: int, x: int, y: int) -> "QuadElement":
        """(x + y*sqrt(d))/2"""
        return cls(d, x, y, 2)

    @property
    def coords(self) -> Tuple[Fraction, Fraction]:
        """(u, v) with self = u + v*sqrt(d)."""
        return Fraction(self.a, self.c), Fraction(self.b, self.c)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.d * self.b * self.b, self.c * self.c)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.c)

    def conjugate(self) -> "QuadElement":
        return QuadElement(self.d, self.a, -self.b, self.c)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        n = self.norm()
        t = self.trace()
        return n.denominator == 1 and t.denominator == 1

    def half_coords(self) -> Tuple[int, int]:
        """(x, y) with self = (x + y*sqrt(d))/2; requires 2*self integral."""
        if 2 % self.c:
            raise ValueError(f"{self} is not in (1/2)Z[sqrt(d)]")
        k = 2 // self.c
        return self.a * k, self.b * k

    def normalized_sign(self) -> "QuadElement":
        """Representative of {x, -x} with a > 0, or a = 0 and b > 0."""
        if self.a < 0 or (self.a == 0 and self.b < 0):
            return -self
        return self

    def _coerce(self, other) -> "QuadElement":
        if isinstance(other, QuadElement):
            if other.d != self.d:
                raise TypeError(f"elements of Q(sqrt({self.d})) and Q(sqrt({other.d}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement.from_rational(self.d, other)
        return NotImplemented

    def __add__(self, other) -> "QuadElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadElement(self.d, self.a * other.c + other.a * self.c,
                           self.b * other.c + other.b * self.c, self.c * other.c)

    __radd__ = __add__

    def __neg__(self) -> "QuadElement":
        return QuadElement(self.d, -self.a, -self.b, self.c)

    def __sub__(self, other) -> "QuadElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QuadElement":
        return (-self) + other

    def __mul__(self, other) -> "QuadElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadElement(self.d, self.a * other.a + self.d * self.b * other.b,
                           self.a * other.b + self.b * other.a, self.c * other.c)

    __rmul__ = __mul__

    def inverse(self) -> "QuadElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.norm()
        conj = self.conjugate()
        return conj * Fraction(n.denominator, n.numerator)

    def __truediv__(self, other) -> "QuadElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QuadElement":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "QuadElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElement(self.d, 1)
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
        return (self.d, self.a, self.b, self.c) == (other.d, other.a, other.b, other.c)

    def __hash__(self) -> int:
        return hash((self.d, self.a, self.b, self.c))

    def to_json(self):
        return [self.d, self.a, self.b, self.c]

    def __repr__(self) -> str:
        return f"({self.a} + {self.b}*sqrt({self.d}))/{self.c}"
