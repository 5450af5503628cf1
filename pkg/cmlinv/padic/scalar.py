"""Capped-precision elements of an unramified extension of Q_p.

A PadicScalar stores p^val * u where u is a polynomial in t (the field
generator) with integer coefficients known modulo p^(prec - val).  The
absolute precision ``prec`` means the element is known modulo p^prec.

Propagation rules:
    add/sub  -> min of absolute precisions
    mul      -> min(N1 + v2, N2 + v1)  (relative precision min(r1, r2))
    inverse  -> relative precision kept, so absolute precision N - 2v
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple

from ..errors import ZeroInput
from .field import UnramifiedField, unramified_field, vp_int


class PadicScalar:
    __slots__ = ("field", "val", "unit", "prec")

    def __init__(self, field: UnramifiedField, val, unit: Tuple[int, ...], prec: int):
        self.field = field
        self.val = val
        self.unit = unit
        self.prec = prec

    # -- constructors --

    @classmethod
    def zero(cls, field: UnramifiedField, prec: int) -> "PadicScalar":
        return cls(field, math.inf, field.zero_coeffs(), prec)

    @classmethod
    def normalize(cls, field: UnramifiedField, coeffs: Sequence[int], shift: int, prec: int) -> "PadicScalar":
        coeffs = list(coeffs) + [0] * (field.f - len(coeffs))
        p = field.p
        m = min((vp_int(c, p) for c in coeffs if c), default=math.inf)
        if m == math.inf or shift + m >= prec:
            return cls.zero(field, prec)
        v = shift + m
        mod = p ** (prec - v)
        scale = p ** m
        unit = tuple((c // scale) % mod for c in coeffs)
        return cls(field, v, unit, prec)

    @classmethod
    def from_value(cls, field: UnramifiedField, value, prec: int) -> "PadicScalar":
        if isinstance(value, PadicScalar):
            return value.with_prec(prec)
        if isinstance(value, int):
            return cls.normalize(field, [value], 0, prec)
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
            p = field.p
            vd = vp_int(den, p)
            den_unit = den // p ** vd
            if num == 0:
                return cls.zero(field, prec)
            vn = vp_int(num, p)
            v = vn - vd
            if v >= prec:
                return cls.zero(field, prec)
            r = prec - v
            mod = p ** r
            unit = (num // p ** vn) * pow(den_unit, -1, mod) % mod
            return cls(field, v, (unit,) + (0,) * (field.f - 1), prec)
        if isinstance(value, (tuple, list)):
            return cls.normalize(field, value, 0, prec)
        raise TypeError(f"cannot build a p-adic scalar from {type(value).__name__}")

    # -- basic queries --

    @property
    def p(self) -> int:
        return self.field.p

    def is_zero(self) -> bool:
        return self.val == math.inf

    def valuation(self):
        return self.val

    def relative_precision(self) -> int:
        return 0 if self.is_zero() else self.prec - self.val

    def _vlow(self):
        return self.prec if self.is_zero() else self.val

    def with_prec(self, prec: int) -> "PadicScalar":
        if prec >= self.prec:
            return self
        if self.is_zero() or self.val >= prec:
            return PadicScalar.zero(self.field, prec)
        mod = self.p ** (prec - self.val)
        return PadicScalar(self.field, self.val, tuple(c % mod for c in self.unit), prec)

    def unit_part(self) -> "PadicScalar":
        if self.is_zero():
            raise ZeroInput("zero has no unit part")
        return PadicScalar(self.field, 0, self.unit, self.prec - self.val)

    def residue(self) -> Tuple[int, ...]:
        """Residue of the unit part in F_{p^f}."""
        return tuple(c % self.p for c in self.unit)

    def shift(self, k: int) -> "PadicScalar":
        """Multiply by p^k exactly."""
        if self.is_zero():
            return PadicScalar.zero(self.field, self.prec + k)
        return PadicScalar(self.field, self.val + k, self.unit, self.prec + k)

    def agreement(self, other) -> int:
        """Number of p-adic digits to which self and other are known to agree."""
        d = self - other
        return d.prec if d.is_zero() else d.val

    def integer_coeffs(self) -> Tuple[int, ...]:
        """Integer coefficients representing the element (requires val >= 0)."""
        if self.is_zero():
            return self.field.zero_coeffs()
        if self.val < 0:
            raise ValueError("element is not integral")
        scale = self.p ** self.val
        return tuple(c * scale for c in self.unit)

    # -- coercion --

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.field != self.field:
                if other.field.p != self.field.p:
                    raise TypeError("p-adic scalars over different primes")
                raise TypeError(f"mixing {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PadicScalar.zero(self.field, self.prec + abs(self._vlow()) + 1)
            frac = Fraction(other)
            v = vp_int(frac.numerator, self.p) - vp_int(frac.denominator, self.p)
            extra = abs(v) + (0 if self.is_zero() else abs(self.val)) + 2
            return PadicScalar.from_value(self.field, frac, self.prec + extra)
        return NotImplemented

    # -- ring operations --

    def __neg__(self) -> "PadicScalar":
        if self.is_zero():
            return self
        mod = self.p ** (self.prec - self.val)
        return PadicScalar(self.field, self.val, tuple((-c) % mod for c in self.unit), self.prec)

    def __add__(self, other) -> "PadicScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return other.with_prec(prec)
        if other.is_zero():
            return self.with_prec(prec)
        v = min(self.val, other.val)
        if v >= prec:
            return PadicScalar.zero(self.field, prec)
        sa = self.p ** (self.val - v)
        sb = self.p ** (other.val - v)
        coeffs = [a * sa + b * sb for a, b in zip(self.unit, other.unit)]
        return PadicScalar.normalize(self.field, coeffs, v, prec)

    __radd__ = __add__

    def __sub__(self, other) -> "PadicScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PadicScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "PadicScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec + other._vlow(), other.prec + self._vlow())
        if self.is_zero() or other.is_zero():
            return PadicScalar.zero(self.field, prec)
        v = self.val + other.val
        mod = self.p ** (prec - v)
        unit = self.field.mul_coeffs(self.unit, other.unit, mod)
        return PadicScalar(self.field, v, unit, prec)

    __rmul__ = __mul__

    def inverse(self) -> "PadicScalar":
        if self.is_zero():
            raise ZeroInput("division by a p-adic zero", prec=self.prec)
        r = self.prec - self.val
        unit = self.field.inverse_coeffs(self.unit, r)
        return PadicScalar(self.field, -self.val, unit, r - self.val)

    def __truediv__(self, other) -> "PadicScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "PadicScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "PadicScalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return PadicScalar.from_value(self.field, 1, self.relative_precision() or self.prec)
        result = None
        base = self
        while n > 0:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O({self.p}^{self.prec})"
        return (f"PadicScalar(p={self.p}, f={self.field.f}, val={self.val}, "
                f"unit={self.unit}, prec={self.prec})")

    # -- serialization --

    def to_json(self) -> Dict[str, Any]:
        p = self.p
        if self.is_zero():
            return {"p": p, "f": self.field.f, "val": None, "digits": [], "prec": self.prec}
        r = self.prec - self.val
        digits = []
        for c in self.unit:
            limbs = []
            for _ in range(r):
                c, d = divmod(c, p)
                limbs.append(d)
            digits.append(limbs)
        return {"p": p, "f": self.field.f, "val": self.val, "digits": digits, "prec": self.prec}

    @classmethod
    def from_json(cls, doc: Dict[str, Any]) -> "PadicScalar":
        field = unramified_field(doc["p"], doc["f"])
        if doc["val"] is None:
            return cls.zero(field, doc["prec"])
        p = doc["p"]
        coeffs = [sum(d * p ** i for i, d in enumerate(limbs)) for limbs in doc["digits"]]
        return cls.normalize(field, coeffs, doc["val"], doc["prec"])
