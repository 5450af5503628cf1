"""2x2 matrices over the dual numbers and points of the projective line."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence, Tuple

import sympy

from ..errors import DegenerateConfiguration
from ..padic import DualScalar, PadicScalar, UnramifiedField


class DualMatrix:
    """((a, b), (c, d)) with entries in Q_{p^f}[X]/(X^2)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[DualScalar]]):
        (a, b), (c, d) = rows
        self.rows: Tuple[Tuple[DualScalar, DualScalar], ...] = ((a, b), (c, d))

    @classmethod
    def identity(cls, field: UnramifiedField, prec: int) -> "DualMatrix":
        one, zero = DualScalar(field.one(prec), 0), DualScalar(field.zero(prec), 0)
        return cls(((one, zero), (zero, one)))

    @classmethod
    def swap(cls, field: UnramifiedField, prec: int) -> "DualMatrix":
        one, zero = DualScalar(field.one(prec), 0), DualScalar(field.zero(prec), 0)
        return cls(((zero, one), (one, zero)))

    @classmethod
    def diagonal(cls, x: DualScalar, y: DualScalar) -> "DualMatrix":
        zero = DualScalar(x.a.field.zero(x.a.prec), 0)
        return cls(((x, zero), (zero, y)))

    def __getitem__(self, ij: Tuple[int, int]) -> DualScalar:
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: "DualMatrix") -> "DualMatrix":
        r, s = self.rows, other.rows
        return DualMatrix([[r[i][0] * s[0][j] + r[i][1] * s[1][j] for j in range(2)]
                           for i in range(2)])

    def __pow__(self, n: int) -> "DualMatrix":
        if n < 0:
            raise ValueError("negative powers are not supported")
        (a, _), _ = self.rows
        out = DualMatrix.identity(a.a.field, a.a.prec)
        for _ in range(n):
            out = out * self
        return out

    def trace(self) -> DualScalar:
        return self.rows[0][0] + self.rows[1][1]

    def det(self) -> DualScalar:
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def agreement(self, other: "DualMatrix") -> int:
        return min(self[i, j].agreement(other[i, j]) for i in range(2) for j in range(2))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualMatrix):
            return NotImplemented
        return all(self[i, j] == other[i, j] for i in range(2) for j in range(2))

    __hash__ = None

    def to_json(self):
        return [[{"a": e.a.to_json(), "b": e.b.to_json()} for e in row] for row in self.rows]

    def __repr__(self) -> str:
        return f"DualMatrix({self.rows!r})"


def _is_zero(x: Any) -> bool:
    if isinstance(x, PadicScalar):
        return x.is_zero()
    if isinstance(x, int):
        return x == 0
    return sympy.simplify(x) == 0


@dataclass(frozen=True, eq=False)
class Line:
    """[a : b] in P^1, normalized to b = 1 or to [1 : 0].

    Coordinates are PadicScalars, or sympy expressions for symbolic checks.
    """
    a: Any
    b: Any

    def __post_init__(self):
        if _is_zero(self.a) and _is_zero(self.b):
            raise DegenerateConfiguration("[0 : 0] is not a point of P^1")
        if _is_zero(self.b):
            object.__setattr__(self, "a", self.a * 0 + 1)
            object.__setattr__(self, "b", self.b * 0)
        elif not (isinstance(self.b, int) and self.b == 1):
            object.__setattr__(self, "a", self.a / self.b)
            object.__setattr__(self, "b", 1)

    @property
    def at_infinity(self) -> bool:
        return _is_zero(self.b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Line):
            return NotImplemented
        return _is_zero(self.a * other.b - self.b * other.a)

    __hash__ = None

    def to_json(self):
        def j(x):
            return x.to_json() if isinstance(x, PadicScalar) else str(x)
        return [j(self.a), j(self.b)]


def _bracket(z: Line, w: Line):
    """z - w in affine terms: the 2x2 determinant a_z b_w - a_w b_z."""
    return z.a * w.b - w.a * z.b


def cross_ratio(z1: Line, z2: Line, z3: Line, z4: Line):
    """((z1 - z3)(z2 - z4)) / ((z1 - z4)(z2 - z3)), with points at infinity handled projectively."""
    seen = []
    for z in (z1, z2, z3, z4):
        if not any(z == w for w in seen):
            seen.append(z)
    if len(seen) < 3:
        raise DegenerateConfiguration("fewer than three distinct lines", distinct=len(seen))
    den = _bracket(z1, z4) * _bracket(z2, z3)
    if _is_zero(den):
        raise DegenerateConfiguration("cross-ratio is infinite for this ordering")
    return _bracket(z1, z3) * _bracket(z2, z4) / den
