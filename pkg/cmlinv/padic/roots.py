from __future__ import annotations

import math
from typing import List

from .field import UnramifiedField
from .functions import root_of_unity_padic
from .scalar import PadicScalar


class RootOfUnity:
    """zeta_n^j kept exact; reduced so that gcd(j, n) = 1 or n = 1."""

    __slots__ = ("n", "j")

    def __init__(self, n: int, j: int = 0):
        if n < 1:
            raise ValueError("order must be positive")
        j %= n
        g = math.gcd(j, n)
        if j == 0:
            n, j = 1, 0
        else:
            n, j = n // g, j // g
        self.n = n
        self.j = j

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(1, 0)

    def order(self) -> int:
        return self.n

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        m = self.n * other.n // math.gcd(self.n, other.n)
        return RootOfUnity(m, self.j * (m // self.n) + other.j * (m // other.n))

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.n, -self.j)

    def conjugate(self) -> "RootOfUnity":
        return self.inverse()

    def __truediv__(self, other: "RootOfUnity") -> "RootOfUnity":
        return self * other.inverse()

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.n, self.j * k)

    def __neg__(self) -> "RootOfUnity":
        return self * RootOfUnity(2, 1)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other in (1, -1):
            other = RootOfUnity(2, 0 if other == 1 else 1)
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return (self.n, self.j) == (other.n, other.j)

    def __hash__(self) -> int:
        return hash((self.n, self.j))

    def exponent_in(self, n: int) -> int:
        """j' with self = zeta_n^j'."""
        if n % self.n:
            raise ValueError(f"zeta_{self.n}^{self.j} is not an {n}-th root of unity")
        return self.j * (n // self.n) % n

    def to_padic(self, field: UnramifiedField, prec: int) -> PadicScalar:
        return root_of_unity_padic(field, self.n, self.j, prec)

    def to_json(self) -> List[int]:
        return [self.n, self.j]

    @classmethod
    def from_json(cls, pair) -> "RootOfUnity":
        return cls(int(pair[0]), int(pair[1]))

    def __repr__(self) -> str:
        return f"zeta_{self.n}^{self.j}"
