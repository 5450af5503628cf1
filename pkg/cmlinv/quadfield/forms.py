"""Positive definite binary quadratic forms and the form class group."""
from __future__ import annotations

import logging
import math
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

import sympy

from .arith import require_fundamental

logger = logging.getLogger(__name__)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(x, y, g) with x a + y b = g = gcd(a, b)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0, a


class BinaryQF(tuple):
    """The form a x^2 + b x y + c y^2."""

    def __new__(cls, a: int, b: int, c: int):
        return tuple.__new__(cls, (a, b, c))

    @classmethod
    def identity_for_discriminant(cls, d: int) -> "BinaryQF":
        b = d % 2
        return cls(1, b, (b * b - d) // 4)

    @classmethod
    def from_ab(cls, a: int, b: int, d: int) -> "BinaryQF":
        return cls(a, b, (b * b - d) // (4 * a))

    def discriminant(self) -> int:
        a, b, c = self
        return b * b - 4 * a * c

    def identity(self) -> "BinaryQF":
        return self.identity_for_discriminant(self.discriminant())

    def normalized(self) -> "BinaryQF":
        a, b, c = self
        if -a < b <= a:
            return self
        r = (a - b) // (2 * a)
        b, c = b + 2 * r * a, a * r * r + b * r + c
        return self.__class__(a, b, c)

    def reduced(self) -> "BinaryQF":
        a, b, c = self.normalized()
        while a > c or (a == c and b < 0):
            s = (c + b) // (c + c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        return self.__class__(a, b, c).normalized()

    def is_reduced(self) -> bool:
        a, b, c = self
        return -a < b <= a <= c and not (a == c and b < 0)

    def inverse(self) -> "BinaryQF":
        a, b, c = self
        return self.__class__(a, -b, c).reduced()

    def compose(self, other: "BinaryQF") -> "BinaryQF":
        """Dirichlet composition in the Shanks arrangement, followed by reduction."""
        a1, b1, c1 = self
        a2, b2, c2 = other
        if a1 > a2:
            a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
        s = (b1 + b2) // 2
        n = b2 - s
        if a2 % a1 == 0:
            y1, d = 0, a1
        else:
            u, _, d = _xgcd(a2, a1)
            y1 = u
        if s % d == 0:
            y2, x2, d1 = -1, 0, d
        else:
            u, v, d1 = _xgcd(s, d)
            x2, y2 = u, -v
        v1 = a1 // d1
        v2 = a2 // d1
        r = (y1 * y2 * n - x2 * c2) % v1
        b3 = b2 + 2 * v2 * r
        a3 = v1 * v2
        c3 = (b3 * b3 - self.discriminant()) // (4 * a3)
        return self.__class__(a3, b3, c3).reduced()

    __mul__ = compose

    def __pow__(self, n: int) -> "BinaryQF":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.identity()
        base = self.reduced()
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, x: int, y: int) -> int:
        a, b, c = self
        return a * x * x + b * x * y + c * y * y


def reduced_forms(d: int) -> List[BinaryQF]:
    """All primitive reduced forms of discriminant d < 0, principal form first."""
    out = []
    amax = math.isqrt(-d // 3) + 1
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            f = BinaryQF(a, b, c)
            if f.is_reduced() and math.gcd(math.gcd(a, b), c) == 1:
                out.append(f)
    out.sort(key=lambda f: (f[0], abs(f[1]), f[1] < 0))
    return out


class ClassGroup:
    """Form class group of a fundamental discriminant d < 0.

    Elements are indexed by their position in ``forms``.  A basis g_1..g_r with
    orders n_1..n_r is chosen deterministically, and ``dlog`` maps every class
    to its exponent vector in that basis.
    """

    def __init__(self, d: int):
        require_fundamental(d)
        if d >= 0:
            raise ValueError("class groups are only computed for imaginary fields")
        self.d = d
        self.forms: List[BinaryQF] = reduced_forms(d)
        self.index: Dict[Tuple[int, int, int], int] = {tuple(f): i for i, f in enumerate(self.forms)}
        self.h = len(self.forms)
        h = self.h
        self._mul = [[self.index[tuple(self.forms[i] * self.forms[j])] for j in range(h)]
                     for i in range(h)]
        self.basis, self.invariants = self._find_basis()
        self.dlog: Dict[int, Tuple[int, ...]] = {}
        for exps in product(*[range(n) for n in self.invariants]):
            self.dlog[self.from_exponents(exps)] = tuple(exps)
        logger.debug("class group d=%d h=%d invariants=%s", d, h, self.invariants)

    # -- group law on indices --

    @property
    def identity(self) -> int:
        return 0

    def mul(self, i: int, j: int) -> int:
        return self._mul[i][j]

    def inv(self, i: int) -> int:
        return self.index[tuple(self.forms[i].inverse())]

    def pow(self, i: int, n: int) -> int:
        n %= self.order(i)
        out = self.identity
        for _ in range(n):
            out = self.mul(out, i)
        return out

    def order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            k += 1
        return k

    def from_exponents(self, exps: Sequence[int]) -> int:
        out = self.identity
        for g, e in zip(self.basis, exps):
            out = self.mul(out, self.pow(g, e))
        return out

    def class_of_form(self, form: Sequence[int]) -> int:
        return self.index[tuple(BinaryQF(*form).reduced())]

    def class_of(self, ideal) -> int:
        """Class of a QuadIdeal a Z + ((-b + sqrt d)/2) Z, via the form (a, b, c)."""
        return self.class_of_form(ideal.form())

    # -- structure --

    def _span(self, gens: Sequence[int], orders: Sequence[int]) -> set:
        out = {self.identity}
        for g, n in zip(gens, orders):
            new = set()
            x = self.identity
            for _ in range(n):
                new |= {self.mul(x, y) for y in out}
                x = self.mul(x, g)
            out = new
        return out

    def _invariant_orders(self) -> List[int]:
        """Elementary divisors n_1 | n_2 | ... from the prime-power element counts."""
        h = self.h
        orders = [self.order(i) for i in range(h)]
        primary: Dict[int, List[int]] = {}
        for q, e in sympy.factorint(h).items():
            counts = [sum(1 for o in orders if (q ** j) % o == 0) for j in range(e + 1)]
            # counts[j] = q^(sum_i min(j, e_i)); recover the exponents e_i
            logs = [round(math.log(c, q)) for c in counts]
            ranks = [logs[j] - logs[j - 1] for j in range(1, e + 1)]
            exps = []
            for j in range(1, e + 1):
                nxt = ranks[j] if j < e else 0
                exps += [j] * (ranks[j - 1] - nxt)
            primary[q] = sorted(exps)
        width = max((len(v) for v in primary.values()), default=0)
        invariants = [1] * width
        for q, exps in primary.items():
            padded = [0] * (width - len(exps)) + exps
            for i, e in enumerate(padded):
                invariants[i] *= q ** e
        return [n for n in invariants if n > 1]

    def _find_basis(self) -> Tuple[List[int], List[int]]:
        invariants = self._invariant_orders()
        invariants.sort(reverse=True)

        def extend(gens: List[int]) -> List[int]:
            k = len(gens)
            if k == len(invariants):
                return gens
            spanned = self._span(gens, invariants[:k])
            for cand in range(self.h):
                if self.order(cand) != invariants[k]:
                    continue
                if len(self._span(gens + [cand], invariants[:k + 1])) == len(spanned) * invariants[k]:
                    found = extend(gens + [cand])
                    if found:
                        return found
            return []

        basis = extend([])
        if len(self._span(basis, invariants)) != self.h:
            raise RuntimeError(f"no basis found for the class group of {self.d}")
        return basis, invariants

    def __repr__(self) -> str:
        return f"ClassGroup(d={self.d}, h={self.h}, invariants={self.invariants})"


@lru_cache(maxsize=128)
def class_group(d: int) -> ClassGroup:
    return ClassGroup(d)
