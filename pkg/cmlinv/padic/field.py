# Unramified extensions Q_{p^f} = Q_p[t]/(m(t)) with a deterministic modulus
from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import List, Sequence, Tuple

import sympy

Coeffs = Tuple[int, ...]

_t = sympy.Symbol("t")


def vp_int(n: int, p: int) -> float:
    """p-adic valuation of an integer (math.inf for 0)."""
    if n == 0:
        return math.inf
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _default_modulus(p: int, f: int) -> Coeffs:
    """Smallest monic irreducible polynomial of degree f over F_p, low degree first.

    Candidates (c_0, ..., c_{f-1}) are scanned in lexicographic order, so the
    choice is reproducible across runs and machines.
    """
    if f == 1:
        return (0, 1)
    for coeffs in product(range(p), repeat=f):
        if coeffs[0] == 0:
            continue
        dense = [1] + list(reversed(coeffs))
        if sympy.Poly(dense, _t, modulus=p).is_irreducible:
            return tuple(coeffs) + (1,)
    raise ValueError(f"no irreducible polynomial of degree {f} over F_{p}")


class UnramifiedField:
    """The unramified extension of Q_p of degree f.

    Elements are handled by :class:`cmlinv.padic.scalar.PadicScalar`; this class
    owns the modulus and the integer polynomial arithmetic underneath.
    """

    def __init__(self, p: int, f: int = 1):
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        if f < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.f = f
        self.q = p ** f
        self.modulus = _default_modulus(p, f)

    def __repr__(self) -> str:
        return f"UnramifiedField(p={self.p}, f={self.f})"

    def __eq__(self, other) -> bool:
        return isinstance(other, UnramifiedField) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self) -> int:
        return hash((self.p, self.f))

    # -- integer polynomial arithmetic modulo (m(t), p^M) --

    def mul_coeffs(self, a: Sequence[int], b: Sequence[int], mod: int) -> Coeffs:
        f = self.f
        prod: List[int] = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        m = self.modulus
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(f):
                    prod[k - f + i] -= c * m[i]
        return tuple(c % mod for c in prod[:f])

    def pow_coeffs(self, a: Sequence[int], n: int, mod: int) -> Coeffs:
        result: Coeffs = self.one_coeffs()
        base = tuple(c % mod for c in a)
        while n > 0:
            if n & 1:
                result = self.mul_coeffs(result, base, mod)
            base = self.mul_coeffs(base, base, mod)
            n >>= 1
        return tuple(c % mod for c in result)

    def one_coeffs(self) -> Coeffs:
        return (1,) + (0,) * (self.f - 1)

    def zero_coeffs(self) -> Coeffs:
        return (0,) * self.f

    def inverse_coeffs(self, a: Sequence[int], mod_exp: int) -> Coeffs:
        """Inverse of a unit modulo p^mod_exp: Fermat on the residue, then Newton."""
        p = self.p
        y = self.pow_coeffs([c % p for c in a], self.q - 2, p)
        prec = 1
        while prec < mod_exp:
            prec = min(2 * prec, mod_exp)
            mod = p ** prec
            ay = self.mul_coeffs(a, y, mod)
            two_minus = tuple(((2 if i == 0 else 0) - c) % mod for i, c in enumerate(ay))
            y = self.mul_coeffs(y, two_minus, mod)
        return tuple(c % p ** mod_exp for c in y)

    # -- residue field helpers --

    def residue_index(self, coeffs: Sequence[int]) -> int:
        """Canonical integer representative sum c_i p^i of a residue class."""
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def residue_from_index(self, n: int) -> Coeffs:
        digits = []
        for _ in range(self.f):
            n, r = divmod(n, self.p)
            digits.append(r)
        return tuple(digits)

    def element(self, value, prec: int):
        from .scalar import PadicScalar
        return PadicScalar.from_value(self, value, prec)

    def from_coeffs(self, coeffs: Sequence[int], prec: int, shift: int = 0):
        from .scalar import PadicScalar
        return PadicScalar.normalize(self, coeffs, shift, prec)

    def zero(self, prec: int):
        from .scalar import PadicScalar
        return PadicScalar.zero(self, prec)

    def one(self, prec: int):
        return self.element(1, prec)

    def gen(self, prec: int):
        """The class of t in Z_p[t]/(m(t))."""
        if self.f == 1:
            return self.element(-self.modulus[0], prec)
        return self.from_coeffs((0, 1) + (0,) * (self.f - 2), prec)


@lru_cache(maxsize=None)
def unramified_field(p: int, f: int = 1) -> UnramifiedField:
    """Memoized constructor: one field object per (p, f)."""
    return UnramifiedField(p, f)


@lru_cache(maxsize=None)
def residue_generator(p: int, f: int) -> Coeffs:
    """Smallest canonical integer whose residue generates F_{p^f}^x."""
    field = unramified_field(p, f)
    order = field.q - 1
    factors = sympy.factorint(order)
    one = field.one_coeffs()
    for n in range(1, field.q):
        g = field.residue_from_index(n)
        if all(field.pow_coeffs(g, order // ell, p) != one for ell in factors):
            return g
    raise ValueError(f"no generator of F_{p}^{f} found")
