"""Sparse q-expansions and the Hecke recursions that build and check them."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Any, Callable, Dict, Iterator, Optional, Tuple

import sympy

from ..cmfield import CMSetting
from ..quadfield import kronecker

logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def factorizations(nmax: int) -> Tuple[Dict[int, int], ...]:
    """factorint(n) for 0 <= n <= nmax (index 0 and 1 are empty)."""
    return tuple({} if n < 2 else sympy.factorint(n) for n in range(nmax + 1))


def prime_kind(setting: CMSetting, ell: int) -> str:
    """One of "p", "split", "inert", "ramified" for the prime ell."""
    if ell == setting.p:
        return "p"
    k = kronecker(-setting.D, ell)
    return {1: "split", -1: "inert", 0: "ramified"}[k]


def epsilon_K(setting: CMSetting, ell: int) -> int:
    return kronecker(-setting.D, ell)


@dataclass
class QExpansion:
    """n -> a_n for 1 <= n <= nmax; missing indices are zero."""
    coeffs: Dict[int, Any]
    label: str
    weight: str = "1"
    prec: Optional[int] = None
    nmax: int = 0
    meta: Dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.nmax:
            self.nmax = max(self.coeffs, default=0)

    def __getitem__(self, n: int):
        return self.coeffs.get(n, 0)

    def items(self) -> Iterator[Tuple[int, Any]]:
        for n in range(1, self.nmax + 1):
            yield n, self[n]

    def map(self, fn: Callable[[Any], Any], label: str) -> "QExpansion":
        return QExpansion({n: fn(a) for n, a in self.coeffs.items()}, label, self.weight,
                          self.prec, self.nmax)

    def combine(self, other: "QExpansion", fn: Callable[[Any, Any], Any], label: str) -> "QExpansion":
        nmax = min(self.nmax, other.nmax)
        return QExpansion({n: fn(self[n], other[n]) for n in range(1, nmax + 1)}, label,
                          self.weight, self.prec, nmax)

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self.combine(other, lambda a, b: a - b, f"{self.label}-{other.label}")

    def __add__(self, other: "QExpansion") -> "QExpansion":
        return self.combine(other, lambda a, b: a + b, f"{self.label}+{other.label}")

    def scale(self, c, label: Optional[str] = None) -> "QExpansion":
        return self.map(lambda a: a * c, label or self.label)

    def truncate(self, nmax: int) -> "QExpansion":
        return QExpansion({n: a for n, a in self.coeffs.items() if n <= nmax}, self.label,
                          self.weight, self.prec, min(nmax, self.nmax))

    def compare(self, other: "QExpansion", digits: int, nmax: Optional[int] = None
                ) -> Tuple[bool, Optional[int], int]:
        """(ok, first index agreeing to fewer than ``digits`` digits, minimal agreement)."""
        nmax = min(nmax or self.nmax, self.nmax, other.nmax)
        worst = None
        first_bad = None
        for n in range(1, nmax + 1):
            a, b = self[n], other[n]
            if isinstance(a, int) and isinstance(b, int):
                d = digits if a == b else -1
            elif isinstance(a, int):
                d = b.agreement(b._coerce(a))
            else:
                d = a.agreement(a._coerce(b) if isinstance(b, int) else b)
            d = min(d, digits)
            worst = d if worst is None else min(worst, d)
            if d < digits and first_bad is None:
                first_bad = n
        return first_bad is None, first_bad, int(worst if worst is not None else digits)

    def to_json(self) -> Dict[str, Any]:
        out = {}
        for n, a in sorted(self.coeffs.items()):
            if isinstance(a, int):
                if a:
                    out[str(n)] = a
            elif not a.is_zero():
                out[str(n)] = a.to_json()
        return {"label": self.label, "weight": self.weight, "nmax": self.nmax, "coeffs": out}


def hecke_expansion(nmax: int, prime_value: Callable[[int], Any], det: Callable[[int], Any],
                    one: Any) -> Dict[int, Any]:
    """Coefficients of a normalized eigenform from its prime coefficients.

    a_{mn} = a_m a_n for coprime m, n and
    a_{l^(r+1)} = a_l a_{l^r} - det(l) a_{l^(r-1)};  det(l) = 0 gives a_{l^r} = a_l^r.
    """
    powers: Dict[int, list] = {}

    def prime_power(ell: int, r: int):
        seq = powers.get(ell)
        if seq is None:
            seq = powers[ell] = [one, prime_value(ell)]
        while len(seq) <= r:
            d = det(ell)
            nxt = seq[1] * seq[-1]
            if not (isinstance(d, int) and d == 0):
                nxt = nxt - d * seq[-2]
            seq.append(nxt)
        return seq[r]

    facs = factorizations(nmax)
    out: Dict[int, Any] = {1: one}
    for n in range(2, nmax + 1):
        val = None
        for ell, r in facs[n].items():
            term = prime_power(ell, r)
            val = term if val is None else val * term
        out[n] = val
    return out


def hecke_recursion_check(expansion: QExpansion, setting: CMSetting,
                          base: Optional[QExpansion] = None, det_at_p: int = 0
                          ) -> Tuple[bool, Optional[int]]:
    """Check the eigenform recursions (base None) or their derivative (base given).

    ``det_at_p`` is 0 for U_p-eigenforms and 1 for the unstabilized theta series.

    For a derivative expansion a' of a family through ``base`` with constant
    determinant difference:
        a'_{mn} = a_m a'_n + a_n a'_m                     (m, n coprime)
        a'_{l^(r+1)} = a'_l a_{l^r} + a_l a'_{l^r} - eps(l) a'_{l^(r-1)}   (l prime to Dp)
        a'_{l^r} = r a_l^(r-1) a'_l                        (l | Dp)
    """
    facs = factorizations(expansion.nmax)
    a = expansion
    b = base

    def eps(ell: int) -> int:
        if ell == setting.p:
            return det_at_p
        return 0 if setting.D % ell == 0 else epsilon_K(setting, ell)

    for n in range(2, expansion.nmax + 1):
        fac = facs[n]
        if len(fac) > 1:
            ell, r = next(iter(fac.items()))
            m = ell ** r
            k = n // m
            if b is None:
                ok = a[n] == a[m] * a[k]
            else:
                ok = a[n] == b[m] * a[k] + b[k] * a[m]
        else:
            (ell, r), = fac.items()
            e = eps(ell)
            if r == 1:
                continue
            prev, prev2 = ell ** (r - 1), ell ** (r - 2)
            if b is None:
                ok = a[n] == a[ell] * a[prev] - e * a[prev2]
            elif e == 0:
                ok = a[n] == b[ell] ** (r - 1) * a[ell] * r
            else:
                ok = a[n] == a[ell] * b[prev] + b[ell] * a[prev] - e * a[prev2]
        if not ok:
            logger.info("recursion fails for %s at n=%d", expansion.label, n)
            return False, n
    return True, None
