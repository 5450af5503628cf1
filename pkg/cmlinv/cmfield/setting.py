"""The arithmetic context (D, p, psi) and its admissibility checks."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Dict, List, Optional, Tuple

import sympy

from ..errors import InadmissibleSetting, PrecisionLoss
from ..padic import (PadicScalar, RootOfUnity, UnramifiedField, from_rational, hensel_sqrt,
                     iwasawa_log, log_one_plus_p, unramified_field)
from ..quadfield import (ClassGroup, QuadElement, QuadIdeal, Split, class_group, is_fundamental,
                         kronecker, prime_discriminants, split_type)
from ..settings import settings
from .biquad import BiquadElement, Place

logger = logging.getLogger(__name__)


def genus_splits(D: int) -> List[Tuple[int, int]]:
    """All factorizations -D = d1 d2 into fundamental discriminants with d1 > 1 > 0 > d2."""
    primes = prime_discriminants(-D)
    out = set()
    for r in range(1, len(primes)):
        for subset in combinations(primes, r):
            d1 = math.prod(subset)
            if d1 > 1:
                out.add((d1, -D // d1))
    return sorted(out)


def represented_coprime(form: Tuple[int, int, int], modulus: int) -> int:
    """Smallest positive integer coprime to ``modulus`` represented by the form."""
    a, b, c = form
    best = None
    bound = 1
    while best is None:
        for x in range(-bound, bound + 1):
            for y in range(0, bound + 1):
                m = a * x * x + b * x * y + c * y * y
                if m > 0 and math.gcd(m, modulus) == 1 and (best is None or m < best):
                    best = m
        bound += 1
    return best


def genus_character(cg: ClassGroup, d1: int) -> Dict[int, int]:
    """The genus character attached to d1, as class index -> +-1."""
    out = {}
    for i, f in enumerate(cg.forms):
        m = represented_coprime(tuple(f), cg.d)
        out[i] = kronecker(d1, m)
    return out


def character_table(cg: ClassGroup, exponents: Tuple[int, ...]) -> Dict[int, RootOfUnity]:
    """psi(g_i) = zeta_{n_i}^{e_i} on the chosen basis, extended to every class."""
    if len(exponents) != len(cg.invariants):
        raise ValueError("one exponent per invariant factor is required")
    out = {}
    for c, vec in cg.dlog.items():
        z = RootOfUnity.one()
        for n, e, v in zip(cg.invariants, exponents, vec):
            z = z * RootOfUnity(n, e * v)
        out[c] = z
    return out


def character_order(table: Dict[int, RootOfUnity]) -> int:
    return math.lcm(*[z.order() for z in table.values()])


def characters_of_order(cg: ClassGroup, n: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of the characters of exact order n, in lexicographic order."""
    out = []
    for exps in product(*[range(k) for k in cg.invariants]):
        if character_order(character_table(cg, exps)) == n:
            out.append(tuple(exps))
    return out


def coefficient_degree(p: int, psi_order: int) -> int:
    """f = multiplicative order of p modulo lcm(ord psi, 4)."""
    return int(sympy.n_order(p, math.lcm(psi_order, 4)))


@dataclass(frozen=True, eq=False)
class CMSetting:
    D: int
    p: int
    prec: int
    cg: ClassGroup
    psi_exponents: Tuple[int, ...]
    psi: Dict[int, RootOfUnity]
    psi_order: int
    d1: int
    d2: int
    f: int
    field: UnramifiedField
    r: PadicScalar
    r1: PadicScalar
    r2: PadicScalar
    frak_p: QuadIdeal
    frak_pbar: QuadIdeal
    nu: int = 1
    _log_cache: Dict = dc_field(default_factory=dict, repr=False)

    # -- construction --

    @staticmethod
    def check(D: int, p: int, cg: ClassGroup, psi: Dict[int, RootOfUnity]) -> Optional[str]:
        """Reason the data is inadmissible, or None."""
        if D < 4:
            return "N = D must be at least 4"
        if p == 2 or not sympy.isprime(p):
            return "p must be an odd prime"
        if (2 * D * cg.h) % p == 0:
            return "p divides 2 D h"
        if kronecker(-D, p) != 1:
            return "p does not split in K"
        order = character_order(psi)
        if order != 4:
            return "phi = psi^2 must be a nontrivial quadratic character"
        st = split_type(-D, p)
        c = cg.class_of(st.ideal)
        cbar = cg.class_of(st.conjugate)
        if psi[c] != psi[cbar]:
            return "psi(p) != psi(pbar): p is not irregular"
        if psi[c] ** 2 != RootOfUnity.one():
            return "phi is nontrivial at p"
        return None

    @classmethod
    def build(cls, D: int, p: int, psi_exponents: Tuple[int, ...],
              prec: Optional[int] = None) -> "CMSetting":
        prec = prec or settings.PRECISION
        if D <= 0 or not is_fundamental(-D):
            raise InadmissibleSetting(f"-{D} is not a fundamental discriminant", D=D)
        cg = class_group(-D)
        psi = character_table(cg, tuple(psi_exponents))
        reason = cls.check(D, p, cg, psi)
        if reason:
            raise InadmissibleSetting(reason, D=D, p=p, psi=list(psi_exponents))
        phi = {c: z ** 2 for c, z in psi.items()}
        d1, d2 = None, None
        for a, b in genus_splits(D):
            chi = genus_character(cg, a)
            if all((chi[c] == 1) == (phi[c] == RootOfUnity.one()) for c in phi):
                d1, d2 = a, b
                break
        if d1 is None:
            raise InadmissibleSetting("phi is not a genus character", D=D)
        if kronecker(d1, p) != 1 or kronecker(d2, p) != 1:
            raise InadmissibleSetting("p does not split completely in H", D=D, p=p)
        order = character_order(psi)
        f = coefficient_degree(p, order)
        fld = unramified_field(p, f)
        wp = prec + 2
        r = hensel_sqrt(fld.element(-D, wp))
        r1 = hensel_sqrt(fld.element(d1, wp))
        r2 = r / r1
        st = split_type(-D, p, root=int(r.unit[0]) % p)
        assert isinstance(st, Split)
        setting = cls(D=D, p=p, prec=prec, cg=cg, psi_exponents=tuple(psi_exponents), psi=psi,
                      psi_order=order, d1=d1, d2=d2, f=f, field=fld, r=r, r1=r1, r2=r2,
                      frak_p=st.ideal, frak_pbar=st.conjugate)
        setting.validate()
        logger.info("setting D=%d p=%d psi=%s: H = Q(sqrt %d, sqrt %d), f = %d",
                    D, p, list(psi_exponents), d1, d2, f)
        return setting

    def validate(self) -> None:
        reason = self.check(self.D, self.p, self.cg, self.psi)
        if reason is None and self.d1 * self.d2 != -self.D:
            reason = "genus split does not multiply to -D"
        if reason is None and not (self.r1 * self.r1 == self.d1 and self.r2 * self.r2 == self.d2):
            reason = "Hensel roots are inconsistent"
        if reason is None and self.frak_p.conjugate() != self.frak_pbar:
            reason = "marked primes are not conjugate"
        if reason:
            raise InadmissibleSetting(reason, D=self.D, p=self.p)

    # -- characters --

    @property
    def level(self) -> int:
        return self.D

    @property
    def disc(self) -> int:
        return -self.D

    @property
    def A(self) -> PadicScalar:
        """log_p(1 + p)."""
        return log_one_plus_p(self.field, self.prec + 2)

    def psi_class(self, c: int) -> RootOfUnity:
        return self.psi[c]

    def psi_of(self, ideal: QuadIdeal) -> RootOfUnity:
        return self.psi[self.cg.class_of(ideal)]

    def phi_of(self, ideal: QuadIdeal) -> int:
        return 1 if self.psi_of(ideal) ** 2 == RootOfUnity.one() else -1

    def psi_p(self) -> RootOfUnity:
        return self.psi_of(self.frak_p)

    def to_padic(self, z: RootOfUnity) -> PadicScalar:
        return z.to_padic(self.field, self.prec + 2)

    # -- embeddings --

    def embed_p(self, x: BiquadElement, place: Place = Place("1")) -> PadicScalar:
        """iota_{h pi}(x) = iota_pi(h x)."""
        y = x.apply(place.h)
        wp = self.prec + 2
        c0, c1, c2, c3 = (from_rational(c, self.field, wp, integral=True) for c in y.c)
        return c0 + c1 * self.r1 + c2 * self.r2 + c3 * self.r

    def embed_K(self, x: QuadElement) -> PadicScalar:
        """iota_p on K, the embedding whose kernel mod p is the marked prime."""
        return self.embed_p(self.lift(x))

    def lift(self, x: QuadElement) -> BiquadElement:
        return BiquadElement.from_quad(self.d1, self.d2, x)

    def element(self, coords) -> BiquadElement:
        return BiquadElement(self.d1, self.d2, coords)

    def log_at(self, x: BiquadElement, place: Place = Place("1")) -> PadicScalar:
        key = (x, place)
        hit = self._log_cache.get(key)
        if hit is None:
            hit = iwasawa_log(self.embed_p(x, place))
            self._log_cache[key] = hit
        return hit

    def place_valuation(self, x: BiquadElement, place: Place = Place("1")) -> int:
        y = self.embed_p(x, place)
        if y.is_zero():
            raise PrecisionLoss("valuation exceeds working precision", place=place.name)
        return y.val

    def describe(self) -> Dict:
        return {
            "D": self.D, "p": self.p, "psi": list(self.psi_exponents), "psi_order": self.psi_order,
            "h": self.cg.h, "invariants": list(self.cg.invariants), "d1": self.d1, "d2": self.d2,
            "f": self.f, "prec": self.prec, "frak_p": self.frak_p.to_json(),
            "psi_table": {str(c): z.to_json() for c, z in sorted(self.psi.items())},
        }


def embed_p(setting: CMSetting, x: BiquadElement, place: Place = Place("1")) -> PadicScalar:
    return setting.embed_p(x, place)


def place_valuation(setting: CMSetting, x: BiquadElement, place: Place = Place("1")) -> int:
    return setting.place_valuation(x, place)


def admissible_settings(D_max: int, p_max: int, prec: Optional[int] = None) -> List[CMSetting]:
    """Admissible (D, p, psi) ordered by D, then psi exponent vector, then p."""
    if D_max <= 0 or p_max <= 0:
        raise ValueError("bounds must be positive")
    out = []
    for D in range(3, D_max + 1):
        if not is_fundamental(-D):
            continue
        cg = class_group(-D)
        if cg.h % 4:
            continue
        for exps in characters_of_order(cg, 4):
            psi = character_table(cg, exps)
            for p in sympy.primerange(3, p_max + 1):
                if CMSetting.check(D, p, cg, psi) is not None:
                    continue
                try:
                    out.append(CMSetting.build(D, p, exps, prec))
                except InadmissibleSetting as e:
                    logger.debug("skipping D=%d p=%d: %s", D, p, e.message)
    return out
