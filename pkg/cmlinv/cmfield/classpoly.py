"""Hilbert class polynomials and psi-period data from complex CM values.

All floating-point work lives here: j-values are evaluated with mpmath at the
CM points of the reduced forms, and every quantity that leaves this module is
an exact integer obtained by rounding with a checked residual.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import sympy

from ..errors import PrecisionRounding, UnsupportedCase
from ..metrics import computations_total
from ..quadfield import ClassGroup, QuadElement, Split, class_group, split_type
from ..settings import settings

logger = logging.getLogger(__name__)

RESIDUAL = mpmath.mpf(10) ** -20

_x, _y = sympy.symbols("x y")


def _digits_needed(D: int, h: int, power: int = 1) -> int:
    """Decimal digits for products of h values of size exp(power * pi * sqrt D)."""
    size = power * h * math.pi * math.sqrt(D) / math.log(10)
    return int(size) + settings.GUARD_DIGITS + 10 * h


def _round_integers(values: Sequence[mpmath.mpc]) -> Optional[List[int]]:
    out = []
    for z in values:
        n = int(mpmath.nint(z.real))
        if abs(z.real - n) > RESIDUAL or abs(z.imag) > RESIDUAL:
            return None
        out.append(n)
    return out


def _round_half_integers(z: mpmath.mpc, D: int) -> Optional[Tuple[int, int]]:
    """(A, B) with z = (A + B sqrt(-D))/2, or None when z is not in O_K."""
    parts = _round_integers([mpmath.mpc(2 * z.real, 0), mpmath.mpc(2 * z.imag / mpmath.sqrt(D), 0)])
    if parts is None or (parts[0] - parts[1] * D) % 2:
        return None
    return parts[0], parts[1]


def _poly_from_roots(roots: Sequence[mpmath.mpc]) -> List[mpmath.mpc]:
    """Coefficients of prod (x - r), highest degree first."""
    coeffs = [mpmath.mpc(1)]
    for r in roots:
        nxt = coeffs + [mpmath.mpc(0)]
        for i in range(1, len(nxt)):
            nxt[i] -= r * coeffs[i - 1]
        coeffs = nxt
    return coeffs


def _xpow_mod(f: sympy.Poly, e: int) -> sympy.Poly:
    ell = f.get_modulus()
    result = sympy.Poly(1, _x, modulus=ell)
    base = sympy.Poly(_x, _x, modulus=ell).rem(f)
    while e:
        if e & 1:
            result = (result * base).rem(f)
        base = (base * base).rem(f)
        e >>= 1
    return result


@dataclass(frozen=True)
class ClassPolyData:
    """H_D with its complex roots tagged by ideal class.

    ``action[b][a]`` is the class of b^-1 a (so sigma_b j(a) = j(action[b][a]));
    ``conj[a]`` is the class of a^-1 (complex conjugation of j(a)).  The tables
    come from form composition and are checked against the roots by
    :meth:`check_tables` and :meth:`frobenius_matches`.
    """
    D: int
    coeffs: Tuple[int, ...]
    jvals: Tuple[mpmath.mpc, ...]
    dps: int
    action: Tuple[Tuple[int, ...], ...]
    conj: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def orbit_polynomial(self, b: int, shift: int = 3) -> Optional[List[Tuple[int, int]]]:
        """prod_a (y - j(a) - shift * j(action[b][a])) with coefficients (A, B) meaning
        (A + B sqrt(-D))/2, highest degree first.

        The product has coefficients in O_K exactly when the permutation
        action[b] commutes with Gal(H_D/K); otherwise None is returned.
        """
        with mpmath.workdps(self.dps + 10 * self.degree + 20):
            jvals = _j_values(class_group(-self.D), self.D)
            roots = [jvals[a] + shift * jvals[self.action[b][a]] for a in range(self.degree)]
            out = []
            for z in _poly_from_roots(roots):
                pair = _round_half_integers(z, self.D)
                if pair is None:
                    return None
                out.append(pair)
        return out

    def check_tables(self) -> bool:
        """Group-action laws, conjugation against the complex roots, and
        K-rationality of every orbit polynomial."""
        cg = class_group(-self.D)
        h = cg.h
        for b1 in range(h):
            for b2 in range(h):
                b12 = cg.mul(b1, b2)
                if any(self.action[b1][self.action[b2][a]] != self.action[b12][a] for a in range(h)):
                    return False
        if sorted(self.action[b][0] for b in range(h)) != list(range(h)):
            return False
        for b in range(h):
            binv = cg.inv(b)
            if any(self.conj[self.action[b][self.conj[a]]] != self.action[binv][a] for a in range(h)):
                return False
        with mpmath.workdps(self.dps):
            for a, z in enumerate(self.jvals):
                if abs(mpmath.conj(z) - self.jvals[self.conj[a]]) > RESIDUAL * max(1, abs(z)):
                    return False
        return all(self.orbit_polynomial(b) is not None for b in range(h))

    def frobenius_matches(self, ell: int, shift: int = 3) -> bool:
        """For l split in K, sigma_frak_l acts on the roots of H_D mod l as x -> x^l.

        Compares the orbit polynomial of the class of frak_l = [l, (-b + sqrt -D)/2],
        reduced with sqrt -D -> b, against the characteristic polynomial of
        x + shift * x^l on F_l[x]/(H_D).
        """
        st = split_type(-self.D, ell)
        if not isinstance(st, Split):
            raise UnsupportedCase("l does not split in K", ell=ell, D=self.D)
        b = class_group(-self.D).class_of(st.ideal)
        orbit = self.orbit_polynomial(b, shift)
        if orbit is None:
            return False
        reduced = [((A + B * st.ideal.b) // 2) % ell for A, B in orbit]
        f = sympy.Poly(list(self.coeffs), _x, modulus=ell)
        g = (sympy.Poly(_x, _x, modulus=ell) + shift * _xpow_mod(f, ell)).rem(f)
        res = sympy.resultant(f.as_expr(), _y - g.as_expr(), _x)
        expected = [int(c) % ell for c in sympy.Poly(res, _y).all_coeffs()]
        logger.debug("Frobenius at l=%d on H_%d: class %d", ell, self.D, b)
        return reduced == expected

    def period_data(self, psi_kappa: Dict[int, int], d1: int, d2: int, s: int = 1) -> "PeriodData":
        """Exact data of the psi-periods E_k = sum_{psi(a) = i^k} j(a)^s.

        rho = sigma_c with psi(c) = i sends E_k to E_{k-1} and complex
        conjugation sends E_k to E_{-k}.  theta_F = E_0 is fixed by tau and
        theta_K2 = E_0 + E_1 by tau rho; their squared differences with the
        rho^2-conjugates lie in F and K2 respectively.
        """
        dps = max(self.dps, _digits_needed(self.D, 4, s) + 40)
        with mpmath.workdps(dps):
            jvals = _j_values(class_group(-self.D), self.D)
            E = [mpmath.mpc(0)] * 4
            for a, z in enumerate(jvals):
                E[psi_kappa[a]] += z ** s
            poly = _round_integers(_poly_from_roots(E))
            gaps = {"F": (d1, E[0] - E[2], E[3] - E[1]),
                    "K2": (d2, E[0] + E[1] - E[2] - E[3], E[3] + E[0] - E[1] - E[2])}
            deltas = {}
            for field, (d, gap, rho_gap) in gaps.items():
                delta, rho_delta = gap * gap, rho_gap * rho_gap
                pair = _round_integers([delta + rho_delta,
                                        (delta - rho_delta) / mpmath.sqrt(mpmath.mpc(d))])
                if pair is None:
                    raise PrecisionRounding("period discriminant did not round", D=self.D, s=s,
                                            field=field, dps=dps)
                deltas[field] = (pair[0], pair[1])
            if poly is None:
                raise PrecisionRounding("psi-period polynomial did not round", D=self.D, s=s, dps=dps)
        return PeriodData(s=s, poly=tuple(poly), d1=d1, d2=d2,
                          delta_F=deltas["F"], delta_K2=deltas["K2"])


@dataclass(frozen=True)
class PeriodData:
    """P_s = prod (x - E_k) and the discriminants (A + B sqrt d_E)/2 of the
    quadratic extensions of F and K2 cut out by theta_F and theta_K2."""
    s: int
    poly: Tuple[int, ...]
    d1: int
    d2: int
    delta_F: Tuple[int, int]
    delta_K2: Tuple[int, int]

    def delta(self, field: str) -> QuadElement:
        if field == "F":
            return QuadElement.from_half(self.d1, *self.delta_F)
        return QuadElement.from_half(self.d2, *self.delta_K2)


def _j_values(cg: ClassGroup, D: int) -> List[mpmath.mpc]:
    out = []
    for f in cg.forms:
        tau = mpmath.mpc(-f[1], mpmath.sqrt(D)) / (2 * f[0])
        out.append(1728 * mpmath.kleinj(tau))
    return out


def _compute(D: int, dps: int):
    cg = class_group(-D)
    with mpmath.workdps(dps):
        jvals = _j_values(cg, D)
        coeffs = _round_integers(_poly_from_roots(jvals))
    return cg, jvals, coeffs


def class_polynomial(D: int, cache=None) -> ClassPolyData:
    """Exact H_D, retried once at doubled precision before giving up.

    With a cache, the coefficients are stored under ("class_polynomial", {"D": D})
    and a recomputation that disagrees with the stored copy is an error.
    """
    cg = class_group(-D)
    if cg.h > settings.CLASS_POLY_MAX_H:
        raise UnsupportedCase("class number above the configured bound", D=D, h=cg.h)
    dps = _digits_needed(D, cg.h)
    cached = cache.get("class_polynomial", {"D": D}) if cache is not None else None
    coeffs = None
    jvals = None
    for attempt in (dps, 2 * dps):
        cg, jvals, coeffs = _compute(D, attempt)
        if coeffs is not None:
            dps = attempt
            break
        logger.info("class polynomial D=%d did not round at %d digits", D, attempt)
    if coeffs is None:
        raise PrecisionRounding("class polynomial coefficients did not round", D=D, dps=2 * dps)
    if cached is not None and list(cached) != coeffs:
        raise PrecisionRounding("class polynomial disagrees with the cached copy", D=D)
    if cache is not None and cached is None:
        cache.put("class_polynomial", {"D": D}, coeffs)
    h = cg.h
    action = tuple(tuple(cg.mul(cg.inv(b), a) for a in range(h)) for b in range(h))
    conj = tuple(cg.inv(a) for a in range(h))
    computations_total.labels(kind="class_polynomial").inc()
    logger.info("class polynomial D=%d computed at %d digits", D, dps)
    return ClassPolyData(D=D, coeffs=tuple(coeffs), jvals=tuple(jvals), dps=dps,
                         action=action, conj=conj)
