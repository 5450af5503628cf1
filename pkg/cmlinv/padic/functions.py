# Analytic functions on unramified p-adic fields: log, exp, Teichmuller, roots
from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

from ..errors import (DenominatorAtP, DivisibleOrder, EvenCharacteristic, NonResidue,
                      NonUnit, NotPrincipalUnit, OddValuation, PrecisionLoss, ZeroInput)
from .field import UnramifiedField, residue_generator, vp_int
from .scalar import PadicScalar

logger = logging.getLogger(__name__)


def _log_series(field: UnramifiedField, z: Sequence[int], vz: int, prec: int) -> Tuple[int, ...]:
    """Integer coefficients of log(1 + z) modulo p^prec, for v(z) = vz >= 1."""
    p = field.p
    # smallest K with k*vz - v_p(k) >= prec for every k > K
    kmax = 1
    while (kmax + 1) * vz - math.log(kmax + 1, p) < prec + 1:
        kmax += 1
    extra = int(math.log(kmax, p)) + 1
    mod = p ** (prec + extra)
    total = [0] * field.f
    power = tuple(c % mod for c in z)
    for k in range(1, kmax + 1):
        vk = vp_int(k, p)
        ku = k // p ** vk
        inv = pow(ku, -1, mod)
        sign = 1 if k % 2 else -1
        for i, c in enumerate(power):
            # c is divisible by p^(k*vz) >= p^vk, so the exact division is safe
            total[i] += sign * (c // p ** vk) * inv
        power = field.mul_coeffs(power, z, mod)
    out = p ** prec
    return tuple(c % out for c in total)


def _exp_series(field: UnramifiedField, z: Sequence[int], vz: int, prec: int) -> Tuple[int, ...]:
    """Integer coefficients of exp(z) modulo p^prec, for v(z) = vz >= 1 and p odd."""
    p = field.p
    kmax = 0
    # v(k!) <= (k - 1)/(p - 1)
    while (kmax + 1) * vz - kmax / (p - 1) < prec + 1:
        kmax += 1
    vfact = sum(kmax // p ** i for i in range(1, int(math.log(max(kmax, 1), p)) + 2))
    mod = p ** (prec + vfact + 1)
    total = list(field.one_coeffs())
    power = field.one_coeffs()
    fact_unit, fact_v = 1, 0
    for k in range(1, kmax + 1):
        power = field.mul_coeffs(power, z, mod)
        vk = vp_int(k, p)
        fact_v += vk
        fact_unit = fact_unit * (k // p ** vk) % mod
        inv = pow(fact_unit, -1, mod)
        for i, c in enumerate(power):
            total[i] += (c // p ** fact_v) * inv
    out = p ** prec
    return tuple(c % out for c in total)


def iwasawa_log(x: PadicScalar) -> PadicScalar:
    """Iwasawa logarithm: log_p(p) = 0 and roots of unity are killed.

    For x = p^v u the result is log(u^(q-1))/(q-1), which agrees with the log
    of the principal-unit part of u after Teichmuller removal.
    """
    if x.is_zero():
        raise ZeroInput("log of zero", prec=x.prec)
    field = x.field
    r = x.prec - x.val
    mod = field.p ** r
    w = field.pow_coeffs(x.unit, field.q - 1, mod)
    z = list(w)
    z[0] -= 1
    vz = min((vp_int(c, field.p) for c in z if c % mod), default=math.inf)
    if vz == math.inf or vz >= r:
        return PadicScalar.zero(field, r)
    logw = PadicScalar.normalize(field, _log_series(field, z, vz, r), 0, r)
    return logw / (field.q - 1)


def padic_exp(x: PadicScalar) -> PadicScalar:
    """exp on p Z_{p^f} (p odd)."""
    field = x.field
    if field.p == 2:
        raise EvenCharacteristic("exp is only implemented for odd p")
    if x.is_zero():
        return field.one(x.prec)
    if x.val < 1:
        raise PrecisionLoss("exp does not converge", val=x.val)
    coeffs = _exp_series(field, x.integer_coeffs(), x.val, x.prec)
    return PadicScalar.normalize(field, coeffs, 0, x.prec)


@lru_cache(maxsize=4096)
def _teichmuller_coeffs(field: UnramifiedField, residue: Tuple[int, ...], r: int) -> Tuple[int, ...]:
    mod = field.p ** r
    y = residue
    for _ in range(r):
        y = field.pow_coeffs(y, field.q, mod)
    return y


def teichmuller(x: PadicScalar) -> PadicScalar:
    """The (q-1)-th root of unity congruent to x modulo p."""
    if x.is_zero() or x.val != 0:
        raise NonUnit("Teichmuller lift needs a unit", val=x.val)
    r = x.prec
    coeffs = _teichmuller_coeffs(x.field, x.residue(), r)
    return PadicScalar(x.field, 0, coeffs, r)


def _residue_sqrt(field: UnramifiedField, a: Tuple[int, ...]) -> Tuple[int, ...]:
    """A square root of a nonzero residue in F_q (Tonelli-Shanks), or NonResidue."""
    p, q = field.p, field.q
    one = field.one_coeffs()
    if field.pow_coeffs(a, (q - 1) // 2, p) != one:
        raise NonResidue("residue is not a square", residue=a)
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    n = 2
    while field.pow_coeffs(field.residue_from_index(n), (q - 1) // 2, p) == one:
        n += 1
    z = field.residue_from_index(n)
    m = e
    c = field.pow_coeffs(z, s, p)
    t = field.pow_coeffs(a, s, p)
    root = field.pow_coeffs(a, (s + 1) // 2, p)
    while t != one:
        i, t2 = 0, t
        while t2 != one:
            t2 = field.mul_coeffs(t2, t2, p)
            i += 1
        b = field.pow_coeffs(c, 2 ** (m - i - 1), p)
        m = i
        c = field.mul_coeffs(b, b, p)
        t = field.mul_coeffs(t, c, p)
        root = field.mul_coeffs(root, b, p)
    return root


def hensel_sqrt(x: PadicScalar) -> PadicScalar:
    """Square root by Hensel lifting; residual root with smallest canonical index."""
    field = x.field
    p = field.p
    if p == 2:
        raise EvenCharacteristic("square roots at p = 2 need ramified extensions")
    if x.is_zero():
        return PadicScalar.zero(field, x.prec // 2)
    if x.val % 2:
        raise OddValuation("square root would need a ramified extension", val=x.val)
    u = x.unit_part()
    r = u.prec
    s0 = _residue_sqrt(field, u.residue())
    neg = tuple((-c) % p for c in s0)
    if field.residue_index(neg) < field.residue_index(s0):
        s0 = neg
    y = PadicScalar(field, 0, s0, r)
    digits = 1
    while digits < r:
        y = y - (y * y - u) / (2 * y)
        digits *= 2
    logger.debug("hensel_sqrt lifted to %d digits", r)
    return y.shift(x.val // 2)


def root_in_principal_units(x: PadicScalar, h: int) -> PadicScalar:
    """The unique h-th root of x inside 1 + pZ_{p^f}."""
    field = x.field
    if h % field.p == 0:
        raise DivisibleOrder("root order divisible by p", h=h, p=field.p)
    if x.is_zero() or x.val != 0 or x.residue() != field.one_coeffs():
        raise NotPrincipalUnit("input is not congruent to 1 mod p")
    return padic_exp(iwasawa_log(x) / h)


def principal_part(x: PadicScalar) -> PadicScalar:
    """<x> = (x / p^v) / omega(x / p^v), the projection to 1 + pZ_{p^f}."""
    u = x.unit_part()
    return u / teichmuller(u)


def from_rational(q, field: UnramifiedField, prec: int, integral: bool = False) -> PadicScalar:
    """Embed a rational number; integral=True refuses denominators divisible by p."""
    q = Fraction(q)
    if integral and q.denominator % field.p == 0:
        raise DenominatorAtP("denominator divisible by p", value=str(q), p=field.p)
    return PadicScalar.from_value(field, q, prec)


@lru_cache(maxsize=64)
def log_one_plus_p(field: UnramifiedField, prec: int) -> PadicScalar:
    """log_p(1 + p), the normalizing constant of the weight variable."""
    return iwasawa_log(field.element(1 + field.p, prec))


@lru_cache(maxsize=256)
def root_of_unity_padic(field: UnramifiedField, n: int, j: int, prec: int) -> PadicScalar:
    """zeta_n^j with zeta_n = omega(g)^((q-1)/n), g the smallest residue generator."""
    if (field.q - 1) % n:
        raise ValueError(f"{field} does not contain the {n}-th roots of unity")
    g = residue_generator(field.p, field.f)
    omega = PadicScalar(field, 0, _teichmuller_coeffs(field, g, prec), prec)
    return omega ** (((field.q - 1) // n) * (j % n))
