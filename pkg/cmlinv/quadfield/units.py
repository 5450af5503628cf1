"""Units, generators of principal ideal powers, and S-unit searches."""
from __future__ import annotations

import logging
import math
from itertools import chain, cycle
from typing import Iterable, Optional, Tuple, Union

from sympy.ntheory.continued_fraction import continued_fraction_periodic

from ..errors import NotPrincipal, SearchExhausted
from ..metrics import computations_total
from ..settings import settings
from .arith import kronecker, require_fundamental
from .element import QuadElement
from .forms import class_group
from .ideals import Inert, QuadIdeal

logger = logging.getLogger(__name__)


def _cf_terms(d: int):
    pre = continued_fraction_periodic(d % 2, 2, d)
    period = [int(a) for a in pre[-1]]
    return chain((int(a) for a in pre[:-1]), cycle(period))


def _fundamental_unit_coords(d: int) -> Tuple[int, int]:
    b0 = d % 2
    h_prev, h = 1, 0
    k_prev, k = 0, 1
    for a in _cf_terms(d):
        h_prev, h = a * h_prev + h, h_prev
        k_prev, k = a * k_prev + k, k_prev
        P, Q = h_prev, k_prev
        x, y = 2 * P - Q * b0, Q
        if abs(x * x - d * y * y) == 4:
            return x, y
    raise AssertionError("continued fraction terminated")


def fundamental_unit(d: int, cache=None) -> Tuple[QuadElement, int]:
    """Fundamental unit eps > 1 of Q(sqrt d), d > 0, with its norm."""
    require_fundamental(d)
    if d <= 0:
        raise ValueError("fundamental units are only defined for real fields")
    if cache is not None:
        x, y = cache.get_or_compute("fundamental_unit", {"d": d},
                                    lambda: list(_fundamental_unit_coords(d)))
    else:
        x, y = _fundamental_unit_coords(d)
    computations_total.labels(kind="fundamental_unit").inc()
    eps = QuadElement.from_half(d, x, y)
    return eps, int(eps.norm())


def _gauss_reduce(ideal: QuadIdeal) -> Tuple[int, Tuple[int, int]]:
    """Lagrange-Gauss reduction of the norm form of an imaginary ideal.

    Lattice vectors are (X, Y) meaning (X + Y sqrt d)/2.  Returns the minimal
    scaled norm A and the basis vector attaining it.
    """
    a, b, c = ideal.form()
    v1, v2 = (2 * a, 0), (-b, 1)
    A, B, C = a, -b, c
    while True:
        if A > C:
            v1, v2 = v2, v1
            A, C = C, A
        t = (B + A) // (2 * A)
        if t:
            v2 = (v2[0] - t * v1[0], v2[1] - t * v1[1])
            B, C = B - 2 * t * A, C - t * B + t * t * A
        if abs(B) <= A <= C:
            return A, v1


def _generator_of(ideal: QuadIdeal) -> Optional[QuadElement]:
    A, (x, y) = _gauss_reduce(ideal)
    if A != 1:
        return None
    return QuadElement.from_half(ideal.d, x, y).normalized_sign()


def search_generator_by_norm(ideal: QuadIdeal, bound: Optional[int] = None) -> Optional[QuadElement]:
    """Bounded enumeration of x^2 - d y^2 = 4N over an imaginary ideal.

    Returns a generator normalized up to sign, or None if the ideal is not
    principal.
    """
    d, n = ideal.d, ideal.a
    bound = bound or settings.SEARCH_BOUND
    if n > bound:
        raise SearchExhausted("norm exceeds search bound", norm=n, bound=bound)
    target = 4 * n
    for y in range(0, math.isqrt(target // -d) + 1):
        rest = target + d * y * y
        x = math.isqrt(rest)
        if x * x != rest:
            continue
        for sx in (x, -x):
            if ideal.contains((sx, y)):
                return QuadElement.from_half(d, sx, y).normalized_sign()
    return None


def _class_order(ideal: QuadIdeal) -> int:
    cg = class_group(ideal.d)
    return cg.order(cg.class_of(ideal))


def ideal_power_generator(ideal: Union[QuadIdeal, Inert], d: Optional[int] = None,
                          cache=None) -> Tuple[QuadElement, int]:
    """(u, k) with k the class order of the prime ideal and ideal^k = (u)."""
    if isinstance(ideal, Inert):
        if d is None:
            raise ValueError("inert primes need the discriminant")
        return QuadElement(d, ideal.ell), 1
    d = ideal.d
    if d >= 0:
        raise ValueError("use s_unit_search for real fields")
    ell = ideal.a
    k = _class_order(ideal)

    def compute():
        if k == 2 and kronecker(d, ell) == 0:
            return [2 * ell, 0]
        power = ideal.power(k)
        u = _generator_of(power)
        if u is None:
            raise NotPrincipal("ideal power is not principal", ideal=repr(power), k=k)
        return list(u.half_coords())

    key = {"d": d, "a": ideal.a, "b": ideal.b}
    if cache is not None:
        x, y = cache.get_or_compute("ideal_power_generator", key, compute)
    else:
        x, y = compute()
    computations_total.labels(kind="ideal_power_generator").inc()
    logger.debug("generator of %r^%d: (%d + %d sqrt(%d))/2", ideal, k, x, y, d)
    return QuadElement.from_half(d, x, y), k


def _real_generator(target: QuadIdeal, k: int, eps: float) -> Optional[QuadElement]:
    d = target.d
    n = target.a ** k
    power = target.power(k) if k > 1 else target
    ymax = math.isqrt(int(4 * n * eps / d) + 1) + 1
    for y in range(0, ymax + 1):
        for sign in (1, -1):
            rest = sign * 4 * n + d * y * y
            if rest < 0:
                continue
            x = math.isqrt(rest)
            if x * x != rest:
                continue
            for sx in (x, -x):
                if power.contains((sx, y)):
                    return QuadElement.from_half(d, sx, y).normalized_sign()
    return None


def s_unit_search(d: int, S: Iterable[int], target: Union[QuadIdeal, Inert],
                  cache=None) -> Tuple[QuadElement, int]:
    """An S-unit with nonzero valuation at ``target``, as (u, k) with (u) = target^k."""
    S = set(S)
    ell = target.ell if isinstance(target, Inert) else target.a
    if ell not in S:
        raise ValueError(f"target prime {ell} is not in S")
    if d < 0 or isinstance(target, Inert):
        return ideal_power_generator(target, d, cache=cache)
    eps, _ = fundamental_unit(d, cache)
    u0, v0 = eps.coords
    eps_f = float(u0) + float(v0) * math.sqrt(d)
    ramified = kronecker(d, ell) == 0
    k = 1
    while ell ** k <= settings.SEARCH_BOUND:
        if ramified and k == 2:
            return QuadElement(d, ell), 2
        key = {"d": d, "a": target.a, "b": target.b, "k": k}
        found = cache.get("real_generator", key) if cache is not None else None
        if found is None:
            u = _real_generator(target, k, eps_f)
            if u is not None:
                found = list(u.half_coords())
                if cache is not None:
                    cache.put("real_generator", key, found)
        if found is not None:
            computations_total.labels(kind="s_unit_search").inc()
            return QuadElement.from_half(d, *found), k
        k += 1
    raise SearchExhausted("no generator below the search bound", d=d, ell=ell,
                          bound=settings.SEARCH_BOUND)


def generator_of_power(ideal: QuadIdeal, k: int) -> QuadElement:
    """A generator of ideal^k searched for on the power itself.

    Gauss reduction in imaginary fields, a bounded norm search in real ones;
    in a real field the result may differ from a power of another generator
    by a power of the fundamental unit.
    """
    d, ell = ideal.d, ideal.a
    if kronecker(d, ell) == 0 and k > 1:
        rest = QuadElement(d, ell ** (k // 2))
        return rest if k % 2 == 0 else rest * generator_of_power(ideal, 1)
    if d < 0:
        u = _generator_of(ideal.power(k))
    else:
        eps, _ = fundamental_unit(d)
        u0, v0 = eps.coords
        u = _real_generator(ideal, k, float(u0) + float(v0) * math.sqrt(d))
    if u is None:
        raise NotPrincipal("ideal power is not principal", ideal=repr(ideal), k=k)
    computations_total.labels(kind="generator_of_power").inc()
    return u
