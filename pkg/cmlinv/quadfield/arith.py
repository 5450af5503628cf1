# Discriminant helpers: fundamental discriminants and the Kronecker symbol
from __future__ import annotations

import sympy

from ..errors import NonFundamental


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in sympy.factorint(abs(n)).values())


def is_fundamental(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def require_fundamental(d: int) -> None:
    if not is_fundamental(d):
        raise NonFundamental(f"{d} is not a fundamental discriminant", d=d)


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d|n) for n > 0."""
    if n <= 0:
        raise ValueError("kronecker symbol needs n > 0")
    result = 1
    for ell, e in sympy.factorint(n).items():
        if ell == 2:
            if d % 2 == 0:
                return 0
            k = 1 if d % 8 in (1, 7) else -1
        else:
            k = int(sympy.jacobi_symbol(d % ell, ell))
        result *= k ** e
    return result


def prime_discriminants(D: int):
    """Factor a fundamental discriminant into prime discriminants (-4, 8, -8, p*)."""
    require_fundamental(D)
    out = []
    rest = D
    for ell in sorted(sympy.factorint(abs(D))):
        if ell == 2:
            continue
        pstar = ell if ell % 4 == 1 else -ell
        out.append(pstar)
        rest //= pstar
    if rest != 1:
        out.append(rest)
    return sorted(out)
