"""Ordinary lines of the four families through f and their cross-ratios."""
from __future__ import annotations

import logging
from itertools import permutations
from typing import Any, Dict, List, Sequence

import sympy

from ..cmfield import CMSetting
from ..errors import MembershipViolated
from ..linv import LInvariantSet, required_digits
from ..metrics import computations_total
from ..padic import PadicScalar
from .matrix import Line, cross_ratio

logger = logging.getLogger(__name__)

THETA_PSI = "Theta_psi"
THETA_PSIBAR = "Theta_psibar"
FAMILY_F = "F"
FAMILY_F_EPS = "F_eps"
TAU_FIXED = "tau"
FAMILIES = (THETA_PSI, THETA_PSIBAR, FAMILY_F, FAMILY_F_EPS)

XI = sympy.Symbol("xi")


def ordinary_line(tag: str, xi: Any) -> Line:
    """The line of rho_f cut out by the ordinary filtration of each family.

    ``xi`` may be a PadicScalar or a sympy expression.
    """
    one = xi * 0 + 1
    zero = xi * 0
    lines = {
        THETA_PSI: (one, zero),
        THETA_PSIBAR: (zero, one),
        FAMILY_F: (xi, one),
        FAMILY_F_EPS: (-xi, one),
        TAU_FIXED: (one, one),
    }
    if tag not in lines:
        raise ValueError(f"unknown family tag {tag!r}")
    return Line(*lines[tag])


def harmonic_set() -> List[sympy.Expr]:
    return [sympy.Integer(-1), sympy.Integer(2), sympy.Rational(1, 2)]


def six_set(x: Any) -> List[Any]:
    """The orbit of x under the anharmonic group."""
    return [x, 1 / x, 1 - x, 1 / (1 - x), x / (x - 1), (x - 1) / x]


def _symbolic_member(value: sympy.Expr, candidates: Sequence[sympy.Expr]) -> bool:
    return any(sympy.simplify(value - c) == 0 for c in candidates)


def _numeric_member(value: PadicScalar, candidates: Sequence[PadicScalar], digits: int) -> bool:
    return any(value.agreement(value._coerce(c)) >= digits for c in candidates)


def _orderings(tags: Sequence[str], xi: Any):
    lines = {t: ordinary_line(t, xi) for t in tags}
    for perm in permutations(tags):
        yield perm, cross_ratio(*(lines[t] for t in perm))


def _section(setting: CMSetting, inv: LInvariantSet, tags: Sequence[str], expected: str,
             digits: int, sign: int = 1) -> Dict:
    """Cross-ratios of ``tags`` over all 24 orderings, symbolically and at working precision.

    ``expected`` is "harmonic" or "six"; the anharmonic orbit is that of sign * xi.
    """
    if expected == "harmonic":
        sym_expected = harmonic_set()
        num_expected = [inv.xi._coerce(c) for c in (-1, 2)] + [inv.xi._coerce(1) / 2]
    else:
        sym_expected = six_set(sign * XI)
        num_expected = six_set(inv.xi * sign)
    rows = []
    for (perm, sym), (_, num) in zip(_orderings(tags, XI), _orderings(tags, inv.xi)):
        sym = sympy.simplify(sym)
        ok_sym = _symbolic_member(sym, sym_expected)
        ok_num = _numeric_member(num, num_expected, digits)
        rows.append({"ordering": list(perm), "symbolic": str(sym), "value": num.to_json(),
                     "symbolic_ok": ok_sym, "numeric_ok": ok_num})
    label = expected if expected == "harmonic" or sign == 1 else "six(-xi)"
    return {"tags": list(tags), "expected": label, "rows": rows,
            "ok": all(r["symbolic_ok"] and r["numeric_ok"] for r in rows)}


def cross_ratio_report(setting: CMSetting, inv: LInvariantSet, raise_on_failure: bool = True) -> Dict:
    """Lines, cross-ratios and membership verdicts for the four families and the tau-line."""
    digits = required_digits(setting)
    sections = [
        _section(setting, inv, FAMILIES, "harmonic", digits),
        _section(setting, inv, (TAU_FIXED, FAMILY_F, THETA_PSI, THETA_PSIBAR), "six", digits),
        # F_eps sits on [-xi : 1], so its orbit is that of -xi
        _section(setting, inv, (TAU_FIXED, FAMILY_F_EPS, THETA_PSI, THETA_PSIBAR), "six", digits,
                 sign=-1),
    ]
    xi_sq = inv.xi * inv.xi
    report: Dict[str, Any] = {
        "xi": inv.xi.to_json(),
        "lines": {t: ordinary_line(t, inv.xi).to_json() for t in FAMILIES + (TAU_FIXED,)},
        "sections": sections,
        "ok": all(s["ok"] for s in sections),
    }
    if xi_sq.agreement(xi_sq._coerce(-1)) >= digits:
        report["six_set_at_i"] = sorted(str(sympy.nsimplify(sympy.simplify(v)))
                                        for v in six_set(sympy.I))
    computations_total.labels(kind="cross_ratios").inc()
    for s in sections:
        logger.info("cross-ratios %s: ok=%s", ",".join(s["tags"]), s["ok"])
        if not s["ok"] and raise_on_failure:
            bad = next(r for r in s["rows"] if not (r["symbolic_ok"] and r["numeric_ok"]))
            raise MembershipViolated("cross-ratio outside the expected set",
                                     ordering=bad["ordering"], value=bad["symbolic"])
    return report
