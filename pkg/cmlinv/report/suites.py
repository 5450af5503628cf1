"""Verification suites driven by ``cmlinv verify``; each returns (ok, msg, details)."""
from __future__ import annotations

import logging
import time
from dataclasses import replace
from typing import Any, Callable, Dict, List, Sequence, Tuple

import sympy

from ..errors import CMLInvError
from ..galois import (GroupElementData, DualMatrix, det_F_at, ramified_eigenvalue, rho_F_at,
                      rho_F_diagonal, tangent_point, cross_ratio_report, trace_F_at,
                      unramified_quotient)
from ..cmfield import psi_tau_gamma_any
from ..linv import L_phi_lambda, required_digits
from ..padic import DualScalar, iwasawa_log
from ..qexp import (family_F_derivative, gen_eigenform_F, linear_relation_check, oracle_check,
                    oracle_expansion, prime_kind, theta_derivative, theta_vs_oracle)
from .builder import Bundle, recursion_checks

logger = logging.getLogger(__name__)

SuiteResult = Tuple[bool, str, Dict[str, Any]]


def _agree(x, y) -> int:
    return int(x.agreement(x._coerce(y)))


def theta_oracle_suite(bundle: Bundle, depth: int, bound: int = 200) -> SuiteResult:
    """Finite differences of a_l(Theta_psi) at split l < bound, at p and at l | D."""
    setting, inv = bundle.setting, bundle.inv
    nmax = min(max(bound, setting.p), bundle.qmax)
    closed = theta_derivative(setting, inv, nmax)
    oracle = oracle_expansion(setting, depth, nmax)
    need = depth - 2
    worst, bad = None, []
    for n in range(2, nmax + 1):
        kind = prime_kind(setting, n) if sympy.isprime(n) else None
        if kind not in ("split", "p", "ramified"):
            continue
        if kind == "split" and n >= bound:
            continue
        d = _agree(closed[n], oracle[n])
        worst = d if worst is None else min(worst, d)
        if d < need:
            bad.append(n)
    ok = not bad
    return ok, ("OK" if ok else f"oracle disagrees at l = {bad[0]}"), \
        {"depth": depth, "digits": worst, "required": need}


def theta_dagger_suite(bundle: Bundle, depth: int, nmax: int = 2000) -> SuiteResult:
    """f_dag_Theta in closed form against A times the oracle difference."""
    res = theta_vs_oracle(bundle.setting, bundle.inv, depth, min(nmax, bundle.qmax))
    msg = "OK" if res["ok"] else f"first mismatch at n = {res['first_bad']}"
    return res["ok"], msg, res


def ideal_sum_suite(bundle: Bundle, nmax: int = 10 ** 4) -> SuiteResult:
    details = {}
    for stabilized in (False, True):
        ok, first_bad = oracle_check(bundle.setting, nmax, stabilized)
        details["f" if stabilized else "theta"] = {"ok": ok, "first_bad": first_bad}
        if not ok:
            return False, f"ideal sum differs at n = {first_bad}", details
    return True, "OK", details


def identities_suite(bundle: Bundle) -> SuiteResult:
    rows = bundle.inv.identities()
    bad = [name for name, _, ok in rows if not ok]
    return not bad, ("OK" if not bad else f"identity fails: {bad[0]}"), \
        {name: digits for name, digits, _ in rows}


def witness_suite(bundle: Bundle, bound: int = 60) -> SuiteResult:
    """L_psi,l at the second lambda choice, and f_dag_F rebuilt from those values."""
    setting, inv = bundle.setting, bundle.inv
    need = required_digits(setting)
    perturbed = dict(inv.L_psi)
    for ell in sorted(inv.L_psi):
        if ell > bound:
            break
        z = psi_tau_gamma_any(setting, ell, 1, cache=bundle.cache)
        L_psi = setting.to_padic(z) * L_phi_lambda(setting, ell, 1, inv.S_phi, bundle.cache)
        if _agree(L_psi, inv.L_psi[ell]) < need:
            return False, f"L_psi not reproduced at l = {ell}", {}
        perturbed[ell] = L_psi
    other = replace(inv, L_psi=perturbed)
    a = bundle.expansions["f_dag_F"]
    b = gen_eigenform_F(setting, other, a.nmax)
    ok, first_bad, digits = a.compare(b, need - 2)
    msg = "OK" if ok else f"witness dependence at n = {first_bad}"
    return ok, msg, {"digits": digits, "primes": len(perturbed)}


def recursion_suite(bundle: Bundle) -> SuiteResult:
    rows = recursion_checks(bundle)
    bad = [k for k, r in rows.items() if not r["ok"]]
    return not bad, ("OK" if not bad else f"recursion fails for {bad[0]}"), rows


def relation_suite(bundle: Bundle, depth: int, nmax: int = 500) -> SuiteResult:
    rep = linear_relation_check(bundle.setting, bundle.inv, min(nmax, bundle.qmax), depth=depth,
                                raise_on_failure=False)
    bad = [p for p in rep["passes"] if not p["ok"]]
    msg = "OK" if not bad else f"{bad[0]['pass']} fails at n = {bad[0]['first_bad']}"
    return rep["ok"], msg, rep


def cross_ratio_suite(bundle: Bundle) -> SuiteResult:
    rep = cross_ratio_report(bundle.setting, bundle.inv, raise_on_failure=False)
    ok = rep["ok"]
    if bundle.setting.psi_order == 4:
        xi = bundle.inv.xi
        ok = ok and _agree(xi * xi, -1) >= required_digits(bundle.setting)
    return ok, "OK" if ok else "cross-ratio membership fails", {"sections": len(rep["sections"])}


def rho_suite(bundle: Bundle, count: int = 20) -> SuiteResult:
    """tau^2 = 1, determinant twist, traces on both cosets, ramified concordance, Frob_p."""
    setting, inv = bundle.setting, bundle.inv
    prec = setting.prec + 2
    A = inv.A
    need = required_digits(setting) - 2
    f = bundle.expansions["f"]
    dF = family_F_derivative(setting, inv, bundle.qmax, base=f)
    failures: List[str] = []

    def check(name: str, x: DualScalar, y: DualScalar) -> None:
        if x.agreement(y) < need:
            failures.append(name)

    tau = rho_F_at(setting, inv, GroupElementData.tau(setting))
    ident = DualMatrix.identity(setting.field, prec)
    if (tau * tau).agreement(ident) < need:
        failures.append("tau^2")

    split = [ell for ell in sorted(inv.split) if ell != 2 and setting.D % ell][:count]
    for ell in split:
        L_l, L_lbar = inv.split[ell]
        ideal, conj = inv.split_ideals[ell]
        g = GroupElementData.frobenius_h(f"Frob_{ell}", setting.psi_of(ideal), setting.psi_of(conj),
                                         L_l, L_lbar)
        base = setting.to_padic(g.psi * g.psibar)
        log_ell = iwasawa_log(setting.field.element(ell, prec))
        check(f"det twist l={ell}", rho_F_diagonal(setting, inv, g).det(),
              DualScalar(base, base * log_ell / A))
        check(f"det formula l={ell}", det_F_at(setting, inv, g), DualScalar(base, base * log_ell / A))
        check(f"split trace l={ell}", trace_F_at(setting, inv, g), DualScalar(f[ell], dF[ell]))

    inert = [ell for ell in sorted(inv.L_psi) if setting.D % ell][:count]
    for ell in inert:
        g = GroupElementData.inert_frobenius(setting, inv, ell)
        check(f"coset trace l={ell}", trace_F_at(setting, inv, g), DualScalar(f[ell], dF[ell]))
        log_ell = iwasawa_log(setting.field.element(ell, prec))
        minus_one = setting.field.element(-1, prec)
        check(f"coset det l={ell}", det_F_at(setting, inv, g),
              DualScalar(minus_one, -log_ell / A))

    for ell in sorted(inv.L_psi):
        if setting.D % ell:
            continue
        g = GroupElementData.ramified_inertia(setting, inv, ell)
        z2 = setting.to_padic(g.psi_l * g.psi_l)
        lhs = ramified_eigenvalue(setting, inv, g, 1) * ramified_eigenvalue(setting, inv, g, -1) / z2
        log_ell = iwasawa_log(setting.field.element(ell, prec))
        check(f"ramified concordance l={ell}", lhs, DualScalar(setting.field.one(prec), log_ell / A))

    if setting.p <= bundle.qmax:
        chi = unramified_quotient(setting, inv, GroupElementData.frobenius_p(setting, inv))
        check("unramified quotient at p", chi, DualScalar(f[setting.p], dF[setting.p]))

    for ell in sorted(inv.eta_frobenius)[:2]:
        g = GroupElementData.frobenius_split(setting, inv, ell)
        r = rho_F_at(setting, inv, g)
        if rho_F_at(setting, inv, g.power(2)).agreement(r * r) < need:
            failures.append(f"multiplicativity l={ell}")
        if rho_F_at(setting, inv, g.tau_times()).agreement(tau * r) < need:
            failures.append(f"coset product l={ell}")

    x, y = tangent_point(inv)
    if _agree(x * inv.L, y * inv.Lbar) < need or _agree(x + y, -1 / A) < need:
        failures.append("tangent line")

    ok = not failures
    return ok, ("OK" if ok else f"{len(failures)} failures, first: {failures[0]}"), \
        {"split": len(split), "inert": len(inert), "failures": failures}


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "identities": identities_suite,
    "ideal_sum": ideal_sum_suite,
    "recursions": recursion_suite,
    "witnesses": witness_suite,
    "cross_ratios": cross_ratio_suite,
    "rho": rho_suite,
}
DEPTH_SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "theta_oracle": theta_oracle_suite,
    "theta_dagger": theta_dagger_suite,
    "linear_relation": relation_suite,
}


def run_suites(bundle: Bundle, depths: Sequence[int], only: Sequence[str] = ()) -> List[Dict[str, Any]]:
    """Run every suite (or those named in ``only``); errors are recorded, not raised."""
    jobs: List[Tuple[str, Callable[[], SuiteResult]]] = []
    for name, fn in SUITES.items():
        jobs.append((name, lambda fn=fn: fn(bundle)))
    for name, fn in DEPTH_SUITES.items():
        for m in depths:
            jobs.append((f"{name}[m={m}]", lambda fn=fn, m=m: fn(bundle, m)))
    results = []
    for name, job in jobs:
        if only and name.split("[")[0] not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, msg, details = job()
        except CMLInvError as e:
            ok, msg, details = False, e.message, e.to_dict()
        logger.info("suite %s: %s (%.1fs)", name, "ok" if ok else msg, time.perf_counter() - t0)
        results.append({"suite": name, "ok": ok, "msg": msg, "details": details})
    return results
