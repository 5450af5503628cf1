"""Assemble, re-check and flatten computation reports."""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from ..cmfield import CMSetting
from ..galois import cross_ratio_report
from ..linv import LInvariantSet, compute_invariants, required_digits
from ..padic import PadicScalar, iwasawa_log, log_one_plus_p, unramified_field
from ..qexp import (QExpansion, gen_eigenform_F, gen_eigenform_psi, gen_eigenform_theta,
                    hecke_recursion_check, linear_relation_check, theta_qexp)
from .schema import SCHEMA_VERSION, validate_report

logger = logging.getLogger(__name__)

EXPANSION_LABELS = ("f", "theta", "f_dag_F", "f_dag_Theta", "f_dag_psi")


@dataclass
class Bundle:
    """Everything a report is built from."""
    setting: CMSetting
    inv: LInvariantSet
    qmax: int
    expansions: Dict[str, QExpansion] = dc_field(default_factory=dict)
    cache: Optional[Any] = dc_field(default=None, repr=False)


def compute_bundle(setting: CMSetting, qmax: int, threads: Optional[int] = None,
                   cache=None) -> Bundle:
    primes = list(sympy.primerange(2, qmax + 1))
    inv = compute_invariants(setting, primes, threads=threads, cache=cache)
    expansions = {
        "f": theta_qexp(setting, qmax, stabilized=True),
        "theta": theta_qexp(setting, qmax),
        "f_dag_F": gen_eigenform_F(setting, inv, qmax),
        "f_dag_Theta": gen_eigenform_theta(setting, inv, qmax),
        "f_dag_psi": gen_eigenform_psi(setting, inv, qmax),
    }
    logger.info("expansions to q^%d for D=%d p=%d", qmax, setting.D, setting.p)
    return Bundle(setting, inv, qmax, expansions, cache)


def recursion_checks(bundle: Bundle) -> Dict[str, Dict[str, Any]]:
    """Generalized-eigenform recursions, plus a_1 = a_p = 0 where they must vanish."""
    setting, f = bundle.setting, bundle.expansions["f"]
    out = {}
    for label in ("f_dag_F", "f_dag_Theta", "f_dag_psi"):
        e = bundle.expansions[label]
        ok, first_bad = hecke_recursion_check(e, setting, base=f)
        row: Dict[str, Any] = {"ok": ok, "first_bad": first_bad}
        if label != "f_dag_psi":
            vanish = e[1].is_zero() and (setting.p > e.nmax or e[setting.p].is_zero())
            row["a1_ap_zero"] = vanish
            row["ok"] = ok and vanish
        out[label] = row
    ok, first_bad = hecke_recursion_check(f, setting)
    out["f"] = {"ok": ok, "first_bad": first_bad}
    return out


def build_report(config: Dict[str, Any], bundle: Bundle, relation_nmax: int = 500) -> Dict[str, Any]:
    """The JSON report; a deterministic function of the configuration and the cache."""
    setting, inv = bundle.setting, bundle.inv
    identities = [{"name": n, "digits": d, "ok": ok} for n, d, ok in inv.identities()]
    relation = linear_relation_check(setting, inv, min(relation_nmax, bundle.qmax),
                                     raise_on_failure=False)
    doc = {
        "schema": SCHEMA_VERSION,
        "config": config,
        "setting": setting.describe(),
        "invariants": inv.to_json(),
        "identities": identities,
        "expansions": {k: bundle.expansions[k].to_json() for k in EXPANSION_LABELS},
        "cross_ratios": cross_ratio_report(setting, inv, raise_on_failure=False),
        "checks": {"recursions": recursion_checks(bundle), "linear_relation": relation},
        "precision": {"prec": setting.prec, "working": setting.prec + 2,
                      "required_digits": required_digits(setting)},
    }
    return doc


def _scalar(doc: Dict[str, Any]) -> PadicScalar:
    return PadicScalar.from_json(doc)


def recheck_report(doc: Dict[str, Any]) -> Tuple[bool, Optional[str]]:
    """Validate the schema and re-derive the invariant identities from the serialized scalars."""
    ok, msg = validate_report(doc)
    if not ok:
        return False, f"schema: {msg}"
    inv = doc["invariants"]
    need = doc["precision"]["required_digits"]
    p, f = doc["setting"]["p"], doc["setting"]["f"]
    prec = doc["precision"]["working"]
    A = log_one_plus_p(unramified_field(p, f), prec)
    S, Sbar = _scalar(inv["S_phi"]), _scalar(inv["S_phibar"])
    L, Lbar, xi = _scalar(inv["L"]), _scalar(inv["Lbar"]), _scalar(inv["xi"])
    checks: List[Tuple[str, PadicScalar, Any]] = [
        ("S_phi * S_phibar = 1", S * Sbar, 1),
        ("L + Lbar = 1/A", L + Lbar, 1 / A),
        ("xi^2 = S_phibar Lbar / L", xi * xi, Sbar * Lbar / L),
    ]
    for ell, row in doc["invariants"]["split"].items():
        log_ell = iwasawa_log(A.field.element(int(ell), prec))
        checks.append((f"L_l + L_lbar = -log l (l={ell})", _scalar(row["L_l"]) + _scalar(row["L_lbar"]),
                       -log_ell))
    for name, lhs, rhs in checks:
        if lhs.agreement(lhs._coerce(rhs)) < need:
            return False, f"identity fails after reload: {name}"
    for row in doc["identities"]:
        if not row["ok"]:
            return False, f"identity recorded as failing: {row['name']}"
    return True, "OK"


def _limbs_to_ints(scalar: Dict[str, Any]) -> List[int]:
    p = scalar["p"]
    return [sum(d * p ** i for i, d in enumerate(limbs)) for limbs in scalar["digits"]]


def export_csv(doc: Dict[str, Any], labels: Sequence[str] = EXPANSION_LABELS,
               primes_only: bool = True) -> str:
    """One row per (expansion, n): label, n, valuation, precision, unit-part coefficients."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["label", "n", "val", "prec", "unit"])
    for label in labels:
        coeffs = doc["expansions"][label]["coeffs"]
        for key in sorted(coeffs, key=int):
            n = int(key)
            if primes_only and not sympy.isprime(n):
                continue
            c = coeffs[key]
            if isinstance(c, int):
                writer.writerow([label, n, 0, "", c])
                continue
            unit = " ".join(str(x) for x in _limbs_to_ints(c))
            writer.writerow([label, n, "" if c["val"] is None else c["val"], c["prec"], unit])
    return buf.getvalue()
