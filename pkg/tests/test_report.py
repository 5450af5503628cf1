import copy
import json

import pytest

from cmlinv.report import (EXPANSION_LABELS, SCHEMA_VERSION, build_report, export_csv,
                           recheck_report, run_suites, validate_report)

CONFIG = {"D": 39, "p": 43, "psi": 0, "prec": 30, "qmax": 120}


@pytest.fixture(scope="module")
def doc(bundle):
    return json.loads(json.dumps(build_report(CONFIG, bundle, relation_nmax=120), sort_keys=True))


def test_report_validates(doc):
    """The assembled report satisfies its JSON schema"""
    assert validate_report(doc) == (True, None)
    assert doc["schema"] == SCHEMA_VERSION
    assert doc["config"] == CONFIG
    assert doc["setting"]["d1"] == 13 and doc["setting"]["f"] == 2
    assert set(doc["expansions"]) == set(EXPANSION_LABELS)


def test_report_checks_pass(doc):
    """Recorded identities, recursions, relation and cross-ratios all pass"""
    assert all(row["ok"] for row in doc["identities"])
    assert all(row["ok"] for row in doc["checks"]["recursions"].values())
    assert doc["checks"]["linear_relation"]["ok"]
    assert doc["cross_ratios"]["ok"]


def test_recheck_after_reload(doc):
    """Identities re-derive from the serialized digits"""
    assert recheck_report(doc) == (True, "OK")


def test_recheck_detects_tampering(doc):
    """Changing one digit of L breaks L + Lbar = 1/A"""
    bad = copy.deepcopy(doc)
    limbs = bad["invariants"]["L"]["digits"][0]
    limbs[0] = (limbs[0] + 1) % 43
    ok, msg = recheck_report(bad)
    assert not ok
    assert "identity fails" in msg


def test_recheck_detects_schema_errors(doc):
    """A missing invariant is a schema failure"""
    bad = copy.deepcopy(doc)
    del bad["invariants"]["xi"]
    ok, msg = recheck_report(bad)
    assert not ok
    assert msg.startswith("schema:")


def test_recorded_failure_is_reported(doc):
    """An identity stored as failing fails the recheck"""
    bad = copy.deepcopy(doc)
    bad["identities"][0]["ok"] = False
    ok, msg = recheck_report(bad)
    assert not ok
    assert bad["identities"][0]["name"] in msg


def test_csv_export(doc):
    """One row per prime-indexed coefficient, header first"""
    rows = export_csv(doc).splitlines()
    assert rows[0] == "label,n,val,prec,unit"
    f_rows = [r for r in rows if r.startswith("f,")]
    assert any(r.startswith("f,43,0,") for r in f_rows)
    assert not any(r.startswith("f,2,") for r in f_rows)    # a_2(f) = 0
    full = export_csv(doc, labels=("theta",), primes_only=False).splitlines()
    assert any(r.startswith("theta,4,") for r in full)


def test_run_suites_records_results(bundle):
    """Selected suites report a pass without raising"""
    results = run_suites(bundle, [4], only=("identities", "recursions", "cross_ratios"))
    assert [r["suite"] for r in results] == ["identities", "recursions", "cross_ratios"]
    assert all(r["ok"] for r in results), results


@pytest.mark.slow
def test_depth_suites(bundle):
    """Oracle suites at depth 4"""
    results = run_suites(bundle, [4], only=("theta_oracle", "theta_dagger", "linear_relation"))
    assert [r["suite"] for r in results] == ["theta_oracle[m=4]", "theta_dagger[m=4]",
                                              "linear_relation[m=4]"]
    assert all(r["ok"] for r in results), results


@pytest.mark.slow
def test_report_is_deterministic(bundle, doc):
    """Rebuilding from the same bundle gives the same document"""
    again = json.loads(json.dumps(build_report(CONFIG, bundle, relation_nmax=120), sort_keys=True))
    assert again == doc
