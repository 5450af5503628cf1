from itertools import permutations

import pytest
import sympy

from cmlinv.errors import DegenerateConfiguration, IllDefinedCocycleValue
from cmlinv.galois import (FAMILIES, FAMILY_F, FAMILY_F_EPS, TAU_FIXED, THETA_PSI, THETA_PSIBAR,
                           DualMatrix, GroupElementData, Line, cross_ratio, harmonic_set,
                           ordinary_line, rho_F_at, rho_F_diagonal, six_set, cross_ratio_report)
from cmlinv.report.suites import cross_ratio_suite, rho_suite

XI = sympy.Symbol("xi")


def _lines(tags, xi):
    return [ordinary_line(t, xi) for t in tags]


def test_four_families_are_harmonic():
    """CR(Theta_psi, Theta_psibar, F, F_eps) = -1 for every xi"""
    value = cross_ratio(*_lines(FAMILIES, XI))
    assert sympy.simplify(value + 1) == 0


def test_tau_line_gives_six_set():
    """Replacing F_eps by the tau-fixed line lands in the anharmonic orbit of xi"""
    value = sympy.simplify(cross_ratio(*_lines((THETA_PSI, THETA_PSIBAR, FAMILY_F, TAU_FIXED), XI)))
    assert sympy.simplify(value - 1 / XI) == 0
    assert any(sympy.simplify(value - c) == 0 for c in six_set(XI))


def test_tau_line_with_f_eps_gives_orbit_of_minus_xi():
    """With F_eps in place of F every ordering lands in the orbit of -xi"""
    tags = (TAU_FIXED, FAMILY_F_EPS, THETA_PSI, THETA_PSIBAR)
    lines = dict(zip(tags, _lines(tags, XI)))
    for perm in permutations(tags):
        value = sympy.simplify(cross_ratio(*(lines[t] for t in perm)))
        assert any(sympy.simplify(value - c) == 0 for c in six_set(-XI))


def test_six_set_of_minus_one_is_harmonic():
    """The anharmonic orbit of -1 is {-1, 2, 1/2}"""
    assert set(six_set(sympy.Integer(-1))) == set(harmonic_set())


def test_degenerate_configurations():
    """[0 : 0] and configurations with two distinct lines are refused"""
    with pytest.raises(DegenerateConfiguration):
        Line(0, 0)
    same = Line(1, 1)
    with pytest.raises(DegenerateConfiguration):
        cross_ratio(same, Line(1, 1), same, Line(2, 1))
    with pytest.raises(ValueError):
        ordinary_line("G", XI)


def test_line_normalization():
    """[a : 0] is the point at infinity"""
    inf = Line(5, 0)
    assert inf.at_infinity
    assert inf == Line(1, 0)
    assert not Line(3, 1).at_infinity


def test_swap_is_an_involution(setting):
    """The matrix of tau squares to the identity"""
    prec = setting.prec + 2
    s = DualMatrix.swap(setting.field, prec)
    assert (s * s).agreement(DualMatrix.identity(setting.field, prec)) >= setting.prec


def test_rho_tau_squares_to_one(setting, inv, need):
    """rho_F(tau)^2 = 1 modulo X^2"""
    tau = rho_F_at(setting, inv, GroupElementData.tau(setting))
    ident = DualMatrix.identity(setting.field, setting.prec + 2)
    assert (tau * tau).agreement(ident) >= need - 2


def test_numeric_cross_ratio_is_minus_one(inv, need):
    """The harmonic relation holds with the computed xi"""
    value = cross_ratio(*_lines(FAMILIES, inv.xi))
    assert value.agreement(-1) >= need
    twisted = cross_ratio(*_lines((THETA_PSI, THETA_PSIBAR, FAMILY_F_EPS, FAMILY_F), inv.xi))
    assert twisted.agreement(-1) >= need


def test_inert_frobenius_has_only_a_trace(setting, inv):
    """The full matrix at an inert Frobenius is not well defined"""
    g = GroupElementData.inert_frobenius(setting, inv, 7)
    with pytest.raises(IllDefinedCocycleValue):
        rho_F_at(setting, inv, g)


def test_frobenius_at_two_lacks_the_phi_cocycle(setting, inv):
    """At l = 2 only the diagonal part is available"""
    g = GroupElementData.frobenius_split(setting, inv, 2)
    assert g.eta_phi is None
    with pytest.raises(IllDefinedCocycleValue):
        rho_F_at(setting, inv, g)
    assert rho_F_diagonal(setting, inv, g)[0, 1].a.is_zero()


def test_cross_ratio_report_sections(setting, inv):
    """Every ordering of every section lands in its expected set"""
    report = cross_ratio_report(setting, inv)
    assert report["ok"]
    assert len(report["sections"]) == 3
    assert all(len(s["rows"]) == 24 for s in report["sections"])
    assert [s["expected"] for s in report["sections"]] == ["harmonic", "six", "six(-xi)"]
    assert "six_set_at_i" in report


def test_cross_ratio_suite(bundle):
    """The suite also checks xi^2 = -1"""
    ok, msg, _ = cross_ratio_suite(bundle)
    assert ok, msg


def test_rho_suite(bundle):
    """Determinants, traces and ramified concordance at the first few primes"""
    ok, msg, details = rho_suite(bundle, count=5)
    assert ok, details["failures"]
    assert details["split"] > 0 and details["inert"] > 0
