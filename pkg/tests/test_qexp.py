import pytest

from cmlinv.qexp import (CyclotomicInteger, FamilyWeight, QExpansion, family_expansion,
                         hecke_recursion_check, ideal_sum_oracle, linear_relation_check,
                         oracle_check, oracle_convergence, oracle_expansion, prime_kind,
                         theta_exact, theta_qexp, theta_vs_oracle)
from cmlinv.report import recursion_checks


def test_prime_kinds(setting):
    """Classification of small primes for D = 39, p = 43"""
    assert [prime_kind(setting, ell) for ell in (2, 3, 7, 13, 43)] == [
        "split", "ramified", "inert", "ramified", "p"]


def test_theta_coefficients(setting):
    """Hand-computed coefficients of theta_psi"""
    a = theta_exact(setting, 100)
    assert a[1] == 1
    assert a[2] == 0          # the primes above 2 have class order 4
    assert a[4] == -1
    assert a[3] == -1 and a[13] == -1
    assert a[9] == 1
    assert a[7] == 0 and a[49] == 1
    assert a[43] == 2


def test_stabilized_coefficients(setting):
    """f has a_p = psi(frak p) = 1 and a_(p^2) = 1"""
    theta = theta_exact(setting, 2000)
    f = theta_exact(setting, 2000, stabilized=True)
    assert f[43] == 1
    assert f[43 * 43] == 1
    assert theta[43] == 2 * f[43]
    assert f[2] == theta[2] and f[7 * 43] == 0


def test_cyclotomic_integers():
    """Z[i] arithmetic reduces modulo the cyclotomic polynomial"""
    i = CyclotomicInteger(4, (0, 1))
    assert i * i == -1
    assert i * i * i * i == 1
    assert i + (-i) == 0


def test_theta_matches_ideal_sums(setting):
    """Hecke recursion and ideal enumeration agree for n <= 2000"""
    assert oracle_check(setting, 2000) == (True, None)
    assert oracle_check(setting, 2000, stabilized=True) == (True, None)


@pytest.mark.slow
def test_theta_matches_ideal_sums_far(setting):
    """Hecke recursion and ideal enumeration agree for n <= 10^4"""
    assert oracle_check(setting, 10 ** 4) == (True, None)


def test_ideal_sum_oracle_small(setting):
    """r(n)/w summed against psi over the four reduced forms"""
    a = ideal_sum_oracle(setting, 50)
    assert a[1] == 1
    assert a[10] == theta_exact(setting, 50)[10]


def test_hecke_recursions(setting):
    """theta satisfies the T_p recursion, f the U_p one"""
    theta = theta_qexp(setting, 2000)
    f = theta_qexp(setting, 2000, stabilized=True)
    assert hecke_recursion_check(theta, setting, det_at_p=1) == (True, None)
    assert hecke_recursion_check(f, setting) == (True, None)
    assert hecke_recursion_check(theta, setting, det_at_p=0) == (False, 43 * 43)


def test_recursion_detects_corruption(setting):
    """Changing a composite coefficient breaks multiplicativity"""
    f = theta_qexp(setting, 100, stabilized=True)
    coeffs = dict(f.coeffs)
    coeffs[10] = coeffs[10] + 1
    bad = QExpansion(coeffs, "f", "1", f.prec, f.nmax)
    assert hecke_recursion_check(bad, setting) == (False, 10)


def test_weights():
    """Classical weights are 1 mod p - 1"""
    w = FamilyWeight.at_depth(43, 4)
    assert w.k == 1 + 42 * 43 ** 4
    with pytest.raises(ValueError):
        FamilyWeight(2, 43)


def test_weight_one_family_is_f(setting):
    """Theta_psi specializes to the stabilized theta series at k = 1"""
    fam = family_expansion(setting, FamilyWeight(1, 43), 100)
    f = theta_qexp(setting, 100, stabilized=True)
    ok, first_bad, _ = fam.compare(f, setting.prec)
    assert ok, first_bad


def test_oracle_depth_is_validated(setting):
    """Depth below 2 is refused"""
    with pytest.raises(ValueError):
        oracle_expansion(setting, 1, 10)


def test_oracle_converges(setting):
    """Consecutive depths agree to at least two digits"""
    conv = oracle_convergence(setting, 4, 30)
    assert conv["digits"] >= 2


def test_closed_form_matches_oracle(setting, inv):
    """f_dag_Theta = A (dTheta_psibar - dTheta_psi) up to the oracle error"""
    result = theta_vs_oracle(setting, inv, 4, 60)
    assert result["ok"], result


def test_generalized_eigenform_recursions(bundle):
    """Every generalized eigenform obeys the derivative recursions, with a_1 = a_p = 0"""
    checks = recursion_checks(bundle)
    assert all(row["ok"] for row in checks.values()), checks
    for label in ("f_dag_F", "f_dag_Theta"):
        assert bundle.expansions[label][1].is_zero()


def test_linear_relation_closed_form(setting, inv):
    """The linear relation holds coefficientwise from the exact derivatives"""
    report = linear_relation_check(setting, inv, 120)
    assert report["ok"]
    assert [p["pass"] for p in report["passes"]] == ["closed_form"]


@pytest.mark.slow
def test_linear_relation_with_oracle(setting, inv):
    """The finite-difference pass agrees to depth - 2 digits"""
    report = linear_relation_check(setting, inv, 120, depth=4, oracle_nmax=60)
    assert report["ok"]
    assert report["passes"][1]["pass"] == "oracle[m=4]"
