import pytest

from cmlinv.cmfield import P_PLACES, Place
from cmlinv.errors import InconsistentWitnesses, ZeroTargetValuation
from cmlinv.linv import (L_psi_ell, Target, Witness, compute_invariants, ell_L_invariant,
                         eta_frak_p, fundamental_unit_H, p_unit_witness, reciprocity_eval,
                         required_digits)
from cmlinv.padic import iwasawa_log
from cmlinv.quadfield import ideal_power_generator, split_type


def test_required_digits(setting, need):
    """Checks ask for five digits less than the working precision"""
    assert required_digits(setting) == setting.prec - 5 == need


def test_identities_hold(inv):
    """Every identity among the invariants holds to the required digits"""
    results = inv.identities()
    assert len(results) > 4
    failed = [(name, digits) for name, digits, ok in results if not ok]
    assert failed == []


def test_slope_and_xi(inv, need):
    """S_phi = -1 and xi^2 = -1 for an order-4 character"""
    assert inv.S_phi.agreement(-1) >= need
    assert (inv.S_phi * inv.S_phibar).agreement(1) >= need
    assert (inv.xi * inv.xi).agreement(-1) >= need


def test_anticyclotomic_invariants_agree(inv, need):
    """L_-(phi) = L_-(phibar) when phi is quadratic, and L + Lbar = 1/A"""
    assert inv.Lminus_phi.agreement(inv.Lminus_phibar) >= need
    assert (inv.L + inv.Lbar).agreement(1 / inv.A) >= need - 2


def test_split_invariants_sum_to_minus_log(setting, inv, need):
    """L_l + L_lbar = -log_p(l) at the split primes 2 and 5"""
    for ell in (2, 5):
        a, b = inv.split[ell]
        log_ell = iwasawa_log(setting.field.element(ell, setting.prec + 2))
        assert (a + b).agreement(-log_ell) >= need


def test_inert_invariant(setting, need):
    """L_7 = -log_p(7) for the inert prime 7"""
    value = ell_L_invariant(setting, 7)
    log7 = iwasawa_log(setting.field.element(7, setting.prec + 2))
    assert value.agreement(-log7) >= need


def test_no_witness_is_refused(setting):
    """Evaluation needs a witness with nonzero target valuation"""
    with pytest.raises(ZeroTargetValuation):
        reciprocity_eval(setting, eta_frak_p(), Target.k_prime(7), [])
    unit = Witness.of(fundamental_unit_H(setting), 1, "eps")
    with pytest.raises(ZeroTargetValuation):
        reciprocity_eval(setting, eta_frak_p(), Target.k_prime(7), [unit])


def test_witness_valued_at_p_is_refused(setting):
    """A witness supported at a p-place outside the target is rejected"""
    w = Witness.of(setting.element((43, 0, 0, 0)), 1, "p")
    with pytest.raises(InconsistentWitnesses):
        reciprocity_eval(setting, eta_frak_p(), Target.k_prime(7), [w])


def test_disagreeing_witnesses(setting):
    """A generator of frak l^4 and the non-unit 2 give different values"""
    ideal = split_type(-39, 5).ideal
    u, k = ideal_power_generator(ideal)
    good = Witness.of(setting.lift(u), 1, "u_5")
    bad = Witness.of(setting.element((2, 0, 0, 0)), 1, "2")
    V = reciprocity_eval(setting, eta_frak_p(), Target.k_prime(ideal), [good])
    assert V.agreement(-setting.log_at(setting.lift(u)) / k) >= required_digits(setting)
    with pytest.raises(InconsistentWitnesses):
        reciprocity_eval(setting, eta_frak_p(), Target.k_prime(ideal), [good, bad])


def test_ramified_spec_at_target_is_refused(setting):
    """The cochain must be unramified at the target p-place"""
    with pytest.raises(ValueError):
        reciprocity_eval(setting, eta_frak_p(), Target.p_place(setting, Place("1")), [])


def test_L_psi_is_independent_of_lambda(setting, inv, need):
    """The value recorded at 7 is reproduced by a fresh evaluation"""
    L_psi, z, L_phi = L_psi_ell(setting, 7, inv.S_phi)
    assert z == inv.psi_tau_gamma[7]
    assert L_psi.agreement(inv.L_psi[7]) >= need
    assert L_phi.agreement(inv.L_phi[7]) >= need


def test_thread_count_does_not_change_the_result(setting):
    """Per-prime work in a pool gives the same invariant set"""
    primes = [2, 3, 5, 7, 11, 13]
    one = compute_invariants(setting, primes, threads=1)
    four = compute_invariants(setting, primes, threads=4)
    assert one.to_json() == four.to_json()
    assert 43 not in one.primes()
    assert set(one.split) == {2, 5, 11}
    assert set(one.L_psi) == {3, 7, 13}


def test_doubled_p_unit_witness_is_searched_afresh(setting):
    """The second anticyclotomic witness comes from generators of the doubled powers"""
    w = p_unit_witness(setting)
    w2 = p_unit_witness(setting, scale=2)
    assert not set(w.to_json()) & set(w2.to_json()[:3])
    for place in P_PLACES:
        assert w2.ord_p(setting, place) == 2 * w.ord_p(setting, place)
    assert w.ord_p(setting, Place("1")) > 0
