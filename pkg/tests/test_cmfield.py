import dataclasses

import pytest
import sympy

from cmlinv.audit import ArtifactCache
from cmlinv.cmfield import (BiquadElement, CMSetting, admissible_settings, characters_of_order,
                            class_poly_data, class_polynomial, compose, eigen_project,
                            genus_splits, local_square_class, prime_above_in, psi_tau_gamma,
                            psi_tau_gamma_any, splitting_subfield)
from cmlinv.errors import AmbiguousMatching, InadmissibleSetting, PrecisionRounding, UnsupportedCase
from cmlinv.padic import RootOfUnity
from cmlinv.quadfield import QuadElement, QuadIdeal, class_group, kronecker


def test_setting_39_43(setting):
    """H = Q(sqrt 13, sqrt -3), coefficients in Q_{43^2}, marked prime [43, (41 + sqrt -39)/2]"""
    assert (setting.d1, setting.d2) == (13, -3)
    assert setting.f == 2
    assert setting.psi_order == 4
    assert setting.frak_p == QuadIdeal(-39, 43, -41)
    assert setting.frak_pbar == setting.frak_p.conjugate()
    assert setting.r1 * setting.r1 == 13
    assert setting.r * setting.r == -39


def test_marked_prime_is_principal(setting):
    """43 = N(1 + 2 (1 + sqrt -39)/2), so psi(frak p) = 1"""
    assert setting.psi_p() == RootOfUnity.one()
    assert setting.phi_of(setting.frak_p) == 1


def test_embedding_kills_marked_prime(setting):
    """iota_p sends frak p into the maximal ideal and frak pbar to units"""
    x = QuadElement.from_half(-39, 41, 1)
    assert setting.embed_K(x).val >= 1
    assert setting.embed_K(x.conjugate()).val == 0


def test_genus_and_characters():
    """One genus split and two characters of order 4 for D = 39"""
    assert genus_splits(39) == [(13, -3)]
    assert characters_of_order(class_group(-39), 4) == [(1,), (3,)]
    assert characters_of_order(class_group(-39), 2) == [(2,)]


@pytest.mark.parametrize("D,p,reason", [
    (39, 5, "irregular"),      # frak p_5 has order 4 in the class group
    (39, 7, "split"),          # inert
    (39, 3, "divides"),        # p | D
    (36, 43, "fundamental"),
])
def test_inadmissible_settings(D, p, reason):
    """Every admissibility condition is enforced"""
    with pytest.raises(InadmissibleSetting) as exc:
        CMSetting.build(D, p, (1,), 20)
    assert reason in exc.value.message


def test_search_finds_canonical_setting():
    """(39, 43) appears for both order-4 characters"""
    found = admissible_settings(40, 50, 20)
    keys = {(s.D, s.p, s.psi_exponents) for s in found}
    assert (39, 43, (1,)) in keys
    assert (39, 43, (3,)) in keys
    assert admissible_settings(20, 50, 20) == []


def test_galois_tags():
    """Klein four group law and its action on coordinates"""
    assert compose("s", "t") == "st"
    assert compose("st", "st") == "1"
    x = BiquadElement(13, -3, (1, 2, 3, 4))
    assert x.apply("s").c == (1, -2, -3, 4)
    assert x.apply("t").c == (1, 2, -3, -4)
    assert x.apply("s").apply("t") == x.apply("st")


def test_eigen_projection_is_odd_under_sigma():
    """u_phi changes sign under sigma"""
    eps = BiquadElement(13, -3, ("3/2", "1/2", 0, 0))
    u = eigen_project(eps)
    assert u.apply("s") == -u


def test_class_polynomials():
    """H_-4 = x - 1728 and the classical H_-23"""
    assert class_polynomial(4).coeffs == (1, -1728)
    assert class_polynomial(23).coeffs == (1, 3491750, -5151296875, 12771880859375)


@pytest.mark.parametrize("D", [23, 39])
def test_class_group_tables_are_galois_equivariant(D):
    """Every orbit polynomial of the action table has coefficients in O_K"""
    cp = class_polynomial(D)
    assert cp.check_tables()
    assert all(len(cp.orbit_polynomial(b)) == cp.degree + 1 for b in range(cp.degree))


@pytest.mark.parametrize("D,ells", [(23, (2, 3, 13, 29)), (39, (2, 5, 11, 43, 47))])
def test_action_table_is_frobenius_at_split_primes(D, ells):
    """sigma_frak_l reduces to x -> x^l on the roots of H_D mod l"""
    cp = class_polynomial(D)
    for ell in ells:
        assert cp.frobenius_matches(ell), ell


def test_inverted_action_table_is_caught():
    """b -> b^-1 keeps the group laws and K-rationality but not Frobenius"""
    cp = class_polynomial(39)
    cg = class_group(-39)
    swapped = dataclasses.replace(
        cp, action=tuple(cp.action[cg.inv(b)] for b in range(cp.degree)))
    assert swapped.check_tables()
    assert not all(swapped.frobenius_matches(ell) for ell in (5, 11))
    with pytest.raises(UnsupportedCase):
        cp.frobenius_matches(7)


def test_class_polynomial_cache(tmp_path):
    """H_D is recorded once, read back, and a disagreeing record is refused"""
    path = tmp_path / "artifacts.jsonl"
    cp = class_polynomial(23, ArtifactCache(str(path)))
    assert ArtifactCache(str(path)).get("class_polynomial", {"D": 23}) == list(cp.coeffs)
    assert class_polynomial(23, ArtifactCache(str(path))).coeffs == cp.coeffs
    bad = ArtifactCache(str(tmp_path / "bad.jsonl"))
    bad.put("class_polynomial", {"D": 23}, [1, 2, 3, 4])
    with pytest.raises(PrecisionRounding):
        class_polynomial(23, bad)


def test_psi_tau_gamma_records_class_polynomial(setting, tmp_path):
    """The cache handed to psi_tau_gamma receives H_39 even when it is memoized"""
    cache = ArtifactCache(str(tmp_path / "artifacts.jsonl"))
    class_poly_data(39)
    psi_tau_gamma_any(setting, 7, cache=cache)
    assert cache.get("class_polynomial", {"D": 39}) == list(class_poly_data(39).coeffs)


def test_places_above_nonsplit_primes(setting):
    """7 is inert in K and splits in K2; 3 and 13 ramify"""
    assert splitting_subfield(setting, 7) == "K2"
    assert splitting_subfield(setting, 3) == "F"
    assert splitting_subfield(setting, 13) == "K2"
    lam = prime_above_in(setting, 7, 0)
    other = prime_above_in(setting, 7, 1)
    assert lam.ideal is not None
    assert other.ideal == lam.ideal.conjugate()
    with pytest.raises(UnsupportedCase):
        splitting_subfield(setting, 2)
    with pytest.raises(UnsupportedCase):
        prime_above_in(setting, 5)


def test_local_square_class(setting):
    """Valuation and unit-part residue at the prime of Q(sqrt 13) above 3"""
    q = prime_above_in(setting, 3).ideal
    assert q.d == 13
    assert local_square_class(QuadElement(13, 4), q) == (0, 1)
    assert local_square_class(QuadElement(13, 18), q) == (2, -1)
    assert local_square_class(QuadElement(13, 1, 0, 3), q) == (-1, 1)
    sq = QuadElement(13, 1, 1) * QuadElement(13, 1, 1)
    assert local_square_class(sq, q)[1] == 1


def _inert_primes(D, bound):
    return [ell for ell in sympy.primerange(3, bound) if kronecker(-D, ell) == -1]


def test_psi_tau_gamma_squares_to_genus_character(setting):
    """At inert l, psi(tau gamma)^2 is the genus character (13/l)"""
    ells = _inert_primes(39, 100)
    assert 7 in ells and 17 in ells
    for ell in ells:
        z = psi_tau_gamma_any(setting, ell)
        assert z ** 2 == kronecker(setting.d1, ell), ell
    assert psi_tau_gamma_any(setting, 7) ** 2 == -1
    assert psi_tau_gamma_any(setting, 17) ** 2 == 1


def test_psi_tau_gamma_at_ramified_primes(setting):
    """l = 3 lies under F and gives +-1; l = 13 lies under K2 and gives +-i"""
    assert psi_tau_gamma_any(setting, 3) ** 2 == 1
    assert psi_tau_gamma_any(setting, 13) ** 2 == -1
    with pytest.raises(UnsupportedCase):
        psi_tau_gamma(setting, 5)
    with pytest.raises(UnsupportedCase):
        psi_tau_gamma(setting, 43)


def test_conjugate_place_negates_psi_tau_gamma(setting):
    """Switching lambda to its conjugate moves gamma by rho^2"""
    for ell in _inert_primes(39, 100) + [3, 13]:
        assert psi_tau_gamma_any(setting, ell, 1) == -psi_tau_gamma_any(setting, ell, 0), ell


@pytest.mark.parametrize("ell", [3, 7, 13, 19, 31])
def test_psi_tau_gamma_does_not_depend_on_period_power(setting, ell):
    """j, j^2 and j^3 periods single out the same gamma"""
    seen = set()
    for s in (1, 2, 3):
        try:
            seen.add(psi_tau_gamma(setting, ell, 0, s))
        except AmbiguousMatching:
            continue
    assert len(seen) == 1


def test_other_character_conjugates_psi_tau_gamma():
    """psi^3 = psi^-1, so its values are the conjugates"""
    other = CMSetting.build(39, 43, (3,), 20)
    first = CMSetting.build(39, 43, (1,), 20)
    for ell in (3, 7, 13, 19):
        assert psi_tau_gamma_any(other, ell) == psi_tau_gamma_any(first, ell).conjugate()
