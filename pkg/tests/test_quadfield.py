from fractions import Fraction

import pytest

from cmlinv.audit import ArtifactCache
from cmlinv.errors import NonFundamental, NotPrincipal
from cmlinv.quadfield import (BinaryQF, Inert, QuadElement, QuadIdeal, Ramified, Split, class_group,
                              fundamental_unit, generator_of_power, ideal_power_generator,
                              is_fundamental, kronecker, prime_discriminants, reduced_forms,
                              search_generator_by_norm, split_type, valuation)


def test_fundamental_discriminants():
    """Fundamental discriminants and their prime factorization"""
    assert is_fundamental(-39)
    assert is_fundamental(-4)
    assert is_fundamental(-8)
    assert not is_fundamental(-12)
    assert not is_fundamental(-36)
    assert prime_discriminants(-39) == [-3, 13]
    with pytest.raises(NonFundamental):
        class_group(-12)


def test_kronecker():
    """Splitting behaviour of small primes in Q(sqrt -39)"""
    assert kronecker(-39, 43) == 1
    assert kronecker(-39, 2) == 1
    assert kronecker(-39, 5) == 1
    assert kronecker(-39, 7) == -1
    assert kronecker(-39, 3) == 0
    assert kronecker(-39, 13) == 0


def test_reduced_forms_and_class_number():
    """h(-39) = 4 with cyclic class group"""
    forms = reduced_forms(-39)
    assert forms[0] == BinaryQF(1, 1, 10)
    assert set(forms) == {BinaryQF(1, 1, 10), BinaryQF(2, 1, 5), BinaryQF(2, -1, 5),
                          BinaryQF(3, 3, 4)}
    cg = class_group(-39)
    assert cg.h == 4
    assert cg.invariants == [4]
    assert class_group(-23).h == 3
    assert class_group(-4).h == 1


def test_form_composition():
    """The class of norm 2 has order 4, its square is the ambiguous class"""
    f = BinaryQF(2, 1, 5)
    assert f ** 4 == BinaryQF(1, 1, 10)
    assert f ** 2 == BinaryQF(3, 3, 4)
    assert f * f.inverse() == BinaryQF(1, 1, 10)


def test_split_types():
    """Split, inert and ramified primes"""
    st = split_type(-39, 43)
    assert isinstance(st, Split)
    assert st.conjugate == st.ideal.conjugate()
    assert isinstance(split_type(-39, 7), Inert)
    assert isinstance(split_type(-39, 3), Ramified)


def test_ideal_membership():
    """[43, (41 + sqrt -39)/2] contains its defining generator and 43"""
    frak_p = QuadIdeal(-39, 43, -41)
    assert frak_p.contains(QuadElement.from_half(-39, 41, 1))
    assert QuadElement(-39, 43) in frak_p
    assert not frak_p.contains(QuadElement.from_half(-39, -41, 1))
    assert frak_p.conjugate().contains(QuadElement.from_half(-39, -41, 1))


def test_generator_search():
    """Non-principal ideals have no generator, principal ones do"""
    two = QuadIdeal(-39, 2, 1)
    assert search_generator_by_norm(two) is None
    u = search_generator_by_norm(two.power(4))
    assert u is not None
    assert u.norm() == 16


def test_ideal_power_generator():
    """ideal^k = (u) with k the class order"""
    frak_p = QuadIdeal(-39, 2, 1)
    u, k = ideal_power_generator(frak_p)
    assert k == 4
    assert u.norm() == 2 ** 4
    assert frak_p.power(4).contains(u)
    assert valuation(u, frak_p) == 4
    assert valuation(u, frak_p.conjugate()) == 0


def test_inert_generator_and_valuation():
    """An inert prime generates itself"""
    u, k = ideal_power_generator(Inert(7), -39)
    assert (u, k) == (QuadElement(-39, 7), 1)
    assert valuation(QuadElement(-39, 49), ell=7) == 2


def test_fundamental_units():
    """eps = (3 + sqrt 13)/2 with norm -1"""
    eps, n = fundamental_unit(13)
    assert eps == QuadElement.from_half(13, 3, 1)
    assert n == -1
    eps, n = fundamental_unit(5)
    assert eps == QuadElement.from_half(5, 1, 1)
    assert n == -1


def test_element_arithmetic():
    """Field operations on (a + b sqrt d)/c"""
    x = QuadElement.from_half(-39, 5, 1)
    assert x * x.conjugate() == QuadElement(-39, 16)
    assert x.norm() == 16
    assert x.trace() == 5
    assert (x / x) == QuadElement(-39, 1)
    assert x.inverse().norm() == Fraction(1, 16)


def test_kronecker_returns_python_ints():
    """Symbols are plain ints so they serialize and compare cleanly"""
    for ell in (3, 5, 7, 13, 43):
        assert type(kronecker(-39, ell)) is int
    assert type(kronecker(13, 2 * 7 * 7)) is int


@pytest.mark.parametrize("d,order", [(-23, 3), (-84, 2), (-39, 4), (-47, 5)])
def test_composition_group_law(d, order):
    """Composition is associative with inverses, and the exponent matches the class group"""
    cg = class_group(d)
    forms = cg.forms
    one = BinaryQF.identity_for_discriminant(d)
    for f in forms:
        assert f * f.inverse() == one
        assert f ** order == one
        for g in forms:
            assert f * g == g * f
            for k in forms:
                assert (f * g) * k == f * (g * k)


def test_fundamental_unit_cache_round_trip(tmp_path):
    """Cached continued-fraction units reload as the same element"""
    path = str(tmp_path / "artifacts.jsonl")
    eps, n = fundamental_unit(61, ArtifactCache(path))
    assert eps == QuadElement.from_half(61, 39, 5)
    assert n == -1
    fresh = ArtifactCache(path)
    assert fresh.get("fundamental_unit", {"d": 61}) == [39, 5]
    assert fundamental_unit(61, fresh) == (eps, n)
    assert fresh.verify() == 1


def test_generator_of_power():
    """Generators found on the power itself have the right norm and lie in it"""
    two = QuadIdeal(-39, 2, 1)
    u = generator_of_power(two, 8)
    assert u.norm() == 256
    assert two.power(8).contains(u)
    with pytest.raises(NotPrincipal):
        generator_of_power(two, 2)
    assert generator_of_power(QuadIdeal(-39, 3, 3), 4) == QuadElement(-39, 9)
    q = QuadIdeal(13, 3, 1)
    v = generator_of_power(q, 2)
    assert abs(v.norm()) == 9
    assert q.power(2).contains(v)
