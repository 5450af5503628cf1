from fractions import Fraction

import pytest

from cmlinv.errors import DivisibleOrder, NonResidue, NotPrincipalUnit, OddValuation, ZeroInput
from cmlinv.padic import (DualScalar, PadicScalar, RootOfUnity, from_rational, hensel_sqrt,
                          iwasawa_log, log_one_plus_p, padic_exp, principal_part,
                          root_in_principal_units, teichmuller, unramified_field)

F7 = unramified_field(7, 1)
F43_4 = unramified_field(43, 4)


def test_ring_operations():
    """Inverse, division and powers stay consistent"""
    x = F7.element(3, 20)
    assert x * x.inverse() == 1
    assert (x / x) == 1
    assert x ** 3 == 27
    assert (x - x).is_zero()
    assert x + 4 == 7


def test_precision_propagation():
    """Multiplying by p raises absolute precision, dividing lowers it"""
    x = F7.element(3, 20)
    p = F7.element(7, 21)
    assert (x * p).val == 1
    assert (x * p).prec == 21
    y = x / p
    assert y.val == -1
    assert y.prec == 19


def test_rational_embedding():
    """Denominators divisible by p give negative valuation"""
    x = from_rational(Fraction(3, 49), F7, 20)
    assert x.val == -2
    assert x * 49 == 3
    assert from_rational(Fraction(1, 2), F7, 20) * 2 == 1


def test_agreement_counts_digits():
    """Agreement is the valuation of the difference"""
    a = F7.element(1, 20)
    b = F7.element(1 + 7 ** 5, 20)
    assert a.agreement(b) == 5
    assert a.agreement(a) == 20


def test_iwasawa_log_kills_p_and_roots_of_unity():
    """log_p(p) = 0 and log of a Teichmuller lift is 0"""
    assert iwasawa_log(F7.element(7, 20)).is_zero()
    assert iwasawa_log(teichmuller(F7.element(3, 20))).is_zero()
    with pytest.raises(ZeroInput):
        iwasawa_log(F7.zero(20))


def test_log_is_additive():
    """log(xy) = log x + log y"""
    x = F7.element(8, 25)
    y = F7.element(15, 25)
    lhs = iwasawa_log(x * y)
    rhs = iwasawa_log(x) + iwasawa_log(y)
    assert lhs.agreement(rhs) >= 22


def test_exp_inverts_log():
    """exp(log(1 + p)) = 1 + p"""
    x = F7.element(8, 20)
    assert padic_exp(iwasawa_log(x)).agreement(x) >= 18


def test_log_one_plus_p_has_valuation_one():
    """The weight normalizer is p times a unit"""
    A = log_one_plus_p(F43_4, 30)
    assert A.val == 1


def test_teichmuller_is_a_root_of_unity():
    """omega(x)^(q-1) = 1 and omega(x) = x mod p"""
    x = F7.element(3, 20)
    w = teichmuller(x)
    assert w ** 6 == 1
    assert w.residue() == x.residue()


def test_hensel_sqrt():
    """Square roots lift, non-residues and odd valuations are refused"""
    two = F7.element(2, 20)
    r = hensel_sqrt(two)
    assert r * r == two
    with pytest.raises(NonResidue):
        hensel_sqrt(F7.element(3, 20))
    with pytest.raises(OddValuation):
        hensel_sqrt(F7.element(7, 20))


def test_hensel_sqrt_over_extension():
    """-1 has a square root in Q_43^4 (43 = 3 mod 4 needs degree 2)"""
    m1 = F43_4.element(-1, 20)
    r = hensel_sqrt(m1)
    assert r * r == m1


def test_root_in_principal_units():
    """The h-th root inside 1 + pZ is unique"""
    x = F7.element(8, 20)
    assert root_in_principal_units(x ** 3, 3).agreement(x) >= 18
    with pytest.raises(DivisibleOrder):
        root_in_principal_units(x, 7)
    with pytest.raises(NotPrincipalUnit):
        root_in_principal_units(F7.element(3, 20), 3)


def test_principal_part_drops_p_and_teichmuller():
    """<p^2 * 3> is a principal unit with the same log as 3"""
    x = F7.element(3 * 49, 22)
    u = principal_part(x)
    assert u.val == 0
    assert u.residue() == (1,)
    assert iwasawa_log(u).agreement(iwasawa_log(F7.element(3, 20))) >= 18


def test_roots_of_unity_exact():
    """Exponent pairs reduce and multiply exactly"""
    i = RootOfUnity(4, 1)
    assert i ** 2 == -1
    assert i ** 4 == RootOfUnity.one()
    assert RootOfUnity(8, 2) == i
    assert (i * i.conjugate()) == 1
    assert i.exponent_in(12) == 3
    assert RootOfUnity.from_json(i.to_json()) == i


def test_roots_of_unity_padic():
    """zeta_4 embeds as a square root of -1"""
    z = RootOfUnity(4, 1).to_padic(F43_4, 20)
    assert z * z == -1


def test_serialization():
    """Digits survive a JSON trip, zero included"""
    x = from_rational(Fraction(5, 7), F43_4, 20) + F43_4.gen(20)
    y = PadicScalar.from_json(x.to_json())
    assert y == x
    assert y.prec == x.prec
    z = PadicScalar.from_json(F7.zero(12).to_json())
    assert z.is_zero() and z.prec == 12


def test_dual_numbers():
    """X^2 = 0 arithmetic"""
    a = DualScalar(F7.element(2, 20), F7.element(3, 20))
    b = DualScalar(F7.element(5, 20), F7.element(1, 20))
    c = a * b
    assert c.a == 10
    assert c.b == 2 * 1 + 3 * 5
    assert (a / a).agreement(DualScalar(F7.one(20), 0)) >= 19
    assert (a ** 3).b == 3 * 4 * 3
