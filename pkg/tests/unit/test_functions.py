from fractions import Fraction

import pytest

from padix.core.functions import floor_log, padic_binomial, pexp, plog, teichmuller
from padix.core.scalar import PadicScalar
from padix.errors import NotAUnit, OutsideExpDomain, OutsideLogDomain


@pytest.mark.parametrize("p, a", [(3, 2), (5, 2), (5, 3), (7, 3), (11, 6)])
def test_teichmuller_is_a_root_of_unity(p, a):
    omega = teichmuller(p, a, 12)
    assert omega ** (p - 1) == 1
    assert (omega - a).valuation() >= 1


def test_teichmuller_of_a_non_unit():
    with pytest.raises(NotAUnit):
        teichmuller(5, 10, 8)


def test_floor_log():
    assert floor_log(1, 3) == 0
    assert floor_log(8, 3) == 1
    assert floor_log(9, 3) == 2


def test_log_is_a_homomorphism():
    a = PadicScalar.from_rational(5, 6, 10)
    b = PadicScalar.from_rational(5, 11, 10)
    assert plog(a * b) == plog(a) + plog(b)
    assert plog(a).valuation() == 1


def test_exp_and_log_are_inverse():
    x = PadicScalar.from_rational(7, 14, 9)
    assert plog(pexp(x)) == x
    y = PadicScalar.from_rational(7, 50, 9)
    assert pexp(plog(y)) == y


def test_exp_of_zero():
    assert pexp(PadicScalar.zero(3, 6)) == 1


def test_domains():
    with pytest.raises(OutsideLogDomain):
        plog(PadicScalar.from_rational(5, 2, 8))
    with pytest.raises(OutsideExpDomain):
        pexp(PadicScalar.from_rational(5, 1, 8))


def test_binomial():
    seven = PadicScalar.from_rational(5, 7, 10)
    assert padic_binomial(seven, 3) == 35
    assert padic_binomial(seven, 0) == 1
    half = PadicScalar.from_rational(5, Fraction(1, 2), 10)
    assert padic_binomial(half, 2) == Fraction(-1, 8)
    with pytest.raises(ValueError):
        padic_binomial(seven, -1)
