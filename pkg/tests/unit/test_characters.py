import math
from fractions import Fraction

import pytest

from padix.core.characters import (
    Ball,
    FiniteOrderChar,
    WeightChar,
    discrete_log,
    distance,
    epsilon_gl1,
    eval_char,
    conjugate_gauss_sum,
    fourier_hat,
    gauss_sum,
    gauss_sum_inverse,
    twisted_sum,
    weight_of,
)
from padix.core.cyclotomic import CycloElem, CycloLevel, galois
from padix.errors import InvalidCharacter, InvalidEpsilon, LevelError, NotAdmissible, NotAUnit


def test_character_validation():
    with pytest.raises(InvalidCharacter):
        FiniteOrderChar(3, 1, 0)
    with pytest.raises(InvalidCharacter):
        FiniteOrderChar(3, 2, 0, 3)
    with pytest.raises(InvalidCharacter):
        FiniteOrderChar(5, 0, 2)


def test_enumeration_by_conductor():
    assert FiniteOrderChar.all_of_conductor(5, 0) == [FiniteOrderChar.trivial(5)]
    assert len(FiniteOrderChar.all_of_conductor(5, 1)) == 3
    assert len(FiniteOrderChar.all_of_conductor(3, 2)) == 4
    assert len(FiniteOrderChar.all_of_conductor(5, 2)) == 16


def test_values_at_p_equal_three():
    eta = FiniteOrderChar(3, 1, 1)
    assert eta.parity == -1
    assert eta.value(2) == -1
    assert eta.value(4) == 1
    assert eta.is_exact()
    with pytest.raises(NotAUnit):
        eta.value(3)


def test_values_are_multiplicative():
    eta = FiniteOrderChar(5, 2, 1, 2)
    assert eta.value(2) * eta.value(7) == eta.value(14)
    assert eta.value(3) * eta.inverse().value(3) == 1


def test_products_recompute_the_conductor():
    eta = FiniteOrderChar(5, 2, 1, 2)
    assert eta.times(eta.inverse()).is_trivial()
    assert eta.times(FiniteOrderChar(5, 1, 3)) == FiniteOrderChar(5, 2, 0, 2)


def test_discrete_log():
    assert discrete_log(3, 3, 4) == 1
    assert discrete_log(3, 3, 16) == 2
    assert discrete_log(5, 1, 1) == 0


def test_gauss_sum_norm():
    eta = FiniteOrderChar(3, 1, 1)
    assert gauss_sum(eta) * gauss_sum(eta.inverse()) == -3
    wild = FiniteOrderChar(3, 2, 0, 1)
    assert gauss_sum(wild) * gauss_sum(wild.inverse()) == 9


def test_gauss_sum_requires_a_ramified_character():
    with pytest.raises(InvalidCharacter):
        gauss_sum(FiniteOrderChar.trivial(3))


def test_twisted_sums_of_lower_levels_vanish():
    eta = FiniteOrderChar(3, 3, 1, 1)
    x = CycloElem.build(CycloLevel(3, 2), [4, -1, 7, 2, 0, 5])
    assert twisted_sum(eta, x).is_zero()
    with pytest.raises(LevelError):
        twisted_sum(FiniteOrderChar(3, 1, 1), x)


GAUSS_PRECISION = 10
CONDUCTORS = [
    (3, 1),
    (3, 2),
    (3, 3),
    (5, 1),
    (5, 2),
    pytest.param(5, 3, marks=pytest.mark.slow),
]
WILD_CONDUCTORS = [(3, 2), (3, 3), (5, 2), pytest.param(5, 3, marks=pytest.mark.slow)]


@pytest.mark.parametrize("p, n", CONDUCTORS)
def test_gauss_sum_conjugation(p, n):
    for eta in FiniteOrderChar.all_of_conductor(p, n):
        g = gauss_sum(eta, 1, GAUSS_PRECISION)
        for a in (2, p + 1, p**n - 1):
            conjugate = conjugate_gauss_sum(eta, a, GAUSS_PRECISION)
            assert conjugate == eta.inverse().value(a, GAUSS_PRECISION) * g, (eta, a)
            assert conjugate == gauss_sum(eta, a, GAUSS_PRECISION), (eta, a)


@pytest.mark.parametrize("p, n", WILD_CONDUCTORS)
def test_gauss_sum_inverse_of_wild_characters(p, n):
    for eta in FiniteOrderChar.all_of_conductor(p, n):
        assert eta.wild_value_exponent(1 + p) != 0
        assert gauss_sum(eta, 1, GAUSS_PRECISION) * gauss_sum_inverse(eta, GAUSS_PRECISION) == 1, eta


def test_galois_moves_the_values_of_a_wild_character():
    eta = FiniteOrderChar(3, 2, 0, 1)
    value = eta.value(2, GAUSS_PRECISION)
    assert galois(2, value) != value
    assert galois(2, gauss_sum(eta, 1, GAUSS_PRECISION)) != conjugate_gauss_sum(eta, 2, GAUSS_PRECISION)


def test_conjugation_requires_a_ramified_character():
    with pytest.raises(InvalidCharacter):
        conjugate_gauss_sum(FiniteOrderChar.trivial(5), 2)
    with pytest.raises(NotAUnit):
        conjugate_gauss_sum(FiniteOrderChar(5, 1, 1), 5)


def test_weight_characters():
    kappa = WeightChar.power(5, 2, 12)
    assert kappa.value(3) == 9
    assert str(kappa) == "x^2"
    assert kappa.weight() == 2
    generic = WeightChar(5, 2, kappa.z)
    assert generic.value(3) == 9
    assert generic.weight() == 2
    with pytest.raises(InvalidCharacter):
        WeightChar(5, 0, kappa.z + 1)


def test_evaluation_and_weight_of_any_character():
    assert eval_char(WeightChar.power(5, 2, 10), 3) == 9
    assert eval_char(FiniteOrderChar.trivial(5), 2) == 1
    assert weight_of(WeightChar.power(5, 3, 10)) == 3
    assert weight_of(FiniteOrderChar(5, 1, 2)) == 0


def test_twist_adds_weights():
    kappa = WeightChar.power(5, 1, 12).twist(2)
    assert kappa.integer_weight == 3
    assert kappa.value(2) == 8


def test_finite_order_characters_as_weights():
    assert FiniteOrderChar(5, 1, 2).as_weight(10).tame_index == 2
    with pytest.raises(NotAdmissible):
        FiniteOrderChar(5, 2, 0, 1).as_weight(10)


def test_distance():
    eta = FiniteOrderChar(3, 1, 1)
    assert distance(eta, FiniteOrderChar.trivial(3)) == -math.inf
    assert distance(eta, eta) == math.inf
    assert distance(FiniteOrderChar(3, 2, 0, 1), FiniteOrderChar.trivial(3)) == Fraction(1, 2)


def test_ball_membership():
    center = FiniteOrderChar(3, 2, 0, 1)
    ball = Ball(center, 2)
    assert ball.radius_valuation == 1
    assert not ball.contains(FiniteOrderChar.trivial(3))
    assert ball.contains(center)


def test_fourier_transform_of_the_trivial_character():
    trivial = FiniteOrderChar.trivial(5)
    assert fourier_hat(trivial, 1) == Fraction(4, 5)
    assert fourier_hat(trivial, Fraction(1, 5)) == Fraction(-1, 5)
    assert fourier_hat(trivial, Fraction(1, 25)).is_zero()
    assert fourier_hat(FiniteOrderChar(5, 1, 1), 1).is_zero()


def test_epsilon_factors():
    trivial = epsilon_gl1(FiniteOrderChar.trivial(3), Fraction(1, 2))
    assert trivial.p_exponent == 0
    assert trivial.as_element() == 1
    eta = FiniteOrderChar(3, 1, 1)
    product = epsilon_gl1(eta, 0) * epsilon_gl1(eta.inverse(), 1)
    assert product.as_element() == -1
    with pytest.raises(InvalidEpsilon):
        epsilon_gl1(eta, Fraction(1, 2)).as_element()
