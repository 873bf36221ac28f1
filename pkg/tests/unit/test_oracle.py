from fractions import Fraction

import pytest
import sympy

from padix.core.characters import FiniteOrderChar
from padix.core.cyclotomic import CycloElem, CycloLevel
from padix.core.oracle import (
    bernoulli,
    character_moment,
    coleman_moment,
    coleman_series,
    kl_reference,
    mahler_coeffs,
    mellin_oracle,
    power_moment,
    required_degree,
    restricted_moment_reference,
)
from padix.core.series import PlusSeries
from padix.errors import NotAUnit, NotLocallyAnalytic, PadixError


@pytest.mark.parametrize("k", [0, 2, 4, 6, 10, 12])
def test_bernoulli_matches_sympy(k):
    expected = sympy.bernoulli(k)
    assert bernoulli(k) == Fraction(int(expected.p), int(expected.q))


def test_bernoulli_conventions():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(3) == 0
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_kl_reference():
    assert kl_reference(5, 2, 1) == 1
    assert kl_reference(5, 2, 3) == Fraction(-31, 2)
    with pytest.raises(NotAUnit):
        kl_reference(5, 10, 1)
    with pytest.raises(ValueError):
        kl_reference(5, 2, 0)


def test_coleman_series_of_two():
    f = coleman_series(5, 2, 60, 10)
    # 1/(2 + T)
    assert [c == Fraction((-1) ** k, 2 ** (k + 1)) for k, c in enumerate(f.t_coefficients(6))] == [True] * 7
    with pytest.raises(NotAUnit):
        coleman_series(5, 5, 6, 10)
    with pytest.raises(PadixError):
        coleman_series(5, 1, 6, 10)


def test_mahler_coefficients_of_a_polynomial():
    expansion = mahler_coeffs(lambda x: x * x, 5, 10)
    assert expansion.count == 3
    assert [int(row[0]) for row in expansion.numerators] == [0, 1, 2]
    assert expansion.coefficient(2) == 2
    assert expansion.valuation(0) == expansion.precision
    assert required_degree(expansion, 10) == 3 + 4 * 15 + 5


def test_mahler_coefficients_in_a_cyclotomic_field():
    level = CycloLevel(5, 1)
    expansion = mahler_coeffs(lambda x: CycloElem.one(level), 5, 4, level)
    assert expansion.count == 1
    assert expansion.coefficient(0) == CycloElem.one(level)
    with pytest.raises(PadixError):
        mahler_coeffs(lambda x: CycloElem.one(level), 5, 4)


def test_mahler_coefficients_that_do_not_vanish():
    with pytest.raises(NotLocallyAnalytic):
        mahler_coeffs(lambda x: (-1) ** x, 5, 4, hard_cap=128)


def test_pairing_with_a_dirac_mass():
    dirac = PlusSeries.x_power(5, 3, 10, 200)
    assert mellin_oracle(dirac, lambda x: x * x, 10) == 9
    assert power_moment(dirac, 2, 10, units_only=False) == 9
    assert power_moment(dirac, 2, 6) == 9
    assert power_moment(PlusSeries.x_power(5, 5, 10, 200), 2, 6) == 0


def test_restricted_moment_read_off_the_series():
    assert restricted_moment_reference(PlusSeries.x_power(5, 3, 10, 20), 2) == 9
    assert restricted_moment_reference(PlusSeries.x_power(5, 10, 10, 20), 2) == 0


@pytest.mark.parametrize("j, expected", [(1, Fraction(1)), (3, Fraction(-31, 2))])
def test_coleman_moments_match_the_closed_form(j, expected):
    assert coleman_moment(5, 2, j, 6) == expected


def test_character_moment_of_a_dirac_mass():
    chi = FiniteOrderChar(5, 1, 1)
    dirac = PlusSeries.x_power(5, 2, 10, 200)
    assert character_moment(dirac, chi, 1, 4) == chi.value(2, 7) * 2
