from fractions import Fraction

import pytest

from padix.core.cyclotomic import CycloElem, CycloLevel
from padix.core.scalar import PadicScalar
from padix.core.series import (
    ErrorBound,
    PlusSeries,
    amice_of_dirac,
    annulus_valuation,
    eval_at_pi,
    from_rational_function,
    moment_at_zero,
    nabla_h,
    partial,
    phi,
    psi,
    restrict_units,
    sigma_a,
)
from padix.errors import InsufficientTruncation, NotAUnit, NotIntegral


def _sample(p: int = 3, prec: int = 10) -> PlusSeries:
    return PlusSeries.from_t_coefficients(p, [3, -1, Fraction(1, 2), 7, 0, 11], prec)


def test_t_and_x_bases_agree():
    f = PlusSeries.from_t_coefficients(3, [1, 2, 3], 10)
    assert f.t_numerators() == [1, 2, 3]
    assert f.t_coefficients()[1] == 2
    assert PlusSeries.x_power(3, 2, 10, 3).t_numerators() == [1, 2, 1, 0]


def test_negative_powers():
    inverse = PlusSeries.x_power(5, -1, 10, 3)
    assert [c == (-1) ** k for k, c in enumerate(inverse.t_coefficients())] == [True] * 4


def test_psi_is_a_left_inverse_of_phi():
    f = _sample()
    assert not (psi(phi(f)) - f).terms


def test_operator_commutations():
    f = _sample(5)
    assert partial(phi(f)).agrees_with(phi(partial(f)).scale(5), 5)
    assert psi(partial(f)).agrees_with(partial(psi(f)).scale(5), 1)
    assert not (sigma_a(2, sigma_a(3, f)) - sigma_a(6, f)).terms
    assert partial(sigma_a(2, f)).agrees_with(sigma_a(2, partial(f)).scale(2), 5)


def test_sigma_a_on_powers():
    x = PlusSeries.x_power(5, 1, 10, 4)
    assert sigma_a(2, x).x_coefficients() == {2: 1}
    with pytest.raises(NotAUnit):
        sigma_a(5, x)


def test_sigma_a_with_a_padic_unit_widens_the_error():
    x = PlusSeries.x_power(5, 1, 10, 4)
    image = sigma_a(PadicScalar.from_rational(5, 7, 6), x)
    assert image.x_coefficients() == {7: 1}
    assert not image.is_exact()


def test_restriction_to_units_is_killed_by_psi():
    f = _sample()
    restricted = restrict_units(f)
    assert all(e % 3 for e in restricted.terms)
    assert not psi(restricted).terms
    assert not restrict_units(PlusSeries.x_power(3, 6, 10, 5)).terms


def test_moments_of_dirac_masses():
    dirac = PlusSeries.x_power(5, 3, 10, 20)
    assert moment_at_zero(dirac, 0) == 1
    assert moment_at_zero(dirac, 2) == 9
    assert moment_at_zero(partial(dirac, 2), 0) == 9


def test_evaluation_at_uniformizer():
    level = CycloLevel(3, 1)
    value = eval_at_pi(PlusSeries.x_power(3, 1, 10, 8), 1)
    assert value == CycloElem.build(level, [1, 1])
    assert value.prec == 10


def test_uncertified_evaluation():
    f = PlusSeries.from_t_coefficients(3, [1], 10, tail_valuation=-1)
    with pytest.raises(InsufficientTruncation):
        eval_at_pi(f, 1)
    with pytest.raises(Exception, match="at least 1"):
        eval_at_pi(PlusSeries.one(3, 10, 5), 0)


def test_truncation_bound():
    bound = ErrorBound.truncation(3, 9, 0)
    assert bound.coefficient_precision(0) == 5
    assert bound.at_radius(Fraction(1, 2)) == 5
    assert ErrorBound.exact(3).is_exact()


def test_geometric_series():
    f = from_rational_function(3, [1], [1, -1], 5, 10)
    assert f.t_numerators() == [1] * 6
    with pytest.raises(NotAUnit):
        from_rational_function(3, [1], [3, 1], 5, 10)


def test_annulus_valuation():
    one = PlusSeries.one(3, 10, 5)
    assert annulus_valuation(one, Fraction(1, 6), Fraction(1, 2)) == 0
    scaled = PlusSeries.x_power(3, 0, 10, 5).scale(9)
    assert annulus_valuation(scaled, Fraction(1, 6), Fraction(1, 2)) == 2


def test_nabla_kills_constants():
    g = nabla_h(2, PlusSeries.one(3, 10, 12))
    assert not g.terms
    with pytest.raises(ValueError):
        nabla_h(0, PlusSeries.one(3, 10, 12))


def test_rendering():
    assert str(PlusSeries.from_t_coefficients(3, [1, Fraction(1, 3)], 10)) == "[1, 1/3^1] deg=1 prec=10 ring=Qp"


def test_amice_transform_of_a_dirac_mass():
    assert amice_of_dirac(5, 3, 10, 8).x_coefficients() == {3: 1}
    b = PadicScalar.from_rational(5, Fraction(1, 3), 6)
    f = amice_of_dirac(5, b, 10, 8)
    assert list(f.x_coefficients()) == [b.residue]
    assert not f.is_exact()
    with pytest.raises(NotIntegral):
        amice_of_dirac(5, PadicScalar.from_rational(5, Fraction(1, 5), 6), 10, 8)
