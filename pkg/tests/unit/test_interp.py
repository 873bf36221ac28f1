from fractions import Fraction

import pytest

from padix.core.characters import FiniteOrderChar, WeightChar
from padix.core.interp import (
    CrisData,
    IwasawaVector,
    convergence_certificate,
    exp_star_level0,
    exp_star_value,
    fe_constant,
    form2_terms,
    gamma_star,
    interpolation_factor,
    kappa_partial,
    lambda_from_units,
    lambda_normalized,
    lambda_value,
    nabla_transfer_factor,
    surconvergence_constant,
)
from padix.core.oracle import coleman_series
from padix.core.scalar import PadicScalar
from padix.core.series import PlusSeries, default_degree, from_rational_function
from padix.errors import (
    EigenConditionViolated,
    InvalidEigenvalue,
    InvalidEpsilon,
    LevelError,
    NoAdmissibleN,
    NotAdmissible,
    NotPsiZero,
    PadixError,
)


def _total(terms):
    total = terms[0]
    for term in terms[1:]:
        total = total + term
    return total


def test_certificate_for_the_cyclotomic_character():
    certificate = convergence_certificate(WeightChar.power(3, 1, 20), 4, 1, target=20)
    assert certificate.N == 2
    assert certificate.slope == Fraction(1, 3)
    assert certificate.c_kappa == Fraction(-1, 2)
    assert certificate.admissible
    assert certificate.J == 66
    assert certificate.to_dict()["slope"] == "1/3"


def test_certificate_without_admissible_level():
    with pytest.raises(NoAdmissibleN):
        convergence_certificate(WeightChar.power(3, 1, 20), 2, 1)
    with pytest.raises(ValueError):
        convergence_certificate(WeightChar.power(3, 1, 20), 4, -1)


def test_non_admissible_certificate():
    certificate = convergence_certificate(WeightChar.power(3, 0, 20), 3, 1)
    assert certificate.N == 1
    assert certificate.slope == Fraction(-2, 3)
    assert not certificate.admissible
    assert certificate.J == 0


def test_surconvergence_constant_grows_with_m_delta():
    assert surconvergence_constant(5, 2) - surconvergence_constant(5, 0) == pytest.approx(2)
    with pytest.raises(ValueError):
        surconvergence_constant(5, -1)


def test_eigen_condition():
    p, M = 3, 8
    crisdata = CrisData.from_values(p, ["1"], M)
    fixed = IwasawaVector((coleman_series(p, 2, 60, M),))
    assert fixed.check_eigen(crisdata).checked
    dirac = IwasawaVector((PlusSeries.x_power(p, 1, M, 60),))
    with pytest.raises(EigenConditionViolated):
        dirac.check_eigen(crisdata)
    with pytest.raises(EigenConditionViolated):
        IwasawaVector((coleman_series(p, 2, 60, M),) * 2).check_eigen(crisdata)


def test_cris_data_validation():
    with pytest.raises(InvalidEigenvalue):
        CrisData.from_values(5, ["0"], 10)
    crisdata = CrisData.from_values(5, ["1", "1/5"], 10)
    assert crisdata.d == 2
    assert crisdata.labels == ("e_1", "e_2")


def test_kappa_partial_fixes_dirac_masses_at_weight_zero():
    kappa = WeightChar.power(3, 0, 20)
    certificate = convergence_certificate(kappa, 4, 1, target=20)
    y = PlusSeries.x_power(3, 2, 20, 54)
    assert not (kappa_partial(kappa, y, certificate) - y).terms


def test_kappa_partial_requires_psi_zero_and_admissibility():
    kappa = WeightChar.power(3, 0, 20)
    certificate = convergence_certificate(kappa, 4, 1, target=20)
    with pytest.raises(NotPsiZero):
        kappa_partial(kappa, PlusSeries.x_power(3, 3, 20, 54), certificate)
    rejected = convergence_certificate(kappa, 3, 1, target=20)
    with pytest.raises(NotAdmissible):
        kappa_partial(kappa, PlusSeries.x_power(3, 2, 20, 54), rejected)


def test_form2_terms_check_representatives():
    kappa = WeightChar.power(3, 1, 20)
    certificate = convergence_certificate(kappa, 4, 1, target=20)
    y = PlusSeries.x_power(3, 2, 20, 54)
    assert len(form2_terms(kappa, y, certificate)) == 2
    shifted = form2_terms(kappa, y, certificate, representatives=[10, 11, 13, 14, 16, 17])
    assert not (_total(shifted) - _total(form2_terms(kappa, y, certificate))).terms
    assert not (_total(shifted) - y.scale(2)).terms
    with pytest.raises(PadixError):
        form2_terms(kappa, y, certificate, representatives=[1, 2, 4, 5, 7, 10])


def test_lambda_of_a_dirac_mass():
    p, M, n = 3, 6, 4
    eta = FiniteOrderChar(p, n, 0, 1)
    kappa = WeightChar.power(p, 0, M + n + 3)
    y = PlusSeries.x_power(p, 2, M + n + 3, p**n)
    assert lambda_from_units(eta, kappa, y, M, 1) == eta.inverse().value(2)


def test_gamma_star():
    assert gamma_star(1) == 1
    assert gamma_star(4) == 6
    assert gamma_star(0) == 1
    assert gamma_star(-2) == Fraction(1, 2)
    assert gamma_star(-3) == Fraction(-1, 6)


def test_nabla_transfer_factor():
    assert nabla_transfer_factor(5, 2) == 20
    assert nabla_transfer_factor(3, 3) == 6
    assert nabla_transfer_factor(1, 2) == 0


def test_interpolation_factor():
    assert interpolation_factor(Fraction(2), Fraction(1), 2, 0, 0, p=3) == Fraction(1, 4)
    assert interpolation_factor(Fraction(2), Fraction(1), 2, 2, 0, p=3) == Fraction(1, 4)
    padic = interpolation_factor(PadicScalar.from_rational(5, 3, 10), 1, 4, 0, 1)
    assert padic == (1 - Fraction(5, 3)) * (1 - Fraction(5, 3))
    with pytest.raises(InvalidEigenvalue):
        interpolation_factor(0, 1, 2, 1, 0, p=3)
    with pytest.raises(PadixError):
        interpolation_factor(Fraction(2), Fraction(1), 2, 0, 0)


def test_exp_star_at_level_zero():
    p, prec = 5, 12
    lam = from_rational_function(p, [1], [2, 1], default_degree(p, 1, prec), prec)
    crisdata = CrisData.from_values(p, ["1"], prec)
    value = exp_star_value(IwasawaVector((lam,)), crisdata, 0, 0, 1)[0]
    assert value == exp_star_level0(lam, crisdata.alphas[0])
    assert exp_star_level0(lam, 1) == Fraction(1, 2) * Fraction(4, 5)
    with pytest.raises(LevelError):
        exp_star_value(IwasawaVector((lam,)), crisdata, 0, 2, 1)


def test_functional_equation_constant_of_the_trivial_character():
    one = PadicScalar.one(3, 10)
    constant = fe_constant(one, FiniteOrderChar.trivial(3), 0, 2, one)
    assert constant.p_exponent == 0
    assert constant.as_element() == 1
    with pytest.raises(InvalidEpsilon):
        fe_constant(PadicScalar.zero(3, 10), FiniteOrderChar.trivial(3), 0, 2, one)


def test_functional_equation_constant_of_a_ramified_character():
    p, M = 5, 10
    eta = FiniteOrderChar(p, 1, 1)
    omega, eps_p = PadicScalar.from_rational(p, 6, M), PadicScalar.from_rational(p, 2, M)
    forward = fe_constant(omega, eta, 0, 4, eps_p, (), M)
    backward = fe_constant(omega, eta.inverse(), 2, 4, eps_p, (), M)
    assert (forward * backward).as_element() == Fraction(36, 4) * 25


@pytest.mark.slow
def test_lambda_normalized_keeps_the_power_of_p_apart():
    p, M, n = 3, 4, 4
    working = M + n + 3
    crisdata = CrisData.from_values(p, ["1"], working)
    z = IwasawaVector((coleman_series(p, 2, default_degree(p, n, working), working),)).check_eigen(crisdata)
    eta = FiniteOrderChar(p, n, 0, 1)
    normalized = lambda_normalized(crisdata, z, eta, 1, M)
    assert normalized.p_exponent == -n * 2
    # Gamma*(2) = 1
    assert normalized.values[0] == lambda_value(crisdata, z, eta, WeightChar.power(p, 1, M + 3), M)[0]
