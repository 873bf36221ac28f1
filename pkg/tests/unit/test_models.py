import pytest
from pydantic import ValidationError

from padix.models.job import JobConfig, KappaSpec, SeriesKind, SeriesSpec


def test_defaults():
    job = JobConfig(p=5)
    assert (job.M, job.m_delta, job.D_T) == (20, 1, None)
    assert job.crisdata.alphas == ["1"]
    assert job.z[0].kind == SeriesKind.coleman
    assert job.kappas[0].j == 0


@pytest.mark.parametrize("p", [2, 4, 9, 1])
def test_p_shall_be_an_odd_prime(p):
    with pytest.raises(ValidationError, match="odd prime"):
        JobConfig(p=p)


def test_minimal_precision():
    with pytest.raises(ValidationError, match="at least 4"):
        JobConfig(p=3, M=3)


def test_m_delta_is_nonnegative():
    assert JobConfig(p=3, m_delta=0).m_delta == 0
    with pytest.raises(ValidationError):
        JobConfig(p=3, m_delta=-1)


def test_one_series_per_eigenvalue():
    with pytest.raises(ValidationError, match="one series per eigenvalue"):
        JobConfig(p=3, crisdata={"alphas": ["1", "2"]})


def test_series_fields_depend_on_the_kind():
    with pytest.raises(ValidationError, match="field c"):
        SeriesSpec(kind="coleman")
    with pytest.raises(ValidationError, match="field b"):
        SeriesSpec(kind="dirac")
    with pytest.raises(ValidationError, match="coeffs or file"):
        SeriesSpec(kind="coeffs")
    with pytest.raises(ValidationError, match="does not exist"):
        SeriesSpec(kind="coeffs", file="missing-coefficients.json")


def test_weight_character_forms():
    assert KappaSpec(tame_index=1, z_kappa="4").z_kappa == "4"
    with pytest.raises(ValidationError, match="either j or z_kappa"):
        KappaSpec()
    with pytest.raises(ValidationError, match="mutually exclusive"):
        KappaSpec(j=1, z_kappa="4")


def test_overrides():
    job = JobConfig(p=3, M=6).with_overrides(p=7)
    assert (job.p, job.M) == (7, 6)
