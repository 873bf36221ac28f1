from fractions import Fraction

import pytest

from padix.api.config_reader import ConfigReader
from padix.api.jobs import JobRunner, certified_modulus, marker_rows
from padix.constants import OUTSIDE_DOMAIN_MARKER
from padix.core.scalar import PadicScalar
from padix.errors import ConfigError
from padix.models.job import JobConfig, SeriesSpec
from tests.unit.conftest import JOB_CONFIGS_PATH


def _runner(name: str) -> JobRunner:
    return JobRunner(ConfigReader(JOB_CONFIGS_PATH / name).get_job())


def test_working_precision_follows_the_largest_conductor():
    runner = _runner("03-certificates.yaml")
    assert runner.level == 4
    assert runner.working_precision == 6 + 4 + 3


def test_certify_table():
    table = _runner("03-certificates.yaml").certify_table()
    assert [row.value for row in table.rows] == [
        "N=2 J=45 slope=1/3 c_kappa=-1/2 admissible=True",
        "N=1 J=0 slope=-2/3 c_kappa=-1/2 admissible=False",
        OUTSIDE_DOMAIN_MARKER,
    ]
    assert [row.certified_mod for row in table.rows] == ["3^13", "3^12", "-"]
    assert table.rows[0].char == "eta(p=3,n=4,i=0,w=1)*x^1"
    assert table.certificates[2] == {"char": "eta(p=3,n=2,i=0,w=1)*x^1", "admissible": False}


def test_certify_requires_ramified_characters():
    with pytest.raises(ConfigError, match="at least one character"):
        JobRunner(JobConfig(p=3, M=6)).certify_table()
    with pytest.raises(ConfigError, match="conductor"):
        JobRunner(JobConfig(p=3, M=6, characters=[{"conductor_exp": 0}])).certify_table()


def test_lambda_table_outside_the_domain():
    job = JobConfig(p=3, M=6, characters=[{"conductor_exp": 2, "wild_exponent": 1}], kappas=[{"j": 1}])
    table = JobRunner(job).lambda_table()
    assert [row.value for row in table.rows] == [OUTSIDE_DOMAIN_MARKER]
    assert table.certificates == [{"char": "eta(p=3,n=2,i=0,w=1)*x^1", "admissible": False}]


def test_series_builders():
    job = JobConfig(p=3, M=6, D_T=20)
    runner = JobRunner(job)
    assert runner.series(SeriesSpec(kind="dirac", b=2)).x_coefficients() == {2: 1}
    assert runner.series(SeriesSpec(kind="units_dirac", b=3)).x_coefficients() == {}
    coleman = runner.series(SeriesSpec(kind="coleman", c=2))
    assert coleman.degree == 20
    assert coleman.prec == runner.working_precision


def test_series_from_a_coefficients_file():
    spec = SeriesSpec(kind="coeffs", file=JOB_CONFIGS_PATH / "06-coefficients.json")
    f = JobRunner(JobConfig(p=3, M=6, D_T=8)).series(spec)
    assert [c == Fraction(-1, 2) ** k for k, c in enumerate(f.t_coefficients(3))] == [True] * 4


def test_mellin_rejects_the_zeroth_moment():
    with pytest.raises(ConfigError, match="j >= 1"):
        JobRunner(JobConfig(p=5, M=6, mellin={"c": 2, "j": [0]})).mellin_table()


def test_epsilon_table_defaults_to_the_trivial_character():
    table = JobRunner(JobConfig(p=3)).epsilon_table()
    assert len(table.rows) == 1
    assert table.rows[0].char == "eta(p=3,n=0,i=0,w=0) j=0"
    assert table.rows[0].value.startswith("p^(0) * level=0 [1]")


def test_epsilon_table_of_a_tame_character():
    table = _runner("05-epsilon.json").epsilon_table()
    assert [row.char for row in table.rows] == ["eta(p=5,n=1,i=1,w=0) j=0", "eta(p=5,n=1,i=1,w=0) j=2"]


def test_epsilon_rejects_a_vanishing_period():
    with pytest.raises(ConfigError, match="functional equation"):
        JobRunner(JobConfig(p=3, epsilon={"omega": "0"})).epsilon_table()


def test_certified_modulus():
    assert certified_modulus(PadicScalar.from_rational(5, 3, 7)) == "5^7"
    assert [row.component for row in marker_rows("x^1", 2)] == [1, 2]


@pytest.mark.slow
def test_mellin_table():
    table = _runner("04-mellin.yaml").mellin_table()
    assert [row.char for row in table.rows] == [
        "x^1:oracle",
        "x^1:series",
        "x^1:kl",
        "x^3:oracle",
        "x^3:series",
        "x^3:kl",
    ]
    values = [PadicScalar.parse(row.value) for row in table.rows]
    assert values[0] == values[1] == values[2] == 1
    assert values[3] == values[4] == values[5] == Fraction(-31, 2)


@pytest.mark.slow
def test_lambda_table():
    table = _runner("01-yaml-job.yaml").lambda_table()
    assert len(table.rows) == 1
    assert table.certificates[0]["admissible"] is True
    assert table.rows[0].value.startswith("level=4")
