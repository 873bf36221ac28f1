import pytest

from padix.api.suites import SUITES, _run_check, _same, ops_suite, run_suites
from padix.core.series import PlusSeries, partial, phi
from padix.errors import InsufficientPrecision


def _failing_check():
    raise InsufficientPrecision("no digit left")


def test_a_library_error_fails_the_identity():
    result = _run_check("ops", "broken", _failing_check)
    assert not result.passed
    assert result.status == "FAIL"
    assert result.detail == "InsufficientPrecision: no digit left"


def test_a_check_reports_its_detail():
    result = _run_check("ops", "trivial", lambda: (True, "nothing to do"))
    assert result.passed
    assert result.detail == "nothing to do"


@pytest.mark.parametrize("p", [3, 5])
def test_gauss_suite(p):
    report = run_suites("gauss", p, 6)
    assert [check.suite for check in report.checks] == ["gauss"] * 4
    assert report.passed, [check for check in report.checks if not check.passed]


def test_epsilon_suite():
    report = run_suites("epsilon", 5, 8)
    assert len(report.checks) == 2
    assert report.passed, [check for check in report.checks if not check.passed]


def test_all_runs_every_suite_in_order(mocker):
    calls = []
    fakes = {name: (lambda p, M, name=name: calls.append(name) or []) for name in SUITES}
    mocker.patch.dict(SUITES, fakes)
    run_suites("all", 3, 6)
    assert calls == ["ops", "gauss", "mellin", "lambda", "epsilon"]


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["ops", "mellin", "lambda"])
def test_heavy_suites(suite):
    report = run_suites(suite, 3, 8)
    assert report.passed, [check for check in report.checks if not check.passed]


def test_series_are_compared_by_their_t_coefficients():
    f = PlusSeries.from_t_coefficients(3, [1, 2, 3, 4], 6)
    assert _same(f, PlusSeries.from_t_coefficients(3, [1, 2, 3 + 3**6, 4], 6), 3)
    assert not _same(f, PlusSeries.from_t_coefficients(3, [1, 2, 4, 4], 6), 3)
    assert _same(f, PlusSeries.from_t_coefficients(3, [1, 2, 3, 5], 6), 2)


@pytest.fixture
def small_ops_suite(mocker):
    mocker.patch("padix.api.suites.OPS_SAMPLES", 3)
    mocker.patch("padix.api.suites.OPS_DEGREE", 30)
    mocker.patch("padix.api.suites._coleman_fixed_point", return_value=(True, "skipped"))


@pytest.mark.parametrize("p", [3, 5])
def test_ops_suite_on_small_series(small_ops_suite, p):
    checks = ops_suite(p, 6)
    assert len(checks) == 7
    assert all(check.passed for check in checks), [check for check in checks if not check.passed]
    assert checks[0].detail.endswith(f"compared up to T^{30 // p}")


def test_ops_suite_catches_a_broken_frobenius(small_ops_suite, mocker):
    mocker.patch("padix.api.suites.phi", side_effect=lambda f: partial(phi(f)))
    checks = {check.identity: check for check in ops_suite(3, 6)}
    assert not checks["ψ∘φ=id"].passed
    assert checks["σ_a∘σ_b=σ_ab"].passed
