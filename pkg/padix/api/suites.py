"""
Identity suites run by :code:`padix verify`.

A suite returns one :code:`CheckResult` per identity; the identity passes when it holds for every sample.
Samples are drawn from a seeded numpy generator, so reports are identical across runs.
"""
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from padix.constants import (
    COLEMAN_FIXED_POINT_SPAN,
    GUARD_DIGITS,
    LAMBDA_CHECK_PRECISION,
    MELLIN_CHECK_PRECISION,
    OPS_DEGREE,
    OPS_SAMPLES,
    SUITE_SEED,
)
from padix.core.characters import (
    FiniteOrderChar,
    WeightChar,
    conjugate_gauss_sum,
    epsilon_gl1,
    gauss_sum,
    twisted_sum,
)
from padix.core.cyclotomic import CycloElem, CycloLevel
from padix.core.interp import (
    CrisData,
    IwasawaVector,
    convergence_certificate,
    exp_star_level0,
    exp_star_value,
    fe_constant,
    form2_terms,
    lambda_from_units,
    lambda_special,
    lambda_value,
    nabla_transfer_factor,
)
from padix.core.oracle import (
    character_expansion,
    coleman_moment,
    coleman_series,
    kl_reference,
    required_degree,
    restricted_moment_reference,
)
from padix.core.scalar import PadicScalar, as_scalar
from padix.core.series import (
    PlusSeries,
    annulus_valuation,
    default_degree,
    from_rational_function,
    loc_coeff,
    nabla_h,
    partial,
    phi,
    psi,
    restrict_units,
    sigma_a,
)
from padix.errors import PadixError
from padix.models.results import CheckResult, SuiteReport
from padix.utils.common import run_in_order

Check = Callable[[], Tuple[bool, str]]


def _run_check(suite: str, identity: str, check: Check) -> CheckResult:
    try:
        passed, detail = check()
    except PadixError as e:
        passed, detail = False, f"{type(e).__name__}: {e}"
    return CheckResult(suite=suite, identity=identity, passed=passed, detail=detail)


def _random_unit(rng: np.random.Generator, p: int, bound: int) -> int:
    while True:
        a = int(rng.integers(1, bound))
        if a % p:
            return a


def _random_integers(rng: np.random.Generator, bound: int, size: int) -> List[int]:
    bound = min(bound, 2**62)
    return [int(c) for c in rng.integers(-bound, bound, size=size)]


def _random_series(rng: np.random.Generator, p: int, M: int, degree: int) -> Tuple[List[int], PlusSeries]:
    coeffs = _random_integers(rng, 2**62, degree + 1)
    return coeffs, PlusSeries.from_t_coefficients(p, coeffs, M)


def _same(f: PlusSeries, g: PlusSeries, degree: int) -> bool:
    """T-coefficients of f and g, each converted on its own, agree up to :code:`T^degree`."""
    return all(c == d for c, d in zip(f.t_coefficients(degree), g.t_coefficients(degree)))


def _inverse_of_two_plus_t(p: int, degree: int, prec: int) -> PlusSeries:
    return from_rational_function(p, [1], [2, 1], degree, prec)


# ops


def ops_suite(p: int, M: int) -> List[CheckResult]:
    rng = np.random.default_rng(SUITE_SEED)
    samples = [
        (*_random_series(rng, p, M, OPS_DEGREE), _random_unit(rng, p, p**2), _random_unit(rng, p, p**2))
        for _ in range(OPS_SAMPLES)
    ]
    K = OPS_DEGREE // p
    detail = f"{OPS_SAMPLES} series of degree {OPS_DEGREE} mod {p}^{M}, compared up to T^{K}"
    identities: Sequence[Tuple[str, Callable[[List[int], PlusSeries, int, int], bool]]] = [
        ("ψ∘φ=id", lambda c, f, a, b: all(x == c[k] for k, x in enumerate(psi(phi(f)).t_coefficients(K)))),
        ("∂∘φ=p·φ∘∂", lambda c, f, a, b: _same(partial(phi(f)), phi(partial(f)).scale(p), K)),
        ("ψ∘∂=p·∂∘ψ", lambda c, f, a, b: _same(psi(partial(f)), partial(psi(f)).scale(p), K)),
        (
            "∂∘σ_a=a·σ_a∘∂",
            lambda c, f, a, b: _same(partial(sigma_a(a, f)), sigma_a(a, partial(f)).scale(a), K),
        ),
        ("σ_a∘σ_b=σ_ab", lambda c, f, a, b: _same(sigma_a(a, sigma_a(b, f)), sigma_a(a * b, f), K)),
        ("ψ∘(1−φψ)=0", lambda c, f, a, b: all(x.is_zero() for x in psi(restrict_units(f)).t_coefficients(K))),
    ]
    results = [
        _run_check(
            "ops", name, lambda identity=identity: (all(identity(*sample) for sample in samples), detail)
        )
        for name, identity in identities
    ]
    results.append(_run_check("ops", "ψ(1/(2+T))=1/(2+T)", lambda: _coleman_fixed_point(p, M)))
    return results


def _coleman_fixed_point(p: int, M: int) -> Tuple[bool, str]:
    K = COLEMAN_FIXED_POINT_SPAN // p
    f = _inverse_of_two_plus_t(p, p * (K + (M + 2) * (p - 1)), M)
    difference = psi(f) - f
    vanishing = all(c.is_zero() for c in difference.t_coefficients(K))
    certified = difference.certified_precision(K)
    return vanishing and certified >= M, f"T-coefficients up to T^{K} certified mod {p}^{certified}"


# gauss


def _gauss_conductors(p: int) -> int:
    return 3 if p <= 5 else 2


def gauss_suite(p: int, M: int) -> List[CheckResult]:
    bound = _gauss_conductors(p)
    characters = [eta for n in range(1, bound + 1) for eta in FiniteOrderChar.all_of_conductor(p, n)]
    sums: Dict[FiniteOrderChar, CycloElem] = {eta: gauss_sum(eta, 1, M) for eta in characters}
    detail = f"{len(characters)} characters of conductor up to {p}^{bound}"

    def shifted() -> Tuple[bool, str]:
        return (
            all(
                gauss_sum(eta, b, M) == eta.inverse().value(b, M) * sums[eta] for eta in characters for b in (2, p - 1)
            ),
            detail,
        )

    def norm() -> Tuple[bool, str]:
        return (
            all(sums[eta] * sums[eta.inverse()] == eta.parity * p**eta.conductor_exp for eta in characters),
            detail,
        )

    def conjugate() -> Tuple[bool, str]:
        return (
            all(
                conjugate_gauss_sum(eta, a, M) == eta.inverse().value(a, M) * sums[eta]
                for eta in characters
                for a in (2, p + 1)
            ),
            detail,
        )

    def epsilon() -> Tuple[bool, str]:
        exponents = (Fraction(0), Fraction(1, 2), Fraction(3))
        return (
            all(
                (epsilon_gl1(eta, s, M) * epsilon_gl1(eta.inverse(), 1 - s, M)).as_element() == eta.parity
                for eta in characters
                for s in exponents
            ),
            detail,
        )

    return [
        _run_check("gauss", "G(η,b)=η⁻¹(b)G(η)", shifted),
        _run_check("gauss", "G(η)G(η⁻¹)=η(−1)pⁿ", norm),
        _run_check("gauss", "σ_a(G(η))=η⁻¹(a)G(η)", conjugate),
        _run_check("gauss", "ε(η,s)ε(η⁻¹,1−s)=η(−1)", epsilon),
    ]


# mellin


def mellin_suite(p: int, M: int) -> List[CheckResult]:
    M = min(M, MELLIN_CHECK_PRECISION)
    c, exponents = 2, (1, 3, 5, 7)
    references = {j: PadicScalar.from_rational(p, kl_reference(p, c, j), M) for j in exponents}
    detail = f"c={c}, j in {list(exponents)}, mod {p}^{M}"

    def oracle() -> Tuple[bool, str]:
        return all(coleman_moment(p, c, j, M) == references[j] for j in exponents), detail

    def series() -> Tuple[bool, str]:
        f = coleman_series(p, c, default_degree(p, 1, M + GUARD_DIGITS), M + GUARD_DIGITS)
        return all(restricted_moment_reference(f, j) == references[j] for j in exponents), detail

    return [
        _run_check("mellin", "Σ c_n(x^j) a_n(f_c|Z_p^×)=(1−c^(j+1))(1−p^j)B_(j+1)/(j+1)", oracle),
        _run_check("mellin", "(∂^j f_c|Z_p^×)(0)=(1−c^(j+1))(1−p^j)B_(j+1)/(j+1)", series),
    ]


# lambda


def _dirac_levels(p: int) -> List[Tuple[int, int]]:
    """Pairs (conductor exponent, m_delta) with admissible certificates for the weights of the Dirac checks."""
    if p == 3:
        return [(4, 0), (4, 1), (5, 0)]
    if p == 5:
        return [(3, 0), (4, 0), (4, 1)]
    return [(3, 0)]


def _terms_dominate(kappa: WeightChar, y: PlusSeries, n: int, m_delta: int, target: int) -> bool:
    """Valuations of the terms of the double series at the radius of pi_n against the certified linear bound."""
    r = CycloLevel(y.p, n).r
    cert = convergence_certificate(kappa, n, m_delta, target).with_floor(annulus_valuation(y, r, r))
    integer = kappa.integer_weight is not None and kappa.integer_weight >= 0
    count = kappa.integer_weight + 1 if integer else cert.J
    for k, term in enumerate(form2_terms(kappa, y, cert, count=count)):
        if term.terms and annulus_valuation(term, r, r) < cert.term_bound(k):
            return False
    return True


def _dirac_checks(p: int, M: int) -> List[CheckResult]:
    rng = np.random.default_rng(SUITE_SEED)
    cases = []
    for n, m_delta in _dirac_levels(p):
        W = M + n + GUARD_DIGITS
        eta = FiniteOrderChar(p, n, 1, 1)
        kappas = [WeightChar.power(p, 2, W), WeightChar(p, 1, as_scalar(p, 1 + p, W))]
        units = [_random_unit(rng, p, p**n) for _ in range(5)]
        cases.append((n, m_delta, W, eta, kappas, units))
    detail = f"conductors {[f'{p}^{n} (m_delta={m_delta})' for n, m_delta in _dirac_levels(p)]}, 5 units each"

    def closed_form() -> Tuple[bool, str]:
        for n, m_delta, W, eta, kappas, units in cases:
            for kappa in kappas:
                for b in units:
                    y = PlusSeries.x_power(p, b, W, p**n)
                    expected = eta.inverse().value(b, W) * kappa.value(b)
                    if lambda_from_units(eta, kappa, y, M, m_delta) != expected:
                        return False, f"{eta}*{kappa} at b={b}"
        return True, detail

    def soundness() -> Tuple[bool, str]:
        for n, m_delta, W, _, kappas, units in cases:
            for kappa in kappas:
                for b in units:
                    if not _terms_dominate(kappa, PlusSeries.x_power(p, b, W, p**n), n, m_delta, W):
                        return False, f"{kappa} at conductor {p}^{n}, b={b}"
        return True, detail

    return [
        _run_check("lambda", "G(η)⁻¹Σ η(a)σ_a[κ(∂)(1+T)^b](π_n)=η⁻¹(b)κ(b)", closed_form),
        _run_check("lambda", "form2 terms dominate the certified bound (Dirac)", soundness),
    ]


def _coleman_checks(p: int, M: int) -> List[CheckResult]:
    if p != 3:
        return []
    n, m_delta, exponents = 4, 1, range(7)
    W = M + n + GUARD_DIGITS
    eta = FiniteOrderChar(p, n, 0, 1)
    expansions = {j: character_expansion(eta.inverse(), j, W) for j in exponents}
    degree = max([default_degree(p, n, W)] + [required_degree(e, W) for e in expansions.values()])
    crisdata = CrisData.from_values(p, ["1"], W)
    lam = _inverse_of_two_plus_t(p, degree, W)
    z = IwasawaVector((lam,)).check_eigen(crisdata)
    detail = f"{eta}, λ=1/(2+T), j in 0..{exponents[-1]}, mod {p}^{M}"

    def interpolation() -> Tuple[bool, str]:
        for j in exponents:
            kappa = WeightChar.power(p, j, W)
            values = lambda_value(crisdata, z, eta, kappa, M, m_delta)
            special = lambda_special(crisdata, z, eta, j, M, expansions[j])
            if values != special:
                return False, f"j={j}"
        return True, detail

    def soundness() -> Tuple[bool, str]:
        y = lam - phi(lam)
        return all(_terms_dominate(WeightChar.power(p, j, W), y, n, m_delta, W) for j in exponents), detail

    return [
        _run_check("lambda", "Λ(ηx^j)=α⁻ⁿ∫_{Z_p^×} η⁻¹x^j λ", interpolation),
        _run_check("lambda", "form2 terms dominate the certified bound (Coleman)", soundness),
    ]


def _vanishing_checks(p: int, M: int) -> List[CheckResult]:
    rng = np.random.default_rng(SUITE_SEED)
    top = 4 if p == 3 else 3 if p == 5 else 2
    detail = f"10 elements per conductor {p}^2..{p}^{top}"

    def vanishing() -> Tuple[bool, str]:
        for n in range(2, top + 1):
            eta = FiniteOrderChar(p, n, 1, 1)
            lower = CycloLevel(p, n - 1)
            for _ in range(10):
                coeffs = _random_integers(rng, p**M, lower.degree)
                if not twisted_sum(eta, CycloElem.build(lower, coeffs), M).is_zero():
                    return False, f"{eta}"
        return True, detail

    return [_run_check("lambda", "Σ η(a)σ_a(x)=0 for x of lower level", vanishing)]


def _exp_star_checks(p: int, M: int) -> List[CheckResult]:
    n, levels, exponents = 1, (1, 2, 3), (0, 1, 2)
    prec = M + levels[-1] * (exponents[-1] + 1) + GUARD_DIGITS
    lam = _inverse_of_two_plus_t(p, default_degree(p, levels[-1], prec), prec)
    crisdata = CrisData.from_values(p, ["1"], prec)
    z = IwasawaVector((lam,))

    def stable() -> Tuple[bool, str]:
        for j in exponents:
            values = [exp_star_value(z, crisdata, j, n, m)[0] for m in levels]
            if any(value != values[0] for value in values[1:]):
                return False, f"j={j}"
        return True, f"λ=1/(2+T), n={n}, m in {list(levels)}, j in {list(exponents)}"

    def level0() -> Tuple[bool, str]:
        value = exp_star_value(z, crisdata, 0, 0, 1)[0]
        return value == exp_star_level0(lam, crisdata.alphas[0]), "λ=1/(2+T), m=1"

    return [
        _run_check("lambda", "exp*(z) is independent of m", stable),
        _run_check("lambda", "p⁻¹α⁻¹Tr(λ(π_1))=(1−p⁻¹α⁻¹)λ(0)", level0),
    ]


def _nabla_checks(p: int, M: int) -> List[CheckResult]:
    rng = np.random.default_rng(SUITE_SEED)
    prec = M + 10
    degree = default_degree(p, 1, prec)
    samples = [
        PlusSeries.from_t_coefficients(p, _random_integers(rng, p**prec, 13), prec, degree)
        for _ in range(3)
    ]
    heights, exponents = (1, 2, 3), range(5)

    def localization() -> Tuple[bool, str]:
        for f in samples:
            for h in heights:
                g = nabla_h(h, f)
                for j in exponents:
                    if loc_coeff(g, 1, j) != loc_coeff(f, 1, j) * nabla_transfer_factor(j, h):
                        return False, f"h={h}, j={j}"
        return True, f"{len(samples)} random series, h in {list(heights)}, j < {exponents[-1] + 1}"

    def transfer() -> Tuple[bool, str]:
        level_prec = M + 2 + GUARD_DIGITS
        lam = _inverse_of_two_plus_t(p, default_degree(p, 1, level_prec + 2), level_prec + 2)
        crisdata = CrisData.from_values(p, ["1"], level_prec)
        z, nabla_z = IwasawaVector((lam,)), IwasawaVector((nabla_h(1, lam),))
        for j in (0, 1, 2):
            lhs = exp_star_value(nabla_z, crisdata, j, 1, 1)[0]
            rhs = exp_star_value(z, crisdata, j, 1, 1)[0] * nabla_transfer_factor(j, 1)
            if lhs != rhs:
                return False, f"j={j}"
        return True, "λ=1/(2+T), h=1, j in [0, 1, 2]"

    return [
        _run_check("lambda", "loc(∇_h f)_j=j!/(j−h)!·loc(f)_j", localization),
        _run_check("lambda", "exp*(∇_h z)_j=j!/(j−h)!·exp*(z)_j", transfer),
    ]


def lambda_suite(p: int, M: int) -> List[CheckResult]:
    M = min(M, LAMBDA_CHECK_PRECISION)
    return (
        _dirac_checks(p, M)
        + _coleman_checks(p, M)
        + _vanishing_checks(p, M)
        + _exp_star_checks(p, M)
        + _nabla_checks(p, M)
    )


# epsilon


def epsilon_suite(p: int, M: int) -> List[CheckResult]:
    characters = [eta for n in range(1, 3) for eta in FiniteOrderChar.all_of_conductor(p, n)]
    omega, eps_p = as_scalar(p, 1 + p, M), as_scalar(p, 2, M)
    eps_tame = [(7 if p != 7 else 11, as_scalar(p, 3, M))]
    k, exponents = 4, (0, 1, 2)

    def unramified() -> Tuple[bool, str]:
        one = PadicScalar.one(p, M)
        trivial = FiniteOrderChar.trivial(p)
        return (
            all(fe_constant(one, trivial, j, k, one, (), M).as_element() == 1 for j in exponents),
            f"k={k}, j in {list(exponents)}",
        )

    def dual() -> Tuple[bool, str]:
        for eta in characters:
            n = eta.conductor_exp
            expected = omega * omega / (eps_p * eps_p) / (eps_tame[0][1] * eps_tame[0][1]) * Fraction(p) ** (2 * n)
            for j in exponents:
                forward = fe_constant(omega, eta, j, k, eps_p, eps_tame, M)
                backward = fe_constant(omega, eta.inverse(), k - 2 - j, k, eps_p, eps_tame, M)
                if (forward * backward).as_element() != expected:
                    return False, f"{eta}, j={j}"
        return True, f"{len(characters)} characters of conductor up to {p}^2, k={k}"

    return [
        _run_check("epsilon", "C(f,η,j)=1 for unramified η and unit inputs", unramified),
        _run_check("epsilon", "C(f,η,j)C(f,η⁻¹,k−2−j)=Ω²p²ⁿε_p⁻²∏ε_ℓ⁻²", dual),
    ]


SUITES: Dict[str, Callable[[int, int], List[CheckResult]]] = {
    "ops": ops_suite,
    "gauss": gauss_suite,
    "mellin": mellin_suite,
    "lambda": lambda_suite,
    "epsilon": epsilon_suite,
}


def _suite_task(task: Tuple[str, int, int]) -> List[CheckResult]:
    name, p, M = task
    return SUITES[name](p, M)


def run_suites(suite: str, p: int, M: int, workers: int = 1) -> SuiteReport:
    """Runs one suite, or all of them for :code:`suite == "all"`, in a fixed order."""
    names = list(SUITES) if suite == "all" else [suite]
    report = SuiteReport(p=p, M=M)
    for checks in run_in_order(_suite_task, [(name, p, M) for name in names], workers):
        report.checks.extend(checks)
    return report
