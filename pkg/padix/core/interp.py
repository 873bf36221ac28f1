"""
The local L-function of a crystalline module :code:`R+ (x) D_cris` with diagonal Frobenius.

:code:`kappa_partial` interpolates the operators :code:`partial^j` along the weight space on series killed by psi:

    kappa(partial) y = sum_i sum_j' binom(w_kappa, j') kappa(i) i^(-j') p^(N j') (1 + T)^i phi^N(partial^j' y_i)

with :code:`y_i = psi^N((1 + T)^(-i) y)` and i running over representatives of :code:`(Z/p^N)^x`.
Its evaluation at :code:`pi_n`, twisted by a character of conductor p^n, gives the values of :code:`Lambda_{D,z}`.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple, Union

from padix.constants import DEFAULT_M_DELTA, DEFAULT_PRECISION, GUARD_DIGITS, RADIUS_GRID_SIZE
from padix.core.characters import (
    EpsilonFactor,
    FiniteOrderChar,
    WeightChar,
    epsilon_gl1,
    gauss_sum_inverse,
    twisted_sum,
)
from padix.core.cyclotomic import CycloElem, CycloLevel, trace_down
from padix.core.functions import padic_binomial
from padix.core.scalar import PadicScalar, Rational, as_scalar
from padix.core.series import (
    INF,
    Bound,
    ErrorBound,
    PlusSeries,
    annulus_valuation,
    eval_at_pi,
    grid_radius,
    moment_at_zero,
    partial,
    phi,
    psi,
)
from padix.errors import (
    EigenConditionViolated,
    InsufficientTruncation,
    InvalidCharacter,
    InvalidEigenvalue,
    InvalidEpsilon,
    LevelError,
    NoAdmissibleN,
    NotAdmissible,
    NotPsiZero,
    PadixError,
)

if TYPE_CHECKING:
    from padix.core.oracle import MahlerExpansion

Coefficient = Union[Fraction, PadicScalar]


@dataclass(frozen=True)
class CrisData:
    """Frobenius eigenvalues :code:`alpha_i` on the basis :code:`e_1, ..., e_d` of D_cris."""

    p: int
    alphas: Tuple[PadicScalar, ...]
    labels: Tuple[str, ...] = ()
    hodge_tate: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not self.alphas:
            raise InvalidEigenvalue("At least one eigenvalue is required")
        for alpha in self.alphas:
            if alpha.is_zero():
                raise InvalidEigenvalue(f"Eigenvalues shall be nonzero, got {alpha}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e_{i + 1}" for i in range(self.d)))
        if len(self.labels) != self.d:
            raise PadixError(f"Expected {self.d} basis labels, got {len(self.labels)}")

    @classmethod
    def from_values(cls, p: int, alphas: Sequence[Union[Rational, str, PadicScalar]], M: int) -> CrisData:
        return cls(p, tuple(as_scalar(p, alpha, M) for alpha in alphas))

    @property
    def d(self) -> int:
        return len(self.alphas)


def _is_zero_to_precision(f: PlusSeries) -> bool:
    """True when every certified T-coefficient of f up to its degree vanishes."""
    for k, numerator in enumerate(f.t_numerators()):
        bound = f.coefficient_precision(k)
        if bound == -INF:
            continue
        digits = math.floor(bound) + f.shift
        if digits > 0 and numerator % f.p**digits:
            return False
    return True


@dataclass(frozen=True)
class IwasawaVector:
    """Components :code:`lambda_i` of :code:`z = sum_i A_{lambda_i} (x) e_i`."""

    components: Tuple[PlusSeries, ...]
    checked: bool = False

    @property
    def p(self) -> int:
        return self.components[0].p

    def check_eigen(self, crisdata: CrisData) -> IwasawaVector:
        """Verifies :code:`psi(lambda_i) = alpha_i lambda_i` to the certified precision."""
        if len(self.components) != crisdata.d:
            raise EigenConditionViolated(f"Expected {crisdata.d} components, got {len(self.components)}")
        for i, (component, alpha) in enumerate(zip(self.components, crisdata.alphas)):
            defect = psi(component) - component.scale(alpha)
            if not _is_zero_to_precision(defect.with_degree(component.degree // component.p)):
                raise EigenConditionViolated(f"psi(lambda_{i + 1}) differs from {alpha} lambda_{i + 1}")
        return IwasawaVector(self.components, checked=True)


@dataclass(frozen=True)
class ConvergenceCertificate:
    """Parameters under which the truncated double sum defining :code:`kappa(partial)` is certified.

    The term of index j' of the double sum has Gauss valuation at least :code:`base + j' slope` at the radius of
    :code:`pi_m`; the terms of index at least :code:`J` are below the target precision.
    """

    p: int
    m: int
    m_delta: int
    N: int
    J: int
    slope: Fraction
    base: Bound
    c_kappa: Fraction
    n_d: float
    target: int
    admissible: bool

    def term_bound(self, j: int) -> Bound:
        return self.base + j * self.slope

    def with_floor(self, floor: Bound) -> ConvergenceCertificate:
        """Certificate for an input whose Gauss valuation at the radius of :code:`pi_m` is at least floor."""
        base = floor - self.N
        return dataclasses.replace(self, base=base, J=_term_count(self.admissible, base, self.slope, self.target))

    def tail_bound(self) -> ErrorBound:
        """Error bound of the dropped terms, valid on the radii of :code:`pi_m` and beyond."""
        level_radius = CycloLevel(self.p, self.m).r
        bound = self.term_bound(self.J)
        radial = tuple(
            bound if grid_radius(self.p, j) >= level_radius else -INF for j in range(RADIUS_GRID_SIZE)
        )
        return ErrorBound(self.p, radial, -INF).normalized()

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "m_delta": self.m_delta,
            "N": self.N,
            "J": self.J,
            "slope": str(self.slope),
            "c_kappa": str(self.c_kappa),
            "N_D": round(self.n_d, 6),
            "admissible": self.admissible,
        }


def _term_count(admissible: bool, base: Bound, slope: Fraction, target: int) -> int:
    if not admissible:
        return 0
    return max(1, math.ceil((target - base) / slope))


def surconvergence_constant(p: int, m_delta: int) -> float:
    """The radius constant :code:`N(D) = -1/ln p - ln ln p + v_p(q) + 1/(p - 1) + 3 + m_delta`."""
    if m_delta < 0:
        raise ValueError(f"m_delta shall be nonnegative, got {m_delta}")
    return -1 / math.log(p) - math.log(math.log(p)) + 1 + 1 / (p - 1) + 3 + m_delta


def _c_kappa(kappa: WeightChar) -> Fraction:
    p = kappa.p
    v = Fraction((kappa.z - 1).valuation())
    # k -> p^k v - k is convex, so the infimum is reached before the first increase
    best, k = v, 1
    while p**k * v - k < best:
        best = p**k * v - k
        k += 1
    return min(best - 1, 0) - Fraction(1, p - 1)


def convergence_certificate(
    kappa: WeightChar,
    m: int,
    m_delta: int = DEFAULT_M_DELTA,
    target: int = DEFAULT_PRECISION,
    floor: Bound = 0,
) -> ConvergenceCertificate:
    """Chooses the level N of the double sum for characters :code:`eta kappa` with eta of conductor p^m.

    Searches :code:`N in [1, m - m_delta - 1]` for the largest per-term slope :code:`C_kappa + N - p^N r_m - 1`,
    the smallest N winning ties.

    Raises:
        NoAdmissibleN: when the search range is empty
    """
    if m_delta < 0:
        raise ValueError(f"m_delta shall be nonnegative, got {m_delta}")
    p = kappa.p
    upper = m - m_delta - 1
    if upper < 1:
        raise NoAdmissibleN(f"No admissible N for conductor {p}^{m} and m_delta={m_delta}")
    c_kappa = _c_kappa(kappa)
    r_m = CycloLevel(p, m).r
    best_n, best_slope = None, None
    for N in range(1, upper + 1):
        slope = c_kappa + N - p**N * r_m - 1
        if best_slope is None or slope > best_slope:
            best_n, best_slope = N, slope
    admissible = best_slope > 0
    base = floor - best_n
    return ConvergenceCertificate(
        p=p,
        m=m,
        m_delta=m_delta,
        N=best_n,
        J=_term_count(admissible, base, best_slope, target),
        slope=best_slope,
        base=base,
        c_kappa=c_kappa,
        n_d=surconvergence_constant(p, m_delta),
        target=target,
        admissible=admissible,
    )


def _weight_binomial(kappa: WeightChar, j: int) -> Coefficient:
    if kappa.integer_weight is None:
        return padic_binomial(kappa.weight(), j)
    w = kappa.integer_weight
    if w >= 0:
        return Fraction(comb(w, j))
    return Fraction(math.prod(range(w - j + 1, w + 1)), factorial(j))


def _kappa_value(kappa: WeightChar, i: int) -> Coefficient:
    if kappa.integer_weight is not None:
        return Fraction(i) ** kappa.integer_weight
    return kappa.value(i)


def _term_count_for(kappa: WeightChar, cert: ConvergenceCertificate) -> Tuple[int, bool]:
    """Number of terms to sum and whether the dropped terms vanish identically."""
    if kappa.integer_weight is not None and kappa.integer_weight >= 0:
        return kappa.integer_weight + 1, True
    return cert.J, False


def _iterate(operator, f: PlusSeries, times: int) -> PlusSeries:
    for _ in range(times):
        f = operator(f)
    return f


def form2_terms(
    kappa: WeightChar,
    y: PlusSeries,
    cert: ConvergenceCertificate,
    representatives: Optional[Sequence[int]] = None,
    count: Optional[int] = None,
) -> List[PlusSeries]:
    """The inner sums over i of the double series, indexed by j'."""
    p, N = y.p, cert.N
    reps = list(representatives) if representatives is not None else [i for i in range(1, p**N) if i % p]
    distinct = len({i % p**N for i in reps}) == len(reps)
    if len(reps) != (p - 1) * p ** (N - 1) or not distinct or any(i % p == 0 for i in reps):
        raise PadixError(f"{reps} is not a set of representatives of (Z/{p}^{N})^x")
    count = _term_count_for(kappa, cert)[0] if count is None else count
    pieces = [_iterate(psi, y.times_x_power(-i), N) for i in reps]
    terms = []
    for j in range(count):
        binomial = _weight_binomial(kappa, j)
        total = PlusSeries.zero(p, y.prec, y.degree)
        if isinstance(binomial, Fraction) and binomial == 0:
            terms.append(total)
            continue
        for i, piece in zip(reps, pieces):
            scalar = binomial * _kappa_value(kappa, i) * Fraction(p ** (N * j), i**j)
            term = _iterate(phi, partial(piece, j), N).times_x_power(i)
            total = total + term.scale(scalar)
        terms.append(total.with_degree(y.degree))
    return terms


def kappa_partial(
    kappa: WeightChar,
    y: PlusSeries,
    cert: ConvergenceCertificate,
    representatives: Optional[Sequence[int]] = None,
) -> PlusSeries:
    """:code:`kappa(partial) y` for y with :code:`psi(y) = 0`, certified at the radius of :code:`pi_m`.

    Raises:
        NotAdmissible: if the certificate is not admissible
        NotPsiZero: if psi(y) does not vanish to precision
    """
    if not cert.admissible:
        raise NotAdmissible(f"The certificate for conductor {cert.p}^{cert.m} is not admissible (slope {cert.slope})")
    if not _is_zero_to_precision(psi(y)):
        raise NotPsiZero("kappa(partial) is only defined on series killed by psi")
    r_m = CycloLevel(y.p, cert.m).r
    floor = annulus_valuation(y, r_m, r_m)
    if floor == -INF:
        raise InsufficientTruncation(f"The input is not certified at the radius of pi_{cert.m}")
    cert = cert.with_floor(floor)
    count, vanishing = _term_count_for(kappa, cert)
    total = PlusSeries.zero(y.p, y.prec, y.degree)
    for term in form2_terms(kappa, y, cert, representatives, count):
        total = total + term
    error = total.error if vanishing else total.error.merge(cert.tail_bound())
    return PlusSeries(total.p, total.terms, total.shift, total.prec, y.degree, error)


def _check_conductor(eta: FiniteOrderChar):
    if eta.conductor_exp < 1:
        raise InvalidCharacter(f"{eta} shall have conductor at least {eta.p}")


def _capped(x: CycloElem, M: int) -> CycloElem:
    if x.prec is None or x.prec > M:
        return x.with_precision(M)
    return x


def lambda_from_units(
    eta: FiniteOrderChar,
    kappa: WeightChar,
    y: PlusSeries,
    M: int = DEFAULT_PRECISION,
    m_delta: int = DEFAULT_M_DELTA,
    representatives: Optional[Sequence[int]] = None,
) -> CycloElem:
    """:code:`G(eta)^-1 sum_a eta(a) sigma_a [kappa(partial) y](pi_n)` for y supported on Z_p^x."""
    _check_conductor(eta)
    n = eta.conductor_exp
    working = M + n + GUARD_DIGITS
    cert = convergence_certificate(kappa, n, m_delta, target=working)
    value = eval_at_pi(kappa_partial(kappa, y, cert, representatives), n)
    return _capped(gauss_sum_inverse(eta, working) * twisted_sum(eta, value, working), M)


def lambda_value(
    crisdata: CrisData,
    z: IwasawaVector,
    eta: FiniteOrderChar,
    kappa: WeightChar,
    M: int = DEFAULT_PRECISION,
    m_delta: int = DEFAULT_M_DELTA,
    representatives: Optional[Sequence[int]] = None,
) -> List[CycloElem]:
    """:code:`Lambda_{D,z}(eta kappa)` in coordinates over :code:`e_1, ..., e_d`.

    Component i is
    :code:`alpha_i^-n G(eta)^-1 sum_a eta(a) sigma_a [kappa(partial)(lambda_i - alpha_i phi(lambda_i))](pi_n)`.

    Raises:
        NotAdmissible: outside the domain certified by the convergence certificate
        EigenConditionViolated: if :code:`psi(lambda_i) != alpha_i lambda_i`
    """
    _check_conductor(eta)
    if not z.checked:
        z = z.check_eigen(crisdata)
    n = eta.conductor_exp
    out = []
    for component, alpha in zip(z.components, crisdata.alphas):
        y = component - phi(component).scale(alpha)
        value = lambda_from_units(eta, kappa, y, M, m_delta, representatives)
        out.append(_capped(value * alpha.inverse() ** n, M))
    return out


def lambda_special(
    crisdata: CrisData,
    z: IwasawaVector,
    eta: FiniteOrderChar,
    j: int,
    M: int = DEFAULT_PRECISION,
    expansion: Optional[MahlerExpansion] = None,
) -> List[CycloElem]:
    """:code:`Lambda_{D,z}(eta x^j)` through the special-value formula
    :code:`alpha_i^-n int_{Z_p^x} eta^-1 x^j lambda_i`.

    The Mahler expansion of :code:`eta^-1 x^j` at precision :code:`M + n + GUARD_DIGITS` may be passed in.
    """
    from padix.core.oracle import character_moment  # pylint: disable=import-outside-toplevel

    _check_conductor(eta)
    n = eta.conductor_exp
    out = []
    for component, alpha in zip(z.components, crisdata.alphas):
        moment = character_moment(component, eta.inverse(), j, M + n + GUARD_DIGITS, expansion)
        out.append(_capped(moment * alpha.inverse() ** n, M))
    return out


@dataclass(frozen=True)
class NormalizedValue:
    """:code:`p^p_exponent * values`."""

    p_exponent: int
    values: Tuple[CycloElem, ...]


def gamma_star(k: int) -> Fraction:
    """Leading coefficient of the Laurent expansion of the Gamma function at k."""
    if k >= 1:
        return Fraction(factorial(k - 1))
    return Fraction((-1) ** (-k), factorial(-k))


def lambda_normalized(
    crisdata: CrisData,
    z: IwasawaVector,
    eta: FiniteOrderChar,
    j: int,
    M: int = DEFAULT_PRECISION,
    m_delta: int = DEFAULT_M_DELTA,
) -> NormalizedValue:
    """:code:`Lambda_{D,z}(eta x^j)` divided by :code:`Gamma*(j + 1) p^(n (j + 1))`, the power of p kept apart."""
    values = lambda_value(crisdata, z, eta, WeightChar.power(crisdata.p, j, M + GUARD_DIGITS), M, m_delta)
    factor = gamma_star(j + 1)
    return NormalizedValue(-eta.conductor_exp * (j + 1), tuple(value * (1 / factor) for value in values))


def exp_star_value(
    z: IwasawaVector,
    crisdata: CrisData,
    j: int,
    n: int,
    m: int,
    m_delta: int = DEFAULT_M_DELTA,
) -> List[CycloElem]:
    """Dual exponential of the :code:`chi^-j`-twist at level n through
    :code:`1/j! p^(-m (j + 1)) alpha_i^-m Tr_{L_m/L_n}(partial^j lambda_i (pi_m))`.

    Raises:
        LevelError: unless :code:`m >= max(n, m_delta, 1)`
        InsufficientTruncation: when the components are not certified at :code:`pi_m`
    """
    if j < 0:
        raise ValueError(f"j shall be nonnegative, got {j}")
    if m < max(n, m_delta, 1):
        raise LevelError(f"Level m={m} shall be at least max(n={n}, m_delta={m_delta}, 1)")
    p = crisdata.p
    out = []
    for component, alpha in zip(z.components, crisdata.alphas):
        value = trace_down(eval_at_pi(partial(component, j), m), n)
        value = value * Fraction(1, factorial(j) * p ** (m * (j + 1)))
        out.append(value * alpha.inverse() ** m)
    return out


def exp_star_level0(f: PlusSeries, alpha: Union[PadicScalar, Rational]) -> PadicScalar:
    """:code:`(1 - 1/(p alpha)) f(0)`."""
    constant = moment_at_zero(f, 0)
    alpha = as_scalar(f.p, alpha, constant.M + GUARD_DIGITS) if not isinstance(alpha, PadicScalar) else alpha
    return constant * (1 - (alpha * f.p).inverse())


def nabla_transfer_factor(j: int, h: int) -> int:
    """:code:`j (j - 1) ... (j - h + 1)`, the factor relating the twist-j values of :code:`nabla_h z` and z."""
    return 0 if j < h else factorial(j) // factorial(j - h)


def interpolation_factor(
    alpha: Union[PadicScalar, Rational],
    omega_f_p: Union[PadicScalar, Rational],
    k: int,
    n: int,
    j: int,
    p: Optional[int] = None,
    M: int = DEFAULT_PRECISION,
) -> Union[PadicScalar, Fraction]:
    """:code:`alpha^-n` for n > 0, :code:`(1 - alpha^-1 w_f(p) p^(k-2-j)) (1 - alpha^-1 p^j)` for n = 0.

    Rational inputs give an exact rational; p is required when mixing with p-adic inputs.

    Raises:
        InvalidEigenvalue: for a zero alpha
    """
    if isinstance(alpha, PadicScalar):
        if alpha.is_zero():
            raise InvalidEigenvalue(f"alpha shall be nonzero, got {alpha}")
        p = alpha.p
    elif Fraction(alpha) == 0:
        raise InvalidEigenvalue("alpha shall be nonzero")
    if p is None and isinstance(omega_f_p, PadicScalar):
        p = omega_f_p.p
    if p is None:
        raise PadixError("The prime is required to build the interpolation factor")
    exact = not isinstance(alpha, PadicScalar) and not isinstance(omega_f_p, PadicScalar)
    a = Fraction(alpha) if exact else as_scalar(p, alpha, M)
    inverse = 1 / a if exact else a.inverse()
    if n > 0:
        return inverse**n
    w = Fraction(omega_f_p) if exact else as_scalar(p, omega_f_p, M)
    return (1 - inverse * w * Fraction(p) ** (k - 2 - j)) * (1 - inverse * Fraction(p) ** j)


def _check_nonzero(value: PadicScalar, name: str) -> PadicScalar:
    if value.is_zero():
        raise InvalidEpsilon(f"{name} shall be nonzero, got {value}")
    return value


def fe_constant(
    omega: PadicScalar,
    eta: FiniteOrderChar,
    j: int,
    k: int,
    eps_p: PadicScalar,
    eps_tame: Sequence[Tuple[int, PadicScalar]] = (),
    M: int = DEFAULT_PRECISION,
) -> EpsilonFactor:
    """Constant of the functional equation relating the twists by :code:`eta x^j` and :code:`eta^-1 x^(k-2-j)`.

    Assembles :code:`Omega p^n eps(eta |.|^(-j+(k-1)/2))^2 eps_p^-1 prod_l eps_l^-1` with
    :code:`eps(eta |.|^s) = p^(-ns) G(eta^-1)`; the GL_2 factors are opaque nonzero inputs.

    Raises:
        InvalidEpsilon: if an input vanishes
    """
    _check_nonzero(omega, "Omega")
    _check_nonzero(eps_p, "eps_p")
    for ell, value in eps_tame:
        _check_nonzero(value, f"eps_{ell}")
    n = eta.conductor_exp
    twist = Fraction(k - 1, 2) - j
    eta_factor = epsilon_gl1(eta, twist, M)
    algebraic = eta_factor.value * eta_factor.value * omega / eps_p
    for _, value in eps_tame:
        algebraic = algebraic / value
    return EpsilonFactor(n + 2 * eta_factor.p_exponent, algebraic)
