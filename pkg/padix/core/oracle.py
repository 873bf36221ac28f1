"""
Brute-force reference computations used to cross-check the series side.

Mahler coefficients are computed as iterated finite differences on numpy arrays of integer numerators
reduced modulo a power of p; values in L_n are handled through their coordinates in the basis
:code:`zeta^e, e < d_n`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from padix.constants import GUARD_DIGITS, MAHLER_HARD_CAP
from padix.core.characters import FiniteOrderChar
from padix.core.cyclotomic import CycloElem, CycloLevel
from padix.core.scalar import PadicScalar, check_prime, vp
from padix.core.series import INF, PlusSeries, from_rational_function, moment_at_zero, restrict_units
from padix.errors import InsufficientPrecision, NotAUnit, NotLocallyAnalytic, PadixError

Value = Union[int, Fraction, PadicScalar, CycloElem]
Evaluator = Callable[[int], Value]

_INT64_MODULUS_LIMIT = 2**31


@lru_cache(maxsize=None)
def _bernoulli_table(k: int) -> Tuple[Fraction, ...]:
    # Akiyama-Tanigawa, which yields B_1 = +1/2
    row: List[Fraction] = []
    out = []
    for m in range(k + 1):
        row.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    return tuple(out)


def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k with :code:`B_1 = -1/2`."""
    if k < 0:
        raise ValueError(f"k shall be nonnegative, got {k}")
    value = _bernoulli_table(k)[k]
    return -value if k == 1 else value


def coleman_series(p: int, c: int, degree: int, prec: int) -> PlusSeries:
    """The psi-fixed series :code:`1/T - c/((1 + T)^c - 1)`.

    Raises:
        NotAUnit: if p divides c
    """
    check_prime(p)
    if c % p == 0:
        raise NotAUnit(f"{c} is not a unit modulo {p}")
    if c == 1:
        raise PadixError("The Coleman series of c = 1 vanishes")
    m = abs(c)
    denominator = [comb(m, k) for k in range(1, m + 1)]
    if c > 0:
        numerator = [comb(c, k) for k in range(2, c + 1)]
    else:
        # ((1 + T)^m - 1 - m T (1 + T)^m) / T^2
        numerator = [comb(m, k) - m * comb(m, k - 1) for k in range(2, m + 2)]
    return from_rational_function(p, numerator, denominator, degree, prec)


def kl_reference(p: int, c: int, j: int) -> Fraction:
    """:code:`(1 - c^(j+1)) (1 - p^j) B_(j+1) / (j + 1)`, the j-th moment on Z_p^x of the measure of f_c."""
    if j < 1:
        raise ValueError(f"j shall be at least 1, got {j}")
    if c % p == 0:
        raise NotAUnit(f"{c} is not a unit modulo {p}")
    return (1 - Fraction(c) ** (j + 1)) * (1 - p**j) * bernoulli(j + 1) / (j + 1)


def restricted_moment_reference(f: PlusSeries, j: int) -> PadicScalar:
    """Moment :code:`int_{Z_p^x} x^j` of the distribution with Amice transform f, read off the series."""
    return moment_at_zero(restrict_units(f), j)


def _coordinates(value: Value, p: int, level: Optional[CycloLevel], digits: int) -> Tuple[List[int], int, float]:
    """Numerators, shift and precision of a value in the coordinates of :code:`zeta^e, e < d_n`."""
    if isinstance(value, CycloElem):
        if level is None or value.level != level:
            raise PadixError(f"Expected values at {level}, got {value.level}")
        zeta, _ = value.zeta_coefficients()
        return zeta, value.shift, INF if value.prec is None else value.prec
    padding = [0] * ((1 if level is None else level.degree) - 1)
    if isinstance(value, PadicScalar):
        numerator, shift = value.representative()
        return [numerator] + padding, shift, value.M
    value = Fraction(value)
    v_den = vp(value.denominator, p)
    unit = value.denominator // p**v_den
    numerator = value.numerator * pow(unit, -1, p ** (digits + v_den)) if unit != 1 else value.numerator
    return [numerator] + padding, v_den, INF


@dataclass(frozen=True)
class MahlerExpansion:
    """Mahler coefficients :code:`c_n = sum_k (-1)^(n-k) binom(n, k) fn(k)` of an evaluator.

    Rows of :code:`numerators` are coordinates over :code:`p^shift`, known modulo :code:`p^(precision + shift)`;
    the coefficients of index at least :code:`len(numerators)` have valuation at least :code:`precision`.
    """

    p: int
    level: Optional[CycloLevel]
    numerators: np.ndarray
    shift: int
    precision: int

    @property
    def count(self) -> int:
        return len(self.numerators)

    def valuation(self, n: int) -> Union[Fraction, float]:
        row = [int(c) for c in self.numerators[n]]
        if not any(row):
            return self.precision
        return min(vp(c, self.p) for c in row if c) - self.shift

    def coefficient(self, n: int) -> Union[PadicScalar, CycloElem]:
        row = [int(c) for c in self.numerators[n]]
        if self.level is None:
            return PadicScalar.from_rational(self.p, Fraction(row[0], self.p**self.shift), self.precision)
        acc = row + [0] * (self.level.order - len(row))
        return CycloElem.from_exponents(self.level, acc, self.shift, Fraction(self.precision))


def _differences(values: np.ndarray, q: int) -> np.ndarray:
    coeffs = np.empty_like(values)
    row = values
    for n in range(len(values)):
        coeffs[n] = row[0]
        row = (row[1:] - row[:-1]) % q
    return coeffs


def _first_vanishing_window(coeffs: np.ndarray, window: int) -> Optional[int]:
    zero = ~coeffs.any(axis=1)
    run = 0
    for n, is_zero in enumerate(zero):
        run = run + 1 if is_zero else 0
        if run >= window:
            return n - window + 1
    return None


def mahler_coeffs(
    fn: Evaluator,
    p: int,
    M: int,
    level: Optional[CycloLevel] = None,
    count: Optional[int] = None,
    window: Optional[int] = None,
    margin: int = GUARD_DIGITS,
    hard_cap: int = MAHLER_HARD_CAP,
) -> MahlerExpansion:
    """Mahler coefficients of fn until a window of consecutive coefficients vanishes modulo :code:`p^(M + margin)`.

    Args:
        fn: evaluator on the nonnegative integers, returning rationals, p-adic scalars or elements of L_n
        p: prime
        M: target precision
        level: level of the values when fn returns elements of L_n
        count: initial number of coefficients
        window: length of the vanishing run closing the expansion, defaults to :code:`p^max(1, n)`
        margin: extra digits required of the vanishing run
        hard_cap: largest number of coefficients tried

    Returns:
        MahlerExpansion: the coefficients before the vanishing run

    Raises:
        NotLocallyAnalytic: if no vanishing run is found below the hard cap
    """
    check_prime(p)
    window = window or p ** max(1, level.n if level else 0)
    count = count or max(4 * window, 64)
    cache: List[Tuple[List[int], int, float]] = []
    while True:
        while len(cache) < count:
            cache.append(_coordinates(fn(len(cache)), p, level, M + margin))
        shift = max(s for _, s, _ in cache)
        value_precision = min(prec for _, _, prec in cache)
        precision = M + margin if value_precision == INF else min(M + margin, math.floor(value_precision))
        if precision + shift <= 0:
            raise InsufficientPrecision(f"The values of the evaluator carry no digit modulo {p}^{M}")
        q = p ** (precision + shift)
        dtype = np.int64 if q < _INT64_MODULUS_LIMIT else object
        values = np.array(
            [[c * p ** (shift - s) % q for c in coords] for coords, s, _ in cache[:count]], dtype=dtype
        )
        coeffs = _differences(values, q)
        stop = _first_vanishing_window(coeffs, window)
        if stop is not None:
            return MahlerExpansion(p, level, coeffs[:stop], shift, precision)
        if count >= hard_cap:
            raise NotLocallyAnalytic(f"Mahler coefficients do not vanish modulo {p}^{precision} below {hard_cap}")
        count = min(2 * count, hard_cap)


def mellin_oracle(
    f: PlusSeries,
    fn: Evaluator,
    M: int,
    level: Optional[CycloLevel] = None,
    expansion: Optional[MahlerExpansion] = None,
) -> Union[PadicScalar, CycloElem]:
    """:code:`int fn mu` for the distribution mu with Amice transform f, as :code:`sum_n c_n(fn) a_n(f)`.

    Raises:
        InsufficientPrecision: when no digit of the pairing is certified
    """
    expansion = expansion or mahler_coeffs(fn, f.p, M, level)
    p, count = f.p, expansion.count
    a = f.t_numerators(max(count - 1, 0))[:count]
    coefficient_floor = min([f.vmin, f.error.flat] + [f.coefficient_precision(n) for n in range(count)])
    bounds = [Fraction(M), expansion.precision + coefficient_floor]
    for n in range(count):
        bounds.append(expansion.valuation(n) + f.coefficient_precision(n))
    certified = min(bounds)
    if certified == -INF or certified <= 0:
        raise InsufficientPrecision(f"The pairing has no certified digit (bound {certified})")
    certified = math.floor(certified)
    total = np.array(a, dtype=object) @ expansion.numerators.astype(object) if count else np.zeros(1, dtype=object)
    shift = expansion.shift + f.shift
    if expansion.level is None:
        return PadicScalar.from_rational(p, Fraction(int(total[0]), p**shift), certified)
    acc = [int(c) for c in total] + [0] * (expansion.level.order - len(total))
    return CycloElem.from_exponents(expansion.level, acc, shift, Fraction(certified))


def required_degree(expansion: MahlerExpansion, M: int) -> int:
    """Truncation degree of a series certifying its first :code:`expansion.count` T-coefficients to precision M."""
    return expansion.count + (expansion.p - 1) * (M + GUARD_DIGITS + 2) + expansion.p


def _character_evaluator(chi: FiniteOrderChar, j: int, M: int) -> Evaluator:
    p, level = chi.p, chi.level

    def fn(x: int) -> CycloElem:
        if x % p == 0:
            return CycloElem.zero(level)
        return chi.value(x, M + GUARD_DIGITS) * x**j

    return fn


def character_expansion(chi: FiniteOrderChar, j: int, M: int) -> MahlerExpansion:
    """Mahler expansion of :code:`x -> chi(x) x^j` on Z_p^x, extended by zero."""
    return mahler_coeffs(_character_evaluator(chi, j, M), chi.p, M, chi.level)


def character_moment(
    f: PlusSeries, chi: FiniteOrderChar, j: int, M: int, expansion: Optional[MahlerExpansion] = None
) -> CycloElem:
    """:code:`int_{Z_p^x} chi(x) x^j mu` in L_n, n the conductor exponent of chi."""
    fn = _character_evaluator(chi, j, M)
    return mellin_oracle(restrict_units(f), fn, M, chi.level, expansion)


def power_moment(f: PlusSeries, j: int, M: int, units_only: bool = True) -> PadicScalar:
    """:code:`int x^j mu` over Z_p^x (or over Z_p) through the Mahler pairing."""
    p = f.p

    def fn(x: int) -> int:
        return 0 if units_only and x % p == 0 else x**j

    return mellin_oracle(restrict_units(f) if units_only else f, fn, M)


def coleman_moment(p: int, c: int, j: int, M: int) -> PadicScalar:
    """:code:`int_{Z_p^x} x^j` against the measure of the Coleman series of c, the series truncated past the Mahler
    expansion of the integrand."""

    def fn(x: int) -> int:
        return 0 if x % p == 0 else x**j

    expansion = mahler_coeffs(fn, p, M)
    f = coleman_series(p, c, required_degree(expansion, M), M + GUARD_DIGITS)
    return mellin_oracle(restrict_units(f), fn, M, expansion=expansion)
