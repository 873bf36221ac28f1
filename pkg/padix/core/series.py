"""
Truncated elements of the plus part of the Robba ring with the operators phi, psi, sigma_a, partial and nabla.

A :code:`PlusSeries` is stored exactly as a Laurent polynomial in :code:`X = 1 + T` (sparse, integer numerators
over :code:`p^shift`, coefficients known modulo :code:`p^prec`), plus an :code:`ErrorBound` for the part of the
true series that was truncated away. In the X basis the operators act on exponents only:

* :code:`phi(X^k) = X^(pk)`, :code:`psi(X^k) = X^(k/p)` or 0,
* :code:`sigma_a(X^k) = X^(ak)`, :code:`partial(X^k) = k X^k`,

so the stored part is transformed exactly and only the error bound needs bookkeeping.
The error bound records lower bounds for the Gauss valuations
:code:`v^(r)(E) = min_k v_p(e_k) + k r` at the radii :code:`r_j = 1/(p^j (p - 1))` and at :code:`r = 0`;
phi and psi move the bounds one step along this grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from padix.constants import DENSE_SPAN_LIMIT, RADIUS_GRID_SIZE
from padix.core.cyclotomic import CycloElem, CycloLevel
from padix.core.functions import floor_log
from padix.core.scalar import PadicScalar, Rational, vp
from padix.errors import InsufficientTruncation, NotAUnit, NotIntegral, PadixError

Bound = Union[Fraction, float]
INF = math.inf

_INT64_MODULUS_LIMIT = 2**31


def _plus(a: Bound, b: Bound) -> Bound:
    if a == INF or b == INF:
        return INF
    return a + b


def grid_radius(p: int, j: int) -> Fraction:
    return Fraction(1, p**j * (p - 1))


def binomial_gap_bound(p: int, M: int, r: Fraction) -> Fraction:
    """Lower bound of :code:`v^(r)((1 + T)^c - 1)` valid for every c with :code:`v_p(c) >= M`."""
    return min(max(M - e, 0) + p**e * r for e in range(max(M, 0) + 1))


def _split_rational(x: Fraction, p: int) -> Tuple[int, int, int]:
    """Writes a nonzero rational as :code:`p^v * num / den` with num, den prime to p."""
    v_num, v_den = vp(x.numerator, p), vp(x.denominator, p)
    return v_num - v_den, x.numerator // p**v_num, x.denominator // p**v_den


@dataclass(frozen=True)
class ErrorBound:
    """Lower bounds for the Gauss valuations of the truncation error of a series.

    :code:`radial[j]` bounds :code:`v^(r_j)` with :code:`r_j = 1/(p^j (p - 1))`; :code:`flat` bounds the minimal
    valuation of the coefficients. :code:`math.inf` marks an exact series.
    """

    p: int
    radial: Tuple[Bound, ...]
    flat: Bound = INF

    @classmethod
    def exact(cls, p: int) -> ErrorBound:
        return cls(p, (INF,) * RADIUS_GRID_SIZE, INF)

    @classmethod
    def from_radius(cls, p: int, bound: Callable[[Fraction], Bound], flat: Bound) -> ErrorBound:
        return cls(p, tuple(bound(grid_radius(p, j)) for j in range(RADIUS_GRID_SIZE)), flat).normalized()

    @classmethod
    def truncation(cls, p: int, degree: int, valuation: Bound = 0) -> ErrorBound:
        """Bound for the dropped tail :code:`sum_{k > degree} a_k T^k` when every :code:`v_p(a_k) >= valuation`."""
        return cls.from_radius(p, lambda r: _plus(valuation, (degree + 1) * r), valuation)

    def normalized(self) -> ErrorBound:
        # v^(r) is nondecreasing in r for power series
        values = list(self.radial)
        running = self.flat
        for j in reversed(range(len(values))):
            running = max(running, values[j])
            values[j] = running
        return ErrorBound(self.p, tuple(values), self.flat)

    def is_exact(self) -> bool:
        return self.flat == INF and all(b == INF for b in self.radial)

    def radius(self, j: int) -> Fraction:
        return grid_radius(self.p, j)

    def at_radius(self, r: Fraction) -> Bound:
        best = self.flat
        for j, b in enumerate(self.radial):
            if self.radius(j) <= r:
                best = max(best, b)
        return best

    def coefficient_precision(self, k: int) -> Bound:
        """Lower bound for the valuation of the error in the coefficient of T^k."""
        best = self.flat
        for j, b in enumerate(self.radial):
            best = max(best, _plus(b, -k * self.radius(j)))
        return best

    def merge(self, other: ErrorBound) -> ErrorBound:
        """Bound for the sum of two errors."""
        return ErrorBound(
            self.p, tuple(min(a, b) for a, b in zip(self.radial, other.radial)), min(self.flat, other.flat)
        )

    def shifted(self, v: Union[int, Fraction]) -> ErrorBound:
        return ErrorBound(self.p, tuple(_plus(b, v) for b in self.radial), _plus(self.flat, v))

    def phi(self) -> ErrorBound:
        return ErrorBound(self.p, (self.radial[0],) + self.radial[:-1], self.flat).normalized()

    def psi(self) -> ErrorBound:
        shifted = self.radial[1:] + (self.flat,)
        return ErrorBound(self.p, tuple(max(self.flat, _plus(b, -1)) for b in shifted), self.flat).normalized()

    def partial(self, times: int = 1) -> ErrorBound:
        radial = tuple(_plus(b, -times * self.radius(j)) for j, b in enumerate(self.radial))
        return ErrorBound(self.p, radial, self.flat).normalized()

    def product(self, other: ErrorBound, carrier_self: Bound, carrier_other: Bound) -> ErrorBound:
        """Bound for :code:`E_f g + f_stored E_g`, the carriers bounding the stored parts from below."""

        def combine(a: Bound, b: Bound) -> Bound:
            return min(_plus(a, min(carrier_other, b)), _plus(b, carrier_self))

        radial = tuple(combine(a, b) for a, b in zip(self.radial, other.radial))
        return ErrorBound(self.p, radial, combine(self.flat, other.flat)).normalized()


def _zeros(n: int, q: int) -> np.ndarray:
    return np.zeros(n, dtype=np.int64 if q < _INT64_MODULUS_LIMIT else object)


def _shifted_up(row: np.ndarray) -> np.ndarray:
    out = np.zeros_like(row)
    out[1:] = row[:-1]
    return out


def _t_to_x(numerators: Sequence[int], q: int) -> Dict[int, int]:
    """Rewrites :code:`sum a_k T^k` as :code:`sum g_i X^i` modulo q."""
    n = len(numerators)
    if n == 0 or q == 1:
        return {}
    out = _zeros(n, q)
    row = _zeros(n, q)
    row[0] = 1
    for k, a in enumerate(numerators):
        if k:
            row = (_shifted_up(row) - row) % q
        if a % q:
            out = (out + (a % q) * row) % q
    return {i: int(c) for i, c in enumerate(out) if c}


def _x_to_t(terms: Mapping[int, int], K: int, q: int) -> List[int]:
    """First K + 1 coefficients in T of :code:`sum g_e X^e` modulo q (negative exponents allowed)."""
    if not terms or q == 1:
        return [0] * (K + 1)
    low, high = min(terms), max(terms)
    base = min(low, 0)
    if high - base > DENSE_SPAN_LIMIT:
        result = [0] * (K + 1)
        for e, g in terms.items():
            b = 1
            for k in range(K + 1):
                result[k] = (result[k] + g * b) % q
                b = b * (e - k) // (k + 1)
        return result
    out = _zeros(K + 1, q)
    row = _zeros(K + 1, q)
    row[0] = 1
    for e in range(high - base + 1):
        if e:
            row = (row + _shifted_up(row)) % q
        g = terms.get(e + base)
        if g:
            out = (out + (g % q) * row) % q
    result = [int(c) for c in out]
    for _ in range(-base):
        for k in range(1, K + 1):
            result[k] = (result[k] - result[k - 1]) % q
    return result


def _rational_numerators(values: Sequence[Rational], p: int, prec: int) -> Tuple[List[int], int]:
    """Common-denominator numerators :code:`a_k p^shift` modulo :code:`p^(prec + shift)`."""
    fractions = [Fraction(v) for v in values]
    shift = max([0] + [-_split_rational(x, p)[0] for x in fractions if x])
    if prec + shift <= 0:
        return [0] * len(fractions), shift
    q = p ** (prec + shift)
    numerators = []
    for x in fractions:
        if not x:
            numerators.append(0)
            continue
        v, num, den = _split_rational(x, p)
        numerators.append(p ** (v + shift) * num * pow(den, -1, q) % q)
    return numerators, shift


def _render_rational(x: Fraction, p: int) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{p}^{vp(x.denominator, p)}"


@dataclass(frozen=True, eq=False)
class PlusSeries:
    p: int
    terms: Dict[int, int] = field(repr=False)
    shift: int
    prec: int
    degree: int
    error: ErrorBound

    @classmethod
    def build(
        cls,
        p: int,
        terms: Mapping[int, int],
        shift: int,
        prec: int,
        degree: int,
        error: Optional[ErrorBound] = None,
    ) -> PlusSeries:
        error = error or ErrorBound.exact(p)
        if prec + shift <= 0:
            return cls(p, {}, 0, prec, degree, error)
        q = p ** (prec + shift)
        clean = {e: g % q for e, g in terms.items() if g % q}
        while shift > 0 and clean and all(g % p == 0 for g in clean.values()):
            clean = {e: g // p for e, g in clean.items()}
            shift -= 1
        if not clean:
            shift = 0
        if shift < 0:
            clean = {e: g * p ** (-shift) for e, g in clean.items()}
            shift = 0
        return cls(p, clean, shift, prec, degree, error)

    @classmethod
    def zero(cls, p: int, prec: int, degree: int) -> PlusSeries:
        return cls.build(p, {}, 0, prec, degree)

    @classmethod
    def one(cls, p: int, prec: int, degree: int) -> PlusSeries:
        return cls.build(p, {0: 1}, 0, prec, degree)

    @classmethod
    def x_power(cls, p: int, c: int, prec: int, degree: int) -> PlusSeries:
        """The series :code:`(1 + T)^c` for an integer c."""
        return cls.build(p, {c: 1}, 0, prec, degree)

    @classmethod
    def from_t_coefficients(
        cls,
        p: int,
        coeffs: Sequence[Rational],
        prec: int,
        degree: Optional[int] = None,
        tail_valuation: Optional[Bound] = None,
    ) -> PlusSeries:
        """Series with the given T-coefficients.

        Args:
            p: prime
            coeffs: rational coefficients of :code:`T^0, T^1, ...`
            prec: coefficient precision
            degree: display and comparison degree, defaults to the number of coefficients minus one
            tail_valuation: when set, the coefficients are the truncation of an infinite series whose further
                coefficients all have valuation at least this value

        Returns:
            PlusSeries: the series
        """
        numerators, shift = _rational_numerators(coeffs, p, prec)
        q = p ** (prec + shift) if prec + shift > 0 else 1
        terms = _t_to_x(numerators, q)
        last = len(coeffs) - 1
        error = ErrorBound.truncation(p, last, tail_valuation) if tail_valuation is not None else None
        return cls.build(p, terms, shift, prec, last if degree is None else degree, error)

    # inspection

    @property
    def modulus(self) -> int:
        return self.p ** (self.prec + self.shift) if self.prec + self.shift > 0 else 1

    @property
    def vmin(self) -> Bound:
        """Minimal valuation of the stored X-coefficients."""
        if not self.terms:
            return INF
        return min(vp(g, self.p) for g in self.terms.values()) - self.shift

    @property
    def carrier(self) -> Bound:
        """Lower bound for every Gauss valuation of the stored part including its rounding."""
        return min(self.vmin, self.prec)

    def is_exact(self) -> bool:
        return self.error.is_exact()

    def x_coefficients(self) -> Dict[int, Fraction]:
        return {e: Fraction(g, self.p**self.shift) for e, g in sorted(self.terms.items())}

    def t_numerators(self, K: Optional[int] = None) -> List[int]:
        K = self.degree if K is None else K
        return _x_to_t(self.terms, K, self.modulus)

    def coefficient_precision(self, k: int) -> Bound:
        return min(self.prec, self.error.coefficient_precision(k))

    def t_coefficients(self, K: Optional[int] = None) -> List[PadicScalar]:
        """T-coefficients up to :code:`T^K`, each with its certified precision."""
        scale = self.p**self.shift
        out = []
        for k, numerator in enumerate(self.t_numerators(K)):
            bound = self.coefficient_precision(k)
            if bound == -INF:
                raise InsufficientTruncation(f"Coefficient of T^{k} is not certified")
            out.append(PadicScalar.from_rational(self.p, Fraction(numerator, scale), math.floor(bound)))
        return out

    def certified_precision(self, K: Optional[int] = None) -> int:
        K = self.degree if K is None else K
        return min(math.floor(self.coefficient_precision(k)) for k in range(K + 1))

    def agrees_with(self, other: PlusSeries, degree: Optional[int] = None) -> bool:
        """True when the T-coefficients up to :code:`degree` agree to their certified precision."""
        degree = min(self.degree, other.degree) if degree is None else degree
        return all(c.is_zero() for c in (self - other).t_coefficients(degree))

    def with_degree(self, degree: int) -> PlusSeries:
        return PlusSeries(self.p, self.terms, self.shift, self.prec, degree, self.error)

    def with_precision(self, prec: int) -> PlusSeries:
        return PlusSeries.build(self.p, self.terms, self.shift, min(prec, self.prec), self.degree, self.error)

    # arithmetic

    def _check(self, other: PlusSeries) -> PlusSeries:
        if other.p != self.p:
            raise PadixError(f"Mismatched primes {self.p} and {other.p}")
        return other

    def __add__(self, other: PlusSeries) -> PlusSeries:
        if not isinstance(other, PlusSeries):
            return self + PlusSeries.one(self.p, self.prec, self.degree).scale(other)
        other = self._check(other)
        shift = max(self.shift, other.shift)
        terms = {e: g * self.p ** (shift - self.shift) for e, g in self.terms.items()}
        factor = self.p ** (shift - other.shift)
        for e, g in other.terms.items():
            terms[e] = terms.get(e, 0) + g * factor
        return PlusSeries.build(
            self.p,
            terms,
            shift,
            min(self.prec, other.prec),
            min(self.degree, other.degree),
            self.error.merge(other.error),
        )

    __radd__ = __add__

    def __neg__(self) -> PlusSeries:
        return PlusSeries.build(
            self.p, {e: -g for e, g in self.terms.items()}, self.shift, self.prec, self.degree, self.error
        )

    def __sub__(self, other) -> PlusSeries:
        return self + (-other)

    def __rsub__(self, other) -> PlusSeries:
        return (-self) + other

    def scale(self, c: Union[PadicScalar, Rational]) -> PlusSeries:
        """Multiplication by a constant of Q_p."""
        if isinstance(c, PadicScalar):
            if c.is_zero():
                prec = min(self.prec + c.M, c.M + self.vmin) if self.terms else self.prec + c.M
                return PlusSeries.zero(self.p, prec, self.degree)
            numerator, shift = c.representative()
            scaled = self._scale_exact(Fraction(numerator, self.p**shift))
            prec = min(self.prec + c.valuation(), c.M + self.vmin) if self.terms else self.prec + c.valuation()
            return PlusSeries.build(self.p, scaled.terms, scaled.shift, prec, self.degree, scaled.error)
        return self._scale_exact(Fraction(c))

    def _scale_exact(self, c: Fraction) -> PlusSeries:
        if c == 0:
            return PlusSeries.zero(self.p, self.prec, self.degree)
        v, num, den = _split_rational(c, self.p)
        prec = self.prec + v
        shift = self.shift + max(-v, 0)
        q = self.p ** (prec + shift) if prec + shift > 0 else 1
        factor = self.p ** max(v, 0) * num * pow(den, -1, q) if q > 1 else 0
        terms = {e: g * factor for e, g in self.terms.items()}
        return PlusSeries.build(self.p, terms, shift, prec, self.degree, self.error.shifted(v))

    def __mul__(self, other) -> PlusSeries:
        if not isinstance(other, PlusSeries):
            return self.scale(other)
        other = self._check(other)
        terms: Dict[int, int] = {}
        for e1, g1 in self.terms.items():
            for e2, g2 in other.terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + g1 * g2
        prec = min(
            _plus(self.prec, other.vmin),
            _plus(other.prec, self.vmin),
            self.prec + other.prec,
        )
        error = self.error.product(other.error, self.carrier, other.carrier)
        return PlusSeries.build(
            self.p, terms, self.shift + other.shift, int(prec), min(self.degree, other.degree), error
        )

    def __rmul__(self, other) -> PlusSeries:
        return self.scale(other)

    def times_x_power(self, c: int) -> PlusSeries:
        """Multiplication by :code:`(1 + T)^c`, c an integer."""
        terms = {e + c: g for e, g in self.terms.items()}
        return PlusSeries(self.p, terms, self.shift, self.prec, self.degree, self.error)

    # rendering

    def __str__(self) -> str:
        scale = self.p**self.shift
        coeffs = ", ".join(_render_rational(Fraction(c, scale), self.p) for c in self.t_numerators())
        return f"[{coeffs}] deg={self.degree} prec={self.prec} ring=Qp"

    def __repr__(self) -> str:
        return f"PlusSeries({self})"


def default_degree(p: int, n: int, M: int) -> int:
    """Truncation degree making an evaluation at pi_n certifiable to precision M."""
    r_n = CycloLevel(p, max(n, 1)).r
    return math.ceil((M + 2) / r_n) + p


def phi(f: PlusSeries) -> PlusSeries:
    """:code:`f((1 + T)^p - 1)`."""
    terms = {f.p * e: g for e, g in f.terms.items()}
    return PlusSeries(f.p, terms, f.shift, f.prec, f.degree, f.error.phi())


def psi(f: PlusSeries) -> PlusSeries:
    """The left inverse of phi: keeps the components :code:`X^(pk)` and maps them to :code:`X^k`."""
    terms = {e // f.p: g for e, g in f.terms.items() if e % f.p == 0}
    return PlusSeries.build(f.p, terms, f.shift, f.prec, f.degree // f.p, f.error.psi())


def sigma_a(a: Union[int, PadicScalar], f: PlusSeries) -> PlusSeries:
    """:code:`f((1 + T)^a - 1)` for a unit a."""
    if isinstance(a, PadicScalar):
        if not a.is_unit():
            raise NotAUnit(f"{a} is not a unit")
        exponent = a.residue
        carrier = f.carrier
        gap = ErrorBound.from_radius(f.p, lambda r: _plus(carrier, binomial_gap_bound(f.p, a.M, r)), carrier)
        error = f.error.merge(gap)
    else:
        if a % f.p == 0:
            raise NotAUnit(f"{a} is not a unit modulo {f.p}")
        exponent, error = a, f.error
    terms = {exponent * e: g for e, g in f.terms.items()}
    return PlusSeries(f.p, terms, f.shift, f.prec, f.degree, error)


def partial(f: PlusSeries, times: int = 1) -> PlusSeries:
    """:code:`((1 + T) d/dT)^times f`."""
    if times == 0:
        return f
    terms = {e: g * e**times for e, g in f.terms.items()}
    return PlusSeries.build(f.p, terms, f.shift, f.prec, f.degree, f.error.partial(times))


def amice_of_dirac(p: int, b: Union[int, PadicScalar], prec: int, degree: int) -> PlusSeries:
    """Amice transform :code:`(1 + T)^b` of the Dirac mass at :code:`b` in Z_p."""
    if isinstance(b, int):
        return PlusSeries.x_power(p, b, prec, degree)
    if b.is_zero():
        exponent, M = 0, b.M
    else:
        if b.valuation() < 0:
            raise NotIntegral(f"{b} does not lie in Z_p")
        exponent, M = b.residue, b.M
    error = ErrorBound.from_radius(p, lambda r: binomial_gap_bound(p, M, r), 0)
    return PlusSeries.build(p, {exponent: 1}, 0, prec, degree, error)


def restrict_units(f: PlusSeries) -> PlusSeries:
    """:code:`(1 - phi psi) f`, the restriction to Z_p^x of the distribution with Amice transform f."""
    terms = {e: g for e, g in f.terms.items() if e % f.p}
    return PlusSeries.build(f.p, terms, f.shift, f.prec, f.degree, f.error.merge(f.error.psi().phi()))


def eval_at_pi(f: PlusSeries, n: int) -> CycloElem:
    """:code:`f(zeta_{p^n} - 1)` in L_n, certified by the error bound at radius :code:`r_n`."""
    if n < 1:
        raise PadixError(f"Evaluation level shall be at least 1, got {n}")
    level = CycloLevel(f.p, n)
    bound = min(f.prec, f.error.at_radius(level.r))
    if bound <= 0:
        raise InsufficientTruncation(f"Evaluation at pi_{n} has no certified digits (bound {bound})")
    acc = [0] * level.order
    for e, g in f.terms.items():
        acc[e % level.order] += g
    return CycloElem.from_exponents(level, acc, f.shift, Fraction(bound))


def loc_coeff(f: PlusSeries, n: int, j: int) -> CycloElem:
    """Coefficient of t^j in the localization of f at level n: :code:`p^(-nj) / j! (partial^j f)(pi_n)`."""
    value = eval_at_pi(partial(f, j), n)
    if j == 0:
        return value
    return value * Fraction(1, f.p ** (n * j) * factorial(j))


def moment_at_zero(f: PlusSeries, j: int) -> PadicScalar:
    """:code:`(partial^j f)(0)`, the j-th moment of the distribution with Amice transform f."""
    total = sum(g * e**j for e, g in f.terms.items())
    bound = min(f.prec, f.error.partial(j).coefficient_precision(0))
    if bound == -INF:
        raise InsufficientTruncation("The constant term is not certified")
    return PadicScalar.from_rational(f.p, Fraction(total, f.p**f.shift), math.floor(bound))


def log1pT(p: int, degree: int, prec: int) -> PlusSeries:
    """:code:`t = log(1 + T)` truncated after :code:`T^degree`."""
    coeffs = [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, degree + 1)]
    numerators, shift = _rational_numerators(coeffs, p, prec)
    q = p ** (prec + shift) if prec + shift > 0 else 1
    first = floor_log(degree + 1, p)

    def tail(r: Fraction) -> Fraction:
        return min(max(degree + 1, p**e) * r - e for e in range(first, first + 64))

    error = ErrorBound.from_radius(p, tail, -INF)
    return PlusSeries.build(p, _t_to_x(numerators, q), shift, prec, degree, error)


def nabla(f: PlusSeries, log_degree: Optional[int] = None) -> PlusSeries:
    """:code:`t partial f`."""
    log_degree = max(f.degree, 1) if log_degree is None else log_degree
    t = log1pT(f.p, log_degree, f.prec + floor_log(log_degree, f.p))
    return (t * partial(f)).with_degree(f.degree)


def nabla_h(h: int, f: PlusSeries, log_degree: Optional[int] = None) -> PlusSeries:
    """:code:`(nabla - h + 1) ... (nabla - 1) nabla f`."""
    if h < 1:
        raise ValueError("h shall be at least 1")
    g = f
    for i in range(h):
        g = nabla(g, log_degree) - g.scale(i) if i else nabla(g, log_degree)
    return g


def annulus_valuation(f: PlusSeries, r: Fraction, s: Fraction) -> Bound:
    """Certified lower bound of :code:`v^[r, s](f)`; for power series the inner radius r is the binding one."""
    r, s = Fraction(r), Fraction(s)
    if r > s or r <= 0:
        raise PadixError(f"Expected 0 < r <= s, got r={r} s={s}")
    K = max([f.degree] + [e for e in f.terms if e > 0])
    stored = [
        vp(c, f.p) - f.shift + k * r for k, c in enumerate(_x_to_t(f.terms, K, f.modulus)) if c
    ]
    return min([f.error.at_radius(r), Fraction(f.prec)] + stored)


def from_rational_function(
    p: int, numerator: Sequence[Rational], denominator: Sequence[Rational], degree: int, prec: int
) -> PlusSeries:
    """Power-series expansion of :code:`numerator(T) / denominator(T)` with an integral denominator whose
    constant term is a unit."""
    den = [Fraction(d) for d in denominator]
    if not den or den[0] == 0 or _split_rational(den[0], p)[0] != 0:
        raise NotAUnit("The constant term of the denominator shall be a unit")
    if any(d and _split_rational(d, p)[0] < 0 for d in den):
        raise NotIntegral("The denominator shall have integral coefficients")
    num_numerators, shift = _rational_numerators(list(numerator) + [0] * (degree + 1 - len(numerator)), p, prec)
    num_numerators = num_numerators[: degree + 1]
    if prec + shift <= 0:
        return PlusSeries.zero(p, prec, degree)
    q = p ** (prec + shift)
    den_residues = [d.numerator * pow(d.denominator, -1, q) % q for d in den]
    inverse = pow(den_residues[0], -1, q)
    out: List[int] = []
    for k in range(degree + 1):
        acc = num_numerators[k]
        for i in range(1, min(k, len(den_residues) - 1) + 1):
            acc -= den_residues[i] * out[k - i]
        out.append(acc * inverse % q)
    valuations = [_split_rational(Fraction(c), p)[0] for c in numerator if c]
    tail = min(valuations) if valuations else INF
    error = ErrorBound.truncation(p, degree, tail)
    return PlusSeries.build(p, _t_to_x(out, q), shift, prec, degree, error)
