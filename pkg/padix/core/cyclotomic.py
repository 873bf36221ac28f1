"""
Arithmetic in the cyclotomic tower L_n = Q_p(zeta_{p^n}).

Elements are stored in the power basis of :code:`pi_n = zeta_{p^n} - 1` as integer numerators over a common
:code:`p^shift`. The Galois action, lifts and traces go through the basis :code:`zeta^e, 0 <= e < d_n`,
where they only permute exponents.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Optional, Sequence, Tuple, Union

from padix.core.scalar import PadicScalar, Rational, vp, vp_rational
from padix.errors import DivisionByZeroPrecision, LevelError, NotAUnit, PadixError

Precision = Optional[Fraction]

_ELEM_PATTERN = re.compile(
    r"^level=(?P<n>\d+) \[(?P<coeffs>[^\]]*)\] mod (?P<p>\d+)\^(?P<prec>\(-?\d+/\d+\)|-?\d+|exact)$"
)


@dataclass(frozen=True)
class CycloLevel:
    p: int
    n: int

    @property
    def degree(self) -> int:
        return 1 if self.n == 0 else self.p ** (self.n - 1) * (self.p - 1)

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def r(self) -> Fraction:
        """Valuation of pi_n (the placeholder 1 at level 0, where pi_0 = 0)."""
        return Fraction(1) if self.n == 0 else Fraction(1, self.degree)

    @property
    def eisenstein(self) -> Tuple[int, ...]:
        return _eisenstein(self.p, self.n)


@lru_cache(maxsize=None)
def _eisenstein(p: int, n: int) -> Tuple[int, ...]:
    """Coefficients of the minimal polynomial E_n of pi_n, constant term first, monic."""
    if n == 0:
        return 0, 1
    step = p ** (n - 1)
    coeffs = [0] * ((p - 1) * step + 1)
    for i in range(p):
        for k in range(i * step + 1):
            coeffs[k] += comb(i * step, k)
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _pi_to_zeta_rows(p: int, n: int) -> Tuple[Tuple[int, ...], ...]:
    d = CycloLevel(p, n).degree
    return tuple(tuple(comb(k, e) * (-1) ** (k - e) for e in range(k + 1)) for k in range(d))


@lru_cache(maxsize=None)
def _zeta_to_pi_rows(p: int, n: int) -> Tuple[Tuple[int, ...], ...]:
    d = CycloLevel(p, n).degree
    return tuple(tuple(comb(e, k) for k in range(e + 1)) for e in range(d))


def _to_zeta(level: CycloLevel, coeffs: Sequence[int], modulus: Optional[int]) -> List[int]:
    rows = _pi_to_zeta_rows(level.p, level.n)
    out = [0] * level.degree
    for k, c in enumerate(coeffs):
        if c:
            for e, b in enumerate(rows[k]):
                out[e] += c * b
    return [x % modulus for x in out] if modulus else out


def _to_pi(level: CycloLevel, zeta_coeffs: Sequence[int], modulus: Optional[int]) -> List[int]:
    rows = _zeta_to_pi_rows(level.p, level.n)
    out = [0] * level.degree
    for e, b in enumerate(zeta_coeffs):
        if b:
            for k, c in enumerate(rows[e]):
                out[k] += b * c
    return [x % modulus for x in out] if modulus else out


def _fold(level: CycloLevel, acc: Sequence[int]) -> List[int]:
    """Rewrites a vector indexed by exponents modulo p^n in the basis zeta^e, e < d_n."""
    d, p = level.degree, level.p
    if level.n == 0:
        return [sum(acc)]
    step = p ** (level.n - 1)
    out = list(acc[:d])
    for f in range(d, level.order):
        c = acc[f]
        if c:
            r = f - d
            for i in range(p - 1):
                out[r + i * step] -= c
    return out


def _min_prec(*values: Precision) -> Precision:
    known = [v for v in values if v is not None]
    return min(known) if known else None


def _working_modulus(p: int, prec: Precision, shift: int) -> Optional[int]:
    if prec is None:
        return None
    return p ** max(1, math.ceil(prec) + shift + 1)


@dataclass(frozen=True, eq=False)
class CycloElem:
    """
    Element :code:`sum_k coeffs[k] pi_n^k / p^shift` of L_n known modulo elements of valuation >= prec.

    :code:`prec is None` marks an exact element.
    """

    level: CycloLevel
    coeffs: Tuple[int, ...]
    shift: int = 0
    prec: Precision = None

    @classmethod
    def build(cls, level: CycloLevel, coeffs: Sequence[int], shift: int = 0, prec: Precision = None) -> CycloElem:
        p, d, r = level.p, level.degree, level.r
        coeffs = list(coeffs) + [0] * (d - len(coeffs))
        if len(coeffs) > d:
            raise PadixError(f"Too many coefficients for level {level.n}: {len(coeffs)} > {d}")
        if prec is not None:
            prec = Fraction(prec)
            for k in range(d):
                e = math.ceil(prec + shift - k * r)
                coeffs[k] = coeffs[k] % p**e if e > 0 else 0
        while shift > 0 and all(c % p == 0 for c in coeffs):
            coeffs = [c // p for c in coeffs]
            shift -= 1
        if shift < 0:
            coeffs = [c * p ** (-shift) for c in coeffs]
            shift = 0
        return cls(level=level, coeffs=tuple(coeffs), shift=shift, prec=prec)

    @classmethod
    def zero(cls, level: CycloLevel, prec: Precision = None) -> CycloElem:
        return cls.build(level, [], 0, prec)

    @classmethod
    def one(cls, level: CycloLevel) -> CycloElem:
        return cls.build(level, [1])

    @classmethod
    def pi(cls, level: CycloLevel) -> CycloElem:
        if level.n == 0:
            return cls.zero(level)
        return cls.build(level, [0, 1])

    @classmethod
    def constant(cls, level: CycloLevel, value: Union[PadicScalar, Rational]) -> CycloElem:
        if isinstance(value, PadicScalar):
            numerator, shift = value.representative()
            return cls.build(level, [numerator], shift, Fraction(value.M))
        value = Fraction(value)
        if value == 0:
            return cls.zero(level)
        v_den = vp(value.denominator, level.p)
        rest = value.denominator // level.p**v_den
        if rest != 1:
            raise PadixError(f"Exact constants shall have p-power denominators, got {value}")
        return cls.build(level, [value.numerator], v_den)

    @classmethod
    def from_exponents(cls, level: CycloLevel, acc: Sequence[int], shift: int = 0, prec: Precision = None) -> CycloElem:
        """Element :code:`sum_e acc[e] zeta^e / p^shift` for a vector indexed by exponents modulo p^n."""
        modulus = _working_modulus(level.p, prec, shift)
        return cls.build(level, _to_pi(level, _fold(level, acc), modulus), shift, prec)

    # inspection

    @property
    def p(self) -> int:
        return self.level.p

    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def valuation(self) -> Union[Fraction, float]:
        """Exact valuation, the precision for zero-to-precision elements, :code:`math.inf` for exact zero."""
        candidates = [vp(c, self.p) - self.shift + k * self.level.r for k, c in enumerate(self.coeffs) if c]
        if candidates:
            return min(candidates)
        return math.inf if self.prec is None else self.prec

    def zeta_coefficients(self) -> Tuple[List[int], Optional[int]]:
        modulus = _working_modulus(self.p, self.prec, self.shift)
        return _to_zeta(self.level, self.coeffs, modulus), modulus

    def coefficients(self) -> List[PadicScalar]:
        """The pi-basis coordinates as p-adic scalars, each with the precision it is known to."""
        prec = self.prec if self.prec is not None else Fraction(self.shift + 64)
        return [
            PadicScalar.from_rational(
                self.p, Fraction(c, self.p**self.shift), math.ceil(prec - k * self.level.r)
            )
            for k, c in enumerate(self.coeffs)
        ]

    def to_scalar(self, M: Optional[int] = None) -> PadicScalar:
        """Coerces an element of Q_p (only the constant coordinate nonzero) into a PadicScalar."""
        if any(self.coeffs[1:]):
            raise PadixError(f"{self} does not lie in Q_p")
        if self.prec is None and M is None:
            raise PadixError("A precision is required to convert an exact element")
        prec = math.floor(self.prec) if self.prec is not None else M
        if M is not None:
            prec = min(prec, M)
        return PadicScalar.from_rational(self.p, Fraction(self.coeffs[0], self.p**self.shift), prec)

    def with_precision(self, prec: Union[Fraction, int]) -> CycloElem:
        prec = Fraction(prec)
        if self.prec is not None and prec > self.prec:
            raise PadixError(f"Cannot raise precision from {self.prec} to {prec}")
        return CycloElem.build(self.level, self.coeffs, self.shift, prec)

    # arithmetic

    def _coerce(self, other) -> CycloElem:
        if isinstance(other, CycloElem):
            if other.p != self.p:
                raise PadixError(f"Mismatched primes {self.p} and {other.p}")
            return other
        if not isinstance(other, PadicScalar):
            other = Fraction(other)
            unit_denominator = other.denominator // self.p ** vp(other.denominator, self.p) if other else 1
            if unit_denominator != 1:
                if self.prec is None:
                    raise PadixError(f"Cannot combine the exact element {self} with {other}")
                v_self = self.valuation()
                v_self = 0 if v_self == math.inf else v_self
                margin = math.ceil(self.prec) + 2 * abs(math.ceil(v_self)) + 2 * abs(vp_rational(other, self.p)) + 2
                other = PadicScalar.from_rational(self.p, other, margin)
        return CycloElem.constant(self.level, other)

    def _aligned(self, other) -> Tuple[CycloElem, CycloElem]:
        other = self._coerce(other)
        if other.level.n > self.level.n:
            return lift_level(self, other.level.n), other
        if other.level.n < self.level.n:
            return self, lift_level(other, self.level.n)
        return self, other

    def __add__(self, other) -> CycloElem:
        a, b = self._aligned(other)
        shift = max(a.shift, b.shift)
        fa, fb = a.p ** (shift - a.shift), a.p ** (shift - b.shift)
        coeffs = [x * fa + y * fb for x, y in zip(a.coeffs, b.coeffs)]
        return CycloElem.build(a.level, coeffs, shift, _min_prec(a.prec, b.prec))

    __radd__ = __add__

    def __neg__(self) -> CycloElem:
        return CycloElem.build(self.level, [-c for c in self.coeffs], self.shift, self.prec)

    def __sub__(self, other) -> CycloElem:
        a, b = self._aligned(other)
        return a + (-b)

    def __rsub__(self, other) -> CycloElem:
        return self._coerce(other) - self

    def __mul__(self, other) -> CycloElem:
        a, b = self._aligned(other)
        va, vb = a.valuation(), b.valuation()
        candidates = []
        if a.prec is not None:
            candidates.append(a.prec + vb)
        if b.prec is not None:
            candidates.append(b.prec + va)
        finite = [Fraction(c) for c in candidates if c != math.inf]
        prec = min(finite) if finite else None
        if (va == math.inf or vb == math.inf) or (a.is_zero() or b.is_zero()):
            return CycloElem.zero(a.level, prec)
        shift = a.shift + b.shift
        modulus = _working_modulus(a.p, prec, shift)
        product = _poly_mul_mod(a.coeffs, b.coeffs, a.level.eisenstein, modulus)
        return CycloElem.build(a.level, product, shift, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycloElem:
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloElem.one(self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self, prec: Optional[Union[Fraction, int]] = None) -> CycloElem:
        """Multiplicative inverse; the absolute precision drops by twice the valuation.

        Args:
            prec: precision to assume for an exact element, whose inverse is computed p-adically

        Returns:
            CycloElem: the inverse
        """
        x = self
        if x.prec is None:
            if prec is None:
                raise PadixError("Inverting an exact element requires a working precision")
            x = x.with_precision(prec)
        if x.is_zero():
            raise DivisionByZeroPrecision(f"Cannot invert {self}, it is zero to the available precision")
        level = x.level
        t = int(x.valuation() * level.degree)
        q, k0 = divmod(t, level.degree)
        pi_shift = _pi_power(level, -k0)
        unit = (x * pi_shift) * Fraction(1, level.p**q) if q >= 0 else (x * pi_shift) * level.p ** (-q)
        unit_inverse = _unit_inverse(unit)
        scale = Fraction(1, level.p**q) if q >= 0 else level.p ** (-q)
        return unit_inverse * pi_shift * scale

    def __truediv__(self, other) -> CycloElem:
        a, b = self._aligned(other)
        return a * b.inverse(prec=a.prec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CycloElem, PadicScalar, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def galois(self, a: int) -> CycloElem:
        return galois(a, self)

    # rendering

    def __str__(self) -> str:
        def fmt(c: int) -> str:
            if c == 0 or self.shift == 0:
                return str(c)
            f = Fraction(c, self.p**self.shift)
            if f.denominator == 1:
                return str(f.numerator)
            return f"{f.numerator}/{self.p}^{vp(f.denominator, self.p)}"

        if self.prec is None:
            mod = "exact"
        elif self.prec.denominator == 1:
            mod = str(self.prec.numerator)
        else:
            mod = f"({self.prec.numerator}/{self.prec.denominator})"
        return f"level={self.level.n} [{', '.join(fmt(c) for c in self.coeffs)}] mod {self.p}^{mod}"

    def __repr__(self) -> str:
        return f"CycloElem({self})"

    @classmethod
    def parse(cls, text: str) -> CycloElem:
        match = _ELEM_PATTERN.match(text.strip())
        if not match:
            raise ValueError(f"Cannot parse cyclotomic element from '{text}'")
        p, n = int(match["p"]), int(match["n"])
        level = CycloLevel(p, n)
        raw = match["prec"]
        prec = None if raw == "exact" else Fraction(raw.strip("()"))
        values = [_parse_coefficient(token, p) for token in match["coeffs"].split(",") if token.strip()]
        shift = max((vp(v.denominator, p) for v in values if v), default=0)
        numerators = [int(v * p**shift) for v in values]
        return cls.build(level, numerators, shift, prec)


def _parse_coefficient(token: str, p: int) -> Fraction:
    token = token.strip()
    if "/" not in token:
        return Fraction(int(token))
    num, den = token.split("/")
    base, exponent = den.split("^")
    if int(base) != p:
        raise ValueError(f"Denominator shall be a power of {p}: '{token}'")
    return Fraction(int(num), p ** int(exponent))


def _poly_mul_mod(a: Sequence[int], b: Sequence[int], eisenstein: Sequence[int], modulus: Optional[int]) -> List[int]:
    d = len(eisenstein) - 1
    product = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    product[i + j] += x * y
    if modulus:
        product = [c % modulus for c in product]
    for deg in range(2 * d - 2, d - 1, -1):
        c = product[deg]
        if c:
            base = deg - d
            for i in range(d):
                if eisenstein[i]:
                    product[base + i] -= c * eisenstein[i]
            product[deg] = 0
            if modulus:
                for i in range(d):
                    product[base + i] %= modulus
    return product[:d]


@lru_cache(maxsize=None)
def _pi_inverse(level: CycloLevel) -> CycloElem:
    """pi^-1 = -(pi^(d-1) + e_{d-1} pi^(d-2) + ... + e_1) / p, from E_n(pi) = 0 and E_n(0) = p."""
    e = level.eisenstein
    d = level.degree
    return CycloElem.build(level, [-e[i + 1] for i in range(d)], 1)


def _pi_power(level: CycloLevel, k: int) -> CycloElem:
    if level.n == 0:
        return CycloElem.one(level)
    base = CycloElem.pi(level) if k >= 0 else _pi_inverse(level)
    return base ** abs(k)


def _unit_inverse(unit: CycloElem) -> CycloElem:
    """Newton iteration y <- y (2 - u y) for a unit known to finite precision."""
    p = unit.p
    c0 = Fraction(unit.coeffs[0], p**unit.shift)
    if c0 == 0 or vp(c0.numerator, p) != vp(c0.denominator, p):
        raise NotAUnit(f"{unit} is not a unit")
    y = CycloElem.constant(unit.level, Fraction(pow(c0.numerator * pow(c0.denominator, -1, p), -1, p)))
    y = y.with_precision(unit.prec)
    for _ in range(2 * (math.ceil(unit.prec) + 2) * unit.level.degree + 8):
        defect = 1 - unit * y
        if defect.is_zero():
            return y
        y = y * (2 - unit * y)
    raise PadixError(f"Newton iteration did not converge for {unit}")


def zeta_power(level: CycloLevel, a: int) -> CycloElem:
    """:code:`(1 + pi_n)^a` reduced modulo E_n, for any integer a."""
    acc = [0] * level.order
    acc[a % level.order] = 1
    return CycloElem.from_exponents(level, acc)


def galois(a: int, x: CycloElem) -> CycloElem:
    """Field automorphism sigma_a determined by zeta_{p^n} -> zeta_{p^n}^a, applied to every coefficient of x."""
    if a % x.p == 0:
        raise NotAUnit(f"{a} is not a unit modulo {x.p}")
    level = x.level
    if level.n == 0:
        return x
    zeta, _ = x.zeta_coefficients()
    order = level.order
    acc = [0] * order
    for e, b in enumerate(zeta):
        if b:
            acc[(a * e) % order] += b
    return CycloElem.from_exponents(level, acc, x.shift, x.prec)


def lift_level(x: CycloElem, m: int) -> CycloElem:
    """Image of x under the embedding L_n -> L_m, pi_n -> (1 + pi_m)^(p^(m - n)) - 1."""
    n = x.level.n
    if m < n:
        raise LevelError(f"Cannot lift from level {n} down to level {m}")
    if m == n:
        return x
    target = CycloLevel(x.p, m)
    zeta, _ = x.zeta_coefficients()
    acc = [0] * target.order
    step = x.p ** (m - n)
    for e, b in enumerate(zeta):
        acc[e * step] += b
    return CycloElem.from_exponents(target, acc, x.shift, x.prec)


def coset_representatives(p: int, m: int, n: int) -> List[int]:
    """Representatives of Gal(L_m / L_n) as units modulo p^m."""
    if n == 0:
        return [a for a in range(1, p**m) if a % p]
    return [1 + p**n * k for k in range(p ** (m - n))]


def trace_down(x: CycloElem, n: int) -> CycloElem:
    """Tr_{L_m / L_n}(x), the sum of the Galois conjugates of x over L_n."""
    m = x.level.n
    if n > m:
        raise LevelError(f"Cannot trace from level {m} up to level {n}")
    if n == m:
        return x
    level, target = x.level, CycloLevel(x.p, n)
    zeta, _ = x.zeta_coefficients()
    order = level.order
    acc = [0] * order
    for a in coset_representatives(x.p, m, n):
        for e, b in enumerate(zeta):
            if b:
                acc[(a * e) % order] += b
    folded = _fold(level, acc)
    step = x.p ** (m - n)
    descended = [folded[e * step] for e in range(target.degree)]
    prec = Fraction(math.floor(x.prec)) if x.prec is not None else None
    modulus = _working_modulus(x.p, prec, x.shift)
    return CycloElem.build(target, _to_pi(target, descended, modulus), x.shift, prec)
