"""
Points of the weight space: finite-order characters of Z_p^x and general characters :code:`(tame part, z)`.

A character is stored by the images of generators: the tame index i (tame part :code:`omega^i`) and, for
finite-order characters, the wild exponent w with :code:`(1 + p) -> zeta_{p^(n-1)}^w`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Union

from padix.constants import DEFAULT_PRECISION, GUARD_DIGITS
from padix.core.cyclotomic import CycloElem, CycloLevel, galois, lift_level, zeta_power
from padix.core.functions import pexp, plog, teichmuller, teichmuller_residue
from padix.core.scalar import PadicScalar, check_prime, vp_rational
from padix.errors import InvalidCharacter, InvalidEpsilon, LevelError, NotAdmissible, NotAUnit

TameValue = Union[int, PadicScalar]


@lru_cache(maxsize=None)
def _discrete_log_table(p: int, n: int) -> Dict[int, int]:
    modulus = p**n
    table, x = {}, 1
    for exponent in range(p ** (n - 1)):
        table[x] = exponent
        x = x * (1 + p) % modulus
    return table


def discrete_log(p: int, n: int, u: int) -> int:
    """Exponent L modulo p^(n-1) with :code:`(1 + p)^L = u` modulo p^n, for u congruent to 1 modulo p."""
    if n <= 1:
        return 0
    return _discrete_log_table(p, n)[u % p**n]


def _angle_residue(p: int, a: int, n: int) -> int:
    """:code:`<a> = a / omega(a)` modulo p^n."""
    modulus = p**n
    return a * pow(teichmuller_residue(p, a % p, n), -1, modulus) % modulus


@dataclass(frozen=True)
class FiniteOrderChar:
    """Character of Z_p^x of exact conductor p^n with :code:`eta(p) := 1`."""

    p: int
    conductor_exp: int
    tame_index: int = 0
    wild_exponent: int = 0

    def __post_init__(self):
        p, n = check_prime(self.p), self.conductor_exp
        if n < 0:
            raise InvalidCharacter(f"Conductor exponent shall be nonnegative, got {n}")
        object.__setattr__(self, "tame_index", self.tame_index % (p - 1))
        object.__setattr__(self, "wild_exponent", self.wild_exponent % p ** max(n - 1, 0))
        if n == 0 and self.tame_index:
            raise InvalidCharacter(f"A character of conductor 1 is trivial, got tame index {self.tame_index}")
        if n == 1 and not self.tame_index:
            raise InvalidCharacter("The trivial character does not have conductor p")
        if n >= 2 and self.wild_exponent % p == 0:
            raise InvalidCharacter(f"Wild exponent {self.wild_exponent} does not give conductor {p}^{n}")

    @classmethod
    def trivial(cls, p: int) -> FiniteOrderChar:
        return cls(p, 0)

    @classmethod
    def from_parts(cls, p: int, tame_index: int, wild_exponent: int, n: int) -> FiniteOrderChar:
        """Character with the given generator images at level n, its conductor recomputed."""
        tame_index %= p - 1
        if n >= 2:
            wild_exponent %= p ** (n - 1)
        while n >= 2 and wild_exponent % p == 0:
            if wild_exponent == 0:
                n = 1
                break
            wild_exponent //= p
            n -= 1
        if n <= 1:
            n = 1 if tame_index else 0
            wild_exponent = 0
        return cls(p, n, tame_index, wild_exponent)

    @classmethod
    def all_of_conductor(cls, p: int, n: int) -> List[FiniteOrderChar]:
        if n == 0:
            return [cls.trivial(p)]
        if n == 1:
            return [cls(p, 1, i) for i in range(1, p - 1)]
        return [cls(p, n, i, w) for i in range(p - 1) for w in range(p ** (n - 1)) if w % p]

    @property
    def level(self) -> CycloLevel:
        return CycloLevel(self.p, self.conductor_exp)

    def is_trivial(self) -> bool:
        return self.conductor_exp == 0

    def is_exact(self) -> bool:
        """Values are exact elements of L_n when the tame part takes the values +-1."""
        return self.tame_index == 0 or self.p == 3

    @property
    def parity(self) -> int:
        """:code:`eta(-1)`."""
        return -1 if self.tame_index % 2 else 1

    def inverse(self) -> FiniteOrderChar:
        return FiniteOrderChar(self.p, self.conductor_exp, -self.tame_index, -self.wild_exponent)

    def times(self, other: FiniteOrderChar) -> FiniteOrderChar:
        n = max(self.conductor_exp, other.conductor_exp)
        wild = 0
        for char in (self, other):
            if char.conductor_exp >= 2:
                wild += char.wild_exponent * self.p ** (n - char.conductor_exp)
        return FiniteOrderChar.from_parts(self.p, self.tame_index + other.tame_index, wild, n)

    def tame_value(self, a: int, M: int) -> TameValue:
        if a % self.p == 0:
            raise NotAUnit(f"{a} is not a unit modulo {self.p}")
        if self.tame_index == 0:
            return 1
        if self.p == 3:
            return 1 if a % 3 == 1 or self.tame_index % 2 == 0 else -1
        return teichmuller(self.p, a, M) ** self.tame_index

    def wild_value_exponent(self, a: int) -> int:
        """Exponent e with wild part of :code:`eta(a)` equal to :code:`zeta_{p^n}^e`."""
        n = self.conductor_exp
        if n <= 1:
            return 0
        angle = _angle_residue(self.p, a, n)
        return self.p * self.wild_exponent * discrete_log(self.p, n, angle) % self.p**n

    def value(self, a: int, M: int = DEFAULT_PRECISION) -> CycloElem:
        """:code:`eta(a)` as an element of L_n."""
        root = zeta_power(self.level, self.wild_value_exponent(a))
        tame = self.tame_value(a, M)
        return root if isinstance(tame, int) and tame == 1 else root * tame

    def z_value(self) -> CycloElem:
        """:code:`z_eta = eta(exp(q))`, a root of unity of p-power order."""
        n = self.conductor_exp
        if n <= 1:
            return CycloElem.one(self.level)
        exp_q = pexp(PadicScalar.from_rational(self.p, self.p, n)).residue
        return zeta_power(self.level, self.wild_value_exponent(exp_q))

    def as_weight(self, M: int) -> WeightChar:
        if self.conductor_exp >= 2:
            raise NotAdmissible(f"{self} has a wild part, its weight-space coordinate does not lie in Q_p")
        return WeightChar(self.p, self.tame_index, PadicScalar.one(self.p, M))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "conductor_exp": self.conductor_exp,
            "tame_index": self.tame_index,
            "wild_exponent": self.wild_exponent,
        }

    def __str__(self) -> str:
        return f"eta(p={self.p},n={self.conductor_exp},i={self.tame_index},w={self.wild_exponent})"


@dataclass(frozen=True)
class WeightChar:
    """Continuous character :code:`x -> omega(x)^i z^(log<x>/q)` of Z_p^x."""

    p: int
    tame_index: int
    z: PadicScalar
    integer_weight: Optional[int] = None

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "tame_index", self.tame_index % (self.p - 1))
        if (self.z - 1).valuation() < 1:
            raise InvalidCharacter(f"z_kappa shall satisfy v_p(z - 1) > 0, got {self.z}")

    @classmethod
    def power(cls, p: int, j: int, M: int) -> WeightChar:
        """The character :code:`x -> x^j`."""
        z = pexp(PadicScalar.from_rational(p, p * j, M))
        return cls(p, j, z, integer_weight=j)

    @classmethod
    def trivial(cls, p: int, M: int) -> WeightChar:
        return cls.power(p, 0, M)

    @property
    def M(self) -> int:
        return self.z.M

    def value(self, x: int) -> PadicScalar:
        if x % self.p == 0:
            raise NotAUnit(f"{x} is not a unit modulo {self.p}")
        if self.integer_weight is not None:
            return PadicScalar.from_rational(self.p, Fraction(x) ** self.integer_weight, self.M)
        M = self.M
        omega = teichmuller(self.p, x, M + GUARD_DIGITS)
        angle = PadicScalar.from_rational(self.p, x, M + GUARD_DIGITS) / omega
        exponent = plog(angle) / self.p * plog(self.z)
        tame = omega**self.tame_index if self.tame_index else 1
        return (pexp(exponent) * tame).with_precision(min(M, exponent.M))

    def weight(self) -> PadicScalar:
        """:code:`log(z) / q`."""
        if self.integer_weight is not None:
            return PadicScalar.from_rational(self.p, self.integer_weight, self.M - 1)
        return plog(self.z) / self.p

    def twist(self, j: int) -> WeightChar:
        """:code:`kappa x^j`."""
        z = self.z * pexp(PadicScalar.from_rational(self.p, self.p * j, self.M))
        weight = None if self.integer_weight is None else self.integer_weight + j
        return WeightChar(self.p, self.tame_index + j, z, weight)

    def to_dict(self) -> dict:
        data = {"p": self.p, "tame_index": self.tame_index, "z_kappa": str(self.z)}
        if self.integer_weight is not None:
            data["j"] = self.integer_weight
        return data

    def __str__(self) -> str:
        if self.integer_weight is not None:
            return f"x^{self.integer_weight}"
        return f"kappa(p={self.p},i={self.tame_index},z={self.z})"


Character = Union[FiniteOrderChar, WeightChar]


@dataclass(frozen=True)
class WeightPoint:
    """Coordinates :code:`(tame index, z)` of a point of the weight space, z in some L_n."""

    p: int
    tame_index: int
    z: CycloElem

    @classmethod
    def of(cls, chi: Character) -> WeightPoint:
        if isinstance(chi, FiniteOrderChar):
            return cls(chi.p, chi.tame_index, chi.z_value())
        return cls(chi.p, chi.tame_index, CycloElem.constant(CycloLevel(chi.p, 0), chi.z))

    def times(self, other: WeightPoint) -> WeightPoint:
        return WeightPoint(self.p, (self.tame_index + other.tame_index) % (self.p - 1), self.z * other.z)


def eval_char(chi: Character, x: int, M: int = DEFAULT_PRECISION) -> Union[CycloElem, PadicScalar]:
    if isinstance(chi, FiniteOrderChar):
        return chi.value(x, M)
    return chi.value(x)


def weight_of(chi: Character) -> PadicScalar:
    if isinstance(chi, FiniteOrderChar):
        return PadicScalar.zero(chi.p, DEFAULT_PRECISION)
    return chi.weight()


def distance(xi: Union[Character, WeightPoint], delta: Union[Character, WeightPoint]) -> Union[Fraction, float]:
    """:code:`v_p(z_xi - z_delta)` when the tame parts agree, :code:`-inf` otherwise.

    Differences which are zero to the available precision are reported as :code:`inf`.
    """
    a = xi if isinstance(xi, WeightPoint) else WeightPoint.of(xi)
    b = delta if isinstance(delta, WeightPoint) else WeightPoint.of(delta)
    if a.tame_index != b.tame_index:
        return -math.inf
    difference = a.z - b.z
    if difference.is_zero():
        return math.inf
    return difference.valuation()


@dataclass(frozen=True)
class Ball:
    """The ball :code:`{xi : v_p(xi - eta) > p^(N - c(eta))}` around a finite-order character."""

    center: FiniteOrderChar
    N: Union[int, Fraction, float]

    @property
    def radius_valuation(self) -> Union[Fraction, float]:
        exponent = self.N - self.center.conductor_exp
        if not isinstance(exponent, float) and Fraction(exponent).denominator == 1:
            return Fraction(self.center.p) ** int(exponent)
        return self.center.p ** float(exponent)

    def contains(self, xi: Character, kappa: Optional[WeightChar] = None) -> bool:
        point = WeightPoint.of(xi)
        if kappa is not None:
            point = point.times(WeightPoint.of(kappa))
        return distance(point, WeightPoint.of(self.center)) > self.radius_valuation


def twisted_sum(eta: FiniteOrderChar, x: CycloElem, M: Optional[int] = None) -> CycloElem:
    """:code:`sum_{a in (Z/p^n)^x} eta(a) sigma_a(x)`, x lifted to the conductor level of eta."""
    n = eta.conductor_exp
    if n == 0:
        return x
    if x.level.n > n:
        raise LevelError(f"Twisted sums over (Z/{eta.p}^{n})^x need an element of level <= {n}")
    if M is None:
        M = math.ceil(x.prec) + GUARD_DIGITS if x.prec is not None else DEFAULT_PRECISION
    x = lift_level(x, n)
    p, level = eta.p, eta.level
    order = level.order
    zeta, _ = x.zeta_coefficients()
    total = CycloElem.zero(level)
    for b in range(1, p):
        acc = [0] * order
        for a in range(b, order, p):
            wild = eta.wild_value_exponent(a)
            for e, c in enumerate(zeta):
                if c:
                    acc[(a * e + wild) % order] += c
        total = total + CycloElem.from_exponents(level, acc, x.shift, x.prec) * eta.tame_value(b, M)
    return total


def gauss_sum(eta: FiniteOrderChar, b: int = 1, M: int = DEFAULT_PRECISION) -> CycloElem:
    """:code:`G(eta, b) = sum_a eta(a) zeta_{p^n}^(ab)`."""
    if eta.conductor_exp < 1:
        raise InvalidCharacter("Gauss sums are defined for characters of conductor at least p")
    return twisted_sum(eta, zeta_power(eta.level, b), M)


def conjugate_gauss_sum(eta: FiniteOrderChar, a: int, M: int = DEFAULT_PRECISION) -> CycloElem:
    """sigma_a applied to the zeta_{p^n} of G(eta); the values of eta stay fixed as coefficients."""
    if eta.conductor_exp < 1:
        raise InvalidCharacter("Gauss sums are defined for characters of conductor at least p")
    return twisted_sum(eta, galois(a, zeta_power(eta.level, 1)), M)


def gauss_sum_inverse(eta: FiniteOrderChar, M: int = DEFAULT_PRECISION) -> CycloElem:
    """:code:`G(eta)^-1 = eta(-1) G(eta^-1) / p^n`."""
    return gauss_sum(eta.inverse(), 1, M) * Fraction(eta.parity, eta.p**eta.conductor_exp)


def fourier_hat(eta: FiniteOrderChar, x: Union[int, Fraction], M: int = DEFAULT_PRECISION) -> CycloElem:
    """p-adic Fourier transform of eta (extended by 0 to non-units)."""
    x = Fraction(x)
    p, n = eta.p, eta.conductor_exp
    v = vp_rational(x, p) if x else math.inf
    if n == 0:
        level = CycloLevel(p, 0)
        if v >= 0:
            return CycloElem.constant(level, Fraction(p - 1, p))
        if v == -1:
            return CycloElem.constant(level, Fraction(-1, p))
        return CycloElem.zero(level)
    if v != -n:
        return CycloElem.zero(eta.level)
    unit = p**n * x
    a = unit.numerator * pow(unit.denominator, -1, p**n) % p**n
    return gauss_sum_inverse(eta.inverse(), M) * eta.inverse().value(a, M)


@dataclass(frozen=True)
class EpsilonFactor:
    """:code:`p^p_exponent * value`, the power of p kept as an exact rational."""

    p_exponent: Fraction
    value: CycloElem

    def __mul__(self, other: EpsilonFactor) -> EpsilonFactor:
        return EpsilonFactor(self.p_exponent + other.p_exponent, self.value * other.value)

    def as_element(self) -> CycloElem:
        if self.p_exponent.denominator != 1:
            raise InvalidEpsilon(f"p^{self.p_exponent} does not lie in Q_p")
        return self.value * Fraction(self.value.p) ** int(self.p_exponent)

    def __str__(self) -> str:
        return f"p^({self.p_exponent}) * {self.value}"


def epsilon_gl1(eta: FiniteOrderChar, s: Union[int, Fraction], M: int = DEFAULT_PRECISION) -> EpsilonFactor:
    """:code:`eps(eta, s) = p^(-ns) G(eta^-1)` for ramified eta, 1 otherwise."""
    n = eta.conductor_exp
    if n == 0:
        return EpsilonFactor(Fraction(0), CycloElem.one(eta.level))
    return EpsilonFactor(-n * Fraction(s), gauss_sum(eta.inverse(), 1, M))

