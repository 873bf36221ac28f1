from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from padix.errors import DivisionByZeroPrecision, PadixError, UnsupportedPrime
from padix.utils.common import is_prime

Rational = Union[int, Fraction]

_RENDER_PATTERN = re.compile(
    r"^val=(?P<val>inf|-?\d+) residue=(?P<num>\d+)(?:/(?P<den_p>\d+)\^(?P<shift>\d+))? "
    r"mod (?P<p>\d+)\^(?P<M>-?\d+)$"
)


def check_prime(p: int) -> int:
    if p == 2 or not is_prime(p):
        raise UnsupportedPrime(f"Only odd primes are supported, got {p}")
    return p


def vp(n: int, p: int) -> int:
    """Valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(x: Rational, p: int) -> int:
    x = Fraction(x)
    return vp(x.numerator, p) - vp(x.denominator, p)


def vp_factorial(k: int, p: int) -> int:
    v, q = 0, p
    while q <= k:
        v += k // q
        q *= p
    return v


@dataclass(frozen=True, eq=False)
class PadicScalar:
    """
    Element of Q_p known modulo p^M.

    The value is :code:`p^val * unit` with :code:`unit` a unit reduced modulo :code:`p^(M - val)`.
    :code:`val is None` flags an element which is zero to the available precision.
    """

    p: int
    M: int
    unit: int = 0
    val: Optional[int] = None

    # construction

    @classmethod
    def zero(cls, p: int, M: int) -> PadicScalar:
        return cls(p=p, M=M)

    @classmethod
    def one(cls, p: int, M: int) -> PadicScalar:
        return cls.from_rational(p, 1, M)

    @classmethod
    def from_rational(cls, p: int, x: Rational, M: int) -> PadicScalar:
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, M)
        v_num, v_den = vp(x.numerator, p), vp(x.denominator, p)
        num, den = x.numerator // p**v_num, x.denominator // p**v_den
        return cls._from_parts(p, v_num - v_den, num * pow(den, -1, p ** max(M - v_num + v_den, 1)), M)

    @classmethod
    def _from_parts(cls, p: int, s: int, total: int, M: int) -> PadicScalar:
        """Normalizes :code:`p^s * total` known modulo p^M."""
        if total == 0 or s >= M:
            return cls.zero(p, M)
        k = vp(total, p)
        v = s + k
        if v >= M:
            return cls.zero(p, M)
        modulus = p ** (M - v)
        return cls(p=p, M=M, unit=(total // p**k) % modulus, val=v)

    # inspection

    def is_zero(self) -> bool:
        return self.val is None

    def is_unit(self) -> bool:
        return self.val == 0

    def valuation(self) -> int:
        """Valuation, or the precision M as a lower bound for zero-to-precision elements."""
        return self.M if self.val is None else self.val

    def representative(self) -> Tuple[int, int]:
        """Returns :code:`(numerator, shift)` with value :code:`numerator / p^shift`, numerator >= 0."""
        if self.val is None:
            return 0, 0
        shift = max(0, -self.val)
        return self.unit * self.p ** (self.val + shift), shift

    @property
    def residue(self) -> int:
        numerator, _ = self.representative()
        return numerator

    def to_fraction(self) -> Fraction:
        numerator, shift = self.representative()
        return Fraction(numerator, self.p**shift)

    def with_precision(self, M: int) -> PadicScalar:
        if M > self.M:
            raise PadixError(f"Cannot raise precision from {self.M} to {M}")
        if self.val is None:
            return PadicScalar.zero(self.p, M)
        return PadicScalar._from_parts(self.p, self.val, self.unit, M)

    # arithmetic

    def _coerce(self, other: Union[PadicScalar, Rational]) -> PadicScalar:
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise PadixError(f"Mismatched primes {self.p} and {other.p}")
            return other
        other = Fraction(other)
        v_other = vp_rational(other, self.p) if other != 0 else 0
        # large enough that the exact operand never limits the precision of the result
        margin = self.M + 2 * abs(self.valuation()) + 2 * abs(v_other) + 2
        return PadicScalar.from_rational(self.p, other, margin)

    def __add__(self, other: Union[PadicScalar, Rational]) -> PadicScalar:
        other = self._coerce(other)
        M = min(self.M, other.M)
        na, sa = self.representative()
        nb, sb = other.representative()
        shift = max(sa, sb)
        total = na * self.p ** (shift - sa) + nb * self.p ** (shift - sb)
        return PadicScalar._from_parts(self.p, -shift, total, M)

    __radd__ = __add__

    def __neg__(self) -> PadicScalar:
        if self.val is None:
            return self
        return PadicScalar._from_parts(self.p, self.val, -self.unit, self.M)

    def __sub__(self, other: Union[PadicScalar, Rational]) -> PadicScalar:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Rational) -> PadicScalar:
        return self._coerce(other) + (-self)

    def __mul__(self, other: Union[PadicScalar, Rational]) -> PadicScalar:
        other = self._coerce(other)
        va, vb = self.valuation(), other.valuation()
        M = min(self.M + vb, other.M + va)
        if self.is_zero() or other.is_zero():
            return PadicScalar.zero(self.p, M)
        return PadicScalar._from_parts(self.p, va + vb, self.unit * other.unit, M)

    __rmul__ = __mul__

    def inverse(self) -> PadicScalar:
        if self.is_zero():
            raise DivisionByZeroPrecision(f"Cannot invert {self}, it is zero to precision p^{self.M}")
        relative = self.M - self.val
        return PadicScalar(
            p=self.p,
            M=self.M - 2 * self.val,
            unit=pow(self.unit, -1, self.p**relative) if relative > 0 else 0,
            val=-self.val,
        )

    def __truediv__(self, other: Union[PadicScalar, Rational]) -> PadicScalar:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Rational) -> PadicScalar:
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> PadicScalar:
        if k < 0:
            return self.inverse() ** (-k)
        result = PadicScalar.from_rational(self.p, 1, self.M + 2 * k * abs(self.valuation()) + 2)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, (PadicScalar, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # rendering

    def __str__(self) -> str:
        if self.val is None:
            return f"val=inf residue=0 mod {self.p}^{self.M}"
        numerator, shift = self.representative()
        residue = f"{numerator}/{self.p}^{shift}" if shift else f"{numerator}"
        return f"val={self.val} residue={residue} mod {self.p}^{self.M}"

    def __repr__(self) -> str:
        return f"PadicScalar({self})"

    @classmethod
    def parse(cls, text: str) -> PadicScalar:
        match = _RENDER_PATTERN.match(text.strip())
        if not match:
            raise ValueError(f"Cannot parse p-adic scalar from '{text}'")
        p, M = int(match["p"]), int(match["M"])
        check_prime(p)
        if match["val"] == "inf":
            return cls.zero(p, M)
        shift = int(match["shift"]) if match["shift"] else 0
        if match["den_p"] and int(match["den_p"]) != p:
            raise ValueError(f"Residue denominator shall be a power of {p}: '{text}'")
        value = cls.from_rational(p, Fraction(int(match["num"]), p**shift), M)
        if value.valuation() != int(match["val"]):
            raise ValueError(f"Declared valuation does not match the residue: '{text}'")
        return value


def as_scalar(p: int, x: Union[PadicScalar, Rational, str], M: int) -> PadicScalar:
    """Coerces user input (rational literal, canonical rendering or scalar) into a PadicScalar."""
    if isinstance(x, PadicScalar):
        return x
    if isinstance(x, str):
        if x.strip().startswith("val="):
            return PadicScalar.parse(x)
        return PadicScalar.from_rational(p, Fraction(x.strip()), M)
    return PadicScalar.from_rational(p, x, M)
