"""
Analytic functions on Q_p: Teichmüller lift, logarithm, exponential and binomial coefficients.

Series are truncated with the certified bounds
:code:`v(x^k / k) >= k v(x) - floor(log_p k)` and :code:`v(x^k / k!) >= k v(x) - (k - 1) / (p - 1)`,
all terms being computed with integer arithmetic modulo p^M.
"""
from functools import lru_cache
from math import factorial

from padix.core.scalar import PadicScalar, vp, vp_factorial
from padix.errors import NotAUnit, OutsideExpDomain, OutsideLogDomain


@lru_cache(maxsize=4096)
def teichmuller_residue(p: int, a: int, M: int) -> int:
    modulus = p**M
    x = a % modulus
    for _ in range(M + 1):
        nxt = pow(x, p, modulus)
        if nxt == x:
            break
        x = nxt
    return x


def teichmuller(p: int, a: int, M: int) -> PadicScalar:
    """Root of unity of order dividing p - 1 congruent to :code:`a` modulo p, to precision p^M."""
    if a % p == 0:
        raise NotAUnit(f"{a} is not a unit modulo {p}")
    return PadicScalar.from_rational(p, teichmuller_residue(p, a % p, M), M)


def floor_log(k: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= k:
        e += 1
    return e


def plog(x: PadicScalar) -> PadicScalar:
    """p-adic logarithm on 1 + pZ_p; an isometry, so the precision of :code:`x` is kept."""
    p, M = x.p, x.M
    y = x - 1
    if y.is_zero():
        return PadicScalar.zero(p, M)
    v = y.val
    if v < 1:
        raise OutsideLogDomain(f"log requires v_p(x - 1) >= 1, got {v}")
    y_int, _ = y.representative()
    modulus = p**M
    total, k = 0, 1
    while k * v - floor_log(k, p) < M:
        vk = vp(k, p)
        term = pow(y_int, k, p ** (M + vk)) // p**vk
        term = term * pow(k // p**vk, -1, modulus) % modulus
        total += term if k % 2 == 1 else -term
        k += 1
    return PadicScalar.from_rational(p, total % modulus, M)


def pexp(x: PadicScalar) -> PadicScalar:
    """p-adic exponential on pZ_p (p odd); an isometry onto 1 + pZ_p."""
    p, M = x.p, x.M
    if x.is_zero():
        return PadicScalar.one(p, M)
    v = x.val
    if v < 1:
        raise OutsideExpDomain(f"exp requires v_p(x) >= 1, got {v}")
    x_int, _ = x.representative()
    modulus = p**M
    total, k = 1, 1
    while (k * v * (p - 1) - (k - 1)) < M * (p - 1):
        vk = vp_factorial(k, p)
        term = pow(x_int, k, p ** (M + vk)) // p**vk
        total += term * pow(factorial(k) // p**vk, -1, modulus)
        k += 1
    return PadicScalar.from_rational(p, total % modulus, M)


def padic_binomial(a: PadicScalar, k: int) -> PadicScalar:
    """:code:`a (a - 1) ... (a - k + 1) / k!`, precision following the arithmetic rules."""
    if k < 0:
        raise ValueError("k shall be nonnegative")
    if k == 0:
        return PadicScalar.one(a.p, a.M)
    result = a
    for i in range(1, k):
        result = result * (a - i)
    return result / factorial(k)
