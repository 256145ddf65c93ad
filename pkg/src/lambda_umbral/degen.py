"""Degenerate special functions and degenerate Stirling numbers.

Every function here is polynomial in lambda. The factors
``(1)_{n,1/lambda}`` that appear in the classical formulas always come
pre-multiplied by a power of lambda and are stored through the identities

    lambda**(n-1) * (1)_{n,1/lambda}    == prod_{j=1}^{n-1} (lambda - j)
    (-lambda)**(n-1) * (1)_{n,1/lambda} == prod_{j=1}^{n-1} (j - lambda)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Union

from .exact import LAMBDA, LPoly, X, XPoly
from .series import Series, series_compose

__all__ = [
    "StirlingTable",
    "falling_factorial",
    "lambda_falling",
    "lambda_scaled_falling",
    "degenerate_exp",
    "degenerate_log",
    "degenerate_polylog",
    "negate_argument",
    "polylog_of_one_minus_exp",
    "stirling_lambda",
]

Exponent = Union[int, Fraction, str, LPoly, XPoly]


def lambda_falling(a, n: int):
    """(a)_{n,lambda} = a (a - lambda) ... (a - (n-1) lambda) for a ring element a."""
    if n < 0:
        raise ValueError("order must be non-negative")
    if isinstance(a, (int, Fraction)):
        a = LPoly.const(a)
    out = XPoly.const(1) if isinstance(a, XPoly) else LPoly.const(1)
    for j in range(n):
        out = out * (a - LAMBDA * j)
    return out


@lru_cache(maxsize=None)
def falling_factorial(n: int, mode: str = "lambda") -> XPoly:
    """(x)_{n,lambda} for ``mode="lambda"``, the ordinary (x)_n for ``mode="plain"``."""
    if n < 0:
        raise ValueError("order must be non-negative")
    if mode == "lambda":
        if n == 0:
            return XPoly.const(1)
        return falling_factorial(n - 1, "lambda") * (X - LAMBDA * (n - 1))
    if mode == "plain":
        if n == 0:
            return XPoly.const(1)
        return falling_factorial(n - 1, "plain") * (X - (n - 1))
    raise ValueError(f"unknown mode {mode!r}")


def lambda_scaled_falling(n: int, sign: int = 1) -> LPoly:
    """prod_{j=1}^{n-1} (lambda - j) for sign=+1, prod (j - lambda) for sign=-1.

    These are lambda**(n-1)(1)_{n,1/lambda} and (-lambda)**(n-1)(1)_{n,1/lambda}.
    """
    out = LPoly.const(1)
    for j in range(1, n):
        out = out * (LAMBDA - j if sign > 0 else j - LAMBDA)
    return out


def _exponent(a: Exponent) -> XPoly:
    if isinstance(a, str):
        if a != "x":
            raise ValueError(f"unknown exponent symbol {a!r}")
        return X
    if isinstance(a, XPoly):
        return a
    if isinstance(a, LPoly):
        return XPoly.const(a)
    return XPoly.const(Fraction(a))


def degenerate_exp(a: Exponent, N: int) -> Series:
    """e_lambda^a(t) = sum_n (a)_{n,lambda} t^n / n! to precision N.

    ``a`` may be a rational, the symbol ``"x"``, or any ring element.
    """
    if N < 0:
        raise ValueError("precision must be non-negative")
    a = _exponent(a)
    coeffs = [XPoly.const(1)]
    term = XPoly.const(1)
    for n in range(1, N + 1):
        term = (term * (a - LAMBDA * (n - 1))) / n
        coeffs.append(term)
    return Series(coeffs, N)


def degenerate_log(N: int) -> Series:
    """log_lambda(1 + t) as a delta series to precision N."""
    if N < 1:
        raise ValueError("degenerate_log needs precision >= 1")
    coeffs = [XPoly()]
    for n in range(1, N + 1):
        coeffs.append(XPoly.const(lambda_scaled_falling(n, +1) / factorial(n)))
    return Series(coeffs, N)


def degenerate_polylog(k: int, N: int) -> Series:
    """Li_{k,lambda}(u) as a delta series in u to precision N, for any integer k."""
    if N < 1:
        raise ValueError("degenerate_polylog needs precision >= 1")
    coeffs = [XPoly()]
    for n in range(1, N + 1):
        c = lambda_scaled_falling(n, -1) / factorial(n - 1)
        c = c * Fraction(n) ** (-k)
        coeffs.append(XPoly.const(c))
    return Series(coeffs, N)


def negate_argument(S: Series) -> Series:
    """S(-t)."""
    return Series([c if n % 2 == 0 else -c for n, c in enumerate(S.coeffs)], S.precision)


@dataclass(frozen=True)
class StirlingTable:
    """Triangular table S(n, k), 0 <= k <= n <= size, of LPoly entries."""

    kind: str
    entries: tuple

    @property
    def size(self) -> int:
        return len(self.entries) - 1

    def __call__(self, n: int, k: int) -> LPoly:
        if n < 0 or n > self.size:
            raise IndexError(f"row {n} outside table of size {self.size}")
        if k < 0 or k > n:
            return LPoly()
        return self.entries[n][k]

    def with_entry(self, n: int, k: int, value: LPoly) -> "StirlingTable":
        rows = [list(r) for r in self.entries]
        rows[n][k] = value
        return StirlingTable(self.kind, tuple(tuple(r) for r in rows))


@lru_cache(maxsize=None)
def stirling_lambda(kind: str, N: int) -> StirlingTable:
    """Degenerate Stirling numbers by extraction from powers of a delta series.

    second: (1/k!)(e_lambda(t) - 1)^k = sum_n S_{2,lambda}(n,k) t^n/n!
    first:  (1/k!)(log_lambda(1+t))^k = sum_n S_{1,lambda}(n,k) t^n/n!
    """
    if N < 0:
        raise ValueError("table size must be non-negative")
    prec = max(N, 1)
    if kind == "second":
        base = degenerate_exp(1, prec) - 1
    elif kind == "first":
        base = degenerate_log(prec)
    else:
        raise ValueError(f"unknown Stirling kind {kind!r}")
    rows = [[LPoly() for _ in range(n + 1)] for n in range(N + 1)]
    power = Series.const(1, prec)
    for k in range(N + 1):
        for n in range(k, N + 1):
            c = power.coeffs[n]
            rows[n][k] = c.constant() * Fraction(factorial(n), factorial(k))
        power = power * base
    return StirlingTable(kind, tuple(tuple(r) for r in rows))


def polylog_of_one_minus_exp(k: int, N: int) -> Series:
    """Li_{k,lambda}(1 - e_lambda(-t)) to precision N."""
    inner = -(negate_argument(degenerate_exp(1, N)) - 1)
    return series_compose(degenerate_polylog(k, N), inner)
