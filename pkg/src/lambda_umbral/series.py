"""Truncated formal power series in t over Q[lambda][x].

A :class:`Series` of precision ``N`` is known modulo t**(N+1) and stores
exactly ``N + 1`` coefficients. Binary operations produce the minimum of
the operand precisions; division loses one order per unit of cancelled
valuation.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable

from .exact import LPoly, XPoly, xpoly_from_json, xpoly_to_json

__all__ = [
    "Series",
    "SeriesError",
    "series_arith",
    "series_div",
    "series_compose",
    "series_invert_delta",
    "coefficient_extract",
]

_ZERO = XPoly()


class SeriesError(ValueError):
    """Raised when a series operation's precondition fails."""


class Series:
    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs: Iterable, precision: int | None = None):
        cs = [c if isinstance(c, XPoly) else XPoly.const(c) for c in coeffs]
        if precision is None:
            precision = len(cs) - 1
        if precision < 0:
            raise SeriesError("precision must be non-negative")
        cs = cs[: precision + 1]
        cs.extend([_ZERO] * (precision + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "precision", precision)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Series":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "precision", len(coeffs) - 1)
        return obj

    @classmethod
    def const(cls, c, precision: int) -> "Series":
        return cls([c], precision)

    @classmethod
    def variable(cls, precision: int) -> "Series":
        """The series t."""
        return cls([0, 1], precision)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    def __getitem__(self, n: int) -> XPoly:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, precision: int) -> "Series":
        if precision > self.precision:
            raise SeriesError(
                f"cannot raise precision from {self.precision} to {precision}"
            )
        return Series._raw(self.coeffs[: precision + 1])

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if zero to precision."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_x_free(self) -> bool:
        return all(c.is_x_free() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.precision == other.precision and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Series", self.coeffs))

    def __add__(self, other) -> "Series":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = min(self.precision, other.precision) + 1
        return Series._raw(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Series":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction, LPoly, XPoly)):
            return Series._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Series):
            return NotImplemented
        N = min(self.precision, other.precision)
        a, b = self.coeffs, other.coeffs
        out = [_ZERO] * (N + 1)
        for i in range(N + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(N + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return Series._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Series":
        if e < 0:
            raise SeriesError("negative power; use series_div")
        out, base = Series.const(1, self.precision), self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __truediv__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Series):
            return series_div(self, other)
        return NotImplemented

    def __rtruediv__(self, other) -> "Series":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return series_div(other, self)

    def compose(self, inner: "Series") -> "Series":
        return series_compose(self, inner)

    def _coerce(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction, LPoly, XPoly)):
            return Series.const(other, self.precision)
        return None

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"Series([{body}], precision={self.precision})"

    def to_json(self) -> dict:
        return {"precision": self.precision, "coeffs": [xpoly_to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Series":
        return cls([xpoly_from_json(c) for c in data["coeffs"]], data["precision"])


def series_arith(A: Series, B: Series, op: str) -> Series:
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A * B
    raise ValueError(f"unknown operation {op!r}")


def series_div(A: Series, B: Series) -> Series:
    """A / B after cancelling the common power t**v, v = valuation(B).

    The reduced leading coefficient of B must be a nonzero rational.
    Result precision is ``min(prec A, prec B) - v``.
    """
    v = B.valuation()
    if v is None:
        raise SeriesError("division by a series that vanishes to its precision")
    va = A.valuation()
    if va is not None and va < v:
        raise SeriesError(
            f"not a power series quotient: valuation {va} of numerator < {v} of denominator"
        )
    N = min(A.precision, B.precision) - v
    if N < 0:
        raise SeriesError("insufficient precision for the quotient")
    lead = B.coeffs[v].rational_constant()
    if lead is None or lead == 0:
        raise SeriesError(
            f"reduced leading coefficient {B.coeffs[v]} of the denominator is not an invertible rational"
        )
    inv = 1 / lead
    a = A.coeffs[v:]
    b = B.coeffs[v:]
    q: list[XPoly] = []
    for n in range(N + 1):
        acc = a[n]
        for j in range(1, n + 1):
            if b[j] and q[n - j]:
                acc = acc - b[j] * q[n - j]
        q.append(acc.scale(inv))
    return Series._raw(tuple(q))


def series_compose(A: Series, D: Series) -> Series:
    """A(D(t)) for a delta series D, by Horner evaluation."""
    if D.coeffs[0]:
        raise SeriesError("inner series of a composition must have zero constant term")
    N = min(A.precision, D.precision)
    inner = D.truncate(N)
    acc = Series.const(A.coeffs[N], N)
    for i in range(N - 1, -1, -1):
        acc = acc * inner
        acc = Series._raw((acc.coeffs[0] + A.coeffs[i],) + acc.coeffs[1:])
    return acc


def series_invert_delta(D: Series) -> Series:
    """Compositional inverse of a delta series, by order-by-order matching."""
    if D.coeffs[0]:
        raise SeriesError("compositional inverse requires zero constant term")
    if D.precision < 1:
        raise SeriesError("compositional inverse needs precision >= 1")
    lin = D.coeffs[1].rational_constant()
    if lin is None:
        raise SeriesError(
            f"linear coefficient {D.coeffs[1]} depends on lambda or x; only rational slopes are invertible"
        )
    if lin == 0:
        raise SeriesError("linear coefficient is zero; not a delta series")
    inv = 1 / lin
    N = D.precision
    g = [_ZERO, XPoly.const(inv)]
    for n in range(2, N + 1):
        partial = Series._raw(tuple(g) + (_ZERO,))
        c = series_compose(D.truncate(n), partial).coeffs[n]
        g.append((-c).scale(inv))
    return Series._raw(tuple(g[: N + 1]))


def coefficient_extract(A: Series, n: int) -> XPoly:
    """n! times the coefficient of t**n (the exponential-GF normalization)."""
    if n < 0 or n > A.precision:
        raise SeriesError(f"index {n} outside precision {A.precision}")
    return A.coeffs[n].scale(factorial(n))
