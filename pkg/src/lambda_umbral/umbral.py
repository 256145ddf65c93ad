"""lambda-umbral calculus: functionals, operators and lambda-Sheffer sequences.

Polynomials are acted on through their expansion in the basis of
lambda-falling factorials (x)_{n,lambda}. For a series
F(t) = sum_k a_k t^k / k!:

    <F | (x)_{n,lambda}>       = a_n
    (F)_lambda (x)_{n,lambda}  = sum_k C(n,k) a_k (x)_{n-k,lambda}

A lambda-Sheffer sequence for the pair (g, f) is generated by
(1 / g(fbar(t))) e_lambda^x(fbar(t)), fbar the compositional inverse of f.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Optional, Sequence

from .degen import degenerate_exp, falling_factorial
from .exact import LPoly, XPoly
from .series import (
    Series,
    SeriesError,
    coefficient_extract,
    series_compose,
    series_div,
    series_invert_delta,
)

__all__ = [
    "ShefferPair",
    "FFExpansion",
    "OrthogonalityReport",
    "to_ff_basis",
    "lambda_functional",
    "lambda_diff_op",
    "sheffer_series",
    "sheffer_polynomial",
    "orthogonality_check",
    "connection_coefficients",
    "expand_in_sheffer_basis",
]


@dataclass(frozen=True)
class ShefferPair:
    """A pair (g, f): g invertible, f a delta series with rational slope."""

    g: Series
    f: Series
    name: str = field(default="", compare=False)

    def __post_init__(self):
        g0 = self.g.coeffs[0].rational_constant()
        if g0 is None or g0 == 0:
            raise SeriesError(f"g(0) = {self.g.coeffs[0]} is not an invertible rational")
        if self.f.precision < 1 or self.f.coeffs[0]:
            raise SeriesError("f must be a delta series (zero constant term)")
        f1 = self.f.coeffs[1].rational_constant()
        if f1 is None or f1 == 0:
            raise SeriesError(f"f'(0) = {self.f.coeffs[1]} is not a nonzero rational")
        if not (self.g.is_x_free() and self.f.is_x_free()):
            raise SeriesError("Sheffer pair series must not depend on x")

    @property
    def precision(self) -> int:
        return min(self.g.precision, self.f.precision)


@dataclass(frozen=True)
class FFExpansion:
    """p(x) = sum_j coeffs[j] * (x)_{j,lambda}."""

    coeffs: tuple

    def reconstruct(self) -> XPoly:
        out = XPoly()
        for j, c in enumerate(self.coeffs):
            if c:
                out = out + falling_factorial(j, "lambda") * c
        return out


def to_ff_basis(p: XPoly) -> FFExpansion:
    """Triangular change of basis from x**i to (x)_{j,lambda}."""
    d = p.degree
    if d < 0:
        return FFExpansion(())
    coeffs = [LPoly()] * (d + 1)
    rem = p
    for j in range(d, -1, -1):
        c = rem.coeff(j)
        coeffs[j] = c
        if c:
            rem = rem - falling_factorial(j, "lambda") * c
    return FFExpansion(tuple(coeffs))


def _scalar_coeffs(F: Series, upto: int) -> list:
    if F.precision < upto:
        raise SeriesError(f"series precision {F.precision} < polynomial degree {upto}")
    out = []
    for k in range(upto + 1):
        a = coefficient_extract(F, k)
        if not a.is_x_free():
            raise SeriesError("functional/operator series must not depend on x")
        out.append(a.constant())
    return out


def lambda_functional(F: Series, p: XPoly) -> LPoly:
    """<F | p>_lambda."""
    ff = to_ff_basis(p).coeffs
    if not ff:
        return LPoly()
    a = _scalar_coeffs(F, len(ff) - 1)
    out = LPoly()
    for c, ak in zip(ff, a):
        if c and ak:
            out = out + c * ak
    return out


def lambda_diff_op(F: Series, p: XPoly) -> XPoly:
    """(F)_lambda applied to p."""
    ff = to_ff_basis(p).coeffs
    if not ff:
        return XPoly()
    a = _scalar_coeffs(F, len(ff) - 1)
    out_ff = [LPoly()] * len(ff)
    for n, c in enumerate(ff):
        if not c:
            continue
        for k in range(n + 1):
            if a[k]:
                out_ff[n - k] = out_ff[n - k] + c * a[k] * comb(n, k)
    return FFExpansion(tuple(out_ff)).reconstruct()


@lru_cache(maxsize=256)
def _inverse_of_f(f: Series) -> Series:
    return series_invert_delta(f)


@lru_cache(maxsize=256)
def sheffer_series(pair: ShefferPair) -> Series:
    """(1/g(fbar(t))) e_lambda^x(fbar(t)) to the pair's precision."""
    N = pair.precision
    fbar = _inverse_of_f(pair.f.truncate(N))
    g_fbar = series_compose(pair.g.truncate(N), fbar)
    exp_fbar = series_compose(degenerate_exp("x", N), fbar)
    return series_div(exp_fbar, g_fbar)


def sheffer_polynomial(pair: ShefferPair, n: int) -> XPoly:
    """The degree-n member S_{n,lambda}(x) of the lambda-Sheffer sequence for pair."""
    if n > pair.precision:
        raise SeriesError(f"pair precision {pair.precision} too low for degree {n}")
    return coefficient_extract(sheffer_series(pair), n)


@dataclass(frozen=True)
class OrthogonalityReport:
    passed: bool
    n_max: int
    first_failure: Optional[tuple] = None  # (n, k, got, expected)


def _g_times_f_powers(pair: ShefferPair, m_max: int) -> list:
    N = m_max
    if pair.precision < N:
        raise SeriesError(f"pair precision {pair.precision} < {N}")
    g, f = pair.g.truncate(N), pair.f.truncate(N)
    out = [g]
    for _ in range(m_max):
        out.append(out[-1] * f)
    return out


def orthogonality_check(pair: ShefferPair, S: Sequence[XPoly], n_max: int) -> OrthogonalityReport:
    """Check <g f^k | S_n>_lambda == n! delta_{n,k} for all n, k <= n_max."""
    if len(S) < n_max + 1:
        raise ValueError("sequence shorter than n_max + 1")
    funcs = _g_times_f_powers(pair, n_max)
    for n in range(n_max + 1):
        for k in range(n_max + 1):
            got = lambda_functional(funcs[k], S[n])
            expected = LPoly.const(factorial(n) if n == k else 0)
            if got != expected:
                return OrthogonalityReport(False, n_max, (n, k, got, expected))
    return OrthogonalityReport(True, n_max)


def connection_coefficients(source: ShefferPair, target: ShefferPair, n_max: int) -> tuple:
    """C[n][k] with S_n = sum_k C[n][k] r_k, S ~ source = (g, f), r ~ target = (h, l).

    C_{n,k} = (1/k!) < h(fbar)/g(fbar) * l(fbar)^k | (x)_{n,lambda} >_lambda.
    """
    N = n_max
    if source.precision < N or target.precision < N:
        raise SeriesError("pair precision below n_max")
    fbar = _inverse_of_f(source.f.truncate(N))
    g_fbar = series_compose(source.g.truncate(N), fbar)
    h_fbar = series_compose(target.g.truncate(N), fbar)
    l_fbar = series_compose(target.f.truncate(N), fbar)
    base = series_div(h_fbar, g_fbar)
    rows = [[LPoly() for _ in range(n + 1)] for n in range(N + 1)]
    term = base
    for k in range(N + 1):
        for n in range(k, N + 1):
            # <F | (x)_{n,lambda}> = n! [t^n] F
            c = term.coeffs[n]
            if not c.is_x_free():
                raise SeriesError("connection series depends on x")
            rows[n][k] = c.constant() * Fraction(factorial(n), factorial(k))
        if k < N:
            term = term * l_fbar
    return tuple(tuple(r) for r in rows)


def expand_in_sheffer_basis(p: XPoly, pair: ShefferPair) -> tuple:
    """Coefficients C_m with p = sum_m C_m S_{m,lambda}, C_m = <g f^m | p>/m!.

    The expansion is checked by reconstruction before it is returned.
    """
    d = p.degree
    if d < 0:
        return ()
    funcs = _g_times_f_powers(pair, d)
    coeffs = tuple(lambda_functional(funcs[m], p) / factorial(m) for m in range(d + 1))
    back = XPoly()
    for m, c in enumerate(coeffs):
        if c:
            back = back + sheffer_polynomial(pair, m) * c
    if back != p:
        raise ArithmeticError("Sheffer expansion failed to reconstruct its input")
    return coeffs
