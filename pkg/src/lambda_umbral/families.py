"""Polynomial families defined by exponential generating functions.

    poly_bernoulli(k):    Li_{k,lambda}(1 - e_lambda(-t)) / (e_lambda(t) - 1) * e_lambda^x(t)
    bernoulli_order(r):   (t / (e_lambda(t) - 1))^r * e_lambda^x(t)
    derangement_order(r): (1 - t)^(-r) * e_lambda^{-1}(t) * e_lambda^x(t)

Each member is n! [t^n] of its generating series; the "number" variant is
the member evaluated at x = 0.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

from .degen import degenerate_exp, polylog_of_one_minus_exp
from .exact import LPoly, XPoly
from .series import Series, coefficient_extract, series_div
from .umbral import ShefferPair

__all__ = [
    "FAMILIES",
    "FamilySpec",
    "family_generating_series",
    "family_member",
    "family_number",
    "family_pair",
    "poly_bernoulli",
    "bernoulli_order",
    "derangement_order",
    "falling_pair",
]

FAMILIES = ("poly_bernoulli", "bernoulli_order", "derangement_order")


@dataclass(frozen=True)
class FamilySpec:
    """A family together with its integer parameter (k for poly-Bernoulli, r otherwise)."""

    family: str
    param: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family != "poly_bernoulli" and self.param < 1:
            raise ValueError("order r must be a positive integer")


def _x_free_factor(spec: FamilySpec, N: int) -> Series:
    """The generating series divided by e_lambda^x(t), to precision N."""
    M = N + 1
    t = Series.variable(M)
    em1 = degenerate_exp(1, M) - 1
    if spec.family == "poly_bernoulli":
        return series_div(polylog_of_one_minus_exp(spec.param, M), em1)
    if spec.family == "bernoulli_order":
        return series_div(t, em1) ** spec.param
    one_minus_t = (1 - t).truncate(N)
    return series_div(Series.const(1, N), one_minus_t ** spec.param) * degenerate_exp(-1, N)


_cache: dict = {}
_cache_lock = threading.Lock()


def family_generating_series(spec: FamilySpec, N: int) -> Series:
    """The truncated generating series of a family, precision exactly N."""
    if N < 0:
        raise ValueError("precision must be non-negative")
    hit = _cache.get(spec)
    if hit is not None and hit.precision >= N:
        return hit.truncate(N)
    gf = _x_free_factor(spec, N) * degenerate_exp("x", N)
    with _cache_lock:
        cur = _cache.get(spec)
        if cur is None or cur.precision < N:
            _cache[spec] = gf
    return gf


def family_member(spec: FamilySpec, n: int) -> XPoly:
    return coefficient_extract(family_generating_series(spec, n), n)


def family_number(spec: FamilySpec, n: int) -> LPoly:
    return family_member(spec, n).eval_x(0)


def poly_bernoulli(k: int, n: int) -> XPoly:
    """B_{n,lambda}^{(k)}(x)."""
    return family_member(FamilySpec("poly_bernoulli", k), n)


def bernoulli_order(r: int, n: int) -> XPoly:
    """beta_{n,lambda}^{(r)}(x)."""
    return family_member(FamilySpec("bernoulli_order", r), n)


def derangement_order(r: int, n: int) -> XPoly:
    """d_{n,lambda}^{(r)}(x)."""
    return family_member(FamilySpec("derangement_order", r), n)


def family_pair(spec: FamilySpec, N: int) -> ShefferPair:
    """The lambda-Sheffer pair (g, t) of a family, both series at precision N.

    g is the reciprocal of the x-free factor of the generating series.
    """
    M = N + 1
    t = Series.variable(N)
    em1 = degenerate_exp(1, M) - 1
    if spec.family == "poly_bernoulli":
        g = series_div(em1, polylog_of_one_minus_exp(spec.param, M))
    elif spec.family == "bernoulli_order":
        g = series_div(em1, Series.variable(M)) ** spec.param
    else:
        g = (1 - t) ** spec.param * degenerate_exp(1, N)
    name = f"{spec.family}({spec.param})"
    return ShefferPair(g, t, name)


def falling_pair(N: int) -> ShefferPair:
    """(1, t), whose sequence is (x)_{n,lambda}."""
    return ShefferPair(Series.const(1, N), Series.variable(N), "falling")
