"""Exact verifiers for the representation identities of degenerate poly-Bernoulli
polynomials.

Each verifier builds a left-hand side from the family generating series
(:mod:`lambda_umbral.families`) and a right-hand side from closed sums over
degenerate Stirling numbers and lambda-Sheffer machinery
(:mod:`lambda_umbral.degen`, :mod:`lambda_umbral.umbral`), then subtracts
exactly. Numbers such as B_{m,lambda}^{(k)} and values at x = 1 that enter a
right-hand side are taken from the Sheffer-pair route, never from the
generating series used for the left-hand side.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional

from .degen import (
    degenerate_exp,
    degenerate_log,
    degenerate_polylog,
    falling_factorial,
    lambda_scaled_falling,
    negate_argument,
    stirling_lambda,
)
from .exact import LPoly, XPoly
from .families import FamilySpec, bernoulli_order, derangement_order, family_member, family_pair, poly_bernoulli
from .series import Series, series_compose, series_div, series_invert_delta
from .umbral import ShefferPair, lambda_diff_op, lambda_functional, sheffer_polynomial

__all__ = [
    "IDENTITY_IDS",
    "ParamGrid",
    "VerificationReport",
    "verify",
    "verify_all",
    "aggregate_status",
    "eq35_adjudication",
    "derangement_expansion_coefficients",
    "derangement_reconstruct",
]

StirlingSource = Callable[[str, int], object]


@dataclass(frozen=True)
class ParamGrid:
    n_max: int = 10
    ks: tuple = (-2, -1, 0, 1, 2, 3)
    rs: tuple = (1, 2, 3)
    ss: tuple = (1, 2, 3)
    ys: tuple = (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(-2))

    def as_dict(self) -> dict:
        return {
            "n": [0, self.n_max],
            "k": list(self.ks),
            "r": list(self.rs),
            "s": list(self.ss),
        }


@dataclass
class VerificationReport:
    identity_id: str
    params: dict
    status: str = "pass"
    checked: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        from .exact import xpoly_to_json

        return {
            "identity_id": self.identity_id,
            "params": self.params,
            "status": self.status,
            "checked": self.checked,
            "witnesses": [
                {"params": dict(p), "difference": xpoly_to_json(d)} for p, d in self.witnesses
            ],
        }


class _Context:
    """Per-run caches for right-hand-side ingredients (Sheffer route only)."""

    def __init__(self, grid: ParamGrid, stirling: Optional[StirlingSource]):
        self.grid = grid
        self.N = grid.n_max
        self._stirling = stirling or stirling_lambda
        self._pairs: dict = {}
        self._seq: dict = {}

    def S2(self, size: int):
        return self._stirling("second", size)

    def S1(self, size: int):
        return self._stirling("first", size)

    def pair(self, family: str, param: int) -> ShefferPair:
        key = (family, param)
        if key not in self._pairs:
            self._pairs[key] = family_pair(FamilySpec(family, param), max(self.N, 1))
        return self._pairs[key]

    def seq(self, family: str, param: int, n: int) -> XPoly:
        """S_n for the family's Sheffer pair, via the Sheffer generating series."""
        key = (family, param, n)
        if key not in self._seq:
            self._seq[key] = sheffer_polynomial(self.pair(family, param), n)
        return self._seq[key]

    def value(self, family: str, param: int, n: int, x) -> LPoly:
        if n < 0:
            return LPoly()
        return self.seq(family, param, n).eval_x(x)


# --- individual identities --------------------------------------------------
# Each generator yields (params, lhs, rhs).


def _thm1(ctx: _Context):
    """S_n = sum_j (1/j!) <(1/g(fbar)) fbar^j | (x)_n> (x)_j for several pairs."""
    N = max(ctx.N, 1)
    cases = [("poly_bernoulli", k) for k in ctx.grid.ks]
    cases += [("bernoulli_order", r) for r in ctx.grid.rs]
    cases += [("derangement_order", r) for r in ctx.grid.rs]
    t = Series.variable(N)
    generic = [
        ("falling", ShefferPair(Series.const(1, N), t), lambda n: falling_factorial(n, "lambda")),
        ("plain_falling", ShefferPair(Series.const(1, N), degenerate_exp(1, N) - 1),
         lambda n: falling_factorial(n, "plain")),
    ]
    runs = [
        (f"{fam}({p})", ctx.pair(fam, p), (lambda n, fam=fam, p=p: family_member(FamilySpec(fam, p), n)))
        for fam, p in cases
    ] + generic
    for label, pair, lhs_fn in runs:
        fbar = series_invert_delta(pair.f.truncate(N))
        inv_g = series_div(Series.const(1, N), series_compose(pair.g.truncate(N), fbar))
        terms = [inv_g]
        for _ in range(N):
            terms.append(terms[-1] * fbar)
        for n in range(ctx.N + 1):
            ff_n = falling_factorial(n, "lambda")
            rhs = XPoly()
            for j in range(n + 1):
                c = lambda_functional(terms[j], ff_n) / factorial(j)
                rhs = rhs + falling_factorial(j, "lambda") * c
            yield {"pair": label, "n": n}, lhs_fn(n), rhs


def _cor2(ctx: _Context):
    for k in ctx.grid.ks:
        for n in range(ctx.N + 1):
            rhs = XPoly()
            for j in range(n + 1):
                rhs = rhs + falling_factorial(j) * (ctx.value("poly_bernoulli", k, n - j, 0) * comb(n, j))
            yield {"k": k, "n": n}, poly_bernoulli(k, n), rhs


def _thm3(ctx: _Context):
    S2, S1 = ctx.S2(ctx.N), ctx.S1(ctx.N)
    for k in ctx.grid.ks:
        for n in range(ctx.N + 1):
            rhs = XPoly()
            for l in range(n + 1):
                s2 = S2(n, l)
                if not s2:
                    continue
                for m in range(l + 1):
                    b = ctx.value("poly_bernoulli", k, m, 0)
                    if not b:
                        continue
                    for j in range(l - m + 1):
                        c = s2 * S1(l, j + m) * b * comb(j + m, m)
                        if c:
                            rhs = rhs + falling_factorial(j) * c
            yield {"k": k, "n": n}, poly_bernoulli(k, n), rhs


def _thm4(ctx: _Context):
    S2 = ctx.S2(ctx.N + 1)
    for k in ctx.grid.ks:
        for n in range(ctx.N + 1):
            rhs = XPoly()
            for l in range(n + 1):
                inner = LPoly()
                top = n - l + 1
                for m in range(1, top + 1):
                    # lambda^{m-1} (1)_{m,1/lambda} = prod_{i=1}^{m-1} (lambda - i)
                    w = Fraction((-1) ** (n - l) * comb(n, l), top) * Fraction(m) ** (1 - k)
                    inner = inner + lambda_scaled_falling(m, +1) * S2(top, m) * w
                if inner:
                    rhs = rhs + ctx.seq("bernoulli_order", 1, l) * inner
            yield {"k": k, "n": n}, poly_bernoulli(k, n), rhs


def _thm5(ctx: _Context):
    S2 = ctx.S2(ctx.N + max(ctx.grid.ss, default=0))
    for k in ctx.grid.ks:
        for s in ctx.grid.ss:
            for n in range(ctx.N + 1):
                rhs = XPoly()
                for m in range(n + 1):
                    inner = LPoly()
                    for l in range(n - m + 1):
                        w = Fraction(comb(n - m, l), comb(l + s, s))
                        inner = inner + S2(l + s, s) * ctx.value("poly_bernoulli", k, n - m - l, 0) * w
                    if inner:
                        rhs = rhs + ctx.seq("bernoulli_order", s, m) * (inner * comb(n, m))
                yield {"k": k, "s": s, "n": n}, poly_bernoulli(k, n), rhs


def derangement_expansion_coefficients(p: XPoly, r: int) -> tuple:
    """C_m = (1/m!) <(1-t)^r e_lambda(t) t^m | p>_lambda, m = 0..deg p."""
    d = p.degree
    if d < 0:
        return ()
    N = d
    t = Series.variable(N)
    base = (1 - t) ** r * degenerate_exp(1, N)
    out = []
    term = base
    for m in range(d + 1):
        out.append(lambda_functional(term, p) / factorial(m))
        term = term * t
    return tuple(out)


def derangement_reconstruct(coeffs, r: int) -> XPoly:
    out = XPoly()
    for m, c in enumerate(coeffs):
        if c:
            out = out + derangement_order(r, m) * c
    return out


def _random_polys(n: int, count: int, seed: int) -> list:
    rng = random.Random(seed * 1009 + n)
    polys = []
    for _ in range(count):
        coeffs = []
        for i in range(n + 1):
            lam_deg = rng.randint(0, 2)
            coeffs.append(LPoly(Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(lam_deg + 1)))
        if not coeffs[-1]:
            coeffs[-1] = LPoly.const(1)
        polys.append(XPoly(coeffs))
    return polys


def _thm6_7(ctx: _Context, orders):
    for r in orders:
        for n in range(ctx.N + 1):
            polys = [("B(k=%d)" % k, poly_bernoulli(k, n)) for k in ctx.grid.ks]
            polys += [(f"random#{i}", p) for i, p in enumerate(_random_polys(n, 3, r))]
            for label, p in polys:
                rhs = derangement_reconstruct(derangement_expansion_coefficients(p, r), r)
                yield {"r": r, "n": n, "p": label}, p, rhs


def _thm6(ctx: _Context):
    yield from _thm6_7(ctx, (1,))


def _thm7(ctx: _Context):
    yield from _thm6_7(ctx, ctx.grid.rs)


def _thm8(ctx: _Context):
    for k in ctx.grid.ks:
        for r in ctx.grid.rs:
            for n in range(ctx.N + 1):
                rhs = XPoly()
                for m in range(n + 1):
                    inner = LPoly()
                    for j in range(r + 1):
                        w = comb(r, j) * (-1) ** j * comb(n - m, j) * factorial(j)
                        if w:
                            inner = inner + ctx.value("poly_bernoulli", k, n - m - j, 1) * w
                    if inner:
                        rhs = rhs + ctx.seq("derangement_order", r, m) * (inner * comb(n, m))
                yield {"k": k, "r": r, "n": n}, poly_bernoulli(k, n), rhs


def _eq40(ctx: _Context):
    for r in ctx.grid.rs:
        for n in range(ctx.N + 1):
            rhs = XPoly()
            for m in range(n + 1):
                inner = LPoly()
                for j in range(r + 1):
                    w = comb(r, j) * comb(n - m, j) * factorial(j) * (-1) ** j
                    if w:
                        inner = inner + ctx.value("derangement_order", 1, n - m - j, 1) * w
                if inner:
                    rhs = rhs + ctx.seq("derangement_order", r, m) * (inner * comb(n, m))
            yield {"r": r, "n": n}, derangement_order(1, n), rhs


def _eq35(ctx: _Context, first_at: int, second_at: int):
    """B_n = sum_l (C(n,l) B_{n-l}(a) - n C(n-1,l) B_{n-l-1}(b)) d_l(x)."""
    for k in ctx.grid.ks:
        for n in range(ctx.N + 1):
            rhs = XPoly()
            for l in range(n + 1):
                c = ctx.value("poly_bernoulli", k, n - l, first_at) * comb(n, l)
                if l < n:
                    c = c - ctx.value("poly_bernoulli", k, n - l - 1, second_at) * (n * comb(n - 1, l))
                if c:
                    rhs = rhs + ctx.seq("derangement_order", 1, l) * c
            yield {"k": k, "n": n}, poly_bernoulli(k, n), rhs


def _eq7(ctx: _Context):
    for n in range(ctx.N + 1):
        yield {"n": n}, poly_bernoulli(1, n), bernoulli_order(1, n)


def _family_cases(ctx: _Context):
    cases = [FamilySpec("poly_bernoulli", k) for k in ctx.grid.ks]
    cases += [FamilySpec("bernoulli_order", r) for r in ctx.grid.rs]
    cases += [FamilySpec("derangement_order", r) for r in ctx.grid.rs]
    return cases


def _eq19(ctx: _Context):
    t = Series.variable(max(ctx.N, 1))
    for spec in _family_cases(ctx):
        for n in range(1, ctx.N + 1):
            lhs = lambda_diff_op(t, family_member(spec, n))
            yield {"family": spec.family, "param": spec.param, "n": n}, lhs, family_member(spec, n - 1) * n


def _eq16(ctx: _Context):
    """(e_lambda^y(t))_lambda S_n(x) = S_n(x + y)."""
    for y in ctx.grid.ys:
        ey = degenerate_exp(y, ctx.N)
        for n in range(ctx.N + 1):
            yield {"family": "falling", "y": str(y), "n": n}, lambda_diff_op(ey, falling_factorial(n)), \
                falling_factorial(n).shift(y)
        for spec in _family_cases(ctx):
            for n in range(ctx.N + 1):
                p = family_member(spec, n)
                yield {"family": spec.family, "param": spec.param, "y": str(y), "n": n}, \
                    lambda_diff_op(ey, p), p.shift(y)


def _stirling_inversion(ctx: _Context):
    """(x)_{n,lambda} = sum_j (sum_l S2(n,l) S1(l,j)) (x)_{j,lambda}."""
    S2, S1 = ctx.S2(ctx.N), ctx.S1(ctx.N)
    for n in range(ctx.N + 1):
        rhs = XPoly()
        for j in range(n + 1):
            c = LPoly()
            for l in range(j, n + 1):
                c = c + S2(n, l) * S1(l, j)
            if c:
                rhs = rhs + falling_factorial(j) * c
        yield {"n": n}, falling_factorial(n), rhs


def _li1_log(ctx: _Context):
    """Li_{1,lambda}(u) = -log_lambda(1 - u), coefficientwise."""
    N = max(ctx.N, 1)
    li = degenerate_polylog(1, N)
    rhs = -negate_argument(degenerate_log(N))
    for n in range(ctx.N + 1):
        yield {"n": n}, li.coeffs[n], rhs.coeffs[n]


_VERIFIERS = {
    "cor2": _cor2,
    "eq16": _eq16,
    "eq19": _eq19,
    "eq35_corrected": lambda ctx: _eq35(ctx, 1, 1),
    "eq35_variant_a": lambda ctx: _eq35(ctx, 0, 1),
    "eq35_variant_b": lambda ctx: _eq35(ctx, 0, 0),
    "eq40": _eq40,
    "eq7": _eq7,
    "li1_log": _li1_log,
    "stirling_inversion": _stirling_inversion,
    "thm1": _thm1,
    "thm3": _thm3,
    "thm4": _thm4,
    "thm5": _thm5,
    "thm6": _thm6,
    "thm7": _thm7,
    "thm8": _thm8,
}

IDENTITY_IDS = tuple(sorted(_VERIFIERS))


def _coerce_grid(params) -> ParamGrid:
    if params is None:
        return ParamGrid()
    if isinstance(params, ParamGrid):
        return params
    if isinstance(params, int):
        return ParamGrid(n_max=params)
    kw = dict(params)
    for key in ("ks", "rs", "ss", "ys"):
        if key in kw:
            kw[key] = tuple(kw[key])
    return ParamGrid(**kw)


def _witness_key(params: dict):
    rest = tuple(
        (k, (0, v, "") if isinstance(v, int) else (1, 0, str(v))) for k, v in sorted(params.items()) if k != "n"
    )
    return (params.get("n", 0), rest)


def verify(identity_id: str, params=None, *, stirling: Optional[StirlingSource] = None,
           _ctx: Optional[_Context] = None) -> VerificationReport:
    """Check one identity over a parameter grid; failures carry the exact difference."""
    if identity_id not in _VERIFIERS:
        raise KeyError(f"unknown identity {identity_id!r}; choose from {', '.join(IDENTITY_IDS)}")
    grid = _coerce_grid(params)
    ctx = _ctx or _Context(grid, stirling)
    report = VerificationReport(identity_id, grid.as_dict())
    for p, lhs, rhs in _VERIFIERS[identity_id](ctx):
        report.checked += 1
        diff = lhs - rhs
        if diff:
            report.witnesses.append((p, diff if isinstance(diff, XPoly) else XPoly.const(diff)))
    report.witnesses.sort(key=lambda w: _witness_key(w[0]))
    report.status = "fail" if report.witnesses else "pass"
    return report


EQ35_PAIR = ("eq35_variant_a", "eq35_variant_b")


def eq35_adjudication(reports) -> dict:
    """Which of the two printed eq35 variants holds, given their reports."""
    by_id = {r.identity_id: r for r in reports}
    passing = [i for i in EQ35_PAIR if i in by_id and by_id[i].passed]
    out = {"passing_variants": passing, "conclusive": len(passing) == 1}
    if "eq35_corrected" in by_id:
        out["corrected_form_holds"] = by_id["eq35_corrected"].passed
    return out


def aggregate_status(reports) -> bool:
    """True iff everything passes, counting the eq35 pair as one item that
    passes when exactly one of its variants does."""
    ok = True
    for r in reports:
        if r.identity_id in EQ35_PAIR:
            continue
        ok = ok and r.passed
    if any(r.identity_id in EQ35_PAIR for r in reports):
        ok = ok and eq35_adjudication(reports)["conclusive"]
    return ok


def verify_all(n_max: int = 10, k_set=(-2, -1, 0, 1, 2, 3), r_set=(1, 2, 3), s_set=(1, 2, 3), *,
               ids=None, stirling: Optional[StirlingSource] = None) -> list:
    grid = ParamGrid(n_max=n_max, ks=tuple(k_set), rs=tuple(r_set), ss=tuple(s_set))
    ctx = _Context(grid, stirling)
    return [verify(i, grid, _ctx=ctx) for i in (ids or IDENTITY_IDS)]
