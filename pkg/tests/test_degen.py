from fractions import Fraction

import pytest
import sympy as sp
from sympy.functions.combinatorial.numbers import stirling as sym_stirling

from conftest import from_sympy, lam_sym, x_sym
from lambda_umbral.degen import (
    degenerate_exp,
    degenerate_log,
    degenerate_polylog,
    falling_factorial,
    lambda_scaled_falling,
    negate_argument,
    stirling_lambda,
)
from lambda_umbral.exact import LAMBDA, X, LPoly, XPoly
from lambda_umbral.series import Series, coefficient_extract, series_invert_delta


def test_falling_factorial_examples():
    assert falling_factorial(0) == 1
    assert falling_factorial(2) == X * X - LAMBDA * X
    assert falling_factorial(3, "plain") == X**3 - 3 * X * X + 2 * X
    with pytest.raises(ValueError):
        falling_factorial(2, "rising")


@pytest.mark.parametrize("n", range(8))
def test_falling_factorial_specializations(n):
    p = falling_factorial(n)
    assert p.eval_lambda(1) == falling_factorial(n, "plain")
    assert p.eval_lambda(0) == X**n
    assert p.degree == n and p.leading() == 1


def test_degenerate_exp_examples():
    E = degenerate_exp(1, 4)
    assert coefficient_extract(E, 2) == 1 - LAMBDA
    assert degenerate_exp(0, 5) == Series.const(1, 5)
    assert coefficient_extract(degenerate_exp("x", 3), 1) == X


def test_degenerate_log_examples():
    L = degenerate_log(6)
    assert L[1] == 1
    assert coefficient_extract(L, 2) == LAMBDA - 1
    assert [L[n].eval_lambda(0).constant() for n in range(1, 5)] == [1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4)]


@pytest.mark.parametrize("N", [1, 2, 5, 10])
def test_degenerate_log_is_inverse_of_exp(N):
    assert degenerate_log(N) == series_invert_delta(degenerate_exp(1, N) - 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_scaled_falling_identity(n):
    # lambda^{n-1} (1)_{n,1/lambda} and (-lambda)^{n-1} (1)_{n,1/lambda}, via sympy with 1/lam
    base = sp.prod([1 - j / lam_sym for j in range(n)])
    assert from_sympy(sp.cancel(lam_sym ** (n - 1) * base)) == XPoly.const(lambda_scaled_falling(n, +1))
    assert from_sympy(sp.cancel((-lam_sym) ** (n - 1) * base)) == XPoly.const(lambda_scaled_falling(n, -1))


def test_polylog_examples():
    for k in (-2, 0, 1, 5):
        assert degenerate_polylog(k, 3)[1] == 1
    assert degenerate_polylog(2, 4)[2] == XPoly.const((1 - LAMBDA) / 4)
    N = 9
    assert degenerate_polylog(1, N) == -negate_argument(degenerate_log(N))


@pytest.mark.parametrize("k", range(-2, 4))
def test_polylog_classical_limit(k):
    Li = degenerate_polylog(k, 10)
    for n in range(1, 11):
        assert Li[n].eval_lambda(0) == Fraction(n) ** (-k)


def _basis_oracle(n_max, source, target):
    """Coefficients of source(n) in the basis target(l), by triangular elimination in sympy."""
    rows = []
    for n in range(n_max + 1):
        rem = sp.expand(source(n))
        row = [sp.Integer(0)] * (n + 1)
        for l in range(n, -1, -1):
            c = sp.expand(rem.coeff(x_sym, l)) if l else sp.expand(rem.subs(x_sym, 0))
            row[l] = c
            rem = sp.expand(rem - c * target(l))
        assert rem == 0
        rows.append(row)
    return rows


def _lam_ff(n):
    return sp.prod([x_sym - j * lam_sym for j in range(n)]) if n else sp.Integer(1)


def _plain_ff(n):
    return sp.prod([x_sym - j for j in range(n)]) if n else sp.Integer(1)


def test_stirling_examples():
    S2, S1 = stirling_lambda("second", 4), stirling_lambda("first", 4)
    assert S2(2, 1) == 1 - LAMBDA
    assert S2(3, 2) == 3 * (1 - LAMBDA) and S2(3, 2)(0) == 3
    assert S1(2, 1) == LAMBDA - 1 and S1(2, 1)(0) == -1


def test_stirling_match_basis_conversion_oracle():
    N = 7
    second = _basis_oracle(N, _lam_ff, _plain_ff)
    first = _basis_oracle(N, _plain_ff, _lam_ff)
    S2, S1 = stirling_lambda("second", N), stirling_lambda("first", N)
    for n in range(N + 1):
        for k in range(n + 1):
            assert XPoly.const(S2(n, k)) == from_sympy(second[n][k])
            assert XPoly.const(S1(n, k)) == from_sympy(first[n][k])


def test_stirling_table_invariants():
    N = 9
    for kind, classical_signed in (("second", False), ("first", True)):
        S = stirling_lambda(kind, N)
        assert S(0, 0) == 1
        for n in range(1, N + 1):
            assert S(n, n) == 1 and S(n, 0) == 0
            for k in range(n + 1):
                want = sym_stirling(n, k, kind=1 if kind == "first" else 2, signed=classical_signed)
                assert S(n, k)(0) == Fraction(int(want))
        assert S(3, 5) == 0
        with pytest.raises(IndexError):
            S(N + 1, 0)


def test_stirling_inversion():
    N = 12
    S2, S1 = stirling_lambda("second", N), stirling_lambda("first", N)
    for n in range(N + 1):
        for j in range(n + 1):
            total = LPoly()
            for l in range(j, n + 1):
                total = total + S2(n, l) * S1(l, j)
            assert total == (1 if n == j else 0)


def test_stirling_cached_and_immutable():
    assert stirling_lambda("second", 6) is stirling_lambda("second", 6)
    T = stirling_lambda("second", 3)
    bad = T.with_entry(2, 1, LPoly([7]))
    assert bad(2, 1) == 7 and T(2, 1) == 1 - LAMBDA
    with pytest.raises(Exception):
        T.kind = "first"
    with pytest.raises(ValueError):
        stirling_lambda("third", 3)
