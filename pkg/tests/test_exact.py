import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import lpolys, small_rats, xpolys
from lambda_umbral.degen import falling_factorial
from lambda_umbral.families import bernoulli_order
from lambda_umbral.exact import (
    LAMBDA,
    X,
    LPoly,
    XPoly,
    eval_lambda,
    lpoly_arith,
    lpoly_from_json,
    lpoly_to_json,
    parse_rat,
    rat_arith,
    xpoly_from_json,
    xpoly_shift_eval,
    xpoly_to_json,
)


def test_rat_arith_examples():
    assert rat_arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert rat_arith(Fraction(3, 4), Fraction(0), "mul") == 0
    with pytest.raises(ZeroDivisionError):
        rat_arith(Fraction(1), Fraction(0), "div")


def test_rat_normalization():
    q = Fraction(2, 4)
    assert (q.numerator, q.denominator) == (1, 2)
    q = parse_rat("-6/4")
    assert (q.numerator, q.denominator) == (-3, 2)


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-1/2", Fraction(-1, 2)), ("10/4", Fraction(5, 2))])
def test_parse_rat(text, value):
    assert parse_rat(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "1.5", "a/b", "1//2", "--1"])
def test_parse_rat_rejects(bad):
    with pytest.raises(ValueError):
        parse_rat(bad)


def test_lpoly_examples():
    assert lpoly_arith(1 - LAMBDA, 1 + LAMBDA, "mul") == LPoly([1, 0, -1])
    p = LPoly([3, 1, 4])
    assert lpoly_arith(p, LPoly(), "add") == p
    q = (LAMBDA - 1) * (LAMBDA - 2)
    assert eval_lambda(XPoly.const(q), 0) == 2


def test_zero_lpoly_is_empty():
    assert LPoly([0, 0]).coeffs == ()
    assert (LAMBDA - LAMBDA).coeffs == ()
    assert XPoly([LPoly(), 0]).coeffs == ()


def test_eval_lambda_examples():
    p = X + (LAMBDA - 1) / 2
    assert eval_lambda(p, 0) == X - Fraction(1, 2)
    assert eval_lambda(XPoly.const((1 - LAMBDA * LAMBDA) / 6), 1) == 0


def test_eval_lambda_beta2_is_classical_b2():
    beta2 = bernoulli_order(1, 2).eval_x(0)
    assert beta2 == (1 - LAMBDA * LAMBDA) / 6
    # oracle: classical Bernoulli numbers from t/(e^t - 1) by exact series division
    e_minus_1_over_t = [Fraction(1, _fact(n + 1)) for n in range(4)]
    b = [Fraction(1)]
    for n in range(1, 3):
        b.append(-sum(e_minus_1_over_t[j] * b[n - j] for j in range(1, n + 1)))
    assert eval_lambda(XPoly.const(beta2), 0) == b[2] * 2


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def test_shift_eval_examples():
    from lambda_umbral.families import derangement_order

    assert xpoly_shift_eval(derangement_order(1, 1), 1) == 1
    p = XPoly([LPoly([5, 1]), 3, LAMBDA])
    assert xpoly_shift_eval(p, 0) == p.constant()
    assert falling_factorial(2).eval_x(LAMBDA) == 0


@settings(max_examples=1000, deadline=None)
@given(small_rats, small_rats, small_rats)
def test_rat_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a and a + b == b + a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=1000, deadline=None)
@given(lpolys, lpolys, lpolys)
def test_lpoly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a and a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert a - a == LPoly()


@settings(max_examples=1000, deadline=None)
@given(xpolys, xpolys, xpolys)
def test_xpoly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a and a + b == b + a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=300, deadline=None)
@given(xpolys, xpolys, small_rats)
def test_eval_lambda_is_homomorphism(p, q, lam):
    assert eval_lambda(p * q, lam) == eval_lambda(p, lam) * eval_lambda(q, lam)
    assert eval_lambda(p + q, lam) == eval_lambda(p, lam) + eval_lambda(q, lam)


@settings(max_examples=200, deadline=None)
@given(xpolys, small_rats, small_rats)
def test_shift_composes(p, a, b):
    assert p.shift(a).shift(b) == p.shift(a + b)
    assert p.shift(a).eval_x(0) == p.eval_x(a)


@given(xpolys)
def test_json_round_trip(p):
    doc = json.dumps(xpoly_to_json(p))
    assert xpoly_from_json(json.loads(doc)) == p
    for c in p.coeffs:
        assert lpoly_from_json(lpoly_to_json(c)) == c


def test_json_form():
    p = X * X - LAMBDA * X + Fraction(1, 2)
    assert xpoly_to_json(p) == [["1/2"], ["0", "-1"], ["1"]]


def test_immutable():
    with pytest.raises(AttributeError):
        LAMBDA.coeffs = ()
    with pytest.raises(AttributeError):
        X.coeffs = ()


def test_pickle_round_trip():
    import pickle

    p = X * LAMBDA + 3
    assert pickle.loads(pickle.dumps(p)) == p


def test_text_rendering():
    assert str(LPoly([1, 0, -1])) == "-λ^2 + 1"
    assert str(X * X - LAMBDA * X) == "x^2 + (-λ)*x"
    assert str(XPoly()) == "0"
    assert (X - Fraction(1, 2)).latex() == r"x - \frac{1}{2}"


@given(st.integers(-50, 50), st.integers(1, 50))
def test_lpoly_scalar_division(a, b):
    p = LPoly([a, b])
    assert (p / b) * b == p
