from fractions import Fraction

import sympy as sp
from hypothesis import strategies as st

from lambda_umbral.exact import LPoly, XPoly
from lambda_umbral.series import Series

lam_sym, x_sym, t_sym = sp.symbols("lam x t")


def to_sympy(p):
    """XPoly / LPoly -> sympy expression in lam, x."""
    if isinstance(p, LPoly):
        return sum((sp.Rational(c.numerator, c.denominator) * lam_sym**i for i, c in enumerate(p.coeffs)),
                   sp.Integer(0))
    return sum((to_sympy(c) * x_sym**i for i, c in enumerate(p.coeffs)), sp.Integer(0))


def from_sympy(expr) -> XPoly:
    poly = sp.Poly(sp.expand(expr), x_sym, lam_sym)
    deg_x = poly.degree(x_sym) if not poly.is_zero else -1
    rows = []
    for i in range(deg_x + 1):
        c = sp.Poly(poly.as_expr().coeff(x_sym, i), lam_sym)
        cs = [Fraction(int(v.p), int(v.q)) for v in reversed(c.all_coeffs())]
        rows.append(LPoly(cs))
    return XPoly(rows)


small_rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
lpolys = st.lists(small_rats, max_size=4).map(LPoly)
xpolys = st.lists(lpolys, max_size=4).map(XPoly)


@st.composite
def series(draw, precision=None, x_free=False, max_precision=6):
    N = draw(st.integers(0, max_precision)) if precision is None else precision
    coeff = lpolys.map(XPoly.const) if x_free else st.lists(lpolys, max_size=2).map(XPoly)
    cs = draw(st.lists(coeff, min_size=N + 1, max_size=N + 1))
    return Series(cs, N)
