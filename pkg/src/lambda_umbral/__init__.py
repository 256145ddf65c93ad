"""Degenerate special polynomials and lambda-umbral calculus in exact arithmetic."""
from .exact import LAMBDA, X, LPoly, XPoly
from .families import bernoulli_order, derangement_order, poly_bernoulli
from .series import Series

__all__ = ["LAMBDA", "X", "LPoly", "XPoly", "Series", "poly_bernoulli", "bernoulli_order", "derangement_order"]
__version__ = "0.1.0"
