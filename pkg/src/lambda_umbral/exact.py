"""Exact coefficient rings: Q, Q[lambda] and Q[lambda][x].

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator). :class:`LPoly` is a dense polynomial in the deformation
parameter lambda; :class:`XPoly` is a dense polynomial in ``x`` whose
coefficients are :class:`LPoly`. All values are immutable.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "Rat",
    "LPoly",
    "XPoly",
    "LAMBDA",
    "X",
    "rat_arith",
    "lpoly_arith",
    "eval_lambda",
    "xpoly_shift_eval",
    "parse_rat",
    "format_rat",
    "rat_to_json",
    "rat_from_json",
    "lpoly_to_json",
    "lpoly_from_json",
    "xpoly_to_json",
    "xpoly_from_json",
]

Rat = Fraction
Scalar = Union[int, Fraction]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text: str) -> Fraction:
    """Parse the ``p/q`` (or ``p``) grammar. Raises ValueError on anything else."""
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}; expected p or p/q")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"malformed rational {text!r}; zero denominator")
    return Fraction(num, den)


def format_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    a, b = Fraction(a), Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _strip(cs: list) -> tuple:
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


def _integer_form(coeffs) -> tuple:
    """Numerators over the least common denominator of ``coeffs``."""
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


class LPoly:
    """Dense polynomial in lambda with rational coefficients.

    ``coeffs[i]`` is the coefficient of lambda**i; the zero polynomial
    stores an empty tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _strip([Fraction(c) for c in coeffs]))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "LPoly":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "LPoly":
        c = Fraction(c)
        return cls._raw((c,) if c else ())

    def __setattr__(self, name, value):
        raise AttributeError("LPoly is immutable")

    def __reduce__(self):
        return (LPoly, (self.coeffs,))

    @property
    def degree(self) -> int:
        """Degree in lambda; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, LPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == LPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("LPoly", self.coeffs)))
        return self._hash

    def __add__(self, other) -> "LPoly":
        other = _as_lpoly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LPoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self) -> "LPoly":
        return LPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "LPoly":
        other = _as_lpoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LPoly":
        other = _as_lpoly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LPoly._raw(())
        if len(a) == 1:
            return other.scale(a[0])
        if len(b) == 1:
            return self.scale(b[0])
        # integer convolution over a common denominator, one gcd per output coefficient
        na, da = _integer_form(a)
        nb, db = _integer_form(b)
        acc = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(na):
            if ai:
                for j, bj in enumerate(nb):
                    acc[i + j] += ai * bj
        den = da * db
        return LPoly._raw(_strip([Fraction(c, den) for c in acc]))

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "LPoly":
        if not c:
            return LPoly._raw(())
        if c == 1:
            return self
        return LPoly._raw(tuple(x * c for x in self.coeffs))

    def __truediv__(self, c) -> "LPoly":
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("LPoly division by zero")
        return self.scale(1 / Fraction(c))

    def __pow__(self, e: int) -> "LPoly":
        if e < 0:
            raise ValueError("negative power of LPoly")
        out, base = LPoly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, lam: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * lam + c
        return acc

    def __repr__(self) -> str:
        return f"LPoly({[format_rat(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return _poly_str(self.coeffs, "λ", format_rat)

    def latex(self) -> str:
        return _poly_latex(self.coeffs, r"\lambda")


class XPoly:
    """Dense polynomial in x with :class:`LPoly` coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            c = _as_lpoly(c)
            if c is None:
                raise TypeError("XPoly coefficients must be LPoly or rational")
            cs.append(c)
        object.__setattr__(self, "coeffs", _strip(cs))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "XPoly":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def const(cls, c) -> "XPoly":
        c = _as_lpoly(c)
        return cls._raw((c,) if c else ())

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    def __reduce__(self):
        return (XPoly, (self.coeffs,))

    @property
    def degree(self) -> int:
        """Degree in x; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_x_free(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> LPoly:
        return self.coeffs[0] if self.coeffs else LPoly._raw(())

    def leading(self) -> LPoly:
        return self.coeffs[-1] if self.coeffs else LPoly._raw(())

    def coeff(self, i: int) -> LPoly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else LPoly._raw(())

    def rational_constant(self):
        """The value as a rational if it is free of x and lambda, else None."""
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1 and self.coeffs[0].is_constant():
            return self.coeffs[0].constant()
        return None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, LPoly)):
            return self == XPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("XPoly", self.coeffs)))
        return self._hash

    def __add__(self, other) -> "XPoly":
        other = _as_xpoly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not b:
            return self
        if not a:
            return other
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return XPoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self) -> "XPoly":
        return XPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "XPoly":
        other = _as_xpoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "XPoly":
        other = _as_xpoly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "XPoly":
        if isinstance(other, (int, Fraction, LPoly)):
            return self.scale(other)
        if not isinstance(other, XPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return XPoly._raw(())
        if len(a) == 1:
            return other.scale(a[0])
        if len(b) == 1:
            return self.scale(b[0])
        out = [LPoly._raw(())] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return XPoly._raw(_strip(out))

    __rmul__ = __mul__

    def scale(self, c) -> "XPoly":
        if isinstance(c, LPoly):
            if not c:
                return XPoly._raw(())
            if c.is_constant():
                c = c.constant()
            else:
                return XPoly._raw(_strip([a * c for a in self.coeffs]))
        if not c:
            return XPoly._raw(())
        if c == 1:
            return self
        return XPoly._raw(tuple(a.scale(c) for a in self.coeffs))

    def __truediv__(self, c) -> "XPoly":
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("XPoly division by zero")
        return self.scale(1 / Fraction(c))

    def __pow__(self, e: int) -> "XPoly":
        if e < 0:
            raise ValueError("negative power of XPoly")
        out, base = XPoly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def eval_lambda(self, lam: Scalar) -> "XPoly":
        return XPoly._raw(_strip([LPoly.const(c(lam)) for c in self.coeffs]))

    def eval_x(self, a) -> LPoly:
        """Substitute x := a (a rational or an LPoly)."""
        acc = LPoly._raw(())
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def shift(self, a) -> "XPoly":
        """p(x + a) by Horner evaluation at x + a."""
        lin = XPoly([a, 1])
        acc = XPoly._raw(())
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def rational_coeffs(self) -> tuple:
        """Coefficients as rationals; requires a lambda-free polynomial."""
        out = []
        for c in self.coeffs:
            if not c.is_constant():
                raise ValueError("polynomial still depends on lambda")
            out.append(c.constant())
        return tuple(out)

    def __repr__(self) -> str:
        return f"XPoly({[[format_rat(c) for c in lp.coeffs] for lp in self.coeffs]})"

    def __str__(self) -> str:
        return _xpoly_str(self.coeffs)

    def latex(self) -> str:
        return _xpoly_latex(self.coeffs)


def _as_lpoly(v):
    if isinstance(v, LPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return LPoly.const(v)
    return None


def _as_xpoly(v):
    if isinstance(v, XPoly):
        return v
    lp = _as_lpoly(v)
    return None if lp is None else XPoly.const(lp)


LAMBDA = LPoly([0, 1])
X = XPoly([0, 1])


def lpoly_arith(p: LPoly, q: LPoly, op: str) -> LPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def eval_lambda(p: XPoly, lam: Scalar) -> XPoly:
    """Specialize lambda to a rational; the result has lambda-free coefficients."""
    return p.eval_lambda(Fraction(lam))


def xpoly_shift_eval(p: XPoly, a: Scalar) -> LPoly:
    """Substitute x := a, leaving an element of Q[lambda]."""
    return p.eval_x(Fraction(a))


# --- text / LaTeX rendering -------------------------------------------------


def _monomial(var: str, i: int) -> str:
    if i == 0:
        return ""
    return var if i == 1 else f"{var}^{i}"


def _poly_str(coeffs: Sequence[Fraction], var: str, fmt) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = _monomial(var, i)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{fmt(mag)}*{mono}"
        else:
            body = fmt(mag)
        terms.append((sign, body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _latex_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"


def _poly_latex(coeffs: Sequence[Fraction], var: str) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{{{i}}}")
        mag = abs(c)
        body = mono if (mono and mag == 1) else _latex_rat(mag) + mono
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _xpoly_str(coeffs: Sequence[LPoly]) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = _monomial("x", i)
        if c.is_constant():
            sign = "-" if c.constant() < 0 else "+"
            mag = abs(c.constant())
            body = mono if (mono and mag == 1) else (f"{format_rat(mag)}*{mono}" if mono else format_rat(mag))
        else:
            sign = "+"
            body = f"({c})*{mono}" if mono else f"({c})"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _xpoly_latex(coeffs: Sequence[LPoly]) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{{{i}}}")
        if c.is_constant():
            sign = "-" if c.constant() < 0 else "+"
            mag = abs(c.constant())
            body = mono if (mono and mag == 1) else _latex_rat(mag) + mono
        else:
            sign = "+"
            body = rf"\left({c.latex()}\right){mono}" if mono else rf"\left({c.latex()}\right)"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# --- canonical JSON form ----------------------------------------------------


def rat_to_json(q: Fraction) -> str:
    return format_rat(Fraction(q))


def rat_from_json(s: str) -> Fraction:
    return parse_rat(s)


def lpoly_to_json(p: LPoly) -> list:
    return [format_rat(c) for c in p.coeffs]


def lpoly_from_json(data: Sequence[str]) -> LPoly:
    return LPoly(parse_rat(s) for s in data)


def xpoly_to_json(p: XPoly) -> list:
    return [lpoly_to_json(c) for c in p.coeffs]


def xpoly_from_json(data: Sequence[Sequence[str]]) -> XPoly:
    return XPoly(lpoly_from_json(c) for c in data)
