"""Exact Gaussian rationals Q(i).

Real parameters are plain :class:`fractions.Fraction` values (aliased as
``Rat``); complex ones are :class:`GaussRat`.  Nothing here ever touches a
float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

Rat = Fraction

__all__ = [
    "Rat",
    "GaussRat",
    "I",
    "ZERO",
    "ONE",
    "as_gauss",
    "as_rat",
    "conj",
    "inverse",
    "is_unit_modulus",
    "sign",
    "parse_scalar",
    "parse_rat",
    "format_scalar",
]


class GaussRat:
    """x + y i with exact rational x, y.  Immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRat):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    @classmethod
    def _make(cls, re, im):
        z = object.__new__(cls)
        object.__setattr__(z, "re", re)
        object.__setattr__(z, "im", im)
        return z

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    def __reduce__(self):
        return (GaussRat, (self.re, self.im))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat._make(self.re + other.re, self.im + other.im)
        if isinstance(other, Rational):
            return GaussRat._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussRat):
            return GaussRat._make(self.re - other.re, self.im - other.im)
        if isinstance(other, Rational):
            return GaussRat._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Rational):
            return GaussRat._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b:
                return GaussRat._make(a * c, a * d)
            if not d:
                return GaussRat._make(a * c, b * c)
            return GaussRat._make(a * c - b * d, a * d + b * c)
        if isinstance(other, Rational):
            return GaussRat._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussRat._make(self.re / other, self.im / other)
        if isinstance(other, GaussRat):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return self.inverse() * other
        return NotImplemented

    def __neg__(self):
        return GaussRat._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self):
        return GaussRat._make(self.re, -self.im)

    def norm(self):
        """|q|^2 as a Fraction."""
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussRat._make(self.re / n, -self.im / n)

    @property
    def is_real(self):
        return self.im == 0

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRat({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


ZERO = GaussRat._make(Fraction(0), Fraction(0))
ONE = GaussRat._make(Fraction(1), Fraction(0))
I = GaussRat._make(Fraction(0), Fraction(1))


def as_gauss(x):
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return GaussRat(x)


def as_rat(x):
    """Coerce to Fraction, rejecting anything with an imaginary part."""
    if isinstance(x, GaussRat):
        if x.im:
            raise ValueError(f"expected a real value, got {x}")
        return x.re
    if isinstance(x, str):
        return as_rat(parse_scalar(x))
    return _frac(x)


def conj(q):
    if isinstance(q, GaussRat):
        return q.conj()
    return q


def inverse(q):
    return as_gauss(q).inverse()


def is_unit_modulus(q):
    return as_gauss(q).norm() == 1


def sign(x):
    x = as_rat(x)
    return (x > 0) - (x < 0)


# -- textual form "a/b+c/d*i" ----------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"""^\s*
    (?:(?P<re>[+-]?\s*{_RAT})(?![\d/])(?!\s*\*?\s*i))?  # real part
    \s*
    (?:(?P<isign>[+-])?\s*(?P<im>{_RAT})?\s*\*?\s*i)?  # imaginary part
    \s*$""",
    re.VERBOSE,
)


def parse_scalar(text):
    """Parse "3", "-1/2", "3/5+4/5*i", "1*i", "i", "(0/1+1/1*i)"."""
    try:
        return _parse_scalar(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in scalar: {text!r}") from None


def _parse_scalar(text):
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    m = _SCALAR_RE.match(s)
    if not m or not s.strip():
        raise ValueError(f"malformed scalar: {text!r}")
    re_part = m.group("re")
    re_val = Fraction(re_part.replace(" ", "")) if re_part else Fraction(0)
    has_im = m.group("im") is not None or m.group("isign") is not None or s.rstrip().endswith("i")
    if not has_im:
        if re_part is None:
            raise ValueError(f"malformed scalar: {text!r}")
        return GaussRat._make(re_val, Fraction(0))
    if m.group("im") and "*" not in s:
        # a magnitude must be joined to i by "*": "3*i", not "3i" or "3 i"
        raise ValueError(f"malformed scalar: {text!r}")
    im_val = Fraction(m.group("im")) if m.group("im") else Fraction(1)
    if m.group("isign") == "-":
        im_val = -im_val
    elif m.group("isign") is None and re_part is not None:
        # "3 i" style juxtaposition is not accepted
        raise ValueError(f"malformed scalar: {text!r}")
    return GaussRat._make(re_val, im_val)


def parse_rat(text):
    return as_rat(parse_scalar(text))


def format_scalar(q):
    q = as_gauss(q)
    if q.im == 0:
        return str(q.re)
    im = f"{abs(q.im)}*i"
    if q.re == 0:
        return ("-" if q.im < 0 else "") + im
    return f"{q.re}{'-' if q.im < 0 else '+'}{im}"
