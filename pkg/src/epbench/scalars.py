"""Exact scalars: rationals and Gaussian rationals ``a + b*i`` with a, b in Q.

Rationals are :class:`fractions.Fraction`, which already keeps the canonical
form (positive denominator, reduced, zero as 0/1) after every operation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction

__all__ = [
    "Rational",
    "GaussianRational",
    "ScalarSyntaxError",
    "as_scalar",
    "parse_scalar",
    "format_scalar",
    "ZERO",
    "ONE",
    "I_UNIT",
]

_F0 = Fraction(0)
_F1 = Fraction(1)


class GaussianRational:
    """Immutable complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        # fast path: callers guarantee Fraction arguments
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, _F0)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def inverse(self) -> "GaussianRational":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("zero has no inverse")
            return GaussianRational._make(1 / a, _F0)
        n = a * a + b * b
        return GaussianRational._make(a / n, -b / n)

    def conj(self) -> "GaussianRational":
        if not self.im:
            return self
        return GaussianRational._make(self.re, -self.im)

    conjugate = conj

    def norm2(self) -> Fraction:
        """``x * conj(x)`` as a rational."""
        return self.re * self.re + self.im * self.im

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, _RationalABC)):
        return GaussianRational._make(Fraction(x), _F0)
    if isinstance(x, complex):
        return NotImplemented
    return NotImplemented


def as_scalar(x) -> GaussianRational:
    """Convert int/Fraction/GaussianRational/entry-grammar string to a scalar."""
    if isinstance(x, str):
        return parse_scalar(x)
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")
    return y


ZERO = GaussianRational._make(_F0, _F0)
ONE = GaussianRational._make(_F1, _F0)
I_UNIT = GaussianRational._make(_F0, _F1)


# text form -----------------------------------------------------------------


class ScalarSyntaxError(ValueError):
    """Malformed scalar text; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


_NUM = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"(?P<re>-?{_NUM})(?:(?P<sign>[+-])(?P<imb>{_NUM})?i)?"
    rf"|(?P<imo>-?(?:{_NUM})?)i"
)


def _num(text: str, whole: str, offset: int) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ScalarSyntaxError("zero denominator", whole, offset + len(num) + 1)
    return Fraction(int(num), int(den) if den else 1)


def _first_bad(text: str) -> int:
    # longest prefix that could still extend to a valid scalar
    probe = re.compile(rf"-?(?:{_NUM})?(?:[+-](?:{_NUM})?)?i?")
    m = probe.match(text)
    end = m.end() if m else 0
    # back off over a dangling '/' so the error points at it
    if end < len(text):
        return end
    return max(end - 1, 0)


def parse_scalar(text: str) -> GaussianRational:
    """Parse the entry grammar: ``0``, ``-3/2``, ``1/2+3/4i``, ``-2i``, ``i``."""
    m = _SCALAR_RE.fullmatch(text)
    if m is None:
        raise ScalarSyntaxError("malformed scalar", text, _first_bad(text) if text else 0)
    if m.group("re") is not None:
        re_part = _num(m.group("re").lstrip("-"), text, m.start("re") + m.group("re").startswith("-"))
        if m.group("re").startswith("-"):
            re_part = -re_part
        im_part = _F0
        if m.group("sign"):
            imb = m.group("imb")
            im_part = _num(imb, text, m.start("imb")) if imb else _F1
            if m.group("sign") == "-":
                im_part = -im_part
        return GaussianRational._make(re_part, im_part)
    imo = m.group("imo")
    neg = imo.startswith("-")
    digits = imo[1:] if neg else imo
    im_part = _num(digits, text, m.start("imo") + neg) if digits else _F1
    return GaussianRational._make(_F0, -im_part if neg else im_part)


def _fmt_frac(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar`; always emits the canonical spelling."""
    x = as_scalar(x)
    if not x.im:
        return _fmt_frac(x.re)
    im = _fmt_frac(abs(x.im))
    if not x.re:
        return f"-{im}i" if x.im < 0 else f"{im}i"
    sign = "-" if x.im < 0 else "+"
    return f"{_fmt_frac(x.re)}{sign}{im}i"
