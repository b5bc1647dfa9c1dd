"""Exact scalar arithmetic over the Gaussian rationals.

Every scalar in the toolkit is an element ``a + b*i`` of Q(i) with both
parts stored as :class:`fractions.Fraction`, so values are always in
lowest terms with positive denominators, equality is structural and no
operation ever rounds. Only the hypersymplectic machinery actually uses
the imaginary part; everything else stays inside the rational subfield,
and the arithmetic fast-paths that case.

Text form (used by all JSON I/O)::

    <rat>    = optional sign, decimal integer, optional "/" positive integer
    <scalar> = <rat> | <rat>(+|-)<rat>i | <rat>i

Examples: ``3``, ``-1/2``, ``2+1/3i``, ``1i``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?P<re>{_RAT})(?:(?P<sign>[+-])(?P<imtail>\d+(?:/\d+)?)i)?$|^(?P<im>{_RAT})i$"
)

_F0 = Fraction(0)
_F1 = Fraction(1)


class ScalarParseError(ValueError):
    """Raised when a string does not match the scalar grammar."""


class Scalar:
    """A Gaussian rational ``re + im*i``; treat instances as immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=_F0, im=_F0):
        if not isinstance(re, Fraction):
            re = Fraction(re)
        if not isinstance(im, Fraction):
            im = Fraction(im)
        self.re = re
        self.im = im

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_rational(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Scalar):
            return _new(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return _new(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return _new(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return _new(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return _new(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return _new(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Scalar):
            a, b = self.re, self.im
            c, d = other.re, other.im
            if not b and not d:
                return _new(a * c, _F0)
            return _new(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return _new(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return _new(self.re, -self.im)

    def norm(self) -> Fraction:
        """The field norm re^2 + im^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Scalar":
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("inverse of zero scalar")
            return _new(1 / self.re, _F0)
        n = self.norm()
        return _new(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            if not self.im and not other.im:
                if not other.re:
                    raise ZeroDivisionError("division by zero scalar")
                return _new(self.re / other.re, _F0)
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return _new(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(Fraction(other)) * self.inverse()
        return NotImplemented

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- text form -------------------------------------------------------

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"Scalar({self})"


def _new(re: Fraction, im: Fraction) -> Scalar:
    s = Scalar.__new__(Scalar)
    s.re = re
    s.im = im
    return s


ZERO = _new(_F0, _F0)
ONE = _new(_F1, _F0)
I = _new(_F0, _F1)


def rat(numerator: int, denominator: int = 1) -> Scalar:
    """Rational scalar numerator/denominator."""
    return Scalar(Fraction(numerator, denominator))


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical scalar grammar; raises ScalarParseError."""
    m = _SCALAR_RE.match(text.strip())
    if m is None:
        raise ScalarParseError(f"not a scalar: {text!r}")
    if m.group("im") is not None:
        return Scalar(_F0, Fraction(m.group("im")))
    re_part = Fraction(m.group("re"))
    if m.group("imtail") is None:
        return Scalar(re_part)
    im_part = Fraction(m.group("imtail"))
    if m.group("sign") == "-":
        im_part = -im_part
    return Scalar(re_part, im_part)


def fraction_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None when irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def scalar_sqrt(value: Scalar) -> Scalar | None:
    """Exact square root inside Q(i), or None when none exists.

    For z = a + bi a root p + qi must satisfy p^2 = (a + |z|)/2 and
    2pq = b, so existence reduces to two rational square tests.
    """
    if value.is_zero():
        return ZERO
    m = fraction_sqrt(value.norm())
    if m is None:
        return None
    p_sq = (value.re + m) / 2
    p = fraction_sqrt(p_sq)
    if p is None:
        return None
    if p:
        q = value.im / (2 * p)
        root = Scalar(p, q)
    else:
        q = fraction_sqrt(-value.re)
        if q is None:
            return None
        root = Scalar(_F0, q)
    return root if root * root == value else None
