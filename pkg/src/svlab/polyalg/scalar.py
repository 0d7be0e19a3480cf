"""Exact Gaussian rationals Q(i)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussScalar", "as_scalar", "ZERO", "ONE", "I"]


def _frac(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussScalar:
    """A number re + im*i with exact rational parts.

    Instances are treated as immutable. Equality with plain ints and
    Fractions works, and hashes agree with them when im == 0.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussScalar":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if type(other) is not GaussScalar:
            other = as_scalar(other)
        return GaussScalar._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussScalar:
            other = as_scalar(other)
        return GaussScalar._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return GaussScalar._make(-self.re, -self.im)

    def __mul__(self, other):
        if type(other) is not GaussScalar:
            other = as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussScalar._make(a * c, d)
            return GaussScalar._make(a * c, a * d)
        if not d:
            return GaussScalar._make(a * c, b * c)
        return GaussScalar._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussScalar":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return GaussScalar._make(1 / a, b)
        n = a * a + b * b
        return GaussScalar._make(a / n, -b / n)

    def __truediv__(self, other):
        if type(other) is not GaussScalar:
            other = as_scalar(other)
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero")
            return GaussScalar._make(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("only integer powers")
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "GaussScalar":
        return GaussScalar._make(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        if type(other) is GaussScalar:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- conversion -------------------------------------------------------
    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussScalar({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        return format_scalar(self)


def as_scalar(x) -> GaussScalar:
    if type(x) is GaussScalar:
        return x
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; pass GaussScalar")
    return GaussScalar(x, 0)


def _fmt_rat(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(c: GaussScalar) -> str:
    """Render in the polynomial grammar's coefficient syntax."""
    if not c.im:
        return _fmt_rat(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "(-i)"
        return f"({_fmt_rat(c.im)}i)"
    sign = "+" if c.im > 0 else "-"
    mag = abs(c.im)
    im_part = "i" if mag == 1 else f"{_fmt_rat(mag)}i"
    return f"({_fmt_rat(c.re)}{sign}{im_part})"


ZERO = GaussScalar(0, 0)
ONE = GaussScalar(1, 0)
I = GaussScalar(0, 1)
