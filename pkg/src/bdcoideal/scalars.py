"""Exact Gaussian-rational arithmetic.

Every scalar in this package is an element of Q(i): a pair of
arbitrary-precision rationals.  There is no floating point anywhere;
equality is always exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Fraction
Scalarish = Union["GaussRational", Fraction, int]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussRational:
    """A number a + b*i with a, b exact rationals."""

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: Fraction | int = 0, im: Fraction | int = 0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("GaussRational is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(x: Scalarish) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        return GaussRational(x)

    @staticmethod
    def from_string(s: str) -> "GaussRational":
        """Parse strings like '3', '-1/2', '2i', '1/2-3/4i', 'i'."""
        text = s.strip().replace(" ", "")
        if not text:
            raise ValueError("empty scalar string")
        if not text.endswith("i"):
            return GaussRational(Fraction(text))
        body = text[:-1]
        # split off a real part, if any: scan for a +/- that is not leading
        # and not part of a fraction.
        split = -1
        for k in range(1, len(body)):
            if body[k] in "+-" and body[k - 1] not in "+-/":
                split = k
        if split == -1:
            re_part, im_part = "0", body
        else:
            re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return GaussRational(Fraction(re_part), Fraction(im_part))

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_imaginary(self) -> bool:
        return not self.re

    def is_unit_like(self) -> bool:
        """True for 1, -1, i, -i."""
        return self in (ONE, MINUS_ONE, I, MINUS_I)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: Scalarish) -> "GaussRational":
        o = GaussRational.of(other)
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Scalarish) -> "GaussRational":
        o = GaussRational.of(other)
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalarish) -> "GaussRational":
        return GaussRational.of(other) - self

    def __neg__(self) -> "GaussRational":
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other: Scalarish) -> "GaussRational":
        o = GaussRational.of(other)
        if not self.im and not o.im:
            return GaussRational(self.re * o.re)
        return GaussRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalarish) -> "GaussRational":
        o = GaussRational.of(other)
        if not self.im and not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussRational(self.re / o.re)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other: Scalarish) -> "GaussRational":
        return GaussRational.of(other) / self

    def inverse(self) -> "GaussRational":
        return ONE / self

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- formatting ------------------------------------------------------

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        im = f"{self.im}i"
        if not self.re:
            return im
        sign = "+" if self.im >= 0 else ""
        return f"{self.re}{sign}{im}"

    def __repr__(self) -> str:
        return f"GaussRational({self.re!r}, {self.im!r})"


ZERO = GaussRational(0)
ONE = GaussRational(1)
MINUS_ONE = GaussRational(-1)
I = GaussRational(0, 1)
MINUS_I = GaussRational(0, -1)

UNITS = (ONE, I, MINUS_ONE, MINUS_I)


def gauss(re: Fraction | int = 0, im: Fraction | int = 0) -> GaussRational:
    """Shorthand constructor."""
    return GaussRational(re, im)
