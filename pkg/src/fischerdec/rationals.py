"""Exact scalar arithmetic: complex numbers with rational real/imaginary parts.

All symbolic paths in this package keep coefficients in QQ(i), represented as
a pair of ``fractions.Fraction``.  Floats appear only at the point where a
caller explicitly asks for a numeric rendering.  A narrow pi enclosure is
provided so that inequalities mixing exact rationals with powers of pi can be
certified without floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

RationalLike = Union[int, Fraction]

# 40-digit enclosure of pi; wide enough for every certified comparison here,
# all of which carry percent-level slack.
PI_LO = Fraction("3.1415926535897932384626433832795028841971")
PI_HI = Fraction("3.1415926535897932384626433832795028841972")


class RationalComplex:
    """A complex number a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> "RationalComplex":
        if isinstance(value, RationalComplex):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value, 0)
        raise TypeError(f"cannot coerce {type(value).__name__} to RationalComplex")

    def __add__(self, other):
        other = RationalComplex.coerce(other)
        return RationalComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = RationalComplex.coerce(other)
        return RationalComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return RationalComplex.coerce(other) - self

    def __mul__(self, other):
        other = RationalComplex.coerce(other)
        return RationalComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalComplex.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero RationalComplex")
        return RationalComplex(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        return RationalComplex.coerce(other) / self

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def conjugate(self) -> "RationalComplex":
        return RationalComplex(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def real_fraction(self) -> Fraction:
        if self.im != 0:
            raise ValueError(f"value {self!r} has a nonzero imaginary part")
        return self.re

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, RationalComplex):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __float__(self) -> float:
        return float(self.real_fraction())

    def __repr__(self):
        if self.im == 0:
            return f"RationalComplex({self.re})"
        return f"RationalComplex({self.re}, {self.im})"


def format_fraction(value: Fraction) -> str:
    """Canonical decimal-free string for a rational ("3", "-5/2")."""
    return str(Fraction(value))


def parse_fraction(text: str) -> Fraction:
    return Fraction(str(text))


def fraction_sqrt(value: Fraction) -> Fraction:
    """Exact square root of a rational; raises if it is irrational."""
    if value < 0:
        raise ValueError("square root of a negative rational")
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError(f"{value} is not a perfect rational square")
    return Fraction(rn, rd)


def _pi_power_interval(coeff: Fraction, pi_exp: int) -> tuple[Fraction, Fraction]:
    if pi_exp == 0:
        return coeff, coeff
    lo_pow = PI_LO**pi_exp if pi_exp > 0 else 1 / PI_HI ** (-pi_exp)
    hi_pow = PI_HI**pi_exp if pi_exp > 0 else 1 / PI_LO ** (-pi_exp)
    if coeff >= 0:
        return coeff * lo_pow, coeff * hi_pow
    return coeff * hi_pow, coeff * lo_pow


def certified_leq_with_pi(
    lhs_coeff: Fraction,
    lhs_pi_exp: int,
    rhs_coeff: Fraction,
    rhs_pi_exp: int,
) -> bool:
    """Decide lhs_coeff*pi^a <= rhs_coeff*pi^b using the pi enclosure.

    Raises ArithmeticError when the enclosure is too coarse to decide, which
    cannot happen for the percent-level margins this package certifies.
    """
    lhs_lo, lhs_hi = _pi_power_interval(Fraction(lhs_coeff), lhs_pi_exp)
    rhs_lo, rhs_hi = _pi_power_interval(Fraction(rhs_coeff), rhs_pi_exp)
    if lhs_hi <= rhs_lo:
        return True
    if lhs_lo > rhs_hi:
        return False
    raise ArithmeticError(
        "pi enclosure cannot separate "
        f"{lhs_coeff}*pi^{lhs_pi_exp} and {rhs_coeff}*pi^{rhs_pi_exp}"
    )
