"""Exact scalars in the field Q + Q*pi.

Every endpoint, shift and breakpoint used by the wavelet-set constructions is
of the form ``q1*pi + q0`` with rational ``q1`` and ``q0``.  Because pi is
transcendental such a value is zero iff both coefficients vanish, so equality
is structural; ordering is decided with a rational bracket of pi that is
refined until the sign is certain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from numbers import Rational
from typing import Union

__all__ = ["ExactScalar", "PI", "ZERO", "TWO_PI", "pi_bracket", "as_scalar", "floor_div"]

RationalLike = Union[int, Fraction]


def _arctan_inv(x: int, scale: int) -> int:
    """``arctan(1/x) * scale`` by the alternating Taylor series, integer arithmetic."""
    total = 0
    power = scale // x
    x2 = x * x
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k % 2 else term
        power //= x2
        k += 1
    return total


@lru_cache(maxsize=None)
def pi_bracket(digits: int = 40) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo < pi < hi`` and ``hi - lo = 3 * 10**-digits``.

    Machin's formula evaluated with guard digits; the truncation error of the
    integer series is far below one unit in the last kept digit.
    """
    guard = 20
    scale = 10 ** (digits + guard)
    approx = 4 * (4 * _arctan_inv(5, scale) - _arctan_inv(239, scale))
    p = approx // 10**guard
    den = 10**digits
    return Fraction(p - 1, den), Fraction(p + 2, den)


def _pi_sign_vs(x: Fraction) -> int:
    """Sign of ``pi - x`` for rational ``x``; never zero."""
    digits = 40
    while True:
        lo, hi = pi_bracket(digits)
        if x <= lo:
            return 1
        if x >= hi:
            return -1
        digits *= 2


def _frac(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected a rational, got {type(value).__name__}: {value!r}")


@total_ordering
@dataclass(frozen=True, slots=True)
class ExactScalar:
    """The real number ``pi_coeff * pi + rat_part``."""

    pi_coeff: Fraction = Fraction(0)
    rat_part: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "pi_coeff", _frac(self.pi_coeff))
        object.__setattr__(self, "rat_part", _frac(self.rat_part))

    @classmethod
    def pi(cls, coeff: RationalLike = 1) -> ExactScalar:
        return cls(_frac(coeff), Fraction(0))

    @classmethod
    def rational(cls, value: RationalLike) -> ExactScalar:
        return cls(Fraction(0), _frac(value))

    @property
    def is_rational(self) -> bool:
        return self.pi_coeff == 0

    def sign(self) -> int:
        q1, q0 = self.pi_coeff, self.rat_part
        if q1 == 0:
            return (q0 > 0) - (q0 < 0)
        # q1*pi + q0 = q1 * (pi - (-q0/q1))
        s = _pi_sign_vs(-q0 / q1)
        return s if q1 > 0 else -s

    def __add__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.pi_coeff + other.pi_coeff, self.rat_part + other.rat_part)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return ExactScalar(self.pi_coeff - other.pi_coeff, self.rat_part - other.rat_part)

    def __rsub__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> ExactScalar:
        return ExactScalar(-self.pi_coeff, -self.rat_part)

    def __abs__(self) -> ExactScalar:
        return -self if self.sign() < 0 else self

    def __mul__(self, other):
        if isinstance(other, ExactScalar):
            if other.is_rational:
                other = other.rat_part
            elif self.is_rational:
                return other * self.rat_part
            else:
                raise TypeError("product of two pi-multiples leaves Q + Q*pi")
        if isinstance(other, bool) or not isinstance(other, (int, Rational)):
            return NotImplemented
        q = Fraction(other)
        return ExactScalar(self.pi_coeff * q, self.rat_part * q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExactScalar):
            if not other.is_rational:
                raise TypeError("division by a pi-multiple leaves Q + Q*pi")
            other = other.rat_part
        if isinstance(other, bool) or not isinstance(other, (int, Rational)):
            return NotImplemented
        q = Fraction(other)
        if q == 0:
            raise ZeroDivisionError("ExactScalar division by zero")
        return ExactScalar(self.pi_coeff / q, self.rat_part / q)

    def __eq__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self.pi_coeff == other.pi_coeff and self.rat_part == other.rat_part

    def __hash__(self):
        return hash((self.pi_coeff, self.rat_part))

    def __lt__(self, other):
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def compare(self, other) -> int:
        """-1, 0 or 1 as ``self`` is less than, equal to or greater than ``other``."""
        return (self - as_scalar(other)).sign()

    def to_float(self) -> float:
        """Nearest double (rounding a 60-digit rational enclosure of the value)."""
        if self.pi_coeff == 0:
            return float(self.rat_part)
        lo, hi = pi_bracket(60)
        return float(self.pi_coeff * (lo + hi) / 2 + self.rat_part)

    __float__ = to_float

    def __bool__(self) -> bool:
        return self.pi_coeff != 0 or self.rat_part != 0

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def __str__(self) -> str:
        parts = []
        q1, q0 = self.pi_coeff, self.rat_part
        if q1:
            num, den = q1.numerator, q1.denominator
            head = "-" if num < 0 else ""
            mag = abs(num)
            core = "pi" if mag == 1 else f"{mag}pi"
            parts.append(head + core + (f"/{den}" if den != 1 else ""))
        if q0 or not parts:
            text = str(q0)
            if parts and q0 > 0:
                text = "+" + text
            parts.append(text)
        return "".join(parts)


def as_scalar(value, strict: bool = True):
    """Coerce ints, Fractions and ExactScalars; other types raise (or return NotImplemented)."""
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return ExactScalar(Fraction(0), Fraction(value))
    if strict:
        raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")
    return NotImplemented


def floor_div(x: ExactScalar, unit: ExactScalar) -> int:
    """Exact ``floor(x / unit)`` for ``unit > 0``."""
    if unit.sign() <= 0:
        raise ValueError("unit must be positive")
    estimate = x.to_float() / unit.to_float()
    k = math.floor(estimate) if math.isfinite(estimate) else 0
    while unit * k > x:
        k -= 1
    while unit * (k + 1) <= x:
        k += 1
    return k


ZERO = ExactScalar()
PI = ExactScalar.pi(1)
TWO_PI = ExactScalar.pi(2)
