"""Exact complex numbers from cyclotomic fields ``Q(zeta_n)``.

Unimodular coefficients such as ``exp(i*pi*p/q)``, ``cos(pi/6)`` or
``i*sin(pi/4)`` all live in some ``Q(zeta_n)``; keeping them there lets the
Coefficient Criterion decide unitarity with exact equality.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

__all__ = ["Cyclotomic", "as_coefficient", "is_exact", "to_complex"]


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Integer polynomial division by a monic ``den`` (coefficients low to high)."""
    num = list(num)
    dn = len(den) - 1
    quot = [0] * max(len(num) - dn, 1)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j, dc in enumerate(den):
                num[i - dn + j] -= c * dc
    return quot, num[:dn]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the ``n``-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _reduce(coeffs: dict[int, Fraction] | list, n: int) -> tuple[Fraction, ...]:
    folded = [Fraction(0)] * n
    items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
    for e, c in items:
        folded[e % n] += c
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    for i in range(n - 1, deg - 1, -1):
        c = folded[i]
        if c:
            folded[i] = Fraction(0)
            for j in range(deg):
                folded[i - deg + j] -= c * phi[j]
    return tuple(folded[:deg])


class Cyclotomic:
    """``sum_k coeffs[k] * zeta_n**k`` reduced modulo the ``n``-th cyclotomic polynomial."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        if n < 1:
            raise ValueError("order must be positive")
        self.n = n
        self.coeffs = _reduce(coeffs, n)

    @classmethod
    def rational(cls, q) -> Cyclotomic:
        return cls(1, [Fraction(q)])

    @classmethod
    def gaussian(cls, re, im) -> Cyclotomic:
        return cls(4, [Fraction(re), Fraction(im)])

    @classmethod
    def root_of_unity(cls, k: int, n: int) -> Cyclotomic:
        """``exp(2*pi*i*k/n)``."""
        return cls(n, {k % n: Fraction(1)})

    @classmethod
    def cis_pi(cls, q) -> Cyclotomic:
        """``exp(i*pi*q)`` for rational ``q``."""
        q = Fraction(q)
        return cls.root_of_unity(q.numerator, 2 * q.denominator)

    @classmethod
    def cos_pi(cls, q) -> Cyclotomic:
        z = cls.cis_pi(q)
        return (z + z.conjugate()) * Fraction(1, 2)

    @classmethod
    def i_sin_pi(cls, q) -> Cyclotomic:
        """``i*sin(pi*q)``."""
        z = cls.cis_pi(q)
        return (z - z.conjugate()) * Fraction(1, 2)

    def _lift(self, n: int) -> Cyclotomic:
        if n == self.n:
            return self
        step = n // self.n
        return Cyclotomic(n, {e * step: c for e, c in enumerate(self.coeffs) if c})

    @staticmethod
    def _common(a: Cyclotomic, b: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        n = math.lcm(a.n, b.n)
        return a._lift(n), b._lift(n)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(self, other)
        return Cyclotomic(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(self, other)
        prod: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] = prod.get(i + j, Fraction(0)) + x * y
        return Cyclotomic(a.n, prod)

    __rmul__ = __mul__

    def conjugate(self) -> Cyclotomic:
        return Cyclotomic(self.n, {(-e) % self.n: c for e, c in enumerate(self.coeffs) if c})

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __complex__(self) -> complex:
        total = 0j
        for e, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.exp(2j * math.pi * e / self.n)
        return total

    def __repr__(self) -> str:
        return f"Cyclotomic({complex(self):.12g}, n={self.n})"


def _coerce(value):
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Cyclotomic.rational(value)
    return NotImplemented


def as_coefficient(value):
    """Ints and Fractions become exact; Cyclotomic passes; floats/complex stay floating."""
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Cyclotomic.rational(value)
    if isinstance(value, (float, complex)):
        return complex(value)
    raise TypeError(f"unsupported coefficient {value!r}")


def is_exact(value) -> bool:
    return isinstance(value, Cyclotomic)


def to_complex(value) -> complex:
    return complex(value)
