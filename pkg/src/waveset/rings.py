"""Dilation rings: splitting intervals into pieces of ``d^k``-scaled annuli.

An :class:`Annulus` with anchors ``a, b > 0`` and factor ``d`` has negative
ring ``[-d*a, -a)`` and positive ring ``[b, d*b)``.  Ring ``k`` is the image
of these under multiplication by ``d**k``; the rings partition ``R \\ {0}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import RingSplitError
from .exact import PI, ZERO, ExactScalar
from .intervals import Interval, IntervalSet

MAX_RINGS = 64


@dataclass(frozen=True)
class Annulus:
    neg_anchor: ExactScalar  # a
    pos_anchor: ExactScalar  # b
    d: Fraction

    @property
    def negative_ring(self) -> Interval:
        return Interval(-self.neg_anchor * self.d, -self.neg_anchor)

    @property
    def positive_ring(self) -> Interval:
        return Interval(self.pos_anchor, self.pos_anchor * self.d)

    def as_set(self) -> IntervalSet:
        return IntervalSet([self.negative_ring, self.positive_ring])

    def ring_index(self, x: ExactScalar) -> int:
        """The ``k`` with ``x`` in ring ``k``; ``x`` must be nonzero."""
        sign = x.sign()
        if sign == 0:
            raise RingSplitError("straddles_zero", "0 lies in no dilation ring")
        logd = math.log(float(self.d))
        d = self.d
        if sign > 0:
            b = self.pos_anchor
            est = math.log(x.to_float() / b.to_float()) / logd
            k = math.floor(est)
            while b * d**k > x:
                k -= 1
            while b * d ** (k + 1) <= x:
                k += 1
            return k
        a = self.neg_anchor
        est = math.log(-x.to_float() / a.to_float()) / logd
        k = math.ceil(est) - 1
        # ring k on the negative side is [-a d^(k+1), -a d^k)
        while x < -a * d ** (k + 1):
            k += 1
        while x >= -a * d**k:
            k -= 1
        return k

    def split(self, iv: Interval, max_rings: int = MAX_RINGS) -> list[tuple[int, Interval]]:
        """Cut ``iv`` at ring boundaries; returns ``(k, fragment)`` pairs in order."""
        if iv.lo < ZERO < iv.hi or iv.lo == ZERO:
            raise RingSplitError("straddles_zero", f"{iv} contains 0")
        if iv.hi == ZERO:
            raise RingSplitError("unbounded_split", f"{iv} accumulates at 0")
        d = self.d
        out: list[tuple[int, Interval]] = []
        lo = iv.lo
        k = self.ring_index(lo)
        while lo < iv.hi:
            if len(out) >= max_rings:
                raise RingSplitError("unbounded_split", f"{iv} spans more than {max_rings} dilation rings")
            if lo > ZERO:
                edge = self.pos_anchor * d ** (k + 1)
                nxt = k + 1
            else:
                edge = -self.neg_anchor * d**k
                nxt = k - 1
            hi = min(edge, iv.hi)
            out.append((k, Interval(lo, hi)))
            lo, k = hi, nxt
        return out

    def to_ring(self, k: int, iv: Interval) -> Interval:
        """Scale a ring-``k`` fragment back into ring 0."""
        return iv.scaled(self.d ** (-k))

    def reduce(self, x: ExactScalar) -> tuple[int, ExactScalar]:
        """``(k, r)`` with ``x = d**k * r`` and ``r`` in ring 0."""
        k = self.ring_index(x)
        return k, x * self.d ** (-k)


def fundamental_annulus(d=2) -> Annulus:
    """``[-d*pi, -pi) u [pi, d*pi)``, the fundamental domain of dilation-periodic functions."""
    return Annulus(PI, PI, Fraction(d))
