"""Finite unions of half-open intervals ``[lo, hi)`` with exact endpoints."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .exact import ZERO, ExactScalar, as_scalar

__all__ = ["Interval", "IntervalSet", "EMPTY"]


@dataclass(frozen=True, slots=True)
class Interval:
    """Nonempty half-open interval ``[lo, hi)``."""

    lo: ExactScalar
    hi: ExactScalar

    def __post_init__(self):
        object.__setattr__(self, "lo", as_scalar(self.lo))
        object.__setattr__(self, "hi", as_scalar(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"empty or reversed interval [{self.lo}, {self.hi})")

    @property
    def length(self) -> ExactScalar:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x < self.hi

    def scaled(self, factor) -> Interval:
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("dilation factor must be positive")
        return Interval(self.lo * factor, self.hi * factor)

    def shifted(self, shift) -> Interval:
        return Interval(self.lo + shift, self.hi + shift)

    def intersect(self, other: Interval) -> Interval | None:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return Interval(lo, hi) if lo < hi else None

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi})"


def _normalize(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    items = sorted(intervals, key=lambda iv: iv.lo)
    out: list[Interval] = []
    for iv in items:
        if out and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return tuple(out)


class IntervalSet:
    """Normalized finite union of disjoint half-open intervals.

    Parts are sorted and separated by genuine gaps, so two sets are equal
    exactly when their part tuples are equal.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts: Iterable[Interval] = ()):
        self._parts = _normalize(parts)

    @classmethod
    def from_bounds(cls, bounds: Iterable[tuple]) -> IntervalSet:
        """Build from ``(lo, hi)`` pairs; pairs with ``lo == hi`` are dropped."""
        parts = []
        for lo, hi in bounds:
            lo, hi = as_scalar(lo), as_scalar(hi)
            if lo == hi:
                continue
            parts.append(Interval(lo, hi))
        return cls(parts)

    @classmethod
    def interval(cls, lo, hi) -> IntervalSet:
        return cls.from_bounds([(lo, hi)])

    @property
    def parts(self) -> tuple[Interval, ...]:
        return self._parts

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._parts)

    def __len__(self) -> int:
        return len(self._parts)

    def __bool__(self) -> bool:
        return bool(self._parts)

    @property
    def is_empty(self) -> bool:
        return not self._parts

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        return f"IntervalSet({self})"

    def __str__(self) -> str:
        if not self._parts:
            return "empty"
        return " u ".join(str(p) for p in self._parts)

    @property
    def lo(self) -> ExactScalar:
        return self._parts[0].lo

    @property
    def hi(self) -> ExactScalar:
        return self._parts[-1].hi

    def measure(self) -> ExactScalar:
        total = ZERO
        for p in self._parts:
            total = total + p.length
        return total

    def __contains__(self, x) -> bool:
        x = as_scalar(x)
        i = bisect_right([p.lo for p in self._parts], x) - 1
        return i >= 0 and x < self._parts[i].hi

    def union(self, other: IntervalSet) -> IntervalSet:
        return IntervalSet(self._parts + other._parts)

    __or__ = union

    def intersect(self, other: IntervalSet) -> IntervalSet:
        a, b = self._parts, other._parts
        i = j = 0
        out = []
        while i < len(a) and j < len(b):
            piece = a[i].intersect(b[j])
            if piece is not None:
                out.append(piece)
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    __and__ = intersect

    def subtract(self, other: IntervalSet) -> IntervalSet:
        out = []
        b = other._parts
        j = 0
        for iv in self._parts:
            lo = iv.lo
            while j < len(b) and b[j].hi <= lo:
                j += 1
            k = j
            while k < len(b) and b[k].lo < iv.hi:
                if b[k].lo > lo:
                    out.append(Interval(lo, b[k].lo))
                lo = max(lo, b[k].hi)
                k += 1
            if lo < iv.hi:
                out.append(Interval(lo, iv.hi))
        return IntervalSet(out)

    __sub__ = subtract

    def symmetric_difference(self, other: IntervalSet) -> IntervalSet:
        return self.subtract(other).union(other.subtract(self))

    def dilate(self, factor) -> IntervalSet:
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("dilation factor must be positive")
        return IntervalSet(p.scaled(factor) for p in self._parts)

    def translate(self, shift) -> IntervalSet:
        shift = as_scalar(shift)
        return IntervalSet(p.shifted(shift) for p in self._parts)

    def is_subset(self, other: IntervalSet) -> bool:
        return self.subtract(other).is_empty

    def is_disjoint(self, other: IntervalSet) -> bool:
        return self.intersect(other).is_empty

    def positive_part(self) -> IntervalSet:
        return IntervalSet(Interval(max(p.lo, ZERO), p.hi) for p in self._parts if p.hi > ZERO)

    def negative_part(self) -> IntervalSet:
        return IntervalSet(Interval(p.lo, min(p.hi, ZERO)) for p in self._parts if p.lo < ZERO)

    def breakpoints(self) -> list[ExactScalar]:
        pts = []
        for p in self._parts:
            pts.extend((p.lo, p.hi))
        return pts


EMPTY = IntervalSet()
