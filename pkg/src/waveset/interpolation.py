"""Interpolation maps between wavelet sets.

For wavelet sets ``E`` and ``F`` the interpolation map sends each point of
``E`` to the unique point of ``F`` differing from it by a multiple of
``2*pi`` and is extended to all of ``R`` by ``sigma(d*s) = d*sigma(s)``.

On ``d**n * P`` for a base piece ``P`` of ``E`` with shift multiple ``m``
the extension is the translation ``s -> s + 2*pi*m*d**n``.  A map is therefore
described completely by a finite table of ``(piece, m)`` pairs over a
dilation generator; composition and inversion stay inside that form, with
``m`` rational in general (integral for maps built from congruences).
"""

from __future__ import annotations

import os
from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .congruence import dilation_congruence, is_wavelet_set, translation_fragments
from .errors import CongruenceError, MapError, NotAWaveletSet, RingSplitError
from .exact import TWO_PI, ZERO, ExactScalar, as_scalar
from .intervals import Interval, IntervalSet
from .rings import MAX_RINGS

__all__ = [
    "InterpolationMap",
    "MapClassification",
    "build_sigma",
    "identity_map",
    "evaluate",
    "apply_to_set",
    "compose",
    "inverse",
    "classify",
    "default_torsion_bound",
]

MAX_PIECES = 10_000
DEFAULT_TORSION_BOUND = 12


def default_torsion_bound() -> int:
    raw = os.environ.get("WAVESET_TORSION_BOUND")
    if raw is None:
        return DEFAULT_TORSION_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise MapError(f"WAVESET_TORSION_BOUND must be an integer, got {raw!r}") from None
    if value < 1:
        raise MapError("WAVESET_TORSION_BOUND must be positive")
    return value


@dataclass(frozen=True)
class _ChartEntry:
    ring_piece: Interval  # in ring-0 coordinates
    base_level: int  # the source point is d**base_level * r
    shift: Fraction


def _group(frags: Iterable[tuple[Interval, Fraction]]) -> tuple[tuple[IntervalSet, Fraction], ...]:
    by_shift: dict[Fraction, list[Interval]] = defaultdict(list)
    count = 0
    for iv, shift in frags:
        by_shift[Fraction(shift)].append(iv)
        count += 1
        if count > MAX_PIECES:
            raise MapError(f"piece count exceeds {MAX_PIECES}")
    grouped = [(IntervalSet(ivs), shift) for shift, ivs in by_shift.items()]
    grouped.sort(key=lambda item: item[0].lo)
    return tuple(grouped)


class InterpolationMap:
    """A ``d``-homogeneous piecewise translation of ``R``.

    Parameters
    ----------
    source : IntervalSet
        A ``d``-dilation generator; the base table lives on it.
    pieces : iterable of (IntervalSet, rational)
        Partition of ``source``; on each piece ``sigma(x) = x + 2*pi*m``.
    d : rational
        Dilation factor.
    """

    def __init__(self, source: IntervalSet, pieces, d=2):
        self.d = Fraction(d)
        self.source = source
        self.pieces = _group((iv, m) for piece, m in pieces for iv in piece)
        covered = IntervalSet()
        for piece, _ in self.pieces:
            if not covered.is_disjoint(piece):
                raise MapError("base pieces overlap")
            covered = covered.union(piece)
        if covered != source:
            raise MapError("base pieces do not partition the source set")
        try:
            self._annulus = dilation_congruence(source, self.d).annulus
        except CongruenceError as exc:
            raise MapError(f"source is not a dilation generator: {exc}") from exc
        entries = []
        for piece, m in self.pieces:
            for iv in piece:
                for k, frag in self._annulus.split(iv):
                    entries.append(_ChartEntry(self._annulus.to_ring(k, frag), k, m))
        entries.sort(key=lambda e: e.ring_piece.lo)
        self._chart = entries
        self._chart_los = [e.ring_piece.lo for e in entries]
        self._target: IntervalSet | None = None

    def __repr__(self) -> str:
        table = ", ".join(f"{p}: {m}" for p, m in self.pieces)
        return f"InterpolationMap(d={self.d}, {{{table}}})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, InterpolationMap):
            return NotImplemented
        return self.d == other.d and self.source == other.source and self.pieces == other.pieces

    __hash__ = None

    @property
    def target(self) -> IntervalSet:
        if self._target is None:
            self._target = self.apply_to_set(self.source)
        return self._target

    def shifts(self) -> list[Fraction]:
        return [m for _, m in self.pieces]

    def is_identity(self) -> bool:
        return all(m == 0 for _, m in self.pieces)

    def _entry_for(self, r: ExactScalar) -> _ChartEntry:
        i = bisect_right(self._chart_los, r) - 1
        if i < 0 or r not in self._chart[i].ring_piece:
            raise MapError(f"ring point {r} not covered by the chart")
        return self._chart[i]

    def segments(self, iv: Interval, max_rings: int = MAX_RINGS) -> list[tuple[Interval, Fraction]]:
        """Cut ``iv`` into pieces on which ``sigma(s) = s + 2*pi*t``; returns ``(piece, t)``."""
        out = []
        d = self.d
        for k, frag in self._annulus.split(iv, max_rings):
            r = self._annulus.to_ring(k, frag)
            i = max(bisect_right(self._chart_los, r.lo) - 1, 0)
            while i < len(self._chart) and self._chart[i].ring_piece.lo < r.hi:
                entry = self._chart[i]
                sub = r.intersect(entry.ring_piece)
                if sub is not None:
                    out.append((sub.scaled(d**k), entry.shift * d ** (k - entry.base_level)))
                i += 1
        return out

    def evaluate(self, s) -> ExactScalar:
        """Exact ``sigma(s)``; ``sigma(0) = 0``."""
        s = as_scalar(s)
        if s == ZERO:
            return ZERO
        k, r = self._annulus.reduce(s)
        entry = self._entry_for(r)
        return s + TWO_PI * (entry.shift * self.d ** (k - entry.base_level))

    __call__ = evaluate

    def apply_to_set(self, omega: IntervalSet) -> IntervalSet:
        """Exact image ``sigma(omega)``; ``omega`` must avoid a neighbourhood of 0."""
        images = []
        for iv in omega:
            try:
                segs = self.segments(iv)
            except RingSplitError as exc:
                raise MapError(f"cannot map {iv}: {exc}") from exc
            images.extend(seg.shifted(TWO_PI * t) for seg, t in segs)
        return IntervalSet(images)

    def compose(self, other: InterpolationMap) -> InterpolationMap:
        """``self o other`` (apply ``other`` first), tabulated over ``other.source``."""
        if self.d != other.d:
            raise MapError(f"dilation factors differ: {self.d} vs {other.d}")
        frags = []
        for piece, m2 in other.pieces:
            move = TWO_PI * m2
            for iv in piece:
                for seg, t in self.segments(iv.shifted(move)):
                    frags.append((seg.shifted(-move), m2 + t))
        return InterpolationMap(other.source, _group(frags), self.d)

    def inverse(self) -> InterpolationMap:
        flipped = [(piece.translate(TWO_PI * m), -m) for piece, m in self.pieces]
        return InterpolationMap(self.target, flipped, self.d)

    def power(self, n: int) -> InterpolationMap:
        base = self if n >= 0 else self.inverse()
        result = identity_map(self.source if n >= 0 else base.source, self.d)
        for _ in range(abs(n)):
            result = base.compose(result)
        return result


def identity_map(E: IntervalSet, d=2) -> InterpolationMap:
    return InterpolationMap(E, [(E, Fraction(0))], d)


def build_sigma(E: IntervalSet, F: IntervalSet, d=2) -> InterpolationMap:
    """The interpolation map from wavelet set ``E`` to wavelet set ``F``.

    Raises :class:`NotAWaveletSet` if either set fails the criterion.
    """
    is_wavelet_set(E, d)
    is_wavelet_set(F, d)
    frags = []
    f_frags = [(iv.shifted(TWO_PI * m), m) for iv, m in translation_fragments(F)]
    for e_iv, me in translation_fragments(E):
        e_win = e_iv.shifted(TWO_PI * me)
        for f_win, mf in f_frags:
            common = e_win.intersect(f_win)
            if common is not None:
                frags.append((common.shifted(-TWO_PI * me), Fraction(me - mf)))
    sigma = InterpolationMap(E, _group(frags), d)
    return sigma


def evaluate(sigma: InterpolationMap, s) -> ExactScalar:
    return sigma.evaluate(s)


def apply_to_set(sigma: InterpolationMap, omega: IntervalSet) -> IntervalSet:
    return sigma.apply_to_set(omega)


def compose(first: InterpolationMap, second: InterpolationMap) -> InterpolationMap:
    """``first o second``."""
    return first.compose(second)


def inverse(sigma: InterpolationMap) -> InterpolationMap:
    return sigma.inverse()


@dataclass(frozen=True)
class MapClassification:
    is_involution: bool
    torsion_order: int | None
    congruence_powers_ok: bool
    powers_checked: int


def classify(sigma: InterpolationMap, max_order: int | None = None) -> MapClassification:
    """Involution / torsion / power-congruence facts about ``sigma``, all exact.

    Checking ``sigma**n`` on the base pieces suffices: by homogeneity the
    base table determines the map everywhere.  For each ``0 < n < k`` (or up
    to ``max_order`` when no torsion is found) the power must shift every
    base piece by an integral multiple of ``2*pi`` and carry the source onto
    a certified wavelet set.
    """
    if max_order is None:
        max_order = default_torsion_bound()
    order = None
    powers = []
    current = sigma
    for n in range(1, max_order + 1):
        if current.is_identity():
            order = n
            break
        powers.append(current)
        if n < max_order:
            current = sigma.compose(current)
    congruent = True
    for p in powers:
        if any(m.denominator != 1 for m in p.shifts()):
            congruent = False
            break
        try:
            is_wavelet_set(p.target, sigma.d)
        except NotAWaveletSet:
            congruent = False
            break
    return MapClassification(
        is_involution=order in (1, 2),
        torsion_order=order,
        congruence_powers_ok=congruent,
        powers_checked=len(powers),
    )
