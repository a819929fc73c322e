"""Translation/dilation congruence with explicit witnesses, and the wavelet-set criterion.

A finite union of intervals ``E`` is a wavelet set for dilation factor ``d``
exactly when

* its fragments, each moved by an integer multiple of ``2*pi``, tile
  ``[0, 2*pi)``, and
* its fragments, each scaled by an integer power of ``d``, tile a two-sided
  ring ``[-d*a, -a) u [b, d*b)``.

Both checks are constructive: on success they return the partition that
proves the congruence, on failure they name the overlapping or missing region.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .errors import CongruenceError, NotAWaveletSet, RingSplitError
from .exact import TWO_PI, ZERO, ExactScalar, floor_div
from .intervals import Interval, IntervalSet
from .rings import MAX_RINGS, Annulus

__all__ = [
    "TranslationWitness",
    "DilationWitness",
    "WaveletSetCertificate",
    "translation_congruence",
    "dilation_congruence",
    "is_wavelet_set",
    "check_certificate",
    "translation_fragments",
]

UNIT_WINDOW = IntervalSet.interval(ZERO, TWO_PI)


@dataclass(frozen=True)
class TranslationWitness:
    """``piece + 2*pi*shift`` over all pieces tiles ``[0, 2*pi)``."""

    pieces: tuple[tuple[IntervalSet, int], ...]

    def source(self) -> IntervalSet:
        out = IntervalSet()
        for piece, _ in self.pieces:
            out = out.union(piece)
        return out

    def image(self) -> IntervalSet:
        out = IntervalSet()
        for piece, shift in self.pieces:
            out = out.union(piece.translate(TWO_PI * shift))
        return out

    def shifts(self) -> list[int]:
        return [s for _, s in self.pieces]


@dataclass(frozen=True)
class DilationWitness:
    """``d**power * piece`` over all pieces tiles ``[-d*a, -a) u [b, d*b)``."""

    pieces: tuple[tuple[IntervalSet, int], ...]
    neg_anchor: ExactScalar
    pos_anchor: ExactScalar
    d: Fraction

    @property
    def annulus(self) -> Annulus:
        return Annulus(self.neg_anchor, self.pos_anchor, self.d)

    def source(self) -> IntervalSet:
        out = IntervalSet()
        for piece, _ in self.pieces:
            out = out.union(piece)
        return out

    def image(self) -> IntervalSet:
        out = IntervalSet()
        for piece, power in self.pieces:
            out = out.union(piece.dilate(self.d**power))
        return out


@dataclass(frozen=True)
class WaveletSetCertificate:
    set: IntervalSet
    translation: TranslationWitness
    dilation: DilationWitness
    dilation_factor: Fraction


def _group(fragments: list[tuple[Interval, int]]) -> tuple[tuple[IntervalSet, int], ...]:
    by_key: dict[int, list[Interval]] = defaultdict(list)
    for iv, key in fragments:
        by_key[key].append(iv)
    grouped = [(IntervalSet(ivs), key) for key, ivs in by_key.items()]
    grouped.sort(key=lambda item: item[0].lo)
    return tuple(grouped)


def _tiling_problem(images: list[Interval], window: IntervalSet, side: str) -> CongruenceError | None:
    """First overlap among ``images``, else first gap/excess against ``window``."""
    images = sorted(images, key=lambda iv: iv.lo)
    reach = None
    for iv in images:
        if reach is not None and iv.lo < reach:
            region = IntervalSet.interval(iv.lo, min(iv.hi, reach))
            return CongruenceError("overlap", side, f"images overlap on {region}", region)
        reach = iv.hi if reach is None else max(reach, iv.hi)
    covered = IntervalSet(images)
    missing = window.subtract(covered)
    if missing:
        return CongruenceError("gap", side, f"{missing} is not covered", missing)
    excess = covered.subtract(window)
    if excess:
        return CongruenceError("gap", side, f"images leave the target window on {excess}", excess)
    return None


def translation_fragments(E: IntervalSet) -> list[tuple[Interval, int]]:
    """Split ``E`` on the grid ``2*pi*Z``; each fragment with the multiple moving it into ``[0, 2*pi)``."""
    out = []
    for iv in E:
        lo = iv.lo
        k = floor_div(lo, TWO_PI)
        while lo < iv.hi:
            hi = min(iv.hi, TWO_PI * (k + 1))
            out.append((Interval(lo, hi), -k))
            lo = hi
            k += 1
    return out


def translation_congruence(E: IntervalSet) -> TranslationWitness:
    """Certify that ``E`` is ``2*pi``-translation congruent to ``[0, 2*pi)``.

    Raises :class:`CongruenceError` (``measure``, ``overlap`` or ``gap``).
    """
    side = "translation"
    if E.measure() != TWO_PI:
        raise CongruenceError("measure", side, f"measure of E is {E.measure()}, not 2pi")
    frags = translation_fragments(E)
    problem = _tiling_problem([iv.shifted(TWO_PI * m) for iv, m in frags], UNIT_WINDOW, side)
    if problem is not None:
        raise problem
    return TranslationWitness(_group(frags))


def _zero_problem(E: IntervalSet) -> CongruenceError | None:
    for iv in E:
        if iv.lo <= ZERO < iv.hi:
            return CongruenceError("straddles_zero", "dilation", f"{iv} contains 0", IntervalSet([iv]))
        if iv.hi == ZERO:
            return CongruenceError("unbounded_split", "dilation", f"{iv} accumulates at 0", IntervalSet([iv]))
    return None


def dilation_congruence(E: IntervalSet, d=2, max_rings: int = MAX_RINGS) -> DilationWitness:
    """Certify that the ``d``-dilates of ``E`` partition ``R \\ {0}``.

    The target ring is anchored at the extreme endpoints of ``E``:
    ``d*b = sup E`` and ``-d*a = inf E``.  When ``E`` is a dilation generator
    any anchor works, so this choice loses nothing.
    """
    side = "dilation"
    d = Fraction(d)
    if d < 2:
        raise ValueError("dilation factor must be a rational >= 2")
    problem = _zero_problem(E)
    if problem is not None:
        raise problem
    pos, neg = E.positive_part(), E.negative_part()
    if pos.is_empty or neg.is_empty:
        half = "negative" if neg.is_empty else "positive"
        raise CongruenceError(
            "gap", side, f"E has no {half} part, so its dilates cannot cover the {half} half-line"
        )
    ann = Annulus(-neg.lo / d, pos.hi / d, d)
    frags: list[tuple[Interval, int]] = []
    neg_images, pos_images = [], []
    for iv in E:
        try:
            pieces = ann.split(iv, max_rings)
        except RingSplitError as exc:
            raise CongruenceError(exc.kind, side, str(exc), IntervalSet([iv])) from exc
        for k, frag in pieces:
            frags.append((frag, -k))
            (pos_images if frag.lo > ZERO else neg_images).append(ann.to_ring(k, frag))
    for images, ring in ((neg_images, ann.negative_ring), (pos_images, ann.positive_ring)):
        problem = _tiling_problem(images, IntervalSet([ring]), side)
        if problem is not None:
            raise problem
    return DilationWitness(_group(frags), ann.neg_anchor, ann.pos_anchor, d)


def is_wavelet_set(E: IntervalSet, d=2) -> WaveletSetCertificate:
    """Certificate that ``E`` is a wavelet set for dilation ``d``.

    Both congruences are always checked so that :class:`NotAWaveletSet`
    reports every failing side.
    """
    failures = []
    translation = dilation = None
    try:
        translation = translation_congruence(E)
    except CongruenceError as exc:
        failures.append(exc)
    try:
        dilation = dilation_congruence(E, d)
    except CongruenceError as exc:
        failures.append(exc)
    if failures:
        raise NotAWaveletSet(failures)
    return WaveletSetCertificate(E, translation, dilation, Fraction(d))


def _is_partition(pieces, whole: IntervalSet) -> bool:
    acc = IntervalSet()
    for piece in pieces:
        if not acc.is_disjoint(piece):
            return False
        acc = acc.union(piece)
    return acc == whole


def check_certificate(cert: WaveletSetCertificate) -> bool:
    """Re-verify a certificate from its witnesses alone (used for JSON round trips)."""
    E = cert.set
    tw, dw = cert.translation, cert.dilation
    if dw.d != cert.dilation_factor or dw.neg_anchor <= ZERO or dw.pos_anchor <= ZERO:
        return False
    if not _is_partition([p for p, _ in tw.pieces], E):
        return False
    if not _is_partition([p.translate(TWO_PI * s) for p, s in tw.pieces], UNIT_WINDOW):
        return False
    if not _is_partition([p for p, _ in dw.pieces], E):
        return False
    images = [p.dilate(dw.d**k) for p, k in dw.pieces]
    return _is_partition(images, dw.annulus.as_set())
