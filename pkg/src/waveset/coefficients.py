"""Dilation-periodic multipliers and the coefficient criterion for interpolated wavelets.

Given an interpolation map ``sigma`` of torsion order ``k`` and multipliers
``h_0 .. h_{k-1}`` with ``h(d*s) = h(s)``, the function

    (2*pi)**-1/2 * sum_n h_n(s) * 1_{sigma^n(E)}(s)

is the Fourier transform of an orthonormal wavelet exactly when the ``k x k``
matrix with entry ``(i, j) = h_{(j - i) mod k}(sigma^-i(s))`` is unitary for
almost every ``s``.  Everything here is piecewise constant on finitely many
intervals of the fundamental domain, so the test is a finite computation,
exact whenever the values are cyclotomic numbers.
"""

from __future__ import annotations

import cmath
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import Cyclotomic, as_coefficient, is_exact
from .errors import CriterionError, MapError
from .exact import TWO_PI, ZERO, ExactScalar, as_scalar
from .intervals import Interval, IntervalSet
from .interpolation import MAX_PIECES, InterpolationMap
from .rings import Annulus, fundamental_annulus
from .spectral import INV_SQRT_2PI, ModulatedPiecewise, Term, msf_wavelet

__all__ = [
    "PeriodicMultiplier",
    "CoefficientFamily",
    "UnitarityVerdict",
    "fundamental_domain",
    "extend_multiplier",
    "constant_multiplier",
    "phase_multiplier",
    "conjugate_by_sigma",
    "is_dilation_periodic_pullback",
    "coefficient_matrix",
    "is_unitary_ae",
    "synthesize",
    "with_phase",
]

UNITARY_TOL = 1e-12


def fundamental_domain(d=2) -> IntervalSet:
    """``[-d*pi, -pi) u [pi, d*pi)``."""
    return fundamental_annulus(d).as_set()


def _values_equal(a, b) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return complex(a) == complex(b)


class PeriodicMultiplier:
    """Piecewise-constant function on the fundamental domain, extended by ``h(d*s) = h(s)``.

    Values are :class:`Cyclotomic` when exact, otherwise Python complex.
    """

    __slots__ = ("d", "annulus", "atoms", "_los")

    def __init__(self, pieces: Iterable[tuple[IntervalSet | Interval, object]], d=2):
        self.d = Fraction(d)
        self.annulus: Annulus = fundamental_annulus(self.d)
        atoms = []
        for piece, value in pieces:
            value = as_coefficient(value)
            parts = [piece] if isinstance(piece, Interval) else list(piece)
            atoms.extend((iv, value) for iv in parts)
        if len(atoms) > MAX_PIECES:
            raise CriterionError(f"multiplier has more than {MAX_PIECES} pieces")
        atoms.sort(key=lambda a: a[0].lo)
        for (prev, _), (cur, _) in zip(atoms, atoms[1:]):
            if cur.lo < prev.hi:
                raise CriterionError(f"multiplier pieces overlap near {cur.lo}")
        covered = IntervalSet(iv for iv, _ in atoms)
        if covered != self.annulus.as_set():
            raise CriterionError(f"pieces cover {covered}, not the fundamental domain {self.annulus.as_set()}")
        self.atoms: tuple[tuple[Interval, object], ...] = tuple(atoms)
        self._los = [iv.lo for iv, _ in atoms]

    def __repr__(self) -> str:
        return f"PeriodicMultiplier(d={self.d}, {len(self.atoms)} pieces)"

    def _ring_value(self, r: ExactScalar):
        i = bisect_right(self._los, r) - 1
        return self.atoms[i][1]

    def evaluate(self, s):
        """Exact value at ``s != 0``."""
        s = as_scalar(s)
        if s == ZERO:
            raise CriterionError("multipliers are not defined at 0")
        _, r = self.annulus.reduce(s)
        return self._ring_value(r)

    __call__ = evaluate

    def pieces_over(self, iv: Interval) -> list[tuple[Interval, object]]:
        """Cut ``iv`` (avoiding 0) into intervals of constant value."""
        out = []
        for k, frag in self.annulus.split(iv):
            r = self.annulus.to_ring(k, frag)
            i = max(bisect_right(self._los, r.lo) - 1, 0)
            while i < len(self.atoms) and self.atoms[i][0].lo < r.hi:
                sub = r.intersect(self.atoms[i][0])
                if sub is not None:
                    out.append((sub.scaled(self.d**k), self.atoms[i][1]))
                i += 1
        return out

    def breakpoints(self) -> list[ExactScalar]:
        return sorted({p for iv, _ in self.atoms for p in (iv.lo, iv.hi)})

    def sup_norm(self) -> float:
        return max(abs(complex(v)) for _, v in self.atoms)

    def is_exact(self) -> bool:
        return all(is_exact(v) for _, v in self.atoms)


def extend_multiplier(pieces, d=2) -> PeriodicMultiplier:
    """Extend piecewise-constant data on the fundamental domain to a dilation-periodic function."""
    return PeriodicMultiplier(pieces, d)


def constant_multiplier(value, d=2) -> PeriodicMultiplier:
    return PeriodicMultiplier([(fundamental_domain(d), value)], d)


def phase_multiplier(phases, d=2) -> PeriodicMultiplier:
    """``exp(i*theta)`` for piecewise-constant real ``theta``.

    A rational ``theta`` is read in units of pi and stays exact
    (``Fraction(1, 3)`` means ``exp(i*pi/3)``); a float is in radians.
    """
    values = []
    for piece, theta in phases:
        if isinstance(theta, (int, Fraction)) and not isinstance(theta, bool):
            values.append((piece, Cyclotomic.cis_pi(theta)))
        else:
            values.append((piece, cmath.exp(1j * float(theta))))
    return PeriodicMultiplier(values, d)


def _pullback_atoms(h: PeriodicMultiplier, sigma: InterpolationMap, iv: Interval):
    """``(piece, value)`` for ``h o sigma^-1`` on ``iv``, computed from ``sigma^-1`` directly."""
    inv = sigma.inverse()
    out = []
    for seg, t in inv.segments(iv):
        move = TWO_PI * t
        for sub, value in h.pieces_over(seg.shifted(move)):
            out.append((sub.shifted(-move), value))
    return out


def is_dilation_periodic_pullback(
    h: PeriodicMultiplier, sigma: InterpolationMap, result: PeriodicMultiplier, levels: Iterable[int] = range(-2, 3)
) -> bool:
    """Exact check that ``h o sigma^-1`` agrees with the periodic ``result`` on ``d**k * FD`` for each level."""
    fd = result.annulus.as_set()
    for k in levels:
        for iv in fd.dilate(result.d**k):
            for sub, value in _pullback_atoms(h, sigma, iv):
                for piece, other in result.pieces_over(sub):
                    if not _values_equal(value, other):
                        return False
    return True


def conjugate_by_sigma(h: PeriodicMultiplier, sigma: InterpolationMap, verify: bool = True) -> PeriodicMultiplier:
    """The multiplier ``h o sigma^-1``, i.e. ``U M_h U^-1`` for the composition unitary ``U f = f o sigma^-1``.

    The result is tabulated on the fundamental domain and, unless
    ``verify=False``, re-checked for dilation periodicity on neighbouring
    levels with exact comparisons.
    """
    if h.d != sigma.d:
        raise MapError(f"dilation factors differ: {h.d} vs {sigma.d}")
    atoms = []
    for iv in h.annulus.as_set():
        atoms.extend(_pullback_atoms(h, sigma, iv))
    result = PeriodicMultiplier(atoms, h.d)
    if verify and not is_dilation_periodic_pullback(h, sigma, result):
        raise CriterionError("conjugated multiplier is not dilation periodic")
    return result


@dataclass
class CoefficientFamily:
    """Multipliers ``h_0 .. h_{k-1}`` for an interpolation map of torsion order ``k``."""

    h: tuple[PeriodicMultiplier, ...]
    sigma: InterpolationMap

    def __post_init__(self):
        self.h = tuple(self.h)
        k = len(self.h)
        if k == 0:
            raise CriterionError("at least one multiplier is required")
        for hn in self.h:
            if hn.d != self.sigma.d:
                raise CriterionError(f"multiplier dilation {hn.d} differs from map dilation {self.sigma.d}")
        current = self.sigma
        for j in range(1, k):
            if current.is_identity():
                raise CriterionError(f"map has torsion order {j}, but {k} multipliers were given")
            current = self.sigma.compose(current)
        if not current.is_identity():
            raise CriterionError(f"sigma**{k} is not the identity")
        self._inverse_powers = [self.sigma.power(-i) for i in range(k)]

    @property
    def k(self) -> int:
        return len(self.h)

    @property
    def E(self) -> IntervalSet:
        return self.sigma.source


def coefficient_matrix(fam: CoefficientFamily, s) -> list[list]:
    """Entry ``(i, j) = h_{(j - i) mod k}(sigma^-i(s))``, 0-indexed."""
    s = as_scalar(s)
    k = fam.k
    points = [fam._inverse_powers[i].evaluate(s) for i in range(k)]
    return [[fam.h[(j - i) % k].evaluate(points[i]) for j in range(k)] for i in range(k)]


@dataclass
class UnitarityVerdict:
    unitary: bool
    exact: bool
    pieces_checked: int
    violation: IntervalSet | None = None
    matrix: list | None = None

    def __bool__(self) -> bool:
        return self.unitary


def _is_unitary(M: Sequence[Sequence], exact: bool) -> bool:
    k = len(M)
    for i in range(k):
        for j in range(i, k):
            if exact:
                acc = Cyclotomic.rational(0)
                for c in range(k):
                    acc = acc + M[i][c] * M[j][c].conjugate()
                if acc != (1 if i == j else 0):
                    return False
            else:
                acc = sum(complex(M[i][c]) * complex(M[j][c]).conjugate() for c in range(k))
                if abs(acc - (1 if i == j else 0)) > UNITARY_TOL:
                    return False
    return True


def is_unitary_ae(fam: CoefficientFamily) -> UnitarityVerdict:
    """Decide a.e. unitarity of the coefficient matrix on the common refinement of all entries."""
    k = fam.k
    # columns[i][n] = h_n o sigma^-i
    conj = [[hn if i == 0 else conjugate_by_sigma(hn, fam.sigma.power(i), verify=False) for hn in fam.h] for i in range(k)]
    exact = all(m.is_exact() for row in conj for m in row)
    fd = fundamental_domain(fam.sigma.d)
    points = sorted({p for row in conj for m in row for p in m.breakpoints()})
    checked = 0
    for ring in fd:
        cuts = [p for p in points if ring.lo < p < ring.hi]
        edges = [ring.lo, *cuts, ring.hi]
        if len(edges) - 1 > MAX_PIECES:
            raise CriterionError(f"common refinement exceeds {MAX_PIECES} pieces")
        for lo, hi in zip(edges, edges[1:]):
            M = [[conj[i][(j - i) % k]._ring_value(lo) for j in range(k)] for i in range(k)]
            checked += 1
            if not _is_unitary(M, exact):
                return UnitarityVerdict(False, exact, checked, IntervalSet.interval(lo, hi), M)
    return UnitarityVerdict(True, exact, checked)


def synthesize(fam: CoefficientFamily, force: bool = False) -> ModulatedPiecewise:
    """``(2*pi)**-1/2 * sum_n h_n * 1_{sigma^n(E)}`` as a frequency-domain function.

    The sum has ``k`` terms, one per power of the map below its torsion order.
    Raises :class:`CriterionError` when the coefficient matrix is not unitary,
    unless ``force`` is set.
    """
    if not force:
        verdict = is_unitary_ae(fam)
        if not verdict:
            raise CriterionError(f"coefficient matrix is not unitary on {verdict.violation}")
    terms = []
    for n, hn in enumerate(fam.h):
        image = fam.E if n == 0 else fam.sigma.power(n).target
        for iv in image:
            for sub, value in hn.pieces_over(iv):
                terms.append(Term(complex(value) * INV_SQRT_2PI, Fraction(0), sub))
    return ModulatedPiecewise(terms)


def with_phase(E: IntervalSet, h: PeriodicMultiplier) -> ModulatedPiecewise:
    """``h * psi_E`` for a unimodular multiplier ``h``."""
    return msf_wavelet(E).multiply(h)
