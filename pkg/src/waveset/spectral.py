"""Frequency-domain verification of wavelet systems in closed form.

Functions are finite sums ``sum c * exp(i*w*s) * 1[a, b)(s)`` with exact
supports and rational frequencies.  The Fourier-side dilation and translation
(``(D f)(s) = d**-1/2 f(s/d)``, ``(T f)(s) = exp(-i s) f(s)``), multipliers
and composition with an interpolation map all stay inside this class, and
every inner product is an elementary integral, so the Gram-type checks below
carry no quadrature error.
"""

from __future__ import annotations

import cmath
import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exact import TWO_PI
from .intervals import Interval, IntervalSet

__all__ = [
    "Term",
    "ModulatedPiecewise",
    "GramReport",
    "ParsevalReport",
    "RieszReport",
    "msf_wavelet",
    "apply_dn_tl",
    "modulate",
    "inner_product",
    "gram_matrix",
    "gram_check",
    "parseval_check",
    "local_commutant_check",
    "riesz_combination_check",
    "time_samples",
]

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Term:
    coeff: complex
    freq: Fraction
    support: Interval


def _phase(turns: Fraction) -> complex:
    """``exp(2*pi*i*turns)`` with the integer part of ``turns`` removed exactly."""
    frac = turns - math.floor(turns)
    if frac == 0:
        return 1.0 + 0.0j
    return cmath.exp(2j * math.pi * float(frac))


class ModulatedPiecewise:
    """Finite sum of modulated indicators of half-open intervals."""

    __slots__ = ("terms", "_arrays")

    def __init__(self, terms: Iterable[Term] = ()):
        self.terms = tuple(t for t in terms if t.coeff != 0)
        self._arrays = None

    @classmethod
    def indicator(cls, E: IntervalSet, coeff: complex = 1.0) -> ModulatedPiecewise:
        return cls(Term(complex(coeff), Fraction(0), iv) for iv in E)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"ModulatedPiecewise({len(self.terms)} terms)"

    def __add__(self, other: ModulatedPiecewise) -> ModulatedPiecewise:
        return ModulatedPiecewise(self.terms + other.terms)

    def __neg__(self) -> ModulatedPiecewise:
        return self.scale(-1.0)

    def __sub__(self, other: ModulatedPiecewise) -> ModulatedPiecewise:
        return self + (-other)

    def scale(self, c: complex) -> ModulatedPiecewise:
        return ModulatedPiecewise(Term(t.coeff * c, t.freq, t.support) for t in self.terms)

    def arrays(self):
        """``(coeff, freq, lo, hi)`` as numpy arrays (floats)."""
        if self._arrays is None:
            n = len(self.terms)
            c = np.empty(n, dtype=complex)
            w = np.empty(n)
            a = np.empty(n)
            b = np.empty(n)
            for i, t in enumerate(self.terms):
                c[i] = t.coeff
                w[i] = float(t.freq)
                a[i] = t.support.lo.to_float()
                b[i] = t.support.hi.to_float()
            self._arrays = (c, w, a, b)
        return self._arrays

    def __call__(self, s) -> complex | np.ndarray:
        """Pointwise values at float points."""
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        c, w, a, b = self.arrays()
        inside = (s_arr[:, None] >= a[None, :]) & (s_arr[:, None] < b[None, :])
        vals = np.where(inside, c[None, :] * np.exp(1j * np.outer(s_arr, w)), 0).sum(axis=1)
        return vals if np.ndim(s) else complex(vals[0])

    def support(self) -> IntervalSet:
        return IntervalSet(t.support for t in self.terms)

    def norm_sq(self) -> float:
        return inner_product(self, self).real

    def simplify(self) -> ModulatedPiecewise:
        """Cut supports at every endpoint and merge terms sharing an atom and a frequency."""
        points = sorted({p for t in self.terms for p in (t.support.lo, t.support.hi)})
        merged: dict[tuple[int, Fraction], complex] = {}
        for t in self.terms:
            i = bisect_left(points, t.support.lo)
            j = bisect_left(points, t.support.hi)
            for k in range(i, j):
                key = (k, t.freq)
                merged[key] = merged.get(key, 0j) + t.coeff
        out = [
            Term(c, freq, Interval(points[k], points[k + 1]))
            for (k, freq), c in sorted(merged.items(), key=lambda kv: (kv[0][0], kv[0][1]))
        ]
        return ModulatedPiecewise(out)

    def pullback(self, sigma) -> ModulatedPiecewise:
        """``f o sigma^-1``: the composition operator of an interpolation map."""
        out = []
        for t in self.terms:
            for seg, shift in sigma.segments(t.support):
                # f(sigma^-1(y)) = c exp(i w (y - 2 pi shift)) on seg + 2 pi shift
                out.append(Term(t.coeff * _phase(-t.freq * shift), t.freq, seg.shifted(TWO_PI * shift)))
        return ModulatedPiecewise(out)

    def multiply(self, h) -> ModulatedPiecewise:
        """Pointwise product with a dilation-periodic multiplier."""
        out = []
        for t in self.terms:
            for sub, value in h.pieces_over(t.support):
                out.append(Term(t.coeff * complex(value), t.freq, sub))
        return ModulatedPiecewise(out)


def msf_wavelet(E: IntervalSet) -> ModulatedPiecewise:
    """``(2*pi)**-1/2`` times the indicator of ``E``."""
    return ModulatedPiecewise.indicator(E, INV_SQRT_2PI)


def modulate(f: ModulatedPiecewise, nu) -> ModulatedPiecewise:
    """Multiply by ``exp(-i*nu*s)``; ``nu`` rational (``nu = l`` is the Fourier-side translation)."""
    nu = Fraction(nu)
    return ModulatedPiecewise(Term(t.coeff, t.freq - nu, t.support) for t in f.terms)


def apply_dn_tl(f: ModulatedPiecewise, n: int, l, d=2) -> ModulatedPiecewise:
    """``D^n T^l f`` on the Fourier side: ``d**(-n/2) exp(-i l d**-n s) f(d**-n s)``."""
    d = Fraction(d)
    scale = d**n
    amp = float(d) ** (-n / 2)
    l = Fraction(l)
    return ModulatedPiecewise(
        Term(t.coeff * amp, (t.freq - l) / scale, t.support.scaled(scale)) for t in f.terms
    )


def _pair_integrals(ca, wa, aa, ba, cb, wb, ab, bb) -> np.ndarray:
    """``sum_ij ca_i conj(cb_j) int exp(i(wa_i - wb_j)s)`` over overlaps, batched over leading axes.

    Arrays have shape ``(..., K)``; the result has the broadcast leading shape.
    """
    lo = np.maximum(aa[..., :, None], ab[..., None, :])
    hi = np.minimum(ba[..., :, None], bb[..., None, :])
    length = hi - lo
    overlap = length > 0
    length = np.where(overlap, length, 0.0)
    theta = wa[..., :, None] - wb[..., None, :]
    mid = 0.5 * (lo + hi)
    integral = length * np.sinc(theta * length / (2 * np.pi)) * np.exp(1j * theta * mid)
    weights = ca[..., :, None] * np.conj(cb[..., None, :])
    vals = np.where(overlap, weights * integral, 0)
    return vals.sum(axis=(-2, -1))


def inner_product(f: ModulatedPiecewise, g: ModulatedPiecewise) -> complex:
    """``<f, g> = int f(s) conj(g(s)) ds`` in closed form."""
    if not f.terms or not g.terms:
        return 0j
    return complex(_pair_integrals(*f.arrays(), *g.arrays()))


def _padded(funcs: Sequence[ModulatedPiecewise]):
    width = max((len(f) for f in funcs), default=0) or 1
    n = len(funcs)
    c = np.zeros((n, width), dtype=complex)
    w = np.zeros((n, width))
    a = np.zeros((n, width))
    b = np.zeros((n, width))
    for i, f in enumerate(funcs):
        if f.terms:
            fc, fw, fa, fb = f.arrays()
            k = len(fc)
            c[i, :k], w[i, :k], a[i, :k], b[i, :k] = fc, fw, fa, fb
    return c, w, a, b


def gram_matrix(
    rows: Sequence[ModulatedPiecewise], cols: Sequence[ModulatedPiecewise], chunk: int = 16
) -> np.ndarray:
    """Matrix of ``<rows[i], cols[j]>``."""
    rc, rw, ra, rb = _padded(rows)
    cc, cw, ca, cb = _padded(cols)
    out = np.empty((len(rows), len(cols)), dtype=complex)
    for start in range(0, len(rows), chunk):
        sl = slice(start, start + chunk)
        out[sl] = _pair_integrals(
            rc[sl, None, :], rw[sl, None, :], ra[sl, None, :], rb[sl, None, :],
            cc[None, :, :], cw[None, :, :], ca[None, :, :], cb[None, :, :],
        )
    return out


@dataclass
class GramReport:
    max_off_diagonal: float
    max_diagonal_deviation: float
    index_ranges: tuple[tuple[int, int], tuple[int, int]]
    tol: float
    mixed_pairs_checked: int = 0
    entries: np.ndarray | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.max_off_diagonal < self.tol and self.max_diagonal_deviation < self.tol

    @property
    def max_deviation(self) -> float:
        return max(self.max_off_diagonal, self.max_diagonal_deviation)


def gram_check(
    f: ModulatedPiecewise,
    n_max: int = 3,
    l_max: int = 8,
    tol: float = 1e-8,
    d=2,
    mixed_samples: int = 200,
    seed: int = 0,
    keep_entries: bool = False,
) -> GramReport:
    """Deviation of ``<D^n T^l f, f>`` from ``delta(n) delta(l)`` on ``|n| <= n_max, |l| <= l_max``.

    By unitarity of ``D^m T^j`` this slice decides orthonormality of the
    truncated system; ``mixed_samples`` random entries
    ``<D^n T^l f, D^m T^j f>`` are checked as well.
    """
    if n_max < 1 or l_max < 1:
        raise ValueError("n_max and l_max must be at least 1")
    ns = range(-n_max, n_max + 1)
    ls = range(-l_max, l_max + 1)
    images = {(n, l): apply_dn_tl(f, n, l, d) for n in ns for l in ls}
    keys = list(images)
    slice_vals = gram_matrix([images[k] for k in keys], [f])[:, 0]
    off = 0.0
    diag = 0.0
    for key, val in zip(keys, slice_vals):
        if key == (0, 0):
            diag = max(diag, abs(val - 1.0))
        else:
            off = max(off, abs(val))
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(mixed_samples):
        i, j = rng.integers(len(keys), size=2)
        pairs.append((keys[i], keys[j]))
    if pairs:
        left = [images[p] for p, _ in pairs]
        right = [images[q] for _, q in pairs]
        lc, lw, la, lb = _padded(left)
        rc, rw, ra, rb = _padded(right)
        mixed = _pair_integrals(lc, lw, la, lb, rc, rw, ra, rb)
        for (p, q), val in zip(pairs, mixed):
            if p == q:
                diag = max(diag, abs(val - 1.0))
            else:
                off = max(off, abs(val))
    entries = slice_vals.reshape(len(ns), len(ls)) if keep_entries else None
    return GramReport(float(off), float(diag), ((-n_max, n_max), (-l_max, l_max)), tol, len(pairs), entries)


@dataclass
class ParsevalReport:
    deficiencies: list[float]
    norms_sq: list[float]
    tail_bounds: list[float]
    uncovered_levels: list[list[int]]

    @property
    def max_deficiency(self) -> float:
        return max(self.deficiencies, default=0.0)

    @property
    def max_relative_deficiency(self) -> float:
        rel = [dfc / nrm for dfc, nrm in zip(self.deficiencies, self.norms_sq) if nrm > 0]
        return max(rel, default=0.0)


def _levels_touching(g: ModulatedPiecewise, f: ModulatedPiecewise, d: Fraction, limit: int = 64) -> list[int]:
    gs, fs = g.support(), f.support()
    return [n for n in range(-limit, limit + 1) if not gs.is_disjoint(fs.dilate(d**n))]


def _tail_bound(g: ModulatedPiecewise, f: ModulatedPiecewise, n: int, l_max: int, d: Fraction) -> float:
    """Upper bound for ``sum_{|l| > l_max} |<g, D^n T^l f>|**2``.

    Each overlap integral of ``exp(i(theta + l u) s)`` has modulus at most
    ``2 / |theta + l u|`` with ``u = d**-n``; summing the squares beyond
    ``l_max`` on both sides is bounded by the corresponding integral.
    """
    fn = apply_dn_tl(f, n, 0, d)
    u = float(d) ** (-n)
    total = 0.0
    theta_max = 0.0
    for tg in g.terms:
        for tf in fn.terms:
            if tg.support.intersect(tf.support) is None:
                continue
            total += 2 * abs(tg.coeff * tf.coeff)
            theta_max = max(theta_max, abs(float(tg.freq - tf.freq)))
    if total == 0.0:
        return 0.0
    gap = l_max * u - theta_max
    if gap <= 0:
        return math.inf
    return 2 * total**2 / (u * gap)


def parseval_check(
    f: ModulatedPiecewise,
    test_functions: Sequence[ModulatedPiecewise],
    n_max: int = 4,
    l_max: int = 64,
    d=2,
) -> ParsevalReport:
    """Parseval deficiency ``||g||^2 - sum |<g, D^n T^l f>|^2`` for each test function.

    The sum runs over ``|n| <= n_max``, ``|l| <= l_max``.  The reported tail
    bound covers the ``l``-truncation only; levels ``|n| > n_max`` whose
    dilated support still meets ``g`` are listed in ``uncovered_levels``.
    """
    d = Fraction(d)
    reach = TWO_PI * d**n_max
    ns = range(-n_max, n_max + 1)
    ls = range(-l_max, l_max + 1)
    deficiencies, norms, tails, uncovered = [], [], [], []
    frames = [apply_dn_tl(f, n, l, d) for n in ns for l in ls]
    for g in test_functions:
        if g.terms and (g.support().lo < -reach or g.support().hi > reach):
            raise ValueError(f"test function support exceeds [-{reach}, {reach})")
        coeffs = gram_matrix([g], frames)[0] if g.terms else np.zeros(len(frames))
        nrm = g.norm_sq()
        norms.append(nrm)
        deficiencies.append(nrm - float(np.sum(np.abs(coeffs) ** 2)))
        tails.append(sum(_tail_bound(g, f, n, l_max, d) for n in ns))
        uncovered.append([n for n in _levels_touching(g, f, d) if abs(n) > n_max] if g.terms else [])
    return ParsevalReport(deficiencies, norms, tails, uncovered)


def local_commutant_check(E: IntervalSet, F: IntervalSet, n: int, l: int, d=2) -> float:
    """``|| U (D^n T^l psi_E) - D^n T^l psi_F ||`` for the interpolation unitary ``U`` of ``(E, F)``."""
    from .interpolation import build_sigma

    sigma = build_sigma(E, F, d)
    left = apply_dn_tl(msf_wavelet(E), n, l, d).pullback(sigma)
    right = apply_dn_tl(msf_wavelet(F), n, l, d)
    diff = (left - right).simplify()
    return math.sqrt(max(diff.norm_sq(), 0.0))


@dataclass
class RieszReport:
    min_eig: float
    max_eig: float
    lower_reference: float
    upper_reference: float
    size: int


def riesz_combination_check(E: IntervalSet, F: IntervalSet, lam: complex, n_max: int = 3, l_max: int = 16, d=2) -> RieszReport:
    """Eigenvalue range of the truncated Gram matrix of ``{D^n T^l (psi_E + lam psi_F)}``.

    Reference bounds ``(1 -+ |lam|)**2`` are reported alongside; they bound
    the infinite system and are not asserted here.
    """
    phi = msf_wavelet(E) + msf_wavelet(F).scale(lam)
    funcs = [apply_dn_tl(phi, n, l, d) for n in range(-n_max, n_max + 1) for l in range(-l_max, l_max + 1)]
    G = gram_matrix(funcs, funcs)
    G = 0.5 * (G + G.conj().T)
    eig = np.linalg.eigvalsh(G)
    r = abs(lam)
    return RieszReport(float(eig[0]), float(eig[-1]), (1 - r) ** 2, (1 + r) ** 2, len(funcs))


def time_samples(f: ModulatedPiecewise, t_grid) -> np.ndarray:
    """Inverse Fourier transform ``(2 pi)**-1/2 int exp(i s t) f(s) ds`` at each ``t``."""
    t = np.asarray(t_grid, dtype=float)
    if not f.terms:
        return np.zeros(t.shape, dtype=complex)
    c, w, a, b = f.arrays()
    theta = w[None, :] + t.reshape(-1, 1)
    length = b - a
    mid = 0.5 * (a + b)
    vals = c * length * np.sinc(theta * length / (2 * np.pi)) * np.exp(1j * theta * mid)
    return (vals.sum(axis=1) * INV_SQRT_2PI).reshape(t.shape)
