"""Constructors for the classical interval wavelet sets.

All constructors return normalized :class:`IntervalSet` values; none of them
certifies its output (use :func:`waveset.congruence.is_wavelet_set`).
"""

from __future__ import annotations

from fractions import Fraction

from .exact import PI, ExactScalar, as_scalar
from .intervals import IntervalSet

__all__ = ["shannon", "shannon_alpha", "journe", "journe_beta", "subset_through", "d_dilation_set", "FAMILIES"]


def _pi(p, q=1) -> ExactScalar:
    return ExactScalar.pi(Fraction(p, q))


def shannon() -> IntervalSet:
    """The Littlewood-Paley set ``[-2pi, -pi) u [pi, 2pi)``."""
    return IntervalSet.from_bounds([(_pi(-2), _pi(-1)), (_pi(1), _pi(2))])


def shannon_alpha(alpha) -> IntervalSet:
    """``[-2pi + 2a, -pi + a) u [pi + a, 2pi + 2a)`` for ``-pi < a < pi``."""
    a = as_scalar(alpha)
    if not -PI < a < PI:
        raise ValueError(f"alpha must lie in (-pi, pi), got {a}")
    return IntervalSet.from_bounds([(_pi(-2) + 2 * a, -PI + a), (PI + a, _pi(2) + 2 * a)])


def journe_beta(beta) -> IntervalSet:
    """Generalized Journe set ``J_beta`` for ``-pi/7 <= beta <= pi/7``.

    At the endpoints one of the outer intervals is empty and the set has
    three parts.
    """
    b = as_scalar(beta)
    if not _pi(-1, 7) <= b <= _pi(1, 7):
        raise ValueError(f"beta must lie in [-pi/7, pi/7], got {b}")
    return IntervalSet.from_bounds(
        [
            (_pi(-32, 7), _pi(-4) + 4 * b),
            (-PI + b, _pi(-4, 7)),
            (_pi(4, 7), PI + b),
            (_pi(4) + 4 * b, _pi(32, 7)),
        ]
    )


def journe() -> IntervalSet:
    """``[-32pi/7, -4pi) u [-pi, -4pi/7) u [4pi/7, pi) u [4pi, 32pi/7)``."""
    return journe_beta(0)


_THROUGH_WINDOW = IntervalSet.interval(PI, _pi(3, 2))


def subset_through(A: IntervalSet) -> IntervalSet:
    """A wavelet set ``W`` with ``W & [pi, 3pi/2) == A`` for any ``A`` inside ``[pi, 3pi/2)``."""
    if not A.is_subset(_THROUGH_WINDOW):
        raise ValueError(f"{A} is not contained in [pi, 3pi/2)")
    two_a = A.dilate(2)
    B = IntervalSet.interval(_pi(2), _pi(3)).subtract(two_a)
    C = IntervalSet.interval(-PI, _pi(-1, 2)).subtract(A.translate(_pi(-2)))
    D = two_a.translate(_pi(-4))
    W = IntervalSet.interval(_pi(3, 2), _pi(2))
    for part in (A, B, C, D):
        W = W.union(part)
    return W


def d_dilation_set(d) -> IntervalSet:
    """Three-interval wavelet set for a rational dilation factor ``d >= 2``.

    For ``d = 2`` the middle interval is empty.
    """
    d = Fraction(d)
    if d < 2:
        raise ValueError(f"dilation factor must be >= 2, got {d}")
    two_pi = _pi(2)
    return IntervalSet.from_bounds(
        [
            (-two_pi * d / (d + 1), -two_pi / (d + 1)),
            (two_pi / (d * d - 1), two_pi / (d + 1)),
            (two_pi * d / (d + 1), two_pi * d * d / (d * d - 1)),
        ]
    )


FAMILIES = {
    "shannon": shannon,
    "shannon_alpha": shannon_alpha,
    "journe": journe,
    "journe_beta": journe_beta,
    "subset_through": subset_through,
    "d_dilation": d_dilation_set,
}
