"""Shared constructors, strategies and brute-force oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from waveset import ExactScalar, IntervalSet, journe_beta, shannon, shannon_alpha
from waveset.intervals import Interval


def pi(p, q=1) -> ExactScalar:
    return ExactScalar.pi(Fraction(p, q))


def rat(p, q=1) -> ExactScalar:
    return ExactScalar.rational(Fraction(p, q))


fractions = st.builds(Fraction, st.integers(-960, 960), st.integers(1, 48))
scalars = st.builds(ExactScalar, fractions, fractions)
pi_scalars = st.builds(ExactScalar.pi, fractions)


@st.composite
def interval_sets(draw, lo=-8, hi=8, max_parts=4, denominator=24):
    """Finite unions of intervals with endpoints ``k*pi/denominator`` in ``[lo*pi, hi*pi]``."""
    n = draw(st.integers(0, 2 * max_parts))
    ticks = sorted(set(draw(st.lists(st.integers(lo * denominator, hi * denominator), min_size=n, max_size=n))))
    pairs = list(zip(ticks[::2], ticks[1::2]))
    return IntervalSet.from_bounds([(pi(a, denominator), pi(b, denominator)) for a, b in pairs])


def random_set(rng: random.Random, lo=-8, hi=8, max_parts=4, denominator=24, avoid_zero=False) -> IntervalSet:
    ticks = sorted({rng.randint(lo * denominator, hi * denominator) for _ in range(2 * rng.randint(1, max_parts))})
    pairs = [(a, b) for a, b in zip(ticks[::2], ticks[1::2])]
    if avoid_zero:
        pairs = [(a, b) for a, b in pairs if a >= 1 or b <= -1]
    return IntervalSet.from_bounds([(pi(a, denominator), pi(b, denominator)) for a, b in pairs])


def random_point(rng: random.Random, lo, hi) -> ExactScalar:
    """A point of ``[lo*pi, hi*pi)`` off every coarse grid (fine denominator plus a rational nudge)."""
    q = 7919
    k = rng.randrange(lo * q, hi * q)
    return pi(k, q) + rat(1, 10_007)


def translation_count(E: IntervalSet, x: ExactScalar, reach: int = 20) -> int:
    """Number of integers ``k`` with ``x + 2*pi*k`` in ``E``."""
    return sum(1 for k in range(-reach, reach + 1) if x + pi(2 * k) in E)


def dilation_count(E: IntervalSet, x: ExactScalar, d=2, reach: int = 40) -> int:
    """Number of integers ``n`` with ``d**n * x`` in ``E``."""
    d = Fraction(d)
    return sum(1 for n in range(-reach, reach + 1) if x * d**n in E)


def journe_pair():
    return journe_beta(pi(-1, 7)), journe_beta(pi(1, 7))


BETAS = [pi(-1, 7), pi(-1, 14), pi(0), pi(1, 14), pi(1, 7)]


def sigma_pairs():
    """Three interpolation settings used across the suite."""
    return [
        (journe_beta(pi(-1, 7)), journe_beta(pi(1, 7))),
        (journe_beta(pi(-1, 14)), journe_beta(pi(1, 14))),
        (shannon(), shannon_alpha(pi(1, 3))),
    ]


def interval(lo, hi) -> Interval:
    return Interval(lo, hi)
