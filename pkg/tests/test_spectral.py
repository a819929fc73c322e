import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate

from waveset.congruence import is_wavelet_set
from waveset.families import d_dilation_set, journe, journe_beta, shannon, shannon_alpha, subset_through
from waveset.intervals import Interval, IntervalSet
from waveset.interpolation import build_sigma
from waveset.spectral import (
    ModulatedPiecewise,
    Term,
    apply_dn_tl,
    gram_check,
    gram_matrix,
    inner_product,
    local_commutant_check,
    modulate,
    msf_wavelet,
    parseval_check,
    riesz_combination_check,
    time_samples,
)

from helpers import journe_pair, pi, rat, sigma_pairs

E0 = shannon()
PSI0 = msf_wavelet(E0)


def random_function(rng: random.Random, terms=3) -> ModulatedPiecewise:
    out = []
    for _ in range(terms):
        a = rng.randint(-16, 15)
        b = rng.randint(a + 1, 16)
        out.append(
            Term(
                complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                Fraction(rng.randint(-8, 8), rng.randint(1, 4)),
                Interval(pi(a, 4), pi(b, 4)),
            )
        )
    return ModulatedPiecewise(out)


def quad_inner(f, g):
    """Adaptive quadrature of f * conj(g) over the union of supports, split at every endpoint."""
    edges = sorted({t.support.lo.to_float() for t in f.terms + g.terms} | {t.support.hi.to_float() for t in f.terms + g.terms})
    total = 0j
    for a, b in zip(edges, edges[1:]):
        re = integrate.quad(lambda s: (f(s) * np.conj(g(s))).real, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
        im = integrate.quad(lambda s: (f(s) * np.conj(g(s))).imag, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
        total += complex(re, im)
    return total


def test_msf_norm_and_shape():
    assert abs(PSI0.norm_sq() - 1) < 1e-15
    assert len(msf_wavelet(journe())) == 4
    assert abs(PSI0(1.5 * math.pi) - 1 / math.sqrt(2 * math.pi)) < 1e-15
    assert PSI0(0.5) == 0


def test_dn_tl_examples():
    assert apply_dn_tl(PSI0, 0, 0).terms == PSI0.terms
    g = apply_dn_tl(ModulatedPiecewise.indicator(IntervalSet.interval(pi(1), pi(2))), 1, 0)
    (t,) = g.terms
    assert t.support == Interval(pi(2), pi(4))
    assert abs(t.coeff - 2**-0.5) < 1e-15
    h = apply_dn_tl(PSI0, 1, 3)
    assert [t.freq for t in h.terms] == [Fraction(-3, 2)] * 2
    assert [t.support for t in h.terms] == [Interval(pi(-4), pi(-2)), Interval(pi(2), pi(4))]


def test_dn_tl_pointwise_definition():
    rng = random.Random(0)
    f = random_function(rng)
    s = np.linspace(-30, 30, 100)
    for n, l in ((1, 3), (-2, -1), (3, 5), (0, 2)):
        g = apply_dn_tl(f, n, l)
        expected = 2 ** (-n / 2) * np.exp(-1j * l * 2.0**-n * s) * f(2.0**-n * s)
        assert np.max(np.abs(g(s) - expected)) < 1e-12


def test_dn_tl_composition_rule():
    """``D^n T^l D^-n T^m f = exp(-i (l d^-n + m) s) f`` on the Fourier side."""
    rng = random.Random(1)
    f = random_function(rng)
    s = np.linspace(-20, 20, 100)
    for n, l, m in ((1, 2, 3), (2, -1, 4), (-1, 1, 0), (0, 5, -2)):
        lhs = apply_dn_tl(apply_dn_tl(f, -n, m), n, l)
        rhs = modulate(f, l / Fraction(2) ** n + m)
        assert np.max(np.abs(lhs(s) - rhs(s))) < 1e-12


def test_basic_inner_products():
    assert abs(inner_product(PSI0, PSI0) - 1) < 1e-15
    assert abs(inner_product(apply_dn_tl(PSI0, 1, 0), PSI0)) < 1e-15
    assert abs(inner_product(apply_dn_tl(PSI0, 0, 1), PSI0)) < 1e-15


def test_inner_product_against_quadrature():
    rng = random.Random(2)
    for _ in range(8):
        f, g = random_function(rng), random_function(rng)
        assert abs(inner_product(f, g) - quad_inner(f, g)) < 1e-8


def test_sesquilinear_and_hermitian():
    rng = random.Random(3)
    for _ in range(20):
        f, g, h = (random_function(rng) for _ in range(3))
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        assert abs(inner_product(f, g) - inner_product(g, f).conjugate()) < 1e-12
        assert abs(inner_product(f.scale(a) + h, g) - (a * inner_product(f, g) + inner_product(h, g))) < 1e-12
        assert abs(inner_product(f, g.scale(a)) - a.conjugate() * inner_product(f, g)) < 1e-12


def test_dn_tl_is_unitary():
    rng = random.Random(4)
    for _ in range(20):
        f = random_function(rng)
        n, l = rng.randint(-3, 3), rng.randint(-10, 10)
        assert abs(apply_dn_tl(f, n, l).norm_sq() - f.norm_sq()) < 1e-12


def test_gram_matrix_matches_pairwise():
    rng = random.Random(5)
    fs = [random_function(rng, terms=rng.randint(1, 4)) for _ in range(5)]
    G = gram_matrix(fs, fs)
    for i, f in enumerate(fs):
        for j, g in enumerate(fs):
            assert abs(G[i, j] - inner_product(f, g)) < 1e-13


@pytest.mark.parametrize(
    "E, d",
    [
        (shannon(), 2),
        (journe(), 2),
        (shannon_alpha(pi(1, 3)), 2),
        (journe_beta(pi(1, 14)), 2),
        (subset_through(IntervalSet.interval(pi(9, 8), pi(5, 4))), 2),
        (d_dilation_set(3), 3),
        (d_dilation_set(Fraction(5, 2)), Fraction(5, 2)),
    ],
)
def test_certified_sets_are_orthonormal(E, d):
    is_wavelet_set(E, d)
    report = gram_check(msf_wavelet(E), 3, 8, d=d)
    assert report.passed and report.max_deviation < 1e-10


def test_gram_detects_non_orthonormal_function():
    report = gram_check(msf_wavelet(IntervalSet.interval(pi(1), pi(3))), 2, 4)
    assert not report.passed


def test_gram_entries_shape_and_validation():
    report = gram_check(PSI0, 2, 3, keep_entries=True)
    assert report.entries.shape == (5, 7)
    assert abs(report.entries[2, 3] - 1) < 1e-14
    with pytest.raises(ValueError):
        gram_check(PSI0, 0, 3)


def test_hardy_set_passes_gram_but_fails_parseval():
    hardy = msf_wavelet(IntervalSet.interval(pi(2), pi(4)))
    assert gram_check(hardy, 3, 8).passed
    g = msf_wavelet(IntervalSet.interval(pi(-2), pi(-1)))
    report = parseval_check(hardy, [g], 4, 32)
    assert report.max_deficiency > 0.4
    assert abs(report.deficiencies[0] - g.norm_sq()) < 1e-12


def test_parseval_shannon_and_zero():
    report = parseval_check(PSI0, [PSI0, ModulatedPiecewise()], 4, 64)
    assert report.max_deficiency < 1e-8
    assert report.deficiencies[1] == 0
    assert report.uncovered_levels == [[], []]


def test_parseval_reports_truncation_for_localized_test_function():
    g = msf_wavelet(IntervalSet.interval(pi(5, 4), pi(3, 2)))
    report = parseval_check(PSI0, [g], 4, 64)
    assert 0 <= report.deficiencies[0] <= report.tail_bounds[0] + 1e-12
    with pytest.raises(ValueError):
        parseval_check(PSI0, [msf_wavelet(IntervalSet.interval(pi(40), pi(41)))], 2, 8)


@pytest.mark.parametrize("index", range(3))
def test_pullback_preserves_norm_and_matches_pointwise(index):
    E, F = sigma_pairs()[index]
    sigma = build_sigma(E, F)
    inv = sigma.inverse()
    rng = random.Random(index)
    f = apply_dn_tl(random_function(rng), 1, 2)
    f = ModulatedPiecewise(t for t in f.terms if t.support.lo > pi(0) or t.support.hi < pi(0))
    g = f.pullback(sigma)
    assert abs(g.norm_sq() - f.norm_sq()) < 1e-12
    for _ in range(50):
        x = pi(rng.randint(-400, 400), 37) + rat(1, 1009)
        if x == 0:
            continue
        assert abs(g(x.to_float()) - f(inv(x).to_float())) < 1e-9


def test_simplify_keeps_values():
    rng = random.Random(8)
    f = random_function(rng, 5) + random_function(rng, 5)
    s = np.linspace(-13, 13, 301)
    assert np.max(np.abs(f.simplify()(s) - f(s))) < 1e-12
    assert len((PSI0 - PSI0).simplify()) == 0


def test_local_commutant_trivial_and_pair():
    assert local_commutant_check(E0, E0, 2, 3) == 0
    E, F = sigma_pairs()[1]
    assert local_commutant_check(E, F, 1, 1) < 1e-10


def test_riesz_at_zero_lambda():
    E, F = journe_pair()
    report = riesz_combination_check(E, F, 0, 2, 6)
    assert abs(report.min_eig - 1) < 1e-10 and abs(report.max_eig - 1) < 1e-10


def test_time_samples_shannon():
    t = np.linspace(-8, 8, 100)
    expected = (np.sin(2 * np.pi * t) - np.sin(np.pi * t)) / (np.pi * t)
    assert np.max(np.abs(time_samples(PSI0, t) - expected)) < 1e-12
    assert abs(time_samples(PSI0, [0.0])[0] - 1) < 1e-14
    assert np.all(time_samples(ModulatedPiecewise(), t) == 0)


def test_time_samples_against_quadrature():
    f = apply_dn_tl(msf_wavelet(journe()), 0, 1)
    for t in np.linspace(-8, 8, 100):
        re = sum(
            integrate.quad(lambda s: (f(s) * cmath.exp(1j * s * t)).real, iv.lo.to_float(), iv.hi.to_float(), epsabs=1e-13)[0]
            for iv in journe()
        )
        im = sum(
            integrate.quad(lambda s: (f(s) * cmath.exp(1j * s * t)).imag, iv.lo.to_float(), iv.hi.to_float(), epsabs=1e-13)[0]
            for iv in journe()
        )
        assert abs(time_samples(f, [t])[0] - complex(re, im) / math.sqrt(2 * math.pi)) < 1e-8
