import cmath
import math
import random
from fractions import Fraction

import pytest

from waveset.coefficients import (
    CoefficientFamily,
    coefficient_matrix,
    conjugate_by_sigma,
    constant_multiplier,
    extend_multiplier,
    fundamental_domain,
    is_dilation_periodic_pullback,
    is_unitary_ae,
    phase_multiplier,
    synthesize,
    with_phase,
)
from waveset.cyclotomic import Cyclotomic
from waveset.errors import CriterionError
from waveset.families import shannon, shannon_alpha
from waveset.intervals import IntervalSet
from waveset.interpolation import build_sigma, identity_map
from waveset.spectral import gram_check, inner_product, msf_wavelet

from helpers import journe_pair, pi, random_point, sigma_pairs

FD = fundamental_domain()
JM, JP = journe_pair()
SIGMA = build_sigma(JM, JP)
SIGMAS = [build_sigma(E, F) for E, F in sigma_pairs()]


def random_multiplier(rng: random.Random, exact=True, cuts=4):
    """Piecewise-constant multiplier with random breakpoints (multiples of pi/24) on each ring."""
    pieces = []
    for lo, hi in ((-48, -24), (24, 48)):
        ticks = sorted({lo, hi, *(rng.randint(lo + 1, hi - 1) for _ in range(cuts))})
        for a, b in zip(ticks, ticks[1:]):
            if exact:
                value = Cyclotomic.root_of_unity(rng.randint(0, 11), 12) * Fraction(rng.randint(1, 4), 4)
            else:
                value = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            pieces.append((IntervalSet.interval(pi(a, 24), pi(b, 24)), value))
    return extend_multiplier(pieces)


def indicator(P):
    return extend_multiplier([(P, 1), (FD - P, 0)])


def test_constant_multiplier_evaluates_everywhere():
    h = constant_multiplier(Fraction(1, 2))
    for x in (pi(1, 1000), pi(-77), pi(3) + 1):
        assert h(x) == Fraction(1, 2)
    assert h.sup_norm() == 0.5


def test_extension_is_dilation_periodic_at_random_points():
    rng = random.Random(1)
    h = random_multiplier(rng)
    for _ in range(1000):
        x = random_point(rng, -30, 30)
        assert h(x * 4) == h(x)
        assert h(x * 2) == h(x)


def test_multiplier_must_partition_fundamental_domain():
    with pytest.raises(CriterionError):
        extend_multiplier([(IntervalSet.interval(pi(1), pi(2)), 1)])
    with pytest.raises(CriterionError):
        extend_multiplier([(FD, 1), (IntervalSet.interval(pi(1), pi(3, 2)), 0)])
    with pytest.raises(CriterionError):
        constant_multiplier(1)(0)


def test_phase_multiplier_exact_and_float():
    h = phase_multiplier([(IntervalSet.interval(pi(-2), pi(-1)), Fraction(1, 3)), (IntervalSet.interval(pi(1), pi(2)), 0.25)])
    assert h(pi(-3, 2)) == Cyclotomic.cis_pi(Fraction(1, 3))
    assert h(pi(3, 2)) == cmath.exp(0.25j)
    assert not h.is_exact()
    assert abs(h.sup_norm() - 1) < 1e-15


def test_conjugation_by_identity_and_constants():
    rng = random.Random(2)
    h = random_multiplier(rng)
    same = conjugate_by_sigma(h, identity_map(shannon()))
    for _ in range(100):
        x = random_point(rng, -10, 10)
        assert same(x) == h(x)
    c = constant_multiplier(Cyclotomic.root_of_unity(1, 8))
    for sigma in SIGMAS:
        out = conjugate_by_sigma(c, sigma)
        assert all(v == Cyclotomic.root_of_unity(1, 8) for _, v in out.atoms)


@pytest.mark.parametrize("index", range(3))
def test_conjugation_matches_pointwise_pullback(index):
    """Oracle: evaluate h at sigma^-1(s) through the map's chart, point by point."""
    sigma = SIGMAS[index]
    inv = sigma.inverse()
    rng = random.Random(10 + index)
    h = random_multiplier(rng)
    out = conjugate_by_sigma(h, sigma)
    for _ in range(300):
        x = random_point(rng, -40, 40)
        assert out(x) == h(inv(x))


def test_indicator_conjugated_by_journe_pair_is_periodic():
    h = indicator(IntervalSet.interval(pi(1), pi(3, 2)))
    out = conjugate_by_sigma(h, SIGMA)
    assert is_dilation_periodic_pullback(h, SIGMA, out, levels=range(-4, 5))


def test_periodicity_check_detects_wrong_result():
    h = indicator(IntervalSet.interval(pi(1), pi(3, 2)))
    out = conjugate_by_sigma(h, SIGMA)
    assert not is_dilation_periodic_pullback(h, SIGMA, h) or out.atoms == h.atoms


def test_family_size_must_match_torsion():
    with pytest.raises(CriterionError):
        CoefficientFamily([constant_multiplier(1)], SIGMA)
    with pytest.raises(CriterionError):
        CoefficientFamily([constant_multiplier(1)] * 3, SIGMA)
    assert CoefficientFamily([constant_multiplier(1)], identity_map(shannon())).k == 1


def test_matrix_k1_and_k2():
    fam1 = CoefficientFamily([constant_multiplier(Fraction(1, 3))], identity_map(shannon()))
    assert coefficient_matrix(fam1, pi(3, 2)) == [[Fraction(1, 3)]]
    a = Fraction(1, 6)
    c, s = Cyclotomic.cos_pi(a), Cyclotomic.i_sin_pi(a)
    fam = CoefficientFamily([constant_multiplier(c), constant_multiplier(s)], SIGMA)
    M = coefficient_matrix(fam, pi(5, 4))
    assert M[0][0] == c and M[0][1] == s and M[1][0] == s and M[1][1] == c


def test_matrix_k3_layout_is_cyclic_shift():
    sigma = build_sigma(shannon_alpha(pi(-5, 6)), shannon_alpha(pi(-1, 3)))
    fam = CoefficientFamily([constant_multiplier(v) for v in (1, 2, 3)], sigma)
    M = coefficient_matrix(fam, pi(4, 3))
    assert M == [[1, 2, 3], [3, 1, 2], [2, 3, 1]]
    rng = random.Random(4)
    hs = [random_multiplier(rng) for _ in range(3)]
    fam = CoefficientFamily(hs, sigma)
    inverse_powers = [sigma.power(-i) for i in range(3)]
    for _ in range(50):
        x = random_point(rng, -9, 9)
        M = coefficient_matrix(fam, x)
        for i in range(3):
            for j in range(3):
                assert M[i][j] == hs[(j - i) % 3](inverse_powers[i](x))


@pytest.mark.parametrize("a", [Fraction(0), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)])
def test_rotation_family_is_unitary_exactly(a):
    fam = CoefficientFamily([constant_multiplier(Cyclotomic.cos_pi(a)), constant_multiplier(Cyclotomic.i_sin_pi(a))], SIGMA)
    verdict = is_unitary_ae(fam)
    assert verdict.unitary and verdict.exact


def test_float_rotation_family_uses_tolerance():
    t = 0.3
    fam = CoefficientFamily([constant_multiplier(math.cos(t)), constant_multiplier(1j * math.sin(t))], SIGMA)
    verdict = is_unitary_ae(fam)
    assert verdict.unitary and not verdict.exact
    fam = CoefficientFamily([constant_multiplier(math.cos(t) + 1e-9), constant_multiplier(1j * math.sin(t))], SIGMA)
    assert not is_unitary_ae(fam)


def test_all_ones_family_fails_with_region():
    fam = CoefficientFamily([constant_multiplier(1), constant_multiplier(1)], SIGMA)
    verdict = is_unitary_ae(fam)
    assert not verdict.unitary
    assert verdict.violation is not None and verdict.violation.is_subset(FD)
    with pytest.raises(CriterionError):
        synthesize(fam)


def test_permutation_family_on_invariant_piece():
    Q = IntervalSet.interval(pi(1), pi(3, 2))
    moved = conjugate_by_sigma(indicator(Q), SIGMA)
    P = Q | IntervalSet(iv for iv, v in moved.atoms if v == 1)
    fam = CoefficientFamily([indicator(P), indicator(FD - P)], SIGMA)
    assert is_unitary_ae(fam)
    assert gram_check(synthesize(fam), 3, 8).max_deviation < 1e-8


def test_non_invariant_permutation_family_fails():
    P = IntervalSet.interval(pi(1), pi(3, 2))
    fam = CoefficientFamily([indicator(P), indicator(FD - P)], SIGMA)
    assert not is_unitary_ae(fam)


def test_synthesis_examples():
    fam = CoefficientFamily([constant_multiplier(1)], identity_map(shannon()))
    f = synthesize(fam)
    diff = f - msf_wavelet(shannon())
    assert diff.norm_sq() < 1e-28
    fam = CoefficientFamily([constant_multiplier(1), constant_multiplier(0)], SIGMA)
    assert (synthesize(fam) - msf_wavelet(JM)).norm_sq() < 1e-28
    fam = CoefficientFamily([constant_multiplier(0), constant_multiplier(1)], SIGMA)
    assert (synthesize(fam) - msf_wavelet(JP)).norm_sq() < 1e-28


def test_forced_all_ones_norm_counts_overlap():
    fam = CoefficientFamily([constant_multiplier(1), constant_multiplier(1)], SIGMA)
    psi = synthesize(fam, force=True)
    overlap = (JM & JP).measure().to_float()
    assert abs(psi.norm_sq() - (2 + overlap / math.pi)) < 1e-10
    assert abs(psi.norm_sq() - 18 / 7) < 1e-10


def test_phase_attached_to_shannon_is_orthonormal():
    rng = random.Random(9)
    h = random_multiplier(rng, exact=False)
    phases = extend_multiplier([(IntervalSet([iv]), v / abs(v)) for iv, v in h.atoms])
    psi = with_phase(shannon(), phases)
    assert abs(inner_product(psi, psi) - 1) < 1e-12
    assert gram_check(psi, 3, 8).max_deviation < 1e-8
