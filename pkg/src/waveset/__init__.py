"""Exact construction and verification of interval wavelet sets.

The public API re-exports the main entry points of the submodules.
"""

from .coefficients import (
    CoefficientFamily,
    PeriodicMultiplier,
    coefficient_matrix,
    conjugate_by_sigma,
    constant_multiplier,
    extend_multiplier,
    is_unitary_ae,
    phase_multiplier,
    synthesize,
)
from .congruence import check_certificate, dilation_congruence, is_wavelet_set, translation_congruence
from .cyclotomic import Cyclotomic
from .errors import CongruenceError, CriterionError, MapError, NotAWaveletSet, ParseError, WavesetError
from .exact import PI, TWO_PI, ExactScalar
from .families import d_dilation_set, journe, journe_beta, shannon, shannon_alpha, subset_through
from .interpolation import InterpolationMap, build_sigma, classify
from .intervals import Interval, IntervalSet
from .serialize import parse_scalar, parse_set
from .spectral import (
    ModulatedPiecewise,
    apply_dn_tl,
    gram_check,
    inner_product,
    local_commutant_check,
    msf_wavelet,
    parseval_check,
    riesz_combination_check,
    time_samples,
)

__version__ = "0.1.0"
