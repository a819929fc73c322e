import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from waveset.cyclotomic import Cyclotomic, as_coefficient, cyclotomic_polynomial, is_exact

orders = st.integers(1, 24)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("q", [Fraction(0), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(5, 7)])
def test_pythagorean_identity_is_exact(q):
    c, s = Cyclotomic.cos_pi(q), Cyclotomic.i_sin_pi(q)
    # (i sin)(conj(i sin)) = sin^2
    assert c * c.conjugate() + s * s.conjugate() == 1
    assert abs(complex(c) - math.cos(math.pi * q)) < 1e-15
    assert abs(complex(s) - 1j * math.sin(math.pi * q)) < 1e-15


@given(st.integers(-30, 30), orders)
def test_roots_of_unity(k, n):
    z = Cyclotomic.root_of_unity(k, n)
    assert z * z.conjugate() == 1
    assert abs(complex(z) - cmath.exp(2j * math.pi * k / n)) < 1e-12
    power = Cyclotomic.rational(1)
    for _ in range(n):
        power = power * z
    assert power == 1


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), orders, orders)
def test_field_operations_match_complex(a, b, c, d, n, m):
    x = Cyclotomic.root_of_unity(a, n) * b + 1
    y = Cyclotomic.root_of_unity(c, m) * d
    for exact, approx in ((x + y, complex(x) + complex(y)), (x * y, complex(x) * complex(y)), (x - y, complex(x) - complex(y))):
        assert abs(complex(exact) - approx) < 1e-9


def test_exact_equality_across_orders():
    assert Cyclotomic.root_of_unity(1, 4) == Cyclotomic.gaussian(0, 1)
    assert Cyclotomic.root_of_unity(2, 4) == -1
    assert Cyclotomic.cos_pi(Fraction(1, 3)) == Fraction(1, 2)
    assert Cyclotomic.cos_pi(Fraction(1, 4)) * Cyclotomic.cos_pi(Fraction(1, 4)) == Fraction(1, 2)


def test_coefficient_coercion():
    assert is_exact(as_coefficient(1))
    assert is_exact(as_coefficient(Fraction(1, 2)))
    assert not is_exact(as_coefficient(0.5))
    assert as_coefficient(1j) == 1j
    with pytest.raises(TypeError):
        as_coefficient("1")
