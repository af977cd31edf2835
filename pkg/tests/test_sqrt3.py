import random
from fractions import Fraction as F

import pytest

from fivepoint.sqrt3 import QSqrt3, SQRT3, SQRT3_OVER_3
from helpers import rand_fraction

SQRT3_F = 3 ** 0.5


def test_field_axioms_random():
    rng = random.Random(101)
    for _ in range(200):
        a = QSqrt3(rand_fraction(rng), rand_fraction(rng))
        b = QSqrt3(rand_fraction(rng), rand_fraction(rng))
        assert (a + b) - b == a
        if b:
            assert (a * b) / b == a
        assert a * b == b * a
        assert (a + b) * (a - b) == a * a - b * b


def test_sqrt3_squares_to_three():
    assert SQRT3 * SQRT3 == QSqrt3.of(3)
    assert SQRT3_OVER_3 * SQRT3_OVER_3 == QSqrt3.of(F(1, 3))
    assert SQRT3_OVER_3 * 3 == SQRT3


def test_exact_ordering():
    rng = random.Random(103)
    for _ in range(300):
        a = QSqrt3(rand_fraction(rng, -5, 5, 40), rand_fraction(rng, -5, 5, 40))
        b = QSqrt3(rand_fraction(rng, -5, 5, 40), rand_fraction(rng, -5, 5, 40))
        lt = a < b
        approx_a = float(a.a) + float(a.b) * SQRT3_F
        approx_b = float(b.a) + float(b.b) * SQRT3_F
        if abs(approx_a - approx_b) > 1e-9:
            assert lt == (approx_a < approx_b)


def test_sqrt3_over_3_exceeds_half():
    # the parity threshold comparison used for the TBP avatar
    assert SQRT3_OVER_3 > F(1, 2)
    assert SQRT3_OVER_3 < F(3, 5)


def test_rational_conversion():
    assert QSqrt3.of(F(2, 3)).to_fraction() == F(2, 3)
    with pytest.raises(ValueError):
        SQRT3.to_fraction()
    assert abs(SQRT3.to_float() - SQRT3_F) < 1e-15


def test_powers():
    x = QSqrt3(1, 1)
    assert x ** 0 == QSqrt3.of(1)
    assert x ** 3 == x * x * x
    assert x ** -2 == (x * x).inverse()
