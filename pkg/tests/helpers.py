import random
from fractions import Fraction

import mpmath

mpmath.mp.prec = 200


def mpf_of(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def rand_fraction(rng: random.Random, lo=-10, hi=10, max_den=1000) -> Fraction:
    den = rng.randint(1, max_den)
    num = rng.randint(int(lo * den), int(hi * den))
    return Fraction(num, den)
