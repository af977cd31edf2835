import math
import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fivepoint.exactnum import (Dyadic30, Interval, IntervalDivisionError,
                                bound_power_sum, compare_power, iv_op,
                                ln2_enclosure, ln3_enclosure, ln_enclosure,
                                log_enclosure, pow_interval, rational_from_str,
                                rational_to_str, sqrt_interval)
from helpers import mpf_of, rand_fraction

fractions_st = st.fractions(min_value=-50, max_value=50, max_denominator=10 ** 6)


def test_iv_op_examples():
    a = Interval(F(1), F(2))
    b = Interval(F(3), F(4))
    assert iv_op("add", a, b) == Interval(F(4), F(6))
    assert iv_op("mul", Interval(F(-1), F(2)), b) == Interval(F(-4), F(8))
    with pytest.raises(IntervalDivisionError):
        iv_op("div", Interval(F(1), F(1)), Interval(F(0), F(1)))


@given(fractions_st, fractions_st, fractions_st, fractions_st,
       st.sampled_from(["add", "sub", "mul", "div", "min", "max"]))
@settings(max_examples=300, deadline=None)
def test_iv_containment_property(a, b, c, d, kind):
    ia = Interval(min(a, b), max(a, b))
    ib = Interval(min(c, d), max(c, d))
    if kind == "div" and ib.lo <= 0 <= ib.hi:
        with pytest.raises(IntervalDivisionError):
            iv_op(kind, ia, ib)
        return
    out = iv_op(kind, ia, ib)
    for x in (ia.lo, ia.hi, ia.mid()):
        for y in (ib.lo, ib.hi, ib.mid()):
            exact = {"add": x + y, "sub": x - y, "mul": x * y,
                     "div": x / y if y else None, "min": min(x, y),
                     "max": max(x, y)}[kind]
            assert out.lo <= exact <= out.hi


def test_iv_monotonicity_under_widening():
    rng = random.Random(11)
    for _ in range(200):
        a = sorted(rand_fraction(rng) for _ in range(2))
        b = sorted(rand_fraction(rng, lo=1, hi=9) for _ in range(2))
        inner = Interval(a[0], a[1]) * Interval(b[0], b[1])
        outer = Interval(a[0] - 1, a[1] + 1) * Interval(b[0], b[1] + 1)
        assert outer.lo <= inner.lo and inner.hi <= outer.hi


def test_round_out_widens():
    iv = Interval(F(1, 3), F(2, 3))
    r = iv.round_out(16)
    assert r.lo <= iv.lo and iv.hi <= r.hi
    assert r.lo.denominator <= 1 << 16 and r.hi.denominator <= 1 << 16


def test_dyadic30_roundtrip():
    d = Dyadic30(619916940)
    assert Dyadic30.from_rational(d.to_rational()) == d
    with pytest.raises(ValueError):
        Dyadic30.from_rational(F(1, 3))


def test_rational_str_roundtrip():
    for s in ("3/7", "-22", "0", "619916940/1073741824"):
        assert rational_to_str(rational_from_str(s)) in (s, str(F(s)))


def test_compare_power_examples():
    # sqrt(2) < 3/2 and not sqrt(2) < 7/5
    assert compare_power(2, 1, 1, 2, 3, 2, "<")
    assert not compare_power(2, 1, 1, 2, 7, 5, "<")
    # 3^(13/2) vs 1261: 3^13 = 1594323 vs 1261^2 = 1590121, so 3^(13/2) > 1261
    assert compare_power(3, 1, 13, 2, 1261, 1, ">") == (3 ** 13 > 1261 ** 2)
    assert not compare_power(3, 1, 13, 2, 1261, 1, "<")


def test_compare_power_against_floating_oracle():
    rng = random.Random(5)
    agree = 0
    for _ in range(2000):
        a, b = rng.randint(1, 50), rng.randint(1, 50)
        p, q = rng.randint(1, 12), rng.randint(1, 6)
        c, d = rng.randint(1, 50), rng.randint(1, 50)
        lhs = mpmath.power(mpmath.mpf(a) / b, mpmath.mpf(p) / q)
        rhs = mpmath.mpf(c) / d
        if abs(lhs - rhs) < mpmath.mpf(2) ** -100:
            continue
        assert compare_power(a, b, p, q, c, d, "<") == (lhs < rhs)
        agree += 1
    assert agree > 1500


def test_bound_power_sum_semantics():
    # 1/4 - 1/2 = -1/4: above -3/10, not above -1/5
    assert bound_power_sum([F(2)], [2], F(2), F(-3, 10))
    assert not bound_power_sum([F(2)], [2], F(2), F(-1, 5))
    assert bound_power_sum([F(3, 2)], [], F(2), F(1, 3))


def test_bound_power_sum_soundness_oracle():
    rng = random.Random(7)
    for _ in range(60):
        bs = [F(rng.randint(11, 60), 10) for _ in range(rng.randint(1, 10))]
        asL = [rng.choice([2, 3, 4]) for _ in range(rng.randint(0, 10))]
        s = F(rng.randint(1, 32), rng.choice([1, 2, 4]))
        true = sum(mpf_of(b) ** (-mpf_of(s)) for b in bs) - \
            sum(mpmath.mpf(a) ** (-mpf_of(s) / 2) for a in asL)
        C = F(rng.randint(-40, 40), 16)
        if bound_power_sum(bs, asL, s, C):
            assert true > mpf_of(C)


def test_pow_interval_contains_and_tightens():
    rng = random.Random(3)
    for _ in range(400):
        b = F(rng.randint(1, 2000), rng.randint(1, 2000))
        e = F(rng.randint(-64, 64), rng.randint(1, 64))
        iv = pow_interval(b, e, 48)
        true = mpmath.power(mpf_of(b), mpf_of(e))
        assert mpf_of(iv.lo) <= true <= mpf_of(iv.hi)
        assert mpf_of(iv.width()) <= mpmath.mpf(2) ** -30 * (1 + abs(true)) * 4


def test_log_enclosure_examples():
    iv = log_enclosure(Interval(F(1), F(1)), 60)
    assert iv.contains(F(0)) and iv.width() <= F(1, 1 << 40)
    l2 = log_enclosure(Interval(F(2), F(2)), 60)
    assert F(6931471, 10 ** 7) <= l2.lo and l2.hi <= F(6931472, 10 ** 7)
    wide = log_enclosure(Interval(F(1, 2), F(2)), 60)
    assert wide.lo < -F(6931, 10 ** 4) < F(6931, 10 ** 4) < wide.hi
    with pytest.raises(ValueError):
        log_enclosure(Interval(F(-1), F(2)))


def test_ln_oracle_agreement():
    for x in (F(2), F(3), F(445, 512), F(10 ** 9, 7), F(1, 97)):
        iv = ln_enclosure(x, 70)
        t = mpmath.log(mpf_of(x))
        assert mpf_of(iv.lo) <= t <= mpf_of(iv.hi)
        assert iv.width() <= F(1, 1 << 60)
    assert mpf_of(ln2_enclosure(80).lo) <= mpmath.log(2) <= mpf_of(ln2_enclosure(80).hi)
    assert mpf_of(ln3_enclosure(80).lo) <= mpmath.log(3) <= mpf_of(ln3_enclosure(80).hi)


def test_sqrt_interval():
    for x in (F(2), F(3), F(1, 7), F(160000)):
        iv = sqrt_interval(x, 60)
        assert iv.lo * iv.lo <= x <= iv.hi * iv.hi
