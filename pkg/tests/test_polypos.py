import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fivepoint.polypos import (MultiPoly, SignSequence,
                               descartes_max_sign_changes, poly_from_text,
                               poly_to_text, positive_numerator,
                               prove_positive_box, subdivide, wpd_check)
from helpers import rand_fraction


def P1(coeffs):
    return MultiPoly(1, {(i,): F(c) for i, c in enumerate(coeffs) if c})


def test_wpd_examples():
    assert wpd_check(P1([1, -1, 1])) == "WeakPositiveDominant"
    assert wpd_check(P1([1, -2])) == "Inconclusive"
    assert wpd_check(MultiPoly(2, {(1, 0): F(1), (0, 1): F(1)})) == \
        "WeakPositiveDominant"
    assert wpd_check(P1([1, 1])) == "PositiveDominant"
    assert wpd_check(MultiPoly(1)) == "Inconclusive"


def test_wpd_soundness_on_grid():
    rng = random.Random(31)
    for _ in range(60):
        n = rng.randint(1, 3)
        terms = {}
        for _ in range(rng.randint(1, 12)):
            m = tuple(rng.randint(0, 4) for _ in range(n))
            terms[m] = terms.get(m, F(0)) + rand_fraction(rng, -3, 3, 20)
        P = MultiPoly(n, {m: c for m, c in terms.items() if c})
        verdict = wpd_check(P)
        if verdict == "Inconclusive":
            continue
        steps = 6 if n < 3 else 4
        for idx in range(steps ** n):
            pt = []
            rem = idx
            for _ in range(n):
                pt.append(F(1 + rem % steps, steps))
                rem //= steps
            val = P.eval(pt)
            assert val > 0, (verdict, pt)
        if verdict == "PositiveDominant":
            assert P.eval((F(0),) * n) >= 0


def test_subdivide_examples_and_identity():
    x = MultiPoly.var(1, 0)
    assert subdivide(x, 0, 0) == x.scale(F(1, 2))
    s1 = subdivide(x, 0, 1)
    assert s1.eval([F(0)]) == F(1, 2)
    rng = random.Random(33)
    for _ in range(100):
        n = rng.randint(1, 3)
        terms = {tuple(rng.randint(0, 3) for _ in range(n)):
                 rand_fraction(rng, -2, 2, 9) for _ in range(6)}
        P = MultiPoly(n, {m: c for m, c in terms.items() if c})
        v = rng.randrange(n)
        half = rng.randint(0, 1)
        Q = subdivide(P, v, half)
        pt = [rand_fraction(rng, 0, 1, 64) for _ in range(n)]
        shifted = list(pt)
        shifted[v] = F(half, 2) + pt[v] / 2
        assert Q.eval(pt) == P.eval(shifted)


def test_positive_numerator():
    x = MultiPoly.var(1, 0)
    one = MultiPoly.const(1, F(1))
    assert positive_numerator(x, -one) == -x
    assert positive_numerator(one - x, one + x) == one - x
    with pytest.raises(ValueError):
        positive_numerator(x, x - one)  # denominator vanishes at 1


def test_descartes_examples():
    assert descartes_max_sign_changes([1, -1, -1, 1]) == 2
    assert descartes_max_sign_changes([1, 1, 1]) == 0
    assert descartes_max_sign_changes([-1, 1, 1, 1, -1]) == 2
    assert descartes_max_sign_changes([1, -1, 1, 1, -1]) == 3
    assert descartes_max_sign_changes([1, 1, -1, 1, -1]) == 3


def test_descartes_bound_vs_bruteforce():
    rng = random.Random(35)
    for _ in range(60):
        n = rng.randint(2, 5)
        bases = sorted(F(rng.randint(1, 63), 64) for _ in range(n))
        if len(set(bases)) != n:
            continue
        coeffs = [rng.choice([-1, 1]) * F(rng.randint(1, 9)) for _ in range(n)]
        seq = SignSequence(tuple(coeffs), tuple(bases))
        K = descartes_max_sign_changes(seq)
        mpmath.mp.prec = 100
        vals = []
        for j in range(-400, 401):
            s = mpmath.mpf(j) / 10
            vals.append(sum(float(c) * mpmath.power(float(b), s)
                            for c, b in zip(coeffs, bases)))
        changes = sum(1 for i in range(len(vals) - 1)
                      if vals[i] * vals[i + 1] < 0)
        assert changes <= K


def test_sign_sequence_validation():
    with pytest.raises(ValueError):
        SignSequence((F(1), F(0)), (F(1, 2), F(3, 4)))
    with pytest.raises(ValueError):
        SignSequence((F(1), F(1)), (F(3, 4), F(1, 2)))


def test_prove_positive_box():
    x = MultiPoly.var(1, 0)
    one = MultiPoly.const(1, F(1))
    assert prove_positive_box(one, 4).ok
    pr = prove_positive_box((x - F(1, 2)) ** 2 + F(1, 100), 6)
    assert pr.ok and pr.depth_used <= 5
    assert not prove_positive_box(x - 1, 8).ok
    # 2-var with a tight pinch
    y = MultiPoly.var(2, 1)
    x2 = MultiPoly.var(2, 0)
    Q = (x2 - y) * (x2 - y) + MultiPoly.const(2, F(1, 50))
    assert prove_positive_box(Q, 10).ok


def test_exact_division():
    a, b = MultiPoly.var(3, 0), MultiPoly.var(3, 1)
    c = MultiPoly.var(3, 2)
    f = (a - b) * (a - b) * (a + b + c + 3) * (a * c + 7)
    g = f.divide_exact((a - b) * (a - b))
    assert g == (a + b + c + 3) * (a * c + 7)
    assert f.divide_exact(a + c) is None
    assert (MultiPoly(3)).divide_exact(a) == MultiPoly(3)


def test_poly_text_roundtrip():
    P = MultiPoly(3, {(1, 0, 2): F(3, 7), (0, 0, 0): F(-2)})
    assert poly_from_text(poly_to_text(P)) == P


@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=1))
@settings(max_examples=20, deadline=None)
def test_subdivision_preserves_wpd_positivity(vi, half):
    # positivity certified by WPD survives subdivision (both halves positive)
    P = MultiPoly(4, {(0, 0, 0, 0): F(2), (1, 1, 0, 0): F(-1),
                      (0, 0, 2, 0): F(1), (0, 1, 0, 1): F(-1)})
    if wpd_check(P) == "Inconclusive":
        return
    Q = subdivide(P, vi, half)
    pt = (F(1, 3), F(2, 3), F(1, 5), F(4, 5))
    assert Q.eval(pt) > 0
