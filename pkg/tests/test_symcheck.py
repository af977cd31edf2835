import math
import random
from fractions import Fraction as F

import pytest

from fivepoint.geom import Avatar, in_domain
from fivepoint.symcheck import (check_appendix_b22_b23, check_b1, check_b2,
                                check_b3, check_b42, symmetrize)
from helpers import rand_fraction


def test_symmetrize_structure():
    a = Avatar((F(1), F(0)), (F(0), F(-1)), (F(-1), F(0)), (F(0), F(1)))
    sym = symmetrize(a)
    assert sym.d02_sq == 1  # the symmetric avatar is a fixed point
    assert sym.d13_sq == 1
    assert sym.exact is not None
    assert sym.exact.p0 == (F(1), F(0)) and sym.exact.p2 == (F(-1), F(0))
    assert not sym.degenerate


def test_symmetrize_projection_and_degeneracy():
    # p0 - p2 horizontal: the projection keeps the vertical component
    a = Avatar((F(2), F(0)), (F(1), F(3)), (F(-2), F(0)), (F(1), F(-4)))
    sym = symmetrize(a)
    assert sym.d13_sq == F(3 + 4, 2) ** 2
    b = Avatar((F(2), F(0)), (F(1), F(3)), (F(-2), F(0)), (F(1), F(3)))
    assert symmetrize(b).degenerate
    with pytest.raises(ValueError):
        symmetrize(Avatar((F(1), F(1)), (F(0), F(0)), (F(1), F(1)),
                          (F(2), F(2))))


def test_symmetrize_interval_contains_truth():
    rng = random.Random(81)
    for _ in range(50):
        pts = [(rand_fraction(rng, -1, 1, 32), rand_fraction(rng, -1, 1, 32))
               for _ in range(4)]
        if pts[0] == pts[2]:
            continue
        sym = symmetrize(Avatar(*pts))
        true_d02 = math.hypot(float(pts[0][0] - pts[2][0]),
                              float(pts[0][1] - pts[2][1])) / 2
        assert float(sym.d02.lo) <= true_d02 <= float(sym.d02.hi) + 1e-12


def test_b1_report():
    rep = check_b1()
    assert rep.ok
    assert rep.tan_bound_ok  # tan(1/21) > 16/349 as printed


def test_b2_report():
    rep = check_b2()
    assert rep.ok
    assert rep.a2_identity and rep.b2_identity


def test_b3_report():
    rep = check_b3()
    assert rep.ok


def test_b42_report():
    rep = check_b42()
    assert rep.ok


def test_appendix_report():
    rep = check_appendix_b22_b23()
    assert rep.ok
    assert "B223" in rep.note or "B221" in rep.note


def _riesz_energy_float(pts, s):
    def inv(p):
        n = 1 + p[0] ** 2 + p[1] ** 2
        return (2 * p[0] / n, 2 * p[1] / n, 1 - 2 / n)

    sph = [inv(p) for p in pts] + [(0.0, 0.0, 1.0)]
    tot = 0.0
    for i in range(5):
        for j in range(i + 1, 5):
            d2 = sum((a - b) ** 2 for a, b in zip(sph[i], sph[j]))
            tot += d2 ** (-s / 2)
    return tot


def test_symmetrization_lowers_energy_on_upsilon_samples():
    """Floating spot-check of the symmetrization conclusion on the special
    domain: E_s(sym(a)) <= E_s(a) + slack for s in {12, 14, 15+25/512}."""
    rng = random.Random(83)
    checked = 0
    for _ in range(400):
        p0 = (F(rng.randint(433, 498), 512), F(0))
        p1 = (F(rng.randint(-16, 16), 512), F(rng.randint(-464, -349), 512))
        p2 = (F(rng.randint(-498, -400), 512), F(rng.randint(0, 24), 512))
        p3 = (F(rng.randint(-16, 16), 512), F(rng.randint(349, 464), 512))
        a = Avatar(p0, p1, p2, p3)
        if not in_domain(a, "Upsilon"):
            continue
        checked += 1
        sym = symmetrize(a)
        d02 = float(sym.d02.mid())
        d13 = float(sym.d13.mid())
        spts = [(d02, 0.0), (0.0, -d13), (-d02, 0.0), (0.0, d13)]
        fpts = [(float(x), float(y)) for x, y in a.points()]
        for s in (12.0, 14.0, 15.0 + 25 / 512):
            assert _riesz_energy_float(spts, s) <= \
                _riesz_energy_float(fpts, s) + 2 ** -30
    assert checked >= 50


def test_symmetrize_fixed_points():
    d, e = F(9, 10), F(4, 5)
    a = Avatar((d, F(0)), (F(0), -e), (-d, F(0)), (F(0), e))
    sym = symmetrize(a)
    assert sym.exact is not None
    assert sym.exact.p0[0] == d and sym.exact.p3[1] == e
    again = symmetrize(sym.exact)
    assert again.exact == sym.exact  # idempotent on symmetric avatars
