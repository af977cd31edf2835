import itertools
import random
from fractions import Fraction as F
from math import isqrt

import pytest

from fivepoint.errbound import (INF_CELL, Segment, Square, chi, chi_of_sq,
                                dot_estimator, global_err, hull_delta,
                                hull_diameter_sq, local_eps)
from fivepoint.exactnum import sqrt_lower
from fivepoint.geom import INF, chordal_sq
from fivepoint.potential import (G1, G2, G4, G6, G10, _unchecked_hybrid,
                                 hybrid_of_square)
from helpers import rand_fraction


def test_chi_examples():
    assert chi(F(1), F(1)) == F(1, 2)
    assert chi(F(2), F(2)) == 1
    assert chi(F(1), F(1, 2)) == F(5, 64)


def test_chi_dominates_chord_arc_distance():
    # chi*(D,d) = (D - sqrt(D^2-d^2))/2 <= chi(D,d) on a dense grid
    for Dnum in (1, 2):
        D = F(Dnum)
        for j in range(0, 65):
            d = D * j / 64
            val = chi(D, d)
            rad = D * D - d * d
            chi_star_hi = (D - sqrt_lower(rad, 60)) / 2  # >= chi*(D,d)
            assert val >= chi_star_hi


def test_hull_delta_examples():
    assert hull_delta(INF_CELL) == 0
    assert hull_delta(Segment(F(1, 2), F(1, 2))) == 0
    seg = Segment(F(433, 512), F(498, 512))
    want = chi_of_sq(F(2), chordal_sq((F(433, 512), F(0)), (F(498, 512), F(0))))
    assert hull_delta(seg) == want


def test_hull_diameter_sq():
    assert hull_diameter_sq(INF_CELL) == 0
    seg = Segment(F(0), F(1))
    assert hull_diameter_sq(seg) == chordal_sq((F(0), F(0)), (F(1), F(0))) == 2
    sq = Square(F(0), F(1, 2), F(0), F(1, 2))
    pairs = list(itertools.combinations(sq.vertices(), 2))
    assert hull_diameter_sq(sq) == max(chordal_sq(p, q) for p, q in pairs)


def test_dot_estimator():
    p = (F(1, 4), F(1, 4))
    cell = Square(F(1, 4), F(1, 4), F(1, 4), F(1, 4))  # degenerate point
    qdot, T = dot_estimator(cell, cell)
    assert T == 4  # same unit vector: 2 + 2|v|^2
    _, Tinf = dot_estimator(cell, INF_CELL)
    from fivepoint.geom import inv_stereo
    v = inv_stereo(p)
    assert Tinf == 2 + 2 * v[2]


def test_dot_estimator_dominates_samples():
    rng = random.Random(41)
    for _ in range(25):
        x0 = rand_fraction(rng, -1, F(1, 2), 16)
        y0 = rand_fraction(rng, -1, F(1, 2), 16)
        q1 = Square(x0, x0 + F(1, 4), y0, y0 + F(1, 4))
        x1 = rand_fraction(rng, -1, F(1, 2), 16)
        q2 = Segment(abs(x1), abs(x1) + F(1, 4))
        _, T = dot_estimator(q1, q2)
        from fivepoint.geom import inv_stereo
        for _ in range(30):
            p = (q1.x0 + F(rng.randint(0, 8), 8) * F(1, 4),
                 q1.y0 + F(rng.randint(0, 8), 8) * F(1, 4))
            q = (q2.x0 + F(rng.randint(0, 8), 8) * F(1, 4), F(0))
            a, bvec = inv_stereo(p), inv_stereo(q)
            dot = sum(u * v for u, v in zip(a, bvec))
            assert 2 + 2 * dot <= T


def test_local_eps_cases():
    q = Square(F(0), F(1, 4), F(0), F(1, 4))
    assert local_eps(5, INF_CELL, q) == 0
    pointcell = Square(F(1, 8), F(1, 8), F(1, 8), F(1, 8))
    for k in (1, 2, 7):
        assert local_eps(k, pointcell, q) == 0
    assert local_eps(1, q, INF_CELL) == 2 * hull_delta(q)


def test_monotonicity_under_shrinking():
    big = Square(F(0), F(1), F(0), F(1))
    small = Square(F(0), F(1, 2), F(0), F(1, 2))
    partner = Segment(F(1, 2), F(1))
    assert hull_delta(small) <= hull_delta(big)
    assert hull_diameter_sq(small) <= hull_diameter_sq(big)
    for k in (1, 2, 6, 10):
        assert local_eps(k, small, partner) <= local_eps(k, big, partner)


def test_global_err_trivial_cases():
    pt = lambda x, y: Square(x, x, y, y)
    cells = (Segment(F(1), F(1)), pt(F(0), F(-1)), pt(F(-1), F(0)),
             pt(F(0), F(1)), INF_CELL)
    eb = global_err(G4, cells)
    assert eb.total == 0
    # G1: closed form total = sum_i (N-1) * 2 delta_i over all ordered pairs
    cells2 = (Segment(F(1, 2), F(1)), Square(F(0), F(1, 2), F(0), F(1, 2)),
              pt(F(-1), F(0)), pt(F(0), F(1)), INF_CELL)
    eb2 = global_err(G1, cells2)
    expect = sum(4 * 2 * hull_delta(c) for c in cells2[:4])
    assert eb2.total == expect
    assert eb2.total == sum(eb2.per_index)


def test_global_err_rejects_bad_blocks():
    cells = (Segment(F(1), F(1)), Square(F(1), F(2), F(0), F(1)),
             Square(F(0), F(1), F(0), F(1)), Square(F(0), F(1), F(0), F(1)),
             INF_CELL)
    with pytest.raises(ValueError):
        global_err(G4, cells)


def _rand_good_cells(rng):
    x0 = rand_fraction(rng, 0, F(3, 2), 16)
    w = F(1, rng.choice([4, 8, 16]))
    cells = [Segment(x0, min(x0 + w, F(2)))]
    for _ in range(3):
        cx = rand_fraction(rng, F(-5, 4), F(5, 4) - w, 16)
        cy = rand_fraction(rng, F(-5, 4), F(5, 4) - w, 16)
        cells.append(Square(cx, cx + w, cy, cy + w))
    cells.append(INF_CELL)
    return cells, w


def _vertex_and_sample_energies(rng, cells, w, Fpot, samples):
    vs = [c.vertices() for c in cells]

    def efull(pts):
        tot = 0
        for i in range(5):
            for j in range(i + 1, 5):
                tot = tot + hybrid_of_square(Fpot, chordal_sq(pts[i], pts[j]))
        return tot

    vmin = min(efull(combo) for combo in itertools.product(*vs))
    sampled = []
    for _ in range(samples):
        pts = [(cells[0].x0 + F(rng.randint(0, 16), 16) * (cells[0].x1 - cells[0].x0),
                F(0))]
        for j in range(1, 4):
            q = cells[j]
            pts.append((q.x0 + F(rng.randint(0, 16), 16) * (q.x1 - q.x0),
                        q.y0 + F(rng.randint(0, 16), 16) * (q.y1 - q.y0)))
        pts.append(INF)
        sampled.append(efull(pts))
    return vmin, sampled


def test_error_bound_soundness_monte_carlo():
    """The central property: sampled interior energy never drops below the
    vertex minimum minus the global error (small run; the acceptance suite
    scales it up)."""
    rng = random.Random(43)
    slack = F(1, 1 << 40)
    for _ in range(80):
        cells, w = _rand_good_cells(rng)
        for Fpot in (G1, G2, G4, G6, G10, _unchecked_hybrid([-1])):
            weights = _unchecked_hybrid([abs(c) for c in Fpot.coeffs])
            err = global_err(weights, cells).total
            vmin, sampled = _vertex_and_sample_energies(rng, cells, w, Fpot, 3)
            for e in sampled:
                assert e >= vmin - err - slack


def test_power_mean_gap_inequality():
    rng = random.Random(44)
    for _ in range(300):
        М = rng.randint(2, 6)
        xs = sorted(rand_fraction(rng, 0, 4, 50) for _ in range(М))
        lams = [rand_fraction(rng, 0, 1, 50) for _ in range(М)]
        tot = sum(lams)
        if tot == 0:
            continue
        lams = [l / tot for l in lams]
        k = rng.randint(1, 8)
        lhs = sum(l * x ** k for l, x in zip(lams, xs)) - \
            sum(l * x for l, x in zip(lams, xs)) ** k
        bound = F(k * (k - 1), 8) * xs[-1] ** max(k - 2, 0) * (xs[-1] - xs[0]) ** 2
        assert 0 <= lhs <= bound
