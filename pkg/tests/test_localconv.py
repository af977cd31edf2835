import random
from fractions import Fraction as F

import mpmath
import pytest

from fivepoint.geom import Avatar
from fivepoint.localconv import (ConvexityReport, char_poly,
                                 check_lambda_bound, energy_series,
                                 grad_hessian_at_tbp, m3_chain, m7_bar_gk,
                                 mu_bounds, nice_bound, shift_poly,
                                 _upper_fraction)
from fivepoint.potential import G1, G3, G4, G6, G5_FLAT, Potential, energy
from fivepoint.sqrt3 import QSqrt3, SQRT3_OVER_3
from helpers import rand_fraction

G10_SHARP_SCALED = Potential.hybrid(
    [F(c, 32) for c in (0, 68, 0, 0, 13, 0, 0, 0, 0, 1)])


def _energy_mp(F_pot, vec7):
    # 200-bit evaluation: the finite-difference oracle needs headroom far
    # beyond float64 at step 2^-20
    pts = [(vec7[0], mpmath.mpf(0)), (vec7[1], vec7[2]), (vec7[3], vec7[4]),
           (vec7[5], vec7[6])]

    def inv(p):
        n = 1 + p[0] ** 2 + p[1] ** 2
        return (2 * p[0] / n, 2 * p[1] / n, 1 - 2 / n)

    sph = [inv(p) for p in pts] + [(mpmath.mpf(0), mpmath.mpf(0),
                                    mpmath.mpf(1))]
    tot = mpmath.mpf(0)
    for i in range(5):
        for j in range(i + 1, 5):
            t = 2 + 2 * sum(a * b for a, b in zip(sph[i], sph[j]))
            tot += sum(mpmath.mpf(c.numerator) / c.denominator * t ** (k + 1)
                       for k, c in enumerate(F_pot.coeffs) if c)
    return tot


def _xi0_mp():
    u = mpmath.sqrt(3) / 3
    return (mpmath.mpf(1), mpmath.mpf(0), -u, mpmath.mpf(-1), mpmath.mpf(0),
            mpmath.mpf(0), u)


def test_gradient_exactly_zero():
    for Fp in (G4, G6, G5_FLAT, G10_SHARP_SCALED, G3):
        grad, _ = grad_hessian_at_tbp(Fp)
        assert all(not g for g in grad), Fp


def test_hessian_matches_finite_differences():
    mpmath.mp.prec = 200
    _, H = grad_hessian_at_tbp(G4)
    h = mpmath.mpf(2) ** -20
    xi0 = _xi0_mp()
    for i in range(7):
        for j in range(i, 7):
            def at(di, dj):
                v = list(xi0)
                v[i] += di * h
                v[j] += dj * h
                return _energy_mp(G4, v)

            fd = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h)
            exact = H[i][j].to_float()
            assert abs(float(fd) - exact) <= 1e-4 * max(1.0, abs(exact)), (i, j)


def test_char_poly_rational_and_alternation():
    _, H = grad_hessian_at_tbp(G4)
    coeffs = char_poly(H)
    assert all(isinstance(c, F) for c in coeffs)
    assert check_lambda_bound(H, F(39))
    assert not check_lambda_bound(H, F(100))  # eigenvalues reach only ~41.6


def test_lambda_bound_vs_eigenvalue_oracle():
    mpmath.mp.prec = 200
    for Fp in (G4, G6, G5_FLAT, G10_SHARP_SCALED):
        _, H = grad_hessian_at_tbp(Fp)
        Hf = mpmath.matrix([[H[i][j].to_float() for j in range(7)]
                            for i in range(7)])
        ev = mpmath.mp.eigsy(Hf, eigvals_only=True)
        lam_min = min(float(e) for e in ev)
        assert check_lambda_bound(H, F(39)) == (lam_min > 39.0001
                                                or lam_min > 39)
        assert lam_min > 39


def test_lambda_bound_synthetic():
    ident = [[QSqrt3.of(40 if i == j else 0) for j in range(7)]
             for i in range(7)]
    assert check_lambda_bound(ident, F(39))
    ident39 = [[QSqrt3.of(39 if i == j else 0) for j in range(7)]
               for i in range(7)]
    assert not check_lambda_bound(ident39, F(39))  # zero coeffs: conservative


def test_shift_poly():
    # p(t) = t^2 - 1 shifted by 1: (t+1)^2 - 1 = t^2 + 2t
    assert shift_poly([F(-1), F(0), F(1)], F(1)) == [F(0), F(2), F(1)]


def test_energy_series_reproduces_energy_values():
    # the constant term of the series is the TBP energy
    series = energy_series(G4)
    const = series[(0,) * 7]
    assert const == QSqrt3.of(99)


def test_mu_bounds_printed_caps():
    mus = mu_bounds(G4)
    assert _upper_fraction(mus[3]) < 45893
    step = F(7, 1 << 18)
    for j in (1, 2, 3):
        assert step ** j / [1, 1, 2, 6][j] * _upper_fraction(mus[j + 3]) < 38


def test_nice_bound_formula_and_domination():
    # <xy/(1+x^2+y^2)> = 1/2 ; <1/(1+x^2+y^2)> = 1
    assert nice_bound({(1, 1, 0, 0, 1, 0): F(1)}) == F(1, 2)
    assert nice_bound({(0, 0, 0, 0, 1, 1): F(1)}) == F(1)
    with pytest.raises(ValueError):
        nice_bound({(3, 0, 0, 0, 1, 0): F(1)})  # alpha+beta > 2u
    rng = random.Random(71)
    for _ in range(50):
        terms = {}
        for _ in range(rng.randint(1, 6)):
            u, v = rng.randint(0, 3), rng.randint(0, 3)
            al = rng.randint(0, 2 * u) if u else 0
            be = rng.randint(0, 2 * u - al) if u else 0
            ga = rng.randint(0, 2 * v) if v else 0
            de = rng.randint(0, 2 * v - ga) if v else 0
            key = (al, be, ga, de, u, v)
            terms[key] = terms.get(key, F(0)) + rand_fraction(rng, -3, 3, 8)
        terms = {k: c for k, c in terms.items() if c}
        if not terms:
            continue
        bound = nice_bound(terms)
        for _ in range(20):
            pt = [rand_fraction(rng, -10, 10, 8) for _ in range(4)]
            val = sum(c * pt[0] ** al * pt[1] ** be * pt[2] ** ga
                      * pt[3] ** de
                      / ((1 + pt[0] ** 2 + pt[1] ** 2) ** u
                         * (1 + pt[2] ** 2 + pt[3] ** 2) ** v)
                      for (al, be, ga, de, u, v), c in terms.items())
            assert abs(val) <= bound


def test_m7_tails_meet_printed_bounds():
    step = F(7, 1 << 18)
    for k in (1, 2, 3, 4, 5, 6):
        tail = step ** 4 / 24 * 4 * m7_bar_gk(k)
        assert tail < F(1, 1000), k
    tail10 = F(1, 32) * step ** 4 / 24 * 4 * m7_bar_gk(10)
    assert tail10 <= 2353


def test_m3_chain_g4():
    rep = m3_chain(G4)
    assert rep.ok
    assert rep.total_bound < 65536 <= (1 << 12) * 39


def test_m3_chain_g3_auxiliary():
    rep = m3_chain(G3, lambda_bound=F(14), mu3_cap=F(316), mid_cap=F(1))
    assert rep.ok
    assert rep.mu3 <= 316
    assert rep.tail_bound < F(1, 1000)
