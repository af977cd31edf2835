import random
from fractions import Fraction as F

import mpmath
import pytest

from fivepoint.interp import (AUX, FIFTEEN_PLUS, P1, P2, P3, PAIRS,
                              PUBLISHED_GAMMA, PUBLISHED_MATRICES,
                              PUBLISHED_PSI0_P1, PUBLISHED_PSI4_P1, ExpSum,
                              case1_quantities, check_a222,
                              check_interpolation, coefficient_expsum,
                              gamma_matches_published, gamma_poly,
                              matrix_matches_published, poly_divide_linear,
                              poly_eval_expsum, prove_expsum_positive,
                              psi_poly, solve_lambda, taylor_under_approx,
                              verify_matching_conditions, _extended_vector)
from helpers import mpf_of


def test_published_matrices_bit_exact():
    for pid in ("p1", "p2", "p3", "aux"):
        assert matrix_matches_published(PAIRS[pid]), pid


def test_matching_identities_symbolic():
    for pid in ("p1", "p2", "p3", "aux"):
        assert verify_matching_conditions(PAIRS[pid]), pid


def test_a0_structural_identity():
    for pid in ("p1", "p2", "p3"):
        M = solve_lambda(PAIRS[pid])
        assert M[0] == [0, 0, 1, 0, 0]  # a0 = 4^(-s/2)
    # published AUX row 3 (the a3 coefficients): 144 M row 3
    M = solve_lambda(AUX)
    assert [v * 144 for v in M[3]] == [-402, 264, 138, 33, 68]


def test_psi_roots_and_monic_form():
    psi = psi_poly(P1)
    assert poly_eval_expsum(psi, 1).is_zero()
    assert poly_eval_expsum(psi, 2).is_zero()
    # monic: t^6 - 48/(12+s) t^5 + ...
    assert (psi[5].mul_s_poly([12, 1]) + psi[6].scale(48)).is_zero()
    psi2, psi3 = psi_poly(P2), psi_poly(P3)
    assert all((a - b).is_zero() for a, b in zip(psi2, psi3))
    assert poly_eval_expsum(psi2, 1).is_zero()
    assert poly_eval_expsum(psi2, 2).is_zero()


def test_case1_vectors_match_published():
    q = case1_quantities(P1)
    v0 = _extended_vector(q["11*psi(0)"])
    v4 = _extended_vector(q["(11/s)*psi(4)"])
    assert tuple(int(x) for x in v0) == PUBLISHED_PSI0_P1
    assert tuple(int(x) for x in v4) == PUBLISHED_PSI4_P1


def test_gamma_matrices_match_published():
    assert gamma_matches_published(P2)
    assert gamma_matches_published(P3)
    assert PUBLISHED_GAMMA[6][0][:2] == (892440, 3376800)


def test_linear_division_remainder_check():
    psi = psi_poly(P2)
    beta = poly_divide_linear(poly_divide_linear(psi, 1), 2)
    assert len(beta) == 9  # degree 8
    with pytest.raises(ValueError):
        poly_divide_linear(psi, 3)  # 3 is not a root


def test_expsum_eval_against_mpmath():
    E = ExpSum.term(F(3), 1, F(1, 2)) + ExpSum.term(F(-2), 0, F(4, 3))
    for s in (F(1, 3), F(2), F(-3, 2)):
        iv = E.eval_interval(s, 48)
        true = 3 * mpf_of(s) * mpmath.mpf(0.5) ** (mpf_of(s) / 2) \
            - 2 * mpmath.power(mpmath.mpf(4) / 3, mpf_of(s) / 2)
        assert mpf_of(iv.lo) <= true <= mpf_of(iv.hi)


def test_expsum_range_containment():
    rng = random.Random(51)
    for _ in range(40):
        E = ExpSum()
        for _ in range(rng.randint(1, 5)):
            E = E + ExpSum.term(F(rng.randint(-9, 9)), rng.randint(0, 2),
                                F(rng.randint(1, 12), rng.randint(1, 12)))
        if E.is_zero():
            continue
        s0 = F(rng.randint(-8, 8), 2)
        s1 = s0 + F(rng.randint(1, 8), 4)
        box = E.range_on(s0, s1, 32)
        for j in range(5):
            s = s0 + (s1 - s0) * j / 4
            val = E.eval_interval(s, 48)
            assert box.lo <= val.hi and val.lo <= box.hi


def test_positivity_algorithm_simple():
    E = ExpSum.term(1, 0, F(1, 2))
    assert prove_expsum_positive(E, (F(0), F(4))).ok
    E2 = ExpSum.term(1, 0, F(1, 2)) + ExpSum.term(-1, 0, F(1, 4))
    run = prove_expsum_positive(E2, (F(1), F(8)))
    assert run.ok and run.pieces > 1
    # 2^(-s/2) - 4^(-s/2) is negative for s < 0: must not prove on [-1, 8]
    assert not prove_expsum_positive(E2, (F(-1), F(8)), max_depth=12).ok


def test_positivity_sound_vs_grid():
    rng = random.Random(53)
    proved = 0
    for _ in range(30):
        E = ExpSum()
        for _ in range(rng.randint(1, 4)):
            E = E + ExpSum.term(F(rng.randint(-5, 9)), rng.randint(0, 1),
                                F(rng.randint(1, 9), rng.randint(1, 9)))
        if E.is_zero():
            continue
        run = prove_expsum_positive(E, (F(1), F(5)), max_depth=12)
        if run.ok:
            proved += 1
            for j in range(41):
                s = 1 + j / 10
                assert E.eval_float(s) > 0
    assert proved >= 5


def test_coefficient_positivity_all_pairs():
    M = solve_lambda(P2)
    for i in range(1, 5):
        assert prove_expsum_positive(coefficient_expsum(P2, i, M),
                                     (F(6), F(13))).ok
    M3 = solve_lambda(P3)
    for i in range(1, 5):
        assert prove_expsum_positive(coefficient_expsum(P3, i, M3),
                                     (F(13), FIFTEEN_PLUS)).ok


def test_taylor_under_approx_printed_table():
    q = case1_quantities(P1)
    want = {
        "a1": (0, 98, -69, 0, -6, 0, -1),
        "a2": (0, 14, -3, -2, 0, -1, -1),
        "a3": (0, 1, 0, -1, 0, 0, -1),
        "a4": (0, F(3, 100), 0, 0, F(-1, 100), 0, -1),
    }
    for name, expected in want.items():
        vec = _extended_vector(q[name].scale(792))
        ta = taylor_under_approx(vec)
        assert ta.coeffs == tuple(F(c) for c in expected), name
        assert ta.positive_on_quarter
    ta0 = taylor_under_approx(_extended_vector(q["11*psi(0)"]))
    assert ta0.coeffs == (F(0), F(2, 25), F(0), F(-1, 50), F(0), F(-1, 100),
                          F(-1))
    ta4 = taylor_under_approx(_extended_vector(q["(11/s)*psi(4)"]))
    assert ta4.coeffs == (F(11), F(0), F(0), F(-1), F(-1), F(0), F(-1))
    assert ta0.positive_on_quarter and ta4.positive_on_quarter


def test_taylor_under_approx_is_lower_bound():
    q = case1_quantities(P1)
    for name in ("a1", "a2", "a3", "a4"):
        E = q[name].scale(792)
        ta = taylor_under_approx(_extended_vector(E))
        for j in range(1, 26):
            s = j / 100
            poly = sum(float(c) * s ** k for k, c in enumerate(ta.coeffs))
            assert poly <= E.eval_float(s) + 1e-12


def test_taylor_rejects_oversized_input():
    with pytest.raises(ValueError):
        taylor_under_approx([10 ** 6, 0, 0, 0, 0, 10 ** 6])


def test_a222_core():
    rep = check_a222(P2, long_run=False)
    assert rep["ok"], rep
    assert rep["gamma_published"] and rep["beta_prime_one_root_s6"]


def test_aux_interval_positivity():
    rep = check_interpolation("aux")
    assert rep.matrix_published and rep.matching_identities
    assert all(r.ok for r in rep.coefficient_positivity.values())


def test_forcing_conditions_numerically():
    """a1..a4 > 0 and 1 - interpolant/target >= 0 on a dense r-grid, for
    sample exponents inside each pair's interval."""
    import mpmath
    from fivepoint.cli import _lambda_value
    grids = {"p1": (0.5, 2.0, 4.5, 6.0), "p2": (6.0, 9.5, 13.0),
             "p3": (13.0, 14.5, 15.04)}
    for pid, svals in grids.items():
        pair = PAIRS[pid]
        M = solve_lambda(pair)
        for s in svals:
            for i in range(1, 5):
                assert coefficient_expsum(pair, i, M).eval_float(s) > 0, \
                    (pid, s, i)
            for j in range(1, 200):
                r = 2 * j / 200
                rs = r ** (-s)
                h = 1.0 - _lambda_value(pid, s, r) / rs
                assert h >= -1e-9, (pid, s, r)


@pytest.mark.slow
def test_a222_long_battery():
    # the optional full battery: 130 positivity proofs over the shared
    # root-structure decomposition (about five minutes)
    rep = check_a222(P2, long_run=True)
    assert rep["long_battery_ok"]
    assert rep["long_battery_count"] == 130
