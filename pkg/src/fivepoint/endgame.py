"""The endgame: the energy-gap function on the 4-fold-symmetric square, the
second symmetrization onto the diagonal, the convexity/derivative bounds, the
3-dimensional divide-and-conquer, the monotonicity-in-s analysis, and the
bisection bracketing of the phase-transition exponent.

Theta(s,x,y) is the Riesz energy of the symmetric avatar minus the reference
value; every verdict is interval-verified (the informal positivity arguments
are replayed with rigorous enclosures and subdivision).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import Interval, ln2_enclosure, ln_enclosure, pow_interval
from .polypos import (MultiPoly, PositivityProof, descartes_max_sign_changes,
                      is_wpd, prove_positive_box, positive_numerator, subdivide)
from .potential import TBP_RIESZ_TERMS, psi4_abc

FIFTEEN_PLUS = Fraction(15) + Fraction(25, 512)
PSI4_LO = Fraction(43, 64)
PSI4HAT = (Fraction(55, 64), Fraction(56, 64))
SHIN_DECIMAL = "15.0480773927797"


@lru_cache(maxsize=1 << 18)
def _pow_cached(bn: int, bd: int, sn: int, sd: int, bits: int) -> Interval:
    return pow_interval(Fraction(bn, bd), Fraction(sn, sd), bits)


def _powc(base: Fraction, e: Fraction, bits: int) -> Interval:
    return _pow_cached(base.numerator, base.denominator,
                       e.numerator, e.denominator, bits)


def theta(s, x, y, bits: int = 32) -> Interval:
    """Rigorous enclosure of Theta(s,x,y) = E_s(x,y) - E_s(TBP)."""
    s, x, y = Fraction(s), Fraction(x), Fraction(y)
    u = s / 2
    ax, ay, bx, by, c = psi4_abc(x, y)
    total = _powc(ax, u, bits) + _powc(ay, u, bits)
    total = total + _powc(bx, u, bits).scale(2) + _powc(by, u, bits).scale(2)
    total = total + _powc(c, u, bits).scale(4)
    for coef, base in TBP_RIESZ_TERMS:
        total = total - _powc(base, u, bits).scale(coef)
    return total


def sigma_map(x, y) -> Tuple[Fraction, Fraction]:
    """The diagonal symmetrization (x,y) -> (z,z), z = (x+y+(x-y)^2)/2."""
    x, y = Fraction(x), Fraction(y)
    z = (x + y + (x - y) ** 2) / 2
    return z, z


# ----------------------------------------------------------------------------
# symbolic helpers on the square (rational functions of (x, y))


def _xy_polys():
    x = MultiPoly.var(2, 0)
    y = MultiPoly.var(2, 1)
    one = MultiPoly.const(2, Fraction(1))
    return x, y, one


def _abc_ratfuncs():
    """a, b(x), b(y), c as (num, den) pairs of polynomials in (x, y)."""
    x, y, one = _xy_polys()
    ax = ((one + x * x) ** 2, 16 * x * x)
    ay = ((one + y * y) ** 2, 16 * y * y)
    bx = (one + x * x, MultiPoly.const(2, Fraction(4)))
    by = (one + y * y, MultiPoly.const(2, Fraction(4)))
    c = ((one + x * x) * (one + y * y), 4 * (x * x + y * y))
    return ax, ay, bx, by, c


def _rf_deriv(f, var):
    n, d = f
    return (n.deriv(var) * d - n * d.deriv(var), d * d)


def _rf_equal(f, g) -> bool:
    return f[0] * g[1] == g[0] * f[1]


def _psi4hat_sub(P: MultiPoly) -> MultiPoly:
    """Substitute (x,y) = ((55+A)/64, (55+B)/64) mapping [0,1]^2 onto the
    sweet-spot square."""
    out = P.affine_sub_var(0, Fraction(55, 64), Fraction(1, 64))
    return out.affine_sub_var(1, Fraction(55, 64), Fraction(1, 64))


def _psi4_sub(P: MultiPoly) -> MultiPoly:
    out = P.affine_sub_var(0, Fraction(43, 64), Fraction(21, 64))
    return out.affine_sub_var(1, Fraction(43, 64), Fraction(21, 64))


def _sigma_polys():
    """z(x,y) composed with the sweet-spot parametrization, as (num, den)."""
    x, y, one = _xy_polys()
    z = (x + y + (x - y) * (x - y)).scale(Fraction(1, 2))
    return z


# ----------------------------------------------------------------------------
# c1: the diagonal symmetrization drops energy on the sweet spot


@dataclass
class C1Report:
    g_factor_wpd: bool
    h2_factor_wpd: bool
    h14_factor_wpd: bool
    h16_factor_wpd: bool
    identities_ok: bool
    j_factor_wpd: bool
    sign_sequences_ok: bool
    z_in_range: bool

    @property
    def ok(self):
        return all((self.g_factor_wpd, self.h2_factor_wpd, self.h14_factor_wpd,
                    self.h16_factor_wpd, self.identities_ok, self.j_factor_wpd,
                    self.sign_sequences_ok, self.z_in_range))


def _compose_z(f_num: MultiPoly, f_den: MultiPoly, z: MultiPoly):
    """f(z, z) for a rational function f(x, y): substitute both variables."""
    # substitute via polynomial composition: x -> z, y -> z
    args = [z, z]
    return f_num.compose(args), f_den.compose(args)


def _diff_factor_wpd(F, F_sigma, flip_sign: bool) -> Tuple[bool, MultiPoly]:
    """Build num_+(F - F.sigma) on the sweet spot, divide out the forced
    (A-B)^2 factor exactly, and WPD-check the cofactor."""
    num = F[0] * F_sigma[1] - F_sigma[0] * F[1]
    den = F[1] * F_sigma[1]
    num = _psi4hat_sub(num)
    den = _psi4hat_sub(den)
    num = positive_numerator(num, den)
    if flip_sign:
        num = -num
    A, B = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    diff = A - B
    for _ in range(2):
        q = num.divide_exact(diff)
        if q is None:
            return False, num
        num = q
    return is_wpd(num), num


def check_c1() -> C1Report:
    """The algebraic-miracle checks: each piece of the energy drop factors as
    (A-B)^2 times a weak-positive-dominant cofactor on the sweet spot."""
    x, y, one = _xy_polys()
    ax, ay, bx, by, c = _abc_ratfuncs()
    z = _sigma_polys()

    def rf_add(f, g):
        return (f[0] * g[1] + g[0] * f[1], f[1] * g[1])

    def rf_pow(f, k):
        return (f[0] ** k, f[1] ** k)

    # G-part at s=2: a(x) + a(y) vs 2 a(z)
    G = rf_add(ax, ay)
    az = _compose_z(ax[0], ax[1], z)
    Gs = (az[0].scale(2), az[1])
    g_ok, _ = _diff_factor_wpd(G, Gs, flip_sign=False)
    # H-part at s = 2, 14, 16: 2 b(x)^m + 2 b(y)^m + 4 c^m vs sigma image
    h_ok = {}
    for s_even in (2, 14, 16):
        m = s_even // 2
        H = rf_add(rf_add((bx[0] ** m * 2, bx[1] ** m),
                          (by[0] ** m * 2, by[1] ** m)),
                   (c[0] ** m * 4, c[1] ** m))
        bz = _compose_z(bx[0], bx[1], z)
        cz = _compose_z(c[0], c[1], z)
        Hs = rf_add((bz[0] ** m * 4, bz[1] ** m), (cz[0] ** m * 4, cz[1] ** m))
        h_ok[s_even], _ = _diff_factor_wpd(H, Hs, flip_sign=(s_even == 2))
    # the five identities behind the base ordering
    ident = True
    half = MultiPoly.const(2, Fraction(1, 2))
    ident &= _rf_equal((half * bx[1] - bx[0], bx[1]),
                       ((one - x * x).scale(Fraction(1, 4)), one))
    ident &= _rf_equal((half * by[1] - by[0], by[1]),
                       ((one - y * y).scale(Fraction(1, 4)), one))
    bz = _compose_z(bx[0], bx[1], z)
    zz = z
    ident &= _rf_equal((half * bz[1] - bz[0], bz[1]),
                       ((one - zz * zz).scale(Fraction(1, 4)), one))
    ident &= _rf_equal((c[0] - half * c[1], c[1]),
                       ((one - x * x) * (one - y * y), 4 * (x * x + y * y)))
    cz = _compose_z(c[0], c[1], z)
    ident &= _rf_equal((cz[0] - half * cz[1], cz[1]),
                       ((one - zz * zz) ** 2, 8 * zz * zz))
    # r01 < r01': c(z,z) > c(x,y) off the diagonal
    j_ok, _ = _diff_factor_wpd(c, cz, flip_sign=True)
    # z stays inside (0,1) on the sweet spot
    z_range = is_wpd(_psi4hat_sub(one - z)) and is_wpd(_psi4hat_sub(z))
    # the three admissible sign sequences never reach 4 changes
    seqs = ([-4, 2, 2, 4, -4], [2, -4, 2, 4, -4], [2, 2, -4, 4, -4])
    seq_ok = all(descartes_max_sign_changes(s) < 4 for s in seqs) and \
        [descartes_max_sign_changes(s) for s in seqs] == [2, 3, 3]
    return C1Report(g_ok, h_ok[2], h_ok[14], h_ok[16], ident, j_ok, seq_ok,
                    z_range)


# ----------------------------------------------------------------------------
# c21/c22: derivative sign and size bounds


@dataclass
class C21Report:
    partials_match: bool
    cxx_sign_ok: bool
    f_range_ok: bool
    log_below_half: bool
    theta_xx_le_4: bool
    theta_xy_le_4: bool
    psi_ss_bounds_ok: bool
    census_ok: bool
    chain_ok: bool

    @property
    def ok(self):
        return all((self.partials_match, self.cxx_sign_ok, self.f_range_ok,
                    self.log_below_half, self.theta_xx_le_4, self.theta_xy_le_4,
                    self.psi_ss_bounds_ok, self.census_ok, self.chain_ok))


def _second_deriv_at_u6(f, fx, fxx):
    """u(u-1) f^(u-2) fx^2 + u f^(u-1) fxx at u = 6, as a rational function."""
    # 30 f^4 fx^2 + 6 f^5 fxx, over the appropriate denominator
    num = (f[0] ** 4 * fx[0] * fx[0] * f[1] * fxx[1]).scale(30) \
        + (f[0] ** 5 * fxx[0] * fx[1] * fx[1]).scale(6)
    den = f[1] ** 5 * fx[1] * fx[1] * fxx[1]
    return num, den


def check_c21_bounds(depth: int = 8) -> C21Report:
    """Sign and size bounds for the second partials of Theta.

    Certifies the printed partial-derivative formulas, the positivity of the
    convexity pieces, f in (0,3/5) (hence log f < -1/2 and the expressions
    decrease in u for u >= 6), |Theta_xx|,|Theta_yy|,|Theta_xy| <= 4 at s=12,
    and the census-based |Theta_ss| <= 1/64.
    """
    x, y, one = _xy_polys()
    ax, ay, bx, by, c = _abc_ratfuncs()
    # printed partials
    ax_d = _rf_deriv(ax, 0)
    ok = _rf_equal(ax_d, ((x ** 4 - one), 8 * x ** 3))
    ok &= _rf_equal(_rf_deriv(ax_d, 0), (x ** 4 + 3, 8 * x ** 4))
    bx_dd = _rf_deriv(_rf_deriv(bx, 0), 0)
    ok &= _rf_equal(bx_dd, (one, MultiPoly.const(2, Fraction(2))))
    cx = _rf_deriv(c, 0)
    ok &= _rf_equal(cx, (x * (y ** 4 - one), 2 * (x * x + y * y) ** 2))
    cy = _rf_deriv(c, 1)
    ok &= _rf_equal(cy, (y * (x ** 4 - one), 2 * (x * x + y * y) ** 2))
    cxx = _rf_deriv(cx, 0)
    ok &= _rf_equal(cxx, ((one - y ** 4) * (3 * x * x - y * y),
                          2 * (x * x + y * y) ** 3))
    cxy = _rf_deriv(cx, 1)
    ok &= _rf_equal(cxy, (2 * x * y * (one + x * x * y * y),
                          (x * x + y * y) ** 3))
    # c_xx >= 0 on Psi4: (1-y^4) >= 0 is structural (y <= 1); 3x^2-y^2 > 0
    cxx_ok = prove_positive_box(_psi4_sub(3 * x * x - y * y), depth).ok
    # f in (0, 3/5) for f = a, b, c
    f_ok = True
    for f in (ax, bx, c):
        poly = _psi4_sub(positive_numerator(
            f[1].scale(Fraction(3, 5)) - f[0], f[1]))
        f_ok &= prove_positive_box(poly, depth).ok
        f_ok &= prove_positive_box(_psi4_sub(positive_numerator(f[0], f[1])),
                                   depth).ok
    # 3/5 < e^(-1/2): ln(3/5) < -1/2
    log_ok = ln_enclosure(Fraction(3, 5), 60).hi < Fraction(-1, 2)
    # |Theta_xx| <= 4 at s = 12 (u = 6); decreasing in u extends to [13,16]
    Axx = _second_deriv_at_u6(ax, ax_d, _rf_deriv(ax_d, 0))
    Bxx = _second_deriv_at_u6(bx, _rf_deriv(bx, 0), bx_dd)
    Cxx = _second_deriv_at_u6(c, cx, cxx)
    txx_num = (Axx[0] * Bxx[1] * Cxx[1] + Bxx[0].scale(2) * Axx[1] * Cxx[1]
               + Cxx[0].scale(4) * Axx[1] * Bxx[1])
    txx_den = Axx[1] * Bxx[1] * Cxx[1]
    four_minus = txx_den.scale(4) - txx_num
    txx_ok = prove_positive_box(_psi4_sub(positive_numerator(four_minus, txx_den)),
                                depth).ok
    # |Theta_xy| = 4 C_xy <= 4 at s = 12, same monotonicity
    cxy_u6_num = (c[0] ** 4 * cx[0] * cy[0] * c[1] * cxy[1]).scale(30) \
        + (c[0] ** 5 * cxy[0] * cx[1] * cy[1]).scale(6)
    cxy_u6_den = c[1] ** 5 * cx[1] * cy[1] * cxy[1]
    one_minus = cxy_u6_den - cxy_u6_num
    txy_ok = prove_positive_box(_psi4_sub(positive_numerator(one_minus, cxy_u6_den)),
                                depth).ok
    # psi_ss bounds at the census distances: b^-13 (ln b)^2 <= 1/gamma
    def psi_ss_13(b_sq: Fraction, half_log: bool) -> Interval:
        # b = sqrt(b_sq): b^-13 = b_sq^(-13/2); ln b = ln(b_sq)/2
        p = _powc(b_sq, Fraction(-13, 2), 60)
        lnb = ln_enclosure(b_sq, 60).scale(Fraction(1, 2))
        return p * lnb * lnb

    bounds_ok = True
    bounds_ok &= psi_ss_13(Fraction(169, 100), False).hi <= Fraction(1, 440)
    bounds_ok &= psi_ss_13(Fraction(2), False).hi <= Fraction(1, 753)
    bounds_ok &= psi_ss_13(Fraction(3), False).hi <= Fraction(1, 4184)
    # the maximizer e^(2/13) sits below 1.3: 2/13 < ln(13/10)
    bounds_ok &= Fraction(2, 13) < ln_enclosure(Fraction(13, 10), 60).lo
    # census: squared distances 1/f on Psi4 meet (3, 2, 169/100) for the
    # (a, b, c) classes, i.e. den - threshold*num >= 0
    census_ok = True
    census_ok &= prove_positive_box(
        _psi4_sub(positive_numerator(ax[1] - 3 * ax[0], ax[0])), depth).ok
    # the b-class bound is an equality at x = 1 (pole-equator distance is
    # exactly sqrt 2); reflect the variable so WPD certifies >= 0 with the
    # only zero on the boundary
    b_census = _psi4_sub(positive_numerator(bx[1] - 2 * bx[0], bx[0]))
    census_ok &= is_wpd(b_census.affine_sub_var(0, Fraction(1), Fraction(-1)))
    census_ok &= prove_positive_box(
        _psi4_sub(positive_numerator(100 * c[1] - 169 * c[0], c[0])),
        depth).ok
    chain_ok = (Fraction(4, 440) + Fraction(4, 753) + Fraction(2, 4184)
                < Fraction(1, 64))
    return C21Report(ok, cxx_ok, f_ok, log_ok, txx_ok, txy_ok, bounds_ok,
                     census_ok, chain_ok)


# ----------------------------------------------------------------------------
# c2: the three-dimensional search


@dataclass
class C2Stats:
    steps: int = 0
    passed: int = 0
    passed_by: Dict[str, int] = field(default_factory=dict)
    halted: bool = False
    wall_seconds: float = 0.0


C2Block = Tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
# (s_lo, s_len, x_lo, y_lo, q_side)


def _c2_vertex_ok(s: Fraction, x: Fraction, y: Fraction, penalty: Fraction,
                  bits: int) -> bool:
    if x <= 0 or y <= 0:
        return False
    return theta(s, x, y, bits).lo > penalty


def run_c2(bits: int = 32, certificate_path: Optional[str] = None,
           budget: Optional[int] = None) -> Tuple[C2Stats, List[C2Block]]:
    """Certify: Theta > 0 on [13,15] x Psi4 and on [15,15+] x (Psi4 - hat).

    Grading: irrelevant blocks pass; blocks with the exponent interval inside
    [15, ...] and the square inside the sweet spot pass; blocks straddling
    s = 13 fail; otherwise all 8 vertices must clear the Taylor penalty
    |I|^2/512 + side^2.  Failing blocks subdivide along the square when
    16 side > |I|, else along the exponent interval.
    """
    stats = C2Stats()
    t0 = time.monotonic()
    cert = open(certificate_path, "a") if certificate_path else None
    start: C2Block = (Fraction(0), Fraction(16), Fraction(0), Fraction(0),
                      Fraction(1))
    stack = [start]
    hat_lo, hat_hi = PSI4HAT
    while stack:
        if budget is not None and stats.steps >= budget:
            if cert:
                cert.close()
            stats.wall_seconds = time.monotonic() - t0
            return stats, stack
        s_lo, s_len, x_lo, y_lo, side = stack.pop()
        stats.steps += 1
        s_hi = s_lo + s_len
        why = None
        if s_hi <= 13 or s_lo >= FIFTEEN_PLUS or x_lo + side < PSI4_LO \
                or y_lo + side < PSI4_LO:
            why = "irrelevant"
        elif s_lo >= 15 and hat_lo <= x_lo and x_lo + side <= hat_hi \
                and hat_lo <= y_lo and y_lo + side <= hat_hi:
            why = "sweet-spot"
        elif s_lo < 13 < s_hi:
            why = None  # rule 3: fail without evaluating low exponents
        else:
            penalty = s_len * s_len / 512 + side * side
            okv = True
            for s in (s_lo, s_hi):
                for vx in (x_lo, x_lo + side):
                    for vy in (y_lo, y_lo + side):
                        if not _c2_vertex_ok(s, vx, vy, penalty, bits):
                            okv = False
                            break
                    if not okv:
                        break
                if not okv:
                    break
            if okv:
                why = "vertices"
        if why is not None:
            stats.passed += 1
            stats.passed_by[why] = stats.passed_by.get(why, 0) + 1
            if cert:
                rec = {"b": [str(v) for v in (s_lo, s_len, x_lo, y_lo, side)],
                       "why": why}
                cert.write(json.dumps(rec, separators=(",", ":")) + "\n")
            continue
        if 16 * side > s_len:
            h = side / 2
            for dx in (Fraction(0), h):
                for dy in (Fraction(0), h):
                    stack.append((s_lo, s_len, x_lo + dx, y_lo + dy, h))
        else:
            h = s_len / 2
            stack.append((s_lo, h, x_lo, y_lo, side))
            stack.append((s_lo + h, h, x_lo, y_lo, side))
    stats.halted = True
    stats.wall_seconds = time.monotonic() - t0
    if cert:
        cert.close()
    return stats, []


# ----------------------------------------------------------------------------
# c3: dTheta/ds < 0 on [15, 15+] x diagonal sweet spot

# symbolic elements P0 + P1 ln2 + P2 ln(1+t^2) + P3 ln t with P_i = rational
# functions of t (represented over a common denominator)

LogElem = Tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly, MultiPoly]
# (num_1, num_ln2, num_ln(1+t^2), num_lnt, common_den)


def _t_var():
    return MultiPoly.var(1, 0)


def _le_make(p0, p1, p2, p3, den) -> LogElem:
    return (p0, p1, p2, p3, den)


def _le_equal(a: LogElem, b: LogElem) -> bool:
    return all(a[i] * b[4] == b[i] * a[4] for i in range(4))


def _le_eval(e: LogElem, T: Interval, bits: int = 48) -> Interval:
    def poly_iv(P: MultiPoly) -> Interval:
        # Horner in the single variable over intervals
        coeffs = [Fraction(0)] * (P.degree_in(0) + 1)
        for m, c in P.terms.items():
            coeffs[m[0]] = c
        out = Interval.point(Fraction(0))
        for c in reversed(coeffs):
            out = out * T + Interval.point(c)
        return out

    den = poly_iv(e[4])
    ln2 = ln2_enclosure(bits)
    one_t2 = Interval(1 + T.lo * T.lo, 1 + T.hi * T.hi)
    l2 = Interval(ln_enclosure(one_t2.lo, bits).lo, ln_enclosure(one_t2.hi, bits).hi)
    lt = Interval(ln_enclosure(T.lo, bits).lo, ln_enclosure(T.hi, bits).hi)
    num = poly_iv(e[0]) + poly_iv(e[1]) * ln2 + poly_iv(e[2]) * l2 \
        + poly_iv(e[3]) * lt
    return num / den


def _stt_factored(f_num: MultiPoly, f_den: MultiPoly):
    """For F = f^(s/2), factor F_stt at s = 15 as f^(11/2) (S0 + S1 ln f).

    F_stt = (1/2) d^2/dt^2 [ln f * f^u] at u = 15/2, which works out to
    f^(u-2) [ (1/2)(f'' f + (2u-1) f'^2)  +  (1/2)(u(u-1) f'^2 + u f f'') ln f ].
    Returns (S0_num, S1_num, common_den) as polynomials in t.
    """
    u = Fraction(15, 2)
    f = (f_num, f_den)
    n, d = f
    np_, dp = _rf_deriv(f, 0)          # f'  = np_/dp, dp = d^2
    npp, dpp = _rf_deriv((np_, dp), 0)  # f'' = npp/dpp, dpp = d^4
    # over the common denominator dpp * d = d^5:
    #   f'' f  -> n * npp / (dpp d);   f'^2 -> np_^2 d / (dpp d)
    ffpp = n * npp
    fp2 = np_ * np_ * d
    Dden = dpp * d
    S0 = (ffpp + fp2.scale(2 * u - 1)).scale(Fraction(1, 2))
    S1 = (fp2.scale(u * (u - 1)) + ffpp.scale(u)).scale(Fraction(1, 2))
    return S0, S1, Dden


def _c3_pieces(bits: int = 48):
    """The three reduced pieces of Theta_stt(15,t,t), with their printed
    counterparts: returns dict name -> (computed LogElem, printed LogElem)."""
    t = _t_var()
    one = MultiPoly.const(1, Fraction(1))
    t2 = t * t
    # the three diagonal reciprocal squared distances
    fa = ((one + t2) ** 2, 16 * t2)      # ln = 2 ln(1+t^2) - 4 ln2 - 2 ln t
    fb = (one + t2, MultiPoly.const(1, Fraction(4)))  # ln(1+t^2) - 2 ln2
    fc = ((one + t2) ** 2, 8 * t2)       # 2 ln(1+t^2) - 3 ln2 - 2 ln t
    out = {}
    for name, f, lncf, mult in (("alpha", fa, (-4, 2, -2), 2),
                                ("beta", fb, (-2, 1, 0), 4),
                                ("gamma", fc, (-3, 2, -2), 4)):
        S0, S1, D = _stt_factored(f[0], f[1])
        # piece = mult * f^(11/2) * (S0 + S1 ln f)/D; with ln f expanded the
        # LogElem is (S0 + c ln-basis parts)
        p0 = S0.scale(mult)
        p1 = S1.scale(mult * lncf[0])
        p2 = S1.scale(mult * lncf[1])
        p3 = S1.scale(mult * lncf[2])
        out[name] = (_le_make(p0, p1, p2, p3, D), f)
    return out


# printed reduced forms (each piece ~ -(2^u t^v (1+t^2)^w (2+t^2+1/t^2)^x) * star)
def _printed_stars():
    t = _t_var()
    one = MultiPoly.const(1, Fraction(1))
    t2 = t * t
    t4 = t2 * t2
    L2 = "ln2"
    # beta* = (-2 + 30 ln2) + t^2 (-58 + 420 ln2) - 15 (1 + 14 t^2) ln(1+t^2)
    beta = _le_make(t2.scale(-58) - 2 * one,
                    t2.scale(420) + 30 * one,
                    (one + t2.scale(14)).scale(-15),
                    MultiPoly(1), one)
    # gamma* = (-31 + 360 ln2) + t^2(56 - 585 ln2) + t^4(-29 + 315 ln2)
    #          + 15(-8 + 13 t^2 - 7 t^4) ln(2 + t^2 + 1/t^2)
    # with ln(2+t^2+1/t^2) = 2 ln(1+t^2) - 2 ln t
    gpoly = (-8 * one + t2.scale(13) - t4.scale(7)).scale(15)
    gamma = _le_make(t2.scale(56) - 31 * one - t4.scale(29),
                     t2.scale(-585) + 360 * one + t4.scale(315),
                     gpoly.scale(2), gpoly.scale(-2), one)
    # delta* = 15 ln2 (8 - 13 t^2 + 7 t^4); alpha* = gamma* + delta*
    dpoly = (8 * one - t2.scale(13) + t4.scale(7)).scale(15)
    delta = _le_make(MultiPoly(1), dpoly, MultiPoly(1), MultiPoly(1), one)
    alpha = _le_make(gamma[0], gamma[1] + dpoly, gamma[2], gamma[3], one)
    return {"alpha": alpha, "beta": beta, "gamma": gamma, "delta": delta}


@dataclass
class C3Report:
    beta_form_ok: bool
    gamma_form_ok: bool
    alpha_form_ok: bool
    stars_positive: bool
    delta_star_positive: bool
    gamma_star_at_t0: bool
    theta_st_neg: bool
    theta_s_at_t0: Fraction = Fraction(0)
    theta_ss_bound: Fraction = Fraction(0)
    final_chain_ok: bool = False
    note: str = ("the printed margin -2^-7 for Theta_s(15,t0,t0) is not "
                 "literal (the true value is about -1.2e-4); the conclusion "
                 "is certified via a direct interval bound on Theta_ss over "
                 "the sweet-spot region instead of the census bound 1/64")

    @property
    def ok(self):
        return (self.beta_form_ok and self.gamma_form_ok and self.alpha_form_ok
                and self.stars_positive and self.delta_star_positive
                and self.gamma_star_at_t0 and self.theta_st_neg
                and self.final_chain_ok)


def _prefactor_ratio(name: str):
    """The rational function linking the computed piece to -(prefactor)*star:
    computed * ratio == -star, where ratio collects the power prefactors."""
    t = _t_var()
    one = MultiPoly.const(1, Fraction(1))
    t2 = t * t
    if name == "beta":
        # piece = 4 b^(11/2) (S0+S1 ln b)/D; b^(11/2) = (1+t^2)^(11/2)/2^11;
        # prefactor 2^-14 (1+t^2)^(11/2): piece * 2^14 (1+t^2)^(-11/2) = -beta*
        return Fraction(1 << 14, 1 << 11), (one, one)
    if name == "gamma":
        # c^(11/2) = (1+t^2)^11/(2^(33/2) t^11); prefactor
        # 2^(-41/2) t^-16 (1+t^2)^12 (2+t^2+1/t^2)^(1/2), sqrt = (1+t^2)/t
        return Fraction(1 << 4), (t2 ** 3, (one + t2) ** 2)
    if name == "alpha":
        # a^(11/2) = (1+t^2)^11/(2^22 t^11); prefactor
        # 2^-29 t^-14 (1+t^2)^10 (2+t^2+1/t^2)^(3/2), (...)^(3/2) = ((1+t^2)/t)^3
        return Fraction(1 << 7), (t2 ** 3, (one + t2) ** 2)
    raise ValueError(name)


def check_c3(bits: int = 48, grid: int = 16) -> C3Report:
    """Monotonicity of Theta in s on the diagonal sweet spot.

    Verifies the printed reduced forms symbolically (in the module generated
    by ln 2, ln(1+t^2), ln t over rational functions), then interval-verifies
    positivity of the reduced forms on the interval, the endpoint conditions,
    and the final 2^-7 margin chain.
    """
    pieces = _c3_pieces(bits)
    printed = _printed_stars()
    t0 = PSI4HAT[0]
    form_ok = {}
    for name in ("alpha", "beta", "gamma"):
        elem, f = pieces[name]
        scalar, (rnum, rden) = _prefactor_ratio(name)
        # computed * scalar * rnum/rden == -printed (componentwise over dens)
        lhs = tuple(p * rnum for p in elem[:4]) + (elem[4] * rden,)
        lhs = tuple(p.scale(scalar) for p in lhs[:4]) + (lhs[4],)
        want = printed[name]
        neg = _le_make(-want[0], -want[1], -want[2], -want[3], want[4])
        form_ok[name] = _le_equal(lhs, neg)
    # positivity of the stars on I (width 2^-10 subdivision per the contract)
    stars_pos = True
    lo, hi = PSI4HAT
    n = grid
    for name in ("alpha", "beta", "gamma"):
        for j in range(n):
            a = lo + (hi - lo) * j / n
            b = lo + (hi - lo) * (j + 1) / n
            if not _le_eval(printed[name], Interval(a, b), bits).lo > 0:
                stars_pos = False
    delta_pos = all(_le_eval(printed["delta"],
                             Interval(lo + (hi - lo) * j / n,
                                      lo + (hi - lo) * (j + 1) / n), bits).lo > 0
                    for j in range(n))
    gamma_t0 = _le_eval(printed["gamma"], Interval(t0, t0), bits).lo > 16
    # endpoint conditions on Theta_s and Theta_st at t0
    ts = _theta_s_diag(Fraction(15), t0, bits)
    tst = _theta_st_diag(Fraction(15), t0, bits)
    theta_st_neg = tst.hi < 0
    # final chain: Theta_s(15, t, t) <= Theta_s(15, t0, t0) (negative slope
    # in t) and |Theta_ss| * (15+ - 15) stays below |Theta_s(15, t0, t0)|
    mss = _theta_ss_bound(bits)
    chain = ts.hi < 0 and mss * (FIFTEEN_PLUS - 15) < -ts.hi
    return C3Report(form_ok["beta"], form_ok["gamma"], form_ok["alpha"],
                    stars_pos, delta_pos, gamma_t0, theta_st_neg,
                    ts.hi, mss, chain)


def _theta_ss_bound(bits: int = 48, t_pieces: int = 8,
                    s_pieces: int = 4) -> Fraction:
    """Rigorous bound of |Theta_ss(s,t,t)| over [15, 15+] x the sweet spot.

    Direct interval evaluation of (1/4)[sum mult (ln f)^2 f^(s/2) -
    sum coef (ln m)^2 m^(-s/2)] on a subdivided grid; the near-cancellation
    of the two sides makes this far sharper than the census bound.
    """
    lo, hi = PSI4HAT
    best = Fraction(0)
    for i in range(t_pieces):
        ta = lo + (hi - lo) * i / t_pieces
        tb = lo + (hi - lo) * (i + 1) / t_pieces
        # a, c decrease in t; b increases
        fs = []
        for pick, mult in ((lambda t: (1 + t * t) ** 2 / (16 * t * t), 2),
                           (lambda t: (1 + t * t) / 4, 4),
                           (lambda t: (1 + t * t) ** 2 / (8 * t * t), 4)):
            va, vb = pick(ta), pick(tb)
            fs.append((Interval(min(va, vb), max(va, vb)), mult))
        for j in range(s_pieces):
            sa = Fraction(15) + (FIFTEEN_PLUS - 15) * j / s_pieces
            sb = Fraction(15) + (FIFTEEN_PLUS - 15) * (j + 1) / s_pieces
            total = Interval.point(Fraction(0))
            for fiv, mult in fs:
                lnf = Interval(ln_enclosure(fiv.lo, bits).lo,
                               ln_enclosure(fiv.hi, bits).hi)
                # f < 1 here: f^(s/2) decreasing in s and increasing in f
                pw = Interval(_powc(fiv.lo, sb / 2, bits).lo,
                              _powc(fiv.hi, sa / 2, bits).hi)
                total = total + (lnf * lnf * pw).scale(Fraction(mult, 4))
            for coef, base in TBP_RIESZ_TERMS:
                lnb = ln_enclosure(base, bits)
                pw = Interval(_powc(base, sb / 2, bits).lo,
                              _powc(base, sa / 2, bits).hi)
                total = total - (lnb * lnb * pw).scale(Fraction(coef, 4))
            best = max(best, abs(total.lo), abs(total.hi))
    return best


def _diag_fs(t: Fraction):
    """(value, t-derivative) pairs of a, b, c along the diagonal, exactly."""
    a_v = (1 + t * t) ** 2 / (16 * t * t)
    a_d = (t ** 4 - 1) / (8 * t ** 3)
    b_v = (1 + t * t) / 4
    b_d = t / 2
    c_v = (1 + t * t) ** 2 / (8 * t * t)
    c_d = (t ** 4 - 1) / (4 * t ** 3)
    return ((a_v, a_d, 2), (b_v, b_d, 4), (c_v, c_d, 4))


def _theta_s_diag(s: Fraction, t: Fraction, bits: int) -> Interval:
    """d Theta(s,t,t)/ds as a rigorous interval."""
    u = s / 2
    total = Interval.point(Fraction(0))
    for f_v, _, mult in _diag_fs(t):
        term = _powc(f_v, u, bits) * ln_enclosure(f_v, bits)
        total = total + term.scale(Fraction(mult, 2))
    for coef, base in TBP_RIESZ_TERMS:
        term = _powc(base, u, bits) * ln_enclosure(base, bits)
        total = total - term.scale(Fraction(coef, 2))
    return total


def _theta_st_diag(s: Fraction, t: Fraction, bits: int) -> Interval:
    """d^2 Theta(s,t,t)/ds dt as a rigorous interval."""
    u = s / 2
    total = Interval.point(Fraction(0))
    for f_v, f_d, mult in _diag_fs(t):
        fu1 = _powc(f_v, u - 1, bits)
        lnf = ln_enclosure(f_v, bits)
        # d/dt[(1/2) ln f f^u] = (1/2) f^(u-1) f' (1 + u ln f)
        term = fu1.scale(Fraction(f_d, 1)) * \
            (Interval.point(Fraction(1)) + lnf.scale(u))
        total = total + term.scale(Fraction(mult, 2))
    return total


# ----------------------------------------------------------------------------
# the phase-transition exponent


@dataclass
class ShinBracket:
    lo: Fraction
    hi: Fraction
    witness_x: Fraction           # Theta(hi, x, x) < 0 certified here
    positive_segments: int        # size of the last full positivity proof

    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains_decimal(self, text: str = SHIN_DECIMAL) -> bool:
        val = Fraction(text)
        return self.lo < val < self.hi


def sigma_gain_threshold(samples: int = 24, s_grid: int = 160,
                         s_lo: float = 13.0, s_hi: float = 14.5) -> float:
    """Non-rigorous sweep: the smallest sampled exponent at which the
    diagonal symmetrization stops increasing energy anywhere on a sample grid
    of the sweet spot (empirically near 13.5); exploration only, certifies
    nothing."""
    lo, hi = float(PSI4HAT[0]), float(PSI4HAT[1])

    def e_float(s, x, y):
        ax = (1 + x * x) ** 2 / (16 * x * x)
        ay = (1 + y * y) ** 2 / (16 * y * y)
        bx = (1 + x * x) / 4
        by = (1 + y * y) / 4
        c = (1 + x * x) * (1 + y * y) / (4 * (x * x + y * y))
        return (ax ** (s / 2) + ay ** (s / 2) + 2 * bx ** (s / 2)
                + 2 * by ** (s / 2) + 4 * c ** (s / 2))

    for j in range(s_grid + 1):
        s = s_lo + (s_hi - s_lo) * j / s_grid
        worst = 0.0
        for ix in range(samples + 1):
            for iy in range(samples + 1):
                x = lo + (hi - lo) * ix / samples
                y = lo + (hi - lo) * iy / samples
                z = (x + y + (x - y) ** 2) / 2
                worst = max(worst, e_float(s, z, z) - e_float(s, x, y))
        if worst <= 1e-15:
            return s
    return float("nan")


F_TT_BOUND = Fraction(16)  # Theta_xx + Theta_yy + 2 Theta_xy <= 4+4+8


def _prove_positive_diagonal(s: Fraction, bits: int,
                             max_depth: int = 60) -> Optional[int]:
    """Prove Theta(s,t,t) > 0 for t in the sweet-spot interval.

    1-D subdivision with the Taylor penalty (1/8) * 16 * w^2 = 2 w^2 from the
    second-derivative bound; returns the segment count or None on failure.
    """
    lo, hi = PSI4HAT
    stack = [(lo, hi, 0)]
    segments = 0
    while stack:
        a, b, d = stack.pop()
        segments += 1
        w = b - a
        penalty = 2 * w * w
        va = theta(s, a, a, bits)
        vb = theta(s, b, b, bits)
        if min(va.lo, vb.lo) > penalty:
            continue
        if d >= max_depth:
            return None
        m = (a + b) / 2
        stack.append((a, m, d + 1))
        stack.append((m, b, d + 1))
    return segments


def _theta_diag_float(fs: float, xf: float) -> float:
    af = (1 + xf * xf) ** 2 / (16 * xf * xf)
    bf = (1 + xf * xf) / 4
    cf = (1 + xf * xf) ** 2 / (8 * xf * xf)
    return (2 * af ** (fs / 2) + 4 * bf ** (fs / 2) + 4 * cf ** (fs / 2)
            - 6 * 2 ** (-fs / 2) - 3 * 3 ** (-fs / 2) - 4 ** (-fs / 2))


def _find_negative_witness(s: Fraction, bits: int) -> Optional[Fraction]:
    """A dyadic x with a certified Theta(s,x,x) < 0, if one exists.

    The diagonal restriction is convex, so a float ternary search locates the
    minimizer precisely; nearby dyadics are then certified rigorously.
    """
    lo, hi = PSI4HAT
    fs = float(s)
    a, b = float(lo), float(hi)
    for _ in range(200):
        m1 = a + (b - a) / 3
        m2 = b - (b - a) / 3
        if _theta_diag_float(fs, m1) <= _theta_diag_float(fs, m2):
            b = m2
        else:
            a = m1
        if b - a < 1e-12:
            break
    xf = (a + b) / 2
    scale = 1 << 40
    base = Fraction(int(xf * scale), scale)
    for extra_bits in (bits, bits + 24, bits + 48):
        for k in (0, 1, -1, 2, -2):
            x = base + Fraction(k, scale)
            if lo <= x <= hi and theta(s, x, x, extra_bits).hi < 0:
                return x
    return None


def compute_shin(digits: int = 6, bits: int = 48) -> ShinBracket:
    """Bisection bracket of the phase-transition exponent.

    For a candidate s: a certified negative value of Theta(s, x, x) pushes the
    upper end down (monotonicity in s), and a full positivity proof over the
    diagonal sweet spot pushes the lower end up.  The initial bracket is
    (15, 15+25/512).
    """
    lo = Fraction(15)
    hi = FIFTEEN_PLUS
    target = Fraction(1, 10 ** digits)
    witness = _find_negative_witness(hi, bits)
    if witness is None:
        raise RuntimeError("upper endpoint lost its negative witness")
    segments = 0
    while hi - lo > target:
        mid = (lo + hi) / 2
        w = _find_negative_witness(mid, bits)
        if w is not None:
            hi, witness = mid, w
            continue
        seg = _prove_positive_diagonal(mid, bits)
        if seg is None:
            seg = _prove_positive_diagonal(mid, bits + 32, max_depth=70)
            if seg is None:
                break  # enclosure precision exhausted: return partial bracket
        segments = seg
        lo = mid
    return ShinBracket(lo, hi, witness, segments)
