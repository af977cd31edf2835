"""The main divide-and-conquer search over blocks of avatar space.

A block is a product of a dyadic segment and three dyadic squares, stored as
integers at scale 2^30.  The rational block computations (membership in the
tiny TBP cube, disjointness from Omega, Upsilon inside/disjoint, and the
energy bound via the a-priori error term) drive the subdivision loop of the
main calculation; reaching HALT certifies the energy lower bound on the
claimed region.

Guess-and-check: hardware floats propose each energy verdict and every
proposed pass is confirmed in exact fixed-point integer arithmetic (outward
rounded at scale 2^-64) before the block is accepted.  Fail/subdivide
verdicts need no confirmation; subdividing more than necessary never breaks
soundness.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from .errbound import INF_CELL, Segment, Square, global_err
from .potential import (G3, G4, G5_FLAT, G6, G10_SHARP, G10_SHARPSHARP,
                        Potential, parse_potential, potential_name,
                        tbp_reference)

SCALE = 1 << 30
ONE = SCALE
HALF_BOUND = 3 << 29          # 3/2 at scale 2^30
GOOD_SQ = (3 << 29) ** 2      # (3/2)^2 at scale 2^60
DISK_SQ = 1 << 58             # (1/2)^2 at scale 2^60
FIX = 64                      # fixed-point fraction bits of the sound path

# Omega00 bounds at scale 2^30
_CUBE = 1 << 13               # 2^-17 at scale 2^30
_I0 = (-_CUBE, _CUBE)
_I1 = (SCALE - _CUBE, SCALE + _CUBE)
_ISQ = (619916940, 619933323)  # 2^30 * I_{sqrt(3)/3}

# Upsilon boxes at scale 2^30 (bounds are n/512 = n * 2^21)
_U = 1 << 21
_UPS = (
    (433 * _U, 498 * _U, 0, 0),
    (-16 * _U, 16 * _U, -464 * _U, -349 * _U),
    (-498 * _U, -400 * _U, 0, 24 * _U),
    (-16 * _U, 16 * _U, 349 * _U, 464 * _U),
)

VERDICT_YES = "yes"
NO_INFO = -1

Block = Tuple[int, ...]  # (x0, L0, x1, y1, L1, x2, y2, L2, x3, y3, L3)


def root_block(seg_hi: int = 2) -> Block:
    return (0, seg_hi * SCALE,
            -2 * SCALE, -2 * SCALE, 4 * SCALE,
            -2 * SCALE, -2 * SCALE, 4 * SCALE,
            -2 * SCALE, -2 * SCALE, 4 * SCALE)


def block_cells(b: Block):
    """The five cells (exact rationals) of a block; index 4 is infinity."""
    f = lambda v: Fraction(v, SCALE)
    x0, L0 = b[0], b[1]
    cells = [Segment(f(x0), f(x0 + L0))]
    for j in range(3):
        x, y, L = b[2 + 3 * j], b[3 + 3 * j], b[4 + 3 * j]
        cells.append(Square(f(x), f(x + L), f(y), f(y + L)))
    cells.append(INF_CELL)
    return cells


def acceptability(b: Block):
    """'yes' when acceptable, otherwise the lowest offending index."""
    if b[1] > ONE:
        return 0
    for j in range(3):
        if b[4 + 3 * j] > 2 * SCALE:
            return 1 + j
    return VERDICT_YES


def subdivide_block(b: Block, k: int) -> List[Block]:
    """S_0 halves the segment; S_1..S_3 quarter the corresponding square."""
    if k == 0:
        L = b[1]
        if L % 2:
            raise ValueError("segment no longer representable at scale 2^-30")
        h = L // 2
        return [(b[0],) + (h,) + b[2:], (b[0] + h,) + (h,) + b[2:]]
    if k not in (1, 2, 3):
        raise ValueError("subdivision index must be 0..3")
    i = 2 + 3 * (k - 1)
    x, y, L = b[i], b[i + 1], b[i + 2]
    if L % 2:
        raise ValueError("square no longer representable at scale 2^-30")
    h = L // 2
    out = []
    for dx in (0, h):
        for dy in (0, h):
            out.append(b[:i] + (x + dx, y + dy, h) + b[i + 3:])
    return out


def block_type(b: Block) -> int:
    """type(B) = sigma(c01-1) + 2 sigma(c11) + 4 sigma(c31) from the center
    coordinates; raises if any sigma argument is zero."""
    c01_num = 2 * b[0] + b[1] - 2 * SCALE   # 2*(c01 - 1) at scale 2^30
    c11_num = 2 * b[2] + b[4]
    c31_num = 2 * b[8] + b[10]
    t = 0
    for weight, v in ((1, c01_num), (2, c11_num), (4, c31_num)):
        if v == 0:
            raise ValueError("sigma applied to 0; block not past step 3")
        if v > 0:
            t += weight
    return t


def _square_vertex_norms(b: Block, j: int) -> Tuple[int, int, int, int]:
    i = 2 + 3 * (j - 1)
    x, y, L = b[i], b[i + 1], b[i + 2]
    return (x * x + y * y, (x + L) ** 2 + y * y,
            x * x + (y + L) ** 2, (x + L) ** 2 + (y + L) ** 2)


def predicate_c1(b: Block):
    """Yes only if the whole block lies in the Omega00 box (hence in the
    2^-17 cube around the TBP avatar); pure integer comparisons."""
    x0, L0 = b[0], b[1]
    if not (_I1[0] <= x0 and x0 + L0 <= _I1[1]):
        return NO_INFO
    boxes = ((_I0, (-_ISQ[1], -_ISQ[0])), ((-_I1[1], -_I1[0]), _I0),
             (_I0, _ISQ))
    for j in range(3):
        x, y, L = b[2 + 3 * j], b[3 + 3 * j], b[4 + 3 * j]
        (xlo, xhi), (ylo, yhi) = boxes[j]
        if not (xlo <= x and x + L <= xhi and ylo <= y and y + L <= yhi):
            return NO_INFO
    return VERDICT_YES


def predicate_outside_domain(b: Block, flat: bool = False):
    """Yes is a proof that the block misses the interior of Omega (or
    Omega-flat, which drops the sign condition); requires acceptability."""
    if acceptability(b) != VERDICT_YES:
        raise ValueError("predicate needs an acceptable block")
    x0, L0 = b[0], b[1]
    max_q0_sq = (x0 + L0) ** 2
    norms = [_square_vertex_norms(b, j) for j in (1, 2, 3)]
    for j in range(3):
        mn = min(norms[j])
        if mn >= max_q0_sq or mn >= GOOD_SQ:
            return VERDICT_YES
    # parity: count factors decidedly inside/outside the closed 1/2-disk
    a_cnt = b_cnt = 0
    q0_norms = (x0 * x0, (x0 + L0) ** 2)
    if max(q0_norms) <= DISK_SQ:
        a_cnt += 1
    elif min(q0_norms) >= DISK_SQ:
        b_cnt += 1
    for j in range(3):
        if max(norms[j]) <= DISK_SQ:
            a_cnt += 1
        elif min(norms[j]) >= DISK_SQ:
            b_cnt += 1
    if a_cnt % 2 == 1 and a_cnt + b_cnt == 4:
        return VERDICT_YES
    # coordinate box tests
    for j in range(3):
        i = 2 + 3 * j
        x, y, L = b[i], b[i + 1], b[i + 2]
        if (x + L <= -HALF_BOUND or x >= HALF_BOUND
                or y + L <= -HALF_BOUND or y >= HALF_BOUND):
            return VERDICT_YES
    # ordering tests on second coordinates: p12 <= p22 <= p32, p22 >= 0
    y1, L1 = b[3], b[4]
    y2, L2 = b[6], b[7]
    y3, L3 = b[9], b[10]
    if (y1 >= y2 + L2 or y1 >= y3 + L3 or y2 >= y3 + L3 or y2 + L2 <= 0):
        return VERDICT_YES
    if not flat:
        if all(b[2 + 3 * j] >= 0 for j in range(3)):
            return VERDICT_YES
        if all(b[3 + 3 * j] >= 0 for j in range(3)):
            return VERDICT_YES
    return NO_INFO


def predicate_upsilon(b: Block, mode: str):
    """mode='inside': Yes iff B lies in Upsilon (boxes at all vertices plus
    the vertex-checked norm condition).  mode='disjoint': Yes iff some factor
    box is disjoint from Upsilon's closed box; touching boxes intersect, so
    tangent blocks fall through to the energy test (which holds on and near
    the boundary)."""
    if mode == "inside":
        x0, L0 = b[0], b[1]
        if not (_UPS[0][0] <= x0 and x0 + L0 <= _UPS[0][1]):
            return NO_INFO
        for j in range(3):
            x, y, L = b[2 + 3 * j], b[3 + 3 * j], b[4 + 3 * j]
            box = _UPS[1 + j]
            if not (box[0] <= x and x + L <= box[1]
                    and box[2] <= y and y + L <= box[3]):
                return NO_INFO
        min_q0_sq = x0 * x0  # x0 >= 0 inside the Upsilon segment box
        for j in range(3):
            if max(_square_vertex_norms(b, 1 + j)) > min_q0_sq:
                return NO_INFO
        return VERDICT_YES
    if mode == "disjoint":
        x0, L0 = b[0], b[1]
        if x0 + L0 < _UPS[0][0] or x0 > _UPS[0][1]:
            return VERDICT_YES
        for j in range(3):
            x, y, L = b[2 + 3 * j], b[3 + 3 * j], b[4 + 3 * j]
            box = _UPS[1 + j]
            if (x + L < box[0] or x > box[1]
                    or y + L < box[2] or y > box[3]):
                return VERDICT_YES
        return NO_INFO
    raise ValueError("mode must be 'inside' or 'disjoint'")


def good_check(b: Block):
    """'yes' or the lowest index whose square has a vertex outside
    [-3/2, 3/2]^2 (segments are always inside [0,2] x {0})."""
    for j in (1, 2, 3):
        i = 2 + 3 * (j - 1)
        x, y, L = b[i], b[i + 1], b[i + 2]
        if x < -HALF_BOUND or x + L > HALF_BOUND or y < -HALF_BOUND or y + L > HALF_BOUND:
            return j
    return VERDICT_YES


# ----------------------------------------------------------------------------
# energy predicate: float guess + exact fixed-point confirmation


def _bound_fix(F: Potential, margin_log2: int) -> int:
    """ceil(([F] + 2^margin) * 2^FIX): the scaled threshold of the energy test."""
    v = (tbp_reference(F) + Fraction(2) ** margin_log2) * (1 << FIX)
    return -((-v.numerator) // v.denominator)


def _coeff_list(F: Potential) -> Tuple[Tuple[int, int], ...]:
    out = []
    for k, c in enumerate(F.coeffs, start=1):
        if c:
            if c.denominator != 1:
                raise ValueError("fast path expects integer hybrid coefficients")
            out.append((k, c.numerator))
    return tuple(out)


def _block_vertices(b: Block):
    """Vertex coordinate tuples per cell: segment 2, squares 4 each."""
    x0, L0 = b[0], b[1]
    cells = [((x0, 0), (x0 + L0, 0))]
    for j in range(3):
        x, y, L = b[2 + 3 * j], b[3 + 3 * j], b[4 + 3 * j]
        cells.append(((x, y), (x + L, y), (x + L, y + L), (x, y + L)))
    return cells


@lru_cache(maxsize=1 << 17)
def _pair_t_fix(va: Tuple[Tuple[int, int], ...],
                vb: Tuple[Tuple[int, int], ...]):
    """Fixed-point enclosures of t = 4 - |p^ - q^|^2 for all vertex pairs of
    two cells; coordinates are integers at scale 2^30, results at 2^-FIX."""
    na = [(1 << 60) + x * x + y * y for x, y in va]
    nb = [(1 << 60) + x * x + y * y for x, y in vb]
    out = []
    for (ax, ay), n1 in zip(va, na):
        row = []
        for (bx, by), n2 in zip(vb, nb):
            den = n1 * n2
            # dot = 4*2^60*(ax*bx+ay*by) + (|a|^2-2^60)(|b|^2-2^60)
            dot = ((ax * bx + ay * by) << 62) + (n1 - (2 << 60)) * (n2 - (2 << 60))
            tnum = 2 * (den + dot)
            lo = (tnum << FIX) // den
            hi = -((-(tnum << FIX)) // den)
            row.append((lo, hi))
        out.append(tuple(row))
    return tuple(out)


def _pole_t_fix(vs: Tuple[Tuple[int, int], ...]):
    """t against the north pole: 4(|p|^2)/(1+|p|^2) at scale 2^-FIX."""
    out = []
    for x, y in vs:
        nsq = x * x + y * y
        den = (1 << 60) + nsq
        tnum = 4 * nsq
        lo = (tnum << FIX) // den
        hi = -((-(tnum << FIX)) // den)
        out.append((lo, hi))
    return tuple(out)


def _fix_pow_lo(t: int, k: int) -> int:
    out = t
    for _ in range(k - 1):
        out = (out * t) >> FIX
    return out


def _fix_pow_hi(t: int, k: int) -> int:
    out = t
    for _ in range(k - 1):
        out = -((-(out * t)) >> FIX)
    return out


def _energy_tables_fix(coeffs, tpairs, lo_index: int):
    """Per-vertex-pair hybrid energy bounds from a t-enclosure table.

    lo_index 0 gives lower bounds (negative coefficients use the opposite
    endpoint), 1 gives upper bounds.
    """
    out = []
    for row in tpairs:
        orow = []
        for t in row:
            total = 0
            for k, c in coeffs:
                if (c > 0) == (lo_index == 0):
                    total += c * _fix_pow_lo(t[0], k)
                else:
                    total += c * _fix_pow_hi(t[1], k)
            orow.append(total)
        out.append(orow)
    return out


def _chi_fix_hi(D_num: int, csq_hi: int) -> int:
    """Upper bound of chi(D, d) at scale 2^-FIX from csq = d^2 upper bound.

    D is 1 or 2: chi = csq/(4D) + csq^2/(4D^3).
    """
    q1 = -((-csq_hi) // (4 * D_num))
    q2 = -((-(csq_hi * csq_hi)) // (4 * D_num ** 3 << FIX))
    return q1 + q2


def _exact_c4f(b: Block, coeffs, bound_fix: int):
    """Exact fixed-point version of the energy computation.

    Returns ('yes', emin_lo, err_hi) or (index, emin_lo, err_hi).
    """
    verts = _block_vertices(b)
    vt = [tuple(v) for v in verts]
    # pair t tables
    tpair = {}
    for i in range(4):
        for j in range(i + 1, 4):
            tpair[(i, j)] = _pair_t_fix(vt[i], vt[j])
    tpole = [_pole_t_fix(vt[i]) for i in range(4)]
    # vertex-config energy lower bounds
    e = {ij: _energy_tables_fix(coeffs, tp, 0) for ij, tp in tpair.items()}
    epole = []
    for i in range(4):
        row = []
        for t in tpole[i]:
            total = 0
            for k, c in coeffs:
                row_v = c * (_fix_pow_lo(t[0], k) if c > 0 else _fix_pow_hi(t[1], k))
                total += row_v
            row.append(total)
        epole.append(row)
    e01, e02, e03 = e[(0, 1)], e[(0, 2)], e[(0, 3)]
    e12, e13, e23 = e[(1, 2)], e[(1, 3)], e[(2, 3)]
    emin = None
    for u0 in range(2):
        a0 = epole[0][u0]
        r01, r02, r03 = e01[u0], e02[u0], e03[u0]
        for u1 in range(4):
            a1 = a0 + r01[u1] + epole[1][u1]
            r12, r13 = e12[u1], e13[u1]
            for u2 in range(4):
                a2 = a1 + r02[u2] + r12[u2] + epole[2][u2]
                r23 = e23[u2]
                for u3 in range(4):
                    v = a2 + r03[u3] + r13[u3] + r23[u3] + epole[3][u3]
                    if emin is None or v < emin:
                        emin = v
    # delta and diameter^2 per cell (upper bounds)
    csq_hi = {}  # chordal-squared upper bounds between cell vertices
    delta = []
    dsq = []
    for i in range(4):
        tii = _pair_t_fix(vt[i], vt[i])
        n = len(vt[i])
        csq = [[(4 << FIX) - tii[a][bq][0] for bq in range(n)] for a in range(n)]
        if i == 0:
            delta.append(_chi_fix_hi(2, csq[0][1]))
            dsq.append(csq[0][1])
        else:
            s = [_chi_fix_hi(1, csq[j][(j + 1) % 4]) for j in range(4)]
            delta.append(max(s[0], s[2]) + max(s[1], s[3]))
            dsq.append(max(csq[a][bq] for a in range(4) for bq in range(4)))
    # T upper bounds per unordered pair (square factors) and against the pole
    Tm = {}
    for (i, j), tp in tpair.items():
        tmax = max(t[1] for row in tp for t in row)
        dd = delta[i] + delta[j] + (-((-(delta[i] * delta[j])) >> FIX))
        Tm[(i, j)] = tmax + 2 * dd
    for i in range(4):
        Tm[(i, 4)] = max(t[1] for t in tpole[i])  # tau = 0 against infinity
    # ERR per index (all rounding toward +inf)
    err_i = [0] * 5
    for i in range(4):
        di, dl = dsq[i], delta[i]
        for j in range(5):
            if j == i:
                continue
            T = Tm[(min(i, j), max(i, j))]
            for k, c in coeffs:
                c = abs(c)
                if k == 1:
                    err_i[i] += c * 2 * dl
                else:
                    tk2 = _fix_pow_hi(T, k - 2) if k > 2 else (1 << FIX)
                    tk1 = -((-(tk2 * T)) >> FIX)
                    err_i[i] += c * (-((-(k * (k - 1) * tk2 * di)) >> (FIX + 1))
                                     - ((-(2 * k * tk1 * dl)) >> FIX))
    err_total = sum(err_i)
    if emin - err_total >= bound_fix:
        return VERDICT_YES, emin, err_total
    best = max(range(4), key=lambda i: (err_i[i], -i))
    return best, emin, err_total


def _float_c4f(b: Block, coeffs, bound_f: float):
    """Floating-point guess of the energy verdict (never trusted for a pass)."""
    verts = _block_vertices(b)
    inv = 1.0 / SCALE
    P = []
    for cv in verts:
        row = []
        for x, y in cv:
            xf, yf = x * inv, y * inv
            n = 1.0 + xf * xf + yf * yf
            row.append((2.0 * xf / n, 2.0 * yf / n, 1.0 - 2.0 / n))
        P.append(row)

    def tval(p, q):
        return 2.0 + 2.0 * (p[0] * q[0] + p[1] * q[1] + p[2] * q[2])

    def epair(t):
        total = 0.0
        tp = t
        kprev = 1
        for k, c in coeffs:
            tp *= t ** (k - kprev)
            kprev = k
            total += c * tp
        return total

    tp = {}
    for i in range(4):
        for j in range(i + 1, 4):
            tp[(i, j)] = [[tval(p, q) for q in P[j]] for p in P[i]]
    tpole = [[2.0 + 2.0 * p[2] for p in P[i]] for i in range(4)]
    e = {ij: [[epair(t) for t in row] for row in rows] for ij, rows in tp.items()}
    epole = [[epair(t) for t in row] for row in tpole]
    e01, e02, e03 = e[(0, 1)], e[(0, 2)], e[(0, 3)]
    e12, e13, e23 = e[(1, 2)], e[(1, 3)], e[(2, 3)]
    emin = 1e300
    for u0 in range(2):
        a0 = epole[0][u0]
        r01, r02, r03 = e01[u0], e02[u0], e03[u0]
        for u1 in range(4):
            a1 = a0 + r01[u1] + epole[1][u1]
            r12, r13 = e12[u1], e13[u1]
            for u2 in range(4):
                a2 = a1 + r02[u2] + r12[u2] + epole[2][u2]
                r23 = e23[u2]
                for u3 in range(4):
                    v = a2 + r03[u3] + r13[u3] + r23[u3] + epole[3][u3]
                    if v < emin:
                        emin = v
    # delta / diameters
    delta = []
    dsq = []
    for i in range(4):
        pts = P[i]
        if i == 0:
            csq = 2.0 - 2.0 * (pts[0][0] * pts[1][0] + pts[0][1] * pts[1][1]
                               + pts[0][2] * pts[1][2])
            delta.append(csq / 8.0 + csq * csq / 32.0)
            dsq.append(csq)
        else:
            cs = []
            for a in range(4):
                for bq in range(a + 1, 4):
                    cs.append(2.0 - 2.0 * (pts[a][0] * pts[bq][0]
                                           + pts[a][1] * pts[bq][1]
                                           + pts[a][2] * pts[bq][2]))
            edges = [cs[0], cs[3], cs[5], cs[2]]  # (01),(12),(23),(03)
            s = [c / 4.0 + c * c / 4.0 for c in edges]
            delta.append(max(s[0], s[2]) + max(s[1], s[3]))
            dsq.append(max(cs))
    Tm = {}
    for (i, j), rows in tp.items():
        tmax = max(max(row) for row in rows)
        Tm[(i, j)] = tmax + 2.0 * (delta[i] + delta[j] + delta[i] * delta[j])
    for i in range(4):
        Tm[(i, 4)] = max(tpole[i])
    err_i = [0.0] * 4
    for i in range(4):
        di, dl = dsq[i], delta[i]
        for j in range(5):
            if j == i:
                continue
            T = Tm[(min(i, j), max(i, j))]
            for k, c in coeffs:
                c = abs(c)
                if k == 1:
                    err_i[i] += c * 2.0 * dl
                else:
                    err_i[i] += c * (0.5 * k * (k - 1) * T ** (k - 2) * di
                                     + 2.0 * k * T ** (k - 1) * dl)
    if emin - sum(err_i) >= bound_f:
        return VERDICT_YES
    best = 0
    for i in range(1, 4):
        if err_i[i] > err_i[best]:
            best = i
    return best


def predicate_energy(b: Block, F: Potential, margin_log2: int = -50,
                     use_float: bool = False):
    """The rational block computation C_{4,F}.

    Returns 'yes' (a proof that E_F >= [F] + 2^margin on the block) or a
    subdivision index: the non-good index if the block is not good, else the
    argmax of ERR_F(B, i) (lowest on ties).
    """
    if acceptability(b) != VERDICT_YES:
        raise ValueError("predicate needs an acceptable block")
    g = good_check(b)
    if g != VERDICT_YES:
        return g
    coeffs = _coeff_list(F)
    bound_fix = _bound_fix(F, margin_log2)
    if use_float:
        guess = _float_c4f(b, coeffs, float(tbp_reference(F)) + 2.0 ** margin_log2)
        if guess != VERDICT_YES:
            return guess
    verdict, _, _ = _exact_c4f(b, coeffs, bound_fix)
    return verdict


# ----------------------------------------------------------------------------
# the main algorithm


@dataclass
class SearchConfig:
    potential: str = "g4"
    types: Tuple[int, ...] = tuple(range(8))
    margin_log2: int = -50
    budget: Optional[int] = None
    float_filter: bool = True
    certificate_path: Optional[str] = None
    checkpoint_path: Optional[str] = None
    checkpoint_every: int = 100_000
    initial_blocks: Optional[Tuple[Block, ...]] = None

    def to_json(self) -> dict:
        d = {"potential": self.potential, "types": list(self.types),
             "margin_log2": self.margin_log2, "budget": self.budget,
             "float_filter": self.float_filter,
             "certificate_path": self.certificate_path,
             "checkpoint_path": self.checkpoint_path,
             "checkpoint_every": self.checkpoint_every}
        if self.initial_blocks is not None:
            d["initial_blocks"] = [list(b) for b in self.initial_blocks]
        return d

    @staticmethod
    def from_json(d: dict) -> "SearchConfig":
        blocks = d.get("initial_blocks")
        return SearchConfig(
            potential=d["potential"], types=tuple(d["types"]),
            margin_log2=d["margin_log2"], budget=d.get("budget"),
            float_filter=d["float_filter"],
            certificate_path=d.get("certificate_path"),
            checkpoint_path=d.get("checkpoint_path"),
            checkpoint_every=d.get("checkpoint_every", 100_000),
            initial_blocks=None if blocks is None else
            tuple(tuple(b) for b in blocks))


@dataclass
class SearchStats:
    processed: int = 0
    passed: int = 0
    passed_by: dict = field(default_factory=dict)
    subdivisions: List[int] = field(default_factory=lambda: [0, 0, 0, 0])
    confirm_failures: int = 0
    halted: bool = False
    wall_seconds: float = 0.0

    def note_pass(self, why: str):
        self.passed += 1
        self.passed_by[why] = self.passed_by.get(why, 0) + 1


def _mode_flags(F: Potential):
    flat = F == G5_FLAT
    ups = "skip" if F == G10_SHARP else ("only" if F == G10_SHARPSHARP else None)
    seg_hi = 4 if F == G3 else 2
    return flat, ups, seg_hi


def run_main(cfg: SearchConfig, pending: Optional[List[Block]] = None,
             stats: Optional[SearchStats] = None):
    """Run the main calculation to HALT (or budget exhaustion).

    Depth-first over a stack; every pass is recorded to the certificate
    stream when configured.  Returns (stats, pending): pending is empty on
    HALT, else the resumable stack.
    """
    F = parse_potential(cfg.potential)
    if F.kind != "hybrid":
        raise ValueError("main search runs on hybrid potentials")
    flat, ups_mode, seg_hi = _mode_flags(F)
    coeffs = _coeff_list(F)
    bound_fix = _bound_fix(F, cfg.margin_log2)
    bound_f = float(tbp_reference(F)) + 2.0 ** cfg.margin_log2
    type_set = set(cfg.types)
    all_types = len(type_set) == 8
    if stats is None:
        stats = SearchStats()
    if pending is None:
        pending = list(cfg.initial_blocks) if cfg.initial_blocks \
            else [root_block(seg_hi)]
    cert = open(cfg.certificate_path, "a") if cfg.certificate_path else None
    write = cert.write if cert else None

    def emit(b, why, emin=None, err=None):
        stats.note_pass(why)
        if write:
            rec = {"b": list(b), "why": why}
            if emin is not None:
                rec["emin"] = f"{emin}/{1 << FIX}"
                rec["err"] = f"{err}/{1 << FIX}"
            write(json.dumps(rec, separators=(",", ":")) + "\n")

    t0 = time.monotonic()
    # the budget limits blocks processed by this invocation; resuming from a
    # checkpoint therefore advances by the same allowance each call
    budget = None if cfg.budget is None else stats.processed + cfg.budget
    use_float = cfg.float_filter
    try:
        while pending:
            if budget is not None and stats.processed >= budget:
                stats.wall_seconds += time.monotonic() - t0
                if cfg.checkpoint_path:
                    save_checkpoint(cfg.checkpoint_path, cfg, stats, pending)
                return stats, pending
            b = pending.pop()
            stats.processed += 1
            if (cfg.checkpoint_path and cfg.checkpoint_every
                    and stats.processed % cfg.checkpoint_every == 0):
                save_checkpoint(cfg.checkpoint_path, cfg, stats, pending + [b])
            acc = acceptability(b)
            if acc != VERDICT_YES:
                stats.subdivisions[acc] += 1
                pending.extend(subdivide_block(b, acc))
                continue
            if not all_types and block_type(b) not in type_set:
                emit(b, "type")
                continue
            if predicate_c1(b) == VERDICT_YES:
                emit(b, "c1")
                continue
            if predicate_outside_domain(b, flat) == VERDICT_YES:
                emit(b, "outside-omega")
                continue
            if ups_mode == "skip" and predicate_upsilon(b, "inside") == VERDICT_YES:
                emit(b, "upsilon-inside")
                continue
            if ups_mode == "only" and predicate_upsilon(b, "disjoint") == VERDICT_YES:
                emit(b, "upsilon-disjoint")
                continue
            g = good_check(b)
            if g != VERDICT_YES:
                stats.subdivisions[g] += 1
                pending.extend(subdivide_block(b, g))
                continue
            if use_float:
                guess = _float_c4f(b, coeffs, bound_f)
                if guess != VERDICT_YES:
                    stats.subdivisions[guess] += 1
                    pending.extend(subdivide_block(b, guess))
                    continue
            verdict, emin, err = _exact_c4f(b, coeffs, bound_fix)
            if verdict == VERDICT_YES:
                emit(b, "energy", emin, err)
            else:
                if use_float:
                    stats.confirm_failures += 1
                stats.subdivisions[verdict] += 1
                pending.extend(subdivide_block(b, verdict))
        stats.halted = True
        stats.wall_seconds += time.monotonic() - t0
        if cfg.checkpoint_path:
            save_checkpoint(cfg.checkpoint_path, cfg, stats, [])
        return stats, []
    finally:
        if cert:
            cert.close()


# ----------------------------------------------------------------------------
# checkpointing (text: header + one block per line, integers at scale 2^30)


def save_checkpoint(path: str, cfg: SearchConfig, stats: SearchStats,
                    pending: Sequence[Block]):
    with open(path, "w") as f:
        f.write("fivepoint-checkpoint v1\n")
        f.write("config " + json.dumps(cfg.to_json(), separators=(",", ":")) + "\n")
        f.write(f"stats {stats.processed} {stats.passed} "
                f"{' '.join(str(s) for s in stats.subdivisions)} "
                f"{stats.confirm_failures}\n")
        f.write("passed_by " + json.dumps(stats.passed_by,
                                          separators=(",", ":")) + "\n")
        for b in pending:
            f.write(" ".join(str(v) for v in b) + "\n")


def load_checkpoint(path: str):
    with open(path) as f:
        header = f.readline().strip()
        if header != "fivepoint-checkpoint v1":
            raise ValueError("not a fivepoint checkpoint")
        cfg = SearchConfig.from_json(json.loads(f.readline().split(" ", 1)[1]))
        parts = f.readline().split()
        stats = SearchStats(processed=int(parts[1]), passed=int(parts[2]),
                            subdivisions=[int(x) for x in parts[3:7]],
                            confirm_failures=int(parts[7]))
        stats.passed_by = json.loads(f.readline().split(" ", 1)[1])
        pending = []
        for line in f:
            if line.strip():
                pending.append(tuple(int(v) for v in line.split()))
    return cfg, stats, pending


# ----------------------------------------------------------------------------
# certificate replay


def replay_certificate(path: str, cfg: SearchConfig) -> int:
    """Re-verify every record of a certificate without re-searching.

    Returns the number of verified records; raises on the first failure.
    """
    F = parse_potential(cfg.potential)
    flat, ups_mode, _ = _mode_flags(F)
    coeffs = _coeff_list(F)
    bound_fix = _bound_fix(F, cfg.margin_log2)
    count = 0
    with open(path) as f:
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            b = tuple(rec["b"])
            why = rec["why"]
            if why == "c1":
                ok = predicate_c1(b) == VERDICT_YES
            elif why == "outside-omega":
                ok = predicate_outside_domain(b, flat) == VERDICT_YES
            elif why == "upsilon-inside":
                ok = predicate_upsilon(b, "inside") == VERDICT_YES
            elif why == "upsilon-disjoint":
                ok = predicate_upsilon(b, "disjoint") == VERDICT_YES
            elif why == "type":
                ok = block_type(b) not in cfg.types
            elif why == "energy":
                verdict, emin, err = _exact_c4f(b, coeffs, bound_fix)
                ok = verdict == VERDICT_YES
                if ok and "emin" in rec:
                    ok = rec["emin"] == f"{emin}/{1 << FIX}" and \
                        rec["err"] == f"{err}/{1 << FIX}"
            else:
                ok = False
            if not ok:
                raise ValueError(f"certificate record failed verification: {rec}")
            count += 1
    return count
