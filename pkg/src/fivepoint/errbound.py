"""A-priori energy error bounds for blocks (hull constants, dot-product
estimator, local and global error terms).

The central inequality consumed here: for a good block B and F = G_k (or
-G_1), the minimum of E_F over B is at least the minimum over the vertex
configurations minus ERR_F(B).  Everything is an exact rational function of
the block vertices; no square roots appear because the chord-arc bound chi is
a polynomial in the squared chord length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .geom import INF, chordal_sq, inv_stereo
from .potential import Potential

GOOD_BOUND = Fraction(3, 2)


@dataclass(frozen=True)
class Segment:
    """Dyadic segment [x0, x1] x {0} on the positive x-axis, inside [0,2]."""

    x0: Fraction
    x1: Fraction

    def vertices(self):
        return ((self.x0, Fraction(0)), (self.x1, Fraction(0)))

    def is_good(self) -> bool:
        return 0 <= self.x0 <= self.x1 <= 2


@dataclass(frozen=True)
class Square:
    """Axis-aligned dyadic square [x0,x1] x [y0,y1]."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def vertices(self):
        # cyclic order: opposite edge pairs are (bottom, top) and (right, left)
        return ((self.x0, self.y0), (self.x1, self.y0),
                (self.x1, self.y1), (self.x0, self.y1))

    def is_good(self) -> bool:
        return (-GOOD_BOUND <= self.x0 <= self.x1 <= GOOD_BOUND
                and -GOOD_BOUND <= self.y0 <= self.y1 <= GOOD_BOUND)


class _InfinityCell:
    def vertices(self):
        return (INF,)

    def is_good(self) -> bool:
        return True

    def __repr__(self):
        return "InfinityCell"


INF_CELL = _InfinityCell()

Cell = object  # Segment | Square | _InfinityCell


def chi(D: Fraction, d: Fraction) -> Fraction:
    """chi(D,d) = d^2/(4D) + d^4/(4D^3), an upper bound for the chord-to-arc
    distance chi*(D,d) = (D - sqrt(D^2-d^2))/2 when 0 <= d <= D."""
    return chi_of_sq(Fraction(D), Fraction(d) ** 2)


def chi_of_sq(D: Fraction, dsq: Fraction) -> Fraction:
    if D <= 0 or dsq < 0:
        raise ValueError("need D > 0 and d^2 >= 0")
    return dsq / (4 * D) + dsq * dsq / (4 * D ** 3)


def hull_delta(Q: Cell) -> Fraction:
    """Upper bound on the distance from the spherical patch over Q to the
    convex hull of its vertex images; 0 for the infinity cell."""
    if Q is INF_CELL:
        return Fraction(0)
    vs = Q.vertices()
    if isinstance(Q, Segment):
        return chi_of_sq(Fraction(2), chordal_sq(vs[0], vs[1]))
    s = [chi_of_sq(Fraction(1), chordal_sq(vs[j], vs[(j + 1) % 4]))
         for j in range(4)]
    return max(s[0], s[2]) + max(s[1], s[3])


def hull_diameter_sq(Q: Cell) -> Fraction:
    """Squared diameter of the vertex-image hull: max over all vertex pairs
    (checked, not assumed to be a diagonal)."""
    if Q is INF_CELL:
        return Fraction(0)
    vs = Q.vertices()
    best = Fraction(0)
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            d = chordal_sq(vs[i], vs[j])
            if d > best:
                best = d
    return best


def dot_estimator(Q1: Cell, Q2: Cell) -> Tuple[Fraction, Fraction]:
    """(Q1.Q2, T): an upper bound for dot products of sphere points over the
    two cells, and T = 2 + 2(Q1.Q2) bounding the G_1-value 2 + 2 V1.V2."""
    v1 = [inv_stereo(p) for p in Q1.vertices()]
    v2 = [inv_stereo(p) for p in Q2.vertices()]
    best = None
    for a in v1:
        for b in v2:
            d = a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
            if best is None or d > best:
                best = d
    tau = 0 if (Q1 is INF_CELL or Q2 is INF_CELL) else 1
    if tau:
        d1, d2 = hull_delta(Q1), hull_delta(Q2)
        best = best + d1 + d2 + d1 * d2
    return best, 2 + 2 * best


def local_eps(k: int, Q1: Cell, Q2: Cell,
              T: Optional[Fraction] = None) -> Fraction:
    """Local error eps_k(Q1,Q2) = k(k-1)/2 T^(k-2) d1^2 + 2k T^(k-1) delta1.

    Asymmetric in its arguments; identically 0 when Q1 is the infinity cell.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if Q1 is INF_CELL:
        return Fraction(0)
    d1sq = hull_diameter_sq(Q1)
    delta1 = hull_delta(Q1)
    if k == 1:
        return 2 * delta1
    if T is None:
        T = dot_estimator(Q1, Q2)[1]
    return (Fraction(k * (k - 1), 2) * T ** (k - 2) * d1sq
            + 2 * k * T ** (k - 1) * delta1)


@dataclass(frozen=True)
class ErrorBreakdown:
    per_index: Tuple[Fraction, ...]
    total: Fraction


def global_err(F: Potential, cells: Sequence[Cell]) -> ErrorBreakdown:
    """ERR_F over a block given as its 5 cells (index 4 is the infinity cell).

    ERR_F(B,i) = sum_{j != i} sum_k |c_k| eps_k(Q_i, Q_j); the subdivision
    recommendation in the main search is the argmax over i.
    """
    if F.kind != "hybrid":
        raise ValueError("global_err is defined for hybrid potentials")
    for Q in cells:
        if not Q.is_good():
            raise ValueError("non-good cell in block")
    n = len(cells)
    ks = [k + 1 for k, c in enumerate(F.coeffs) if c]
    weights = {k + 1: abs(c) for k, c in enumerate(F.coeffs) if c}
    per = []
    for i in range(n):
        total_i = Fraction(0)
        if cells[i] is not INF_CELL:
            for j in range(n):
                if j == i:
                    continue
                _, T = dot_estimator(cells[i], cells[j])
                for k in ks:
                    total_i += weights[k] * local_eps(k, cells[i], cells[j], T)
        per.append(total_i)
    return ErrorBreakdown(tuple(per), sum(per, Fraction(0)))
