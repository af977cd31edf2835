"""Planar avatars of 5-point sphere configurations and the named domains.

An avatar holds the four stereographic images p0..p3; the fifth sphere point
is always the north pole (0,0,1).  Coordinates are exact field elements
(Fraction or QSqrt3) and all membership tests are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .sqrt3 import QSqrt3, SQRT3_OVER_3

INF = "inf"  # the point at infinity (maps to the north pole)

Point = Tuple  # (x, y) over Fraction or QSqrt3


def norm_sq(p: Point):
    return p[0] * p[0] + p[1] * p[1]


def inv_stereo(p):
    """Inverse stereographic projection onto the unit sphere; INF -> (0,0,1)."""
    if p is INF:
        return (Fraction(0), Fraction(0), Fraction(1))
    n = 1 + norm_sq(p)
    return (2 * p[0] / n, 2 * p[1] / n, 1 - 2 / n)


def chordal_sq(p, q):
    """Squared chordal distance || inv_stereo(p) - inv_stereo(q) ||^2, exactly.

    Equals 4 |p-q|^2 / ((1+|p|^2)(1+|q|^2)), an identity used throughout; the
    point at infinity is allowed on either side.
    """
    if p is INF and q is INF:
        return Fraction(0)
    if p is INF:
        return chordal_sq(q, p)
    if q is INF:
        return 4 / (1 + norm_sq(p))
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return 4 * (dx * dx + dy * dy) / ((1 + norm_sq(p)) * (1 + norm_sq(q)))


@dataclass(frozen=True)
class Avatar:
    """Four planar points; the corresponding sphere configuration adds (0,0,1)."""

    p0: Point
    p1: Point
    p2: Point
    p3: Point

    def points(self):
        return (self.p0, self.p1, self.p2, self.p3)

    def sphere_points(self):
        return tuple(inv_stereo(p) for p in self.points()) + ((0, 0, 1),)

    @staticmethod
    def from_vector(v: Sequence) -> "Avatar":
        """Build from the 7-vector (x1..x7); p02 = 0 is implicit."""
        if len(v) != 7:
            raise ValueError("avatar vector must have 7 entries")
        zero = v[0] - v[0]
        return Avatar((v[0], zero), (v[1], v[2]), (v[3], v[4]), (v[5], v[6]))

    def to_vector(self):
        if self.p0[1] != 0:
            raise ValueError("p0 must lie on the x-axis for the 7-vector form")
        return (self.p0[0], self.p1[0], self.p1[1], self.p2[0], self.p2[1],
                self.p3[0], self.p3[1])

    def to_scaled_ints(self) -> Tuple[int, ...]:
        """Serialize as 7 integers at scale 2^30 (exact; raises if not dyadic)."""
        out = []
        for x in self.to_vector():
            v = Fraction(x) * (1 << 30)
            if v.denominator != 1:
                raise ValueError("coordinate not representable at scale 2^-30")
            out.append(v.numerator)
        return tuple(out)

    @staticmethod
    def from_scaled_ints(vals: Sequence[int]) -> "Avatar":
        return Avatar.from_vector([Fraction(v, 1 << 30) for v in vals])


# The even TBP avatar: points (+-1, 0) and (0, +-sqrt(3)/3).
TBP_XI0 = (QSqrt3.of(1), QSqrt3.of(0), -SQRT3_OVER_3, QSqrt3.of(-1),
           QSqrt3.of(0), QSqrt3.of(0), SQRT3_OVER_3)


def tbp_avatar() -> Avatar:
    return Avatar.from_vector(TBP_XI0)


def parity(a: Avatar) -> str:
    """'even'/'odd' by the number of points in the closed disk of radius 1/2."""
    count = sum(1 for p in a.points() if norm_sq(p) <= Fraction(1, 4))
    return "even" if count % 2 == 0 else "odd"


# ----------------------------------------------------------------------------
# domains

_UPSILON_BOXES = {  # 512 * p_k bounds: (xlo, xhi, ylo, yhi)
    0: (433, 498, 0, 0),
    1: (-16, 16, -464, -349),
    2: (-498, -400, 0, 24),
    3: (-16, 16, 349, 464),
}

_UPSILON_PRIME_BOXES = {
    0: (432, 498, -16, 16),
    1: (-32, 32, -465, -348),
    2: (-498, -400, -16, 16),
    3: (-32, 32, 348, 465),
}

# 2^30 * I_{sqrt(3)/3} as printed; just inside the 2^-17 cube edge at xi_0
I_SQRT3_3 = (Fraction(619916940, 1 << 30), Fraction(619933323, 1 << 30))

OMEGA0_HALF_SIDE = Fraction(1, 1 << 18)  # cube of side 2^-17 about xi_0

DOMAIN_TAGS = ("Omega", "OmegaFlat", "Omega0", "Omega00", "Upsilon",
               "UpsilonPrime", "UpsilonDoublePrime", "Psi4", "Psi4Hat", "Psi8")


def _le(a, b, strict):
    return a < b if strict else a <= b


def _in_box(p, box, strict, scale=512):
    xlo, xhi, ylo, yhi = (Fraction(v, scale) for v in box)
    return (_le(xlo, p[0], strict) and _le(p[0], xhi, strict)
            and _le(ylo, p[1], strict) and _le(p[1], yhi, strict))


def _omega_conditions(a: Avatar, strict: bool, flat: bool) -> bool:
    p0, p1, p2, p3 = a.points()
    if parity(a) != "even":
        return False
    n0 = norm_sq(p0)
    if not all(_le(norm_sq(pk), n0, strict) for pk in (p1, p2, p3)):
        return False
    if not (_le(p1[1], p2[1], strict) and _le(p2[1], p3[1], strict)
            and _le(0, p2[1], strict)):
        return False
    if not (_le(0, p0[0], strict) and _le(p0[0], 2, strict) and p0[1] == 0):
        return False
    th = Fraction(3, 2)
    for pj in (p1, p2, p3):
        if not (_le(-th, pj[0], strict) and _le(pj[0], th, strict)
                and _le(-th, pj[1], strict) and _le(pj[1], th, strict)):
            return False
    if not flat:
        for k in (0, 1):
            if not _le(min(p1[k], p2[k], p3[k]), 0, strict):
                return False
    return True


def _upsilon_conditions(a: Avatar, boxes, strict: bool) -> bool:
    pts = a.points()
    n0 = norm_sq(pts[0])
    if not all(_le(norm_sq(pts[k]), n0, strict) for k in (1, 2, 3)):
        return False
    return all(_in_box(pts[k], boxes[k], strict) for k in range(4))


def in_domain(obj, tag: str, strict: bool = False) -> bool:
    """Exact membership test for the named domain.

    Omega/Upsilon-family tags take an Avatar (or 7-vector); Psi-family tags
    take the (x, y) pair identifying the 4-fold symmetric avatar.
    """
    if tag not in DOMAIN_TAGS:
        raise ValueError(f"unknown domain tag {tag!r}")
    if tag in ("Psi4", "Psi4Hat", "Psi8"):
        x, y = obj
        if tag == "Psi8" and x != y:
            return False
        lo, hi = (Fraction(43, 64), Fraction(1)) if tag != "Psi4Hat" \
            else (Fraction(55, 64), Fraction(56, 64))
        return (_le(lo, x, strict) and _le(x, hi, strict)
                and _le(lo, y, strict) and _le(y, hi, strict))
    a = obj if isinstance(obj, Avatar) else Avatar.from_vector(obj)
    if tag == "Omega":
        return _omega_conditions(a, strict, flat=False)
    if tag == "OmegaFlat":
        return _omega_conditions(a, strict, flat=True)
    if tag == "Omega0":
        v = a.to_vector()
        return all(_le(abs(QSqrt3.of(v[i]) - TBP_XI0[i]), OMEGA0_HALF_SIDE, strict)
                   for i in range(7))
    if tag == "Omega00":
        v = a.to_vector()
        half = OMEGA0_HALF_SIDE
        i0 = (-half, half)
        i1 = (1 - half, 1 + half)
        boxes = [i1, i0, (-I_SQRT3_3[1], -I_SQRT3_3[0]), (-i1[1], -i1[0]), i0,
                 i0, I_SQRT3_3]
        return all(_le(b[0], v[i], strict) and _le(v[i], b[1], strict)
                   for i, b in enumerate(boxes))
    if tag == "Upsilon":
        return _upsilon_conditions(a, _UPSILON_BOXES, strict)
    if tag == "UpsilonPrime":
        if a.p0[1] != a.p2[1]:
            return False
        return _upsilon_conditions(a, _UPSILON_PRIME_BOXES, strict)
    if tag == "UpsilonDoublePrime":
        p0, p1, p2, p3 = a.points()
        if (p2[0], p2[1]) != (-p0[0], p0[1]):
            return False
        if p1[0] != 0 or p3[0] != 0:
            return False
        lo, hi = Fraction(348, 512), Fraction(465, 512)
        return (_in_box(p0, (416, 498, -16, 16), strict)
                and _le(lo, -p1[1], strict) and _le(-p1[1], hi, strict)
                and _le(lo, p3[1], strict) and _le(p3[1], hi, strict))
    raise AssertionError
