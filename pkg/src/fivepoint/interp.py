"""Forcing-pair interpolation: the 5x5 coefficient solve, exponential-sum
positivity proofs, Taylor under-approximations near s = 0, and the
root-structure verification for the interpolants.

The interpolant  Lambda_s = a0 + a1 G1 + a2 G2 + a3 Gamma3 + a4 Gamma4  is
pinned to R_s at the TBP distances sqrt(2), sqrt(3), sqrt(4) (values, plus
first derivatives at the first two).  The solved coefficients are exact
integer matrices against the basis (2^(-s/2), 3^(-s/2), 4^(-s/2),
s 2^(-s/2), s 3^(-s/2)); everything downstream (the psi polynomial, its
factorization, the sign analyses) is symbolic in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import Interval, ln2_enclosure, ln3_enclosure, pow_interval
from .potential import (G3, G4, G5, G5_FLAT, G6, G10_SHARP, G10_SHARPSHARP,
                        Potential)

# ----------------------------------------------------------------------------
# exponential sums  sum_i  c_i * s^t_i * b_i^(s/2)


class ExpSum:
    """Exact exponential sum with rational coefficients and bases."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, Fraction], Fraction]] = None):
        self.terms: Dict[Tuple[int, Fraction], Fraction] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = c

    @staticmethod
    def term(c, t: int, b) -> "ExpSum":
        if t < 0:
            raise ValueError("s-power must be >= 0")
        b = Fraction(b)
        if b <= 0:
            raise ValueError("base must be positive")
        return ExpSum({(t, b): Fraction(c)})

    def __add__(self, other: "ExpSum") -> "ExpSum":
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            elif k in out:
                del out[k]
        e = ExpSum()
        e.terms = out
        return e

    def __sub__(self, other: "ExpSum") -> "ExpSum":
        return self + other.scale(-1)

    def __neg__(self) -> "ExpSum":
        return self.scale(-1)

    def scale(self, c) -> "ExpSum":
        c = Fraction(c)
        if not c:
            return ExpSum()
        e = ExpSum()
        e.terms = {k: v * c for k, v in self.terms.items()}
        return e

    def shift_s(self) -> "ExpSum":
        """Multiply by s."""
        e = ExpSum()
        e.terms = {(t + 1, b): c for (t, b), c in self.terms.items()}
        return e

    def mul_base(self, m) -> "ExpSum":
        """Multiply by m^(s/2): every base scales by m."""
        m = Fraction(m)
        e = ExpSum()
        e.terms = {(t, b * m): c for (t, b), c in self.terms.items()}
        return e

    def mul_s_poly(self, coeffs: Sequence) -> "ExpSum":
        """Multiply by a polynomial in s given by its coefficient list."""
        out = ExpSum()
        cur = self
        for c in coeffs:
            if c:
                out = out + cur.scale(c)
            cur = cur.shift_s()
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, ExpSum) and self.terms == other.terms

    def __repr__(self):
        return f"ExpSum({len(self.terms)} terms)"

    def eval_interval(self, s, bits: int = 40) -> Interval:
        s = Fraction(s)
        total = Interval.point(Fraction(0))
        for (t, b), c in self.terms.items():
            v = pow_interval(b, s / 2, bits).scale(c * s ** t)
            total = total + v
        return total

    def eval_float(self, s: float) -> float:
        return sum(float(c) * s ** t * float(b) ** (s / 2)
                   for (t, b), c in self.terms.items())

    def range_on(self, s0, s1, bits: int = 32) -> Interval:
        """Rigorous enclosure of the sum over s in [s0, s1].

        Per term, the s-power factor and the exponential factor are enclosed
        separately (both monotone except s^even through 0) and multiplied.
        """
        s0, s1 = Fraction(s0), Fraction(s1)
        if s0 > s1:
            raise ValueError("empty interval")
        total = Interval.point(Fraction(0))
        for (t, b), c in self.terms.items():
            if t == 0:
                sp = Interval.point(Fraction(1))
            else:
                cands = [s0 ** t, s1 ** t]
                if s0 < 0 < s1:
                    cands.append(Fraction(0))
                sp = Interval(min(cands), max(cands))
            p0 = pow_interval(b, s0 / 2, bits)
            p1 = pow_interval(b, s1 / 2, bits)
            bp = Interval(min(p0.lo, p1.lo), max(p0.hi, p1.hi))
            total = total + (sp * bp).scale(c)
        return total


@dataclass
class PositivityRun:
    ok: bool
    pieces: int = 0
    depth: int = 0
    failed_piece: Optional[Tuple[Fraction, Fraction]] = None


def prove_expsum_positive(E: ExpSum, interval: Tuple[Fraction, Fraction],
                          bits: int = 32, max_depth: int = 40) -> PositivityRun:
    """Prove E(s) > 0 for all s in the closed interval by dyadic subdivision.

    Starts from the smallest dyadic interval containing the target, discards
    pieces that miss it, and certifies each remaining piece by the per-term
    rational lower bound.  Halting constitutes the proof.
    """
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if E.is_zero():
        return PositivityRun(False)
    # smallest dyadic bracket
    k = 0
    while (1 << k) < max(abs(lo), abs(hi)):
        k += 1
    if lo >= 0:
        start = (Fraction(0), Fraction(1 << k))
    elif hi <= 0:
        start = (Fraction(-(1 << k)), Fraction(0))
    else:
        start = (Fraction(-(1 << k)), Fraction(1 << k))
    stack: List[Tuple[Fraction, Fraction, int]] = [start + (0,)]
    pieces = 0
    max_d = 0
    while stack:
        a, b, d = stack.pop()
        if b <= lo or a >= hi:
            continue
        pieces += 1
        max_d = max(max_d, d)
        if E.range_on(a, b, bits).lo > 0:
            continue
        if d >= max_depth:
            return PositivityRun(False, pieces, d, (a, b))
        m = (a + b) / 2
        stack.append((a, m, d + 1))
        stack.append((m, b, d + 1))
    return PositivityRun(True, pieces, max_d)


# ----------------------------------------------------------------------------
# forcing pairs and the coefficient solve

# coefficient basis: (2^(-s/2), 3^(-s/2), 4^(-s/2), s 2^(-s/2), s 3^(-s/2))
_BASIS = ((0, Fraction(1, 2)), (0, Fraction(1, 3)), (0, Fraction(1, 4)),
          (1, Fraction(1, 2)), (1, Fraction(1, 3)))


@dataclass(frozen=True)
class ForcingPair:
    """A pair (Gamma3, Gamma4) claimed to force an exponent interval."""

    pair_id: str
    gamma3: Potential
    gamma4: Potential
    interval: Tuple[Fraction, Fraction]
    sign: int = 1  # -1 for the Fejes-Toth regime of the auxiliary pair


FIFTEEN_PLUS = Fraction(15) + Fraction(25, 512)

P1 = ForcingPair("p1", G4, G6, (Fraction(0), Fraction(6)))
P2 = ForcingPair("p2", G5, G10_SHARPSHARP, (Fraction(6), Fraction(13)))
P3 = ForcingPair("p3", G5_FLAT, G10_SHARP, (Fraction(13), FIFTEEN_PLUS))
AUX = ForcingPair("aux", G3, G5, (Fraction(-2), Fraction(0)), sign=-1)

PAIRS = {"p1": P1, "p2": P2, "p3": P3, "aux": AUX}

# published coefficient matrices: scale * M must match these integer arrays.
PUBLISHED_MATRICES = {
    "p1": (792, (
        (0, 0, 792, 0, 0),
        (792, 1152, -1944, -54, -288),
        (-1254, -96, 1350, 87, 376),
        (528, -312, -216, -39, -98),
        (-66, 48, 18, 6, 10))),
    "p2": (268536, (
        (0, 0, 268536, 0, 0),
        (88440, 503040, -591480, -4254, -65728),
        (-77586, -249648, 327234, 2361, 65896),
        (41808, -19440, -22368, -2430, -9076),
        (-402, 264, 138, 33, 68))),
    "p3": (268536, (
        (0, 0, 268536, 0, 0),
        (982890, 116040, -1098930, -52629, -267128),
        (-91254, -240672, 331926, 3483, 68208),
        (35778, -15480, -20298, -1935, -8056),
        (-402, 264, 138, 33, 68))),
    "aux": (144, (
        (0, 0, -144, 0, 0),
        (-312, -96, 408, 24, 80),
        (684, -288, -396, -54, -144),
        (-402, 264, 138, 33, 68),
        (30, -24, -6, -3, -4))),
}


def _hybrid_value_at(F: Potential, m: int) -> Fraction:
    """Gamma(sqrt m) = sum_k c_k (4-m)^k."""
    return sum(c * (4 - m) ** (k + 1) for k, c in enumerate(F.coeffs))


def _hybrid_dvalue_at(F: Potential, m: int) -> Fraction:
    """sum_k c_k k (4-m)^(k-1), the radial-derivative combination."""
    return sum(c * (k + 1) * (4 - m) ** k for k, c in enumerate(F.coeffs))


def _solve_linear(A: List[List[Fraction]], B: List[List[Fraction]]):
    """Exact solve A X = B by Gauss-Jordan with partial pivoting."""
    n = len(A)
    m = len(B[0])
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular interpolation system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [vr - f * vc for vr, vc in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve_lambda(pair: ForcingPair) -> List[List[Fraction]]:
    """Exact 5x5 matrix M with (a0..a4) = M (2^(-s/2), 3^(-s/2), 4^(-s/2),
    s 2^(-s/2), s 3^(-s/2))."""
    basis_pots = (None, Potential.gk(1), Potential.gk(2), pair.gamma3, pair.gamma4)
    A: List[List[Fraction]] = []
    for m in (2, 3, 4):
        A.append([Fraction(1)] + [_hybrid_value_at(p, m) for p in basis_pots[1:]])
    for m in (2, 3):
        A.append([Fraction(0)] + [_hybrid_dvalue_at(p, m) for p in basis_pots[1:]])
    sgn = Fraction(pair.sign)
    # right side against the basis columns
    B = [
        [sgn, 0, 0, 0, 0],
        [0, sgn, 0, 0, 0],
        [0, 0, sgn, 0, 0],
        [0, 0, 0, sgn / 4, 0],   # s 2^(-s/2) / (2*2)
        [0, 0, 0, 0, sgn / 6],   # s 3^(-s/2) / (2*3)
    ]
    Bt = [[B[r][c] for c in range(5)] for r in range(5)]
    return _solve_linear(A, Bt)


def coefficient_expsum(pair: ForcingPair, i: int,
                       M: Optional[List[List[Fraction]]] = None) -> ExpSum:
    """a_i(s) as an exponential sum."""
    if M is None:
        M = solve_lambda(pair)
    out = ExpSum()
    for v, (t, b) in enumerate(_BASIS):
        if M[i][v]:
            out = out + ExpSum.term(M[i][v], t, b)
    return out


def verify_matching_conditions(pair: ForcingPair) -> bool:
    """The defining equations hold as exact ExpSum identities."""
    M = solve_lambda(pair)
    a = [coefficient_expsum(pair, i, M) for i in range(5)]
    basis_pots = (None, Potential.gk(1), Potential.gk(2), pair.gamma3, pair.gamma4)
    sgn = pair.sign
    for row, m in enumerate((2, 3, 4)):
        lam = a[0]
        for j in range(1, 5):
            lam = lam + a[j].scale(_hybrid_value_at(basis_pots[j], m))
        want = ExpSum.term(sgn, 0, Fraction(1, m))
        if not (lam - want).is_zero():
            return False
    for m in (2, 3):
        der = ExpSum()
        for j in range(1, 5):
            der = der + a[j].scale(_hybrid_dvalue_at(basis_pots[j], m))
        want = ExpSum.term(Fraction(sgn, 2 * m), 1, Fraction(1, m))
        if not (der - want).is_zero():
            return False
    return True


def matrix_matches_published(pair: ForcingPair) -> bool:
    scale, rows = PUBLISHED_MATRICES[pair.pair_id]
    M = solve_lambda(pair)
    for i in range(5):
        for j in range(5):
            if M[i][j] * scale != rows[i][j]:
                return False
    return True


# ----------------------------------------------------------------------------
# the psi polynomial (in t = 4 - r^2) and its root structure


def psi_poly(pair: ForcingPair,
             M: Optional[List[List[Fraction]]] = None) -> List[ExpSum]:
    """Coefficients (in t^0, t^1, ...) of psi_s = s Lambda_s(r) + r Lambda_s'(r).

    Uses r G_k'(r) = 2k G_k(r) - 8k G_{k-1}(r), so psi_s is a polynomial in t.
    """
    if M is None:
        M = solve_lambda(pair)
    a = [coefficient_expsum(pair, i, M) for i in range(5)]
    basis_pots = (None, Potential.gk(1), Potential.gk(2), pair.gamma3, pair.gamma4)
    K = max(p.max_k() for p in basis_pots[1:])
    alpha: List[ExpSum] = [ExpSum() for _ in range(K + 2)]
    for j in range(1, 5):
        for k, c in enumerate(basis_pots[j].coeffs, start=1):
            if c:
                alpha[k] = alpha[k] + a[j].scale(c)
    psi: List[ExpSum] = [ExpSum() for _ in range(K + 1)]
    psi[0] = a[0].shift_s() + alpha[1].scale(-8)
    for k in range(1, K + 1):
        term = alpha[k].mul_s_poly([2 * k, 1])  # alpha_k * (2k + s)
        term = term + alpha[k + 1].scale(-8 * (k + 1))
        psi[k] = term
    return psi


def poly_eval_expsum(coeffs: Sequence[ExpSum], t) -> ExpSum:
    t = Fraction(t)
    out = ExpSum()
    power = Fraction(1)
    for c in coeffs:
        out = out + c.scale(power)
        power *= t
    return out


def poly_divide_linear(coeffs: Sequence[ExpSum], root) -> List[ExpSum]:
    """Exact division of an ExpSum-coefficient polynomial by (t - root);
    raises if the remainder is not identically zero."""
    root = Fraction(root)
    n = len(coeffs) - 1
    q: List[ExpSum] = [ExpSum() for _ in range(n)]
    carry = coeffs[n]
    for j in range(n - 1, -1, -1):
        q[j] = carry
        carry = coeffs[j] + carry.scale(root)
    if not carry.is_zero():
        raise ValueError("nonzero remainder in linear division")
    return q


def poly_deriv(coeffs: Sequence[ExpSum]) -> List[ExpSum]:
    return [coeffs[j].scale(j) for j in range(1, len(coeffs))]


def poly_shift_quarter(coeffs: Sequence[ExpSum], v: int) -> List[ExpSum]:
    """Substitute t -> v/4 + t/4 into an ExpSum-coefficient polynomial."""
    n = len(coeffs)
    out: List[ExpSum] = [ExpSum() for _ in range(n)]
    binom = [[1]]
    for e in range(1, n):
        prev = binom[-1]
        binom.append([1] + [prev[i] + prev[i + 1] for i in range(e - 1)] + [1])
    q = Fraction(v, 4)
    h = Fraction(1, 4)
    for e, c in enumerate(coeffs):
        if c.is_zero():
            continue
        for i in range(e + 1):
            out[i] = out[i] + c.scale(binom[e][i] * q ** (e - i) * h ** i)
    return out


# the gamma decomposition matrices for the common p2/p3 root analysis:
# gamma = P3 * 3^(s/2) + P4 * 4^(s/2) + P6 * 6^(s/2) with P_k = (1,s,s^2) M_k (1..t^7)
GAMMA_SCALE = 268536  # fixed by the exact identity check; see docs
PUBLISHED_GAMMA = {
    3: ((-546840, -1800480, 99720, -397440, -234600, -33120, 173880, -22080),
        (18366, 17112, 80766, 24288, 18630, 11592, 4830, -1104),
        (0, 0, 0, 0, 0, 0, 0, 0)),
    4: ((-345600, -1576320, -509760, -760320, -448800, -63360, 332640, -42240),
        (-199296, -698784, 75216, -149376, -79960, 5856, 94920, -12992),
        (7104, 8432, 33960, 11968, 9180, 5712, 2380, -544)),
    6: ((892440, 3376800, 410040, 1157760, 683400, 96480, -506520, 64320),
        (-73350, -246888, -228942, -165792, -110370, -41688, 27510, -2064),
        (1473, 4092, 10557, 5808, 4455, 2772, 1155, -264)),
}


def gamma_poly(pair: ForcingPair) -> List[ExpSum]:
    """268536 * 12^(s/2) * (beta'' - beta') for the p2/p3 interpolant, where
    psi = (t-1)(t-2) beta."""
    psi = psi_poly(pair)
    beta = poly_divide_linear(poly_divide_linear(psi, 1), 2)
    bp = poly_deriv(beta)
    bpp = poly_deriv(bp)
    diff = [ExpSum() for _ in range(len(bp))]
    for j in range(len(bp)):
        diff[j] = (bpp[j] if j < len(bpp) else ExpSum()) - bp[j]
    return [c.scale(GAMMA_SCALE).mul_base(12) for c in diff]


def gamma_matches_published(pair: ForcingPair) -> bool:
    g = gamma_poly(pair)
    if len(g) != 8:
        return False
    for j in range(8):
        expect = ExpSum()
        for base, rows in PUBLISHED_GAMMA.items():
            for i in range(3):
                if rows[i][j]:
                    expect = expect + ExpSum.term(rows[i][j], i, base)
        if not (g[j] - expect).is_zero():
            return False
    return True


# the two extra case-1 quantities (exact integer vectors against the extended
# basis (2^(-s/2), 3^(-s/2), 4^(-s/2), s 2^(-s/2), s 3^(-s/2), s 4^(-s/2)))
PUBLISHED_PSI0_P1 = (-88, -128, 216, 6, 32, 11)       # 11 psi_s(0)
PUBLISHED_PSI4_P1 = (-2112, 1664, 459, 219, 288, 0)   # (11/s) psi_s(4)


def _extended_vector(E: ExpSum) -> Optional[Tuple[Fraction, ...]]:
    basis = list(_BASIS) + [(1, Fraction(1, 4))]
    out = [Fraction(0)] * 6
    for key, c in E.terms.items():
        if key not in basis:
            return None
        out[basis.index(key)] = c
    return tuple(out)


def case1_quantities(pair: ForcingPair) -> Dict[str, ExpSum]:
    """The six positivity targets of the first forcing pair: a1..a4 plus the
    scaled endpoint values of psi."""
    M = solve_lambda(pair)
    psi = psi_poly(pair, M)
    out = {f"a{i}": coefficient_expsum(pair, i, M) for i in range(1, 5)}
    out["11*psi(0)"] = poly_eval_expsum(psi, 0).scale(11)
    # psi(4) has a factor s: dividing term-wise by s lowers each power by one
    p4 = poly_eval_expsum(psi, 4).scale(11)
    lowered = ExpSum()
    for (t, b), c in p4.terms.items():
        if t == 0:
            raise ValueError("psi(4) not divisible by s")
        lowered = lowered + ExpSum.term(c, t - 1, b)
    out["(11/s)*psi(4)"] = lowered
    return out


# ----------------------------------------------------------------------------
# Taylor under-approximations on (0, 1/4]


@dataclass
class TaylorUnderApprox:
    coeffs: Tuple[Fraction, ...]  # of s^0..s^6; s^6 entry includes the -1 remainder
    leading_index: int
    leading: Fraction
    positive_on_quarter: bool


def _log_monomial_interval(e2: int, e3: int, bits: int = 80) -> Interval:
    out = Interval.point(Fraction(1))
    for _ in range(e2):
        out = out * ln2_enclosure(bits)
    for _ in range(e3):
        out = out * ln3_enclosure(bits)
    return out


def taylor_under_approx(Y: Sequence, order: int = 6) -> TaylorUnderApprox:
    """Degree-6 polynomial P with P(s) <= Y.V(s) on (0, 1/4].

    V = (2^(-s/2), 3^(-s/2), 4^(-s/2), s 2^(-s/2), s 3^(-s/2), s 4^(-s/2)).
    The order-5 Taylor expansion at 0 is computed exactly as a polynomial in
    ln 2, ln 3, rounded down (non-leading positives zeroed), and the Taylor
    remainder is folded into a -1 coefficient on s^6 after verifying that the
    sixth-derivative bound stays under 6! = 720.
    """
    if order != 6:
        raise ValueError("only the order-6 scheme is implemented")
    Y = [Fraction(v) for v in Y]
    if len(Y) != 6:
        raise ValueError("Y must have 6 entries")
    # remainder precondition: sum |Y_i| * sup|d^6 V_i| <= 720, with
    # sup|d^6 m^(-s/2)| <= (ln m / 2)^6 and sup|d^6 s m^(-s/2)| <= 6 (ln m / 2)^5
    L = {2: ln2_enclosure(80).hi, 3: ln3_enclosure(80).hi,
         4: ln2_enclosure(80).hi * 2}
    bound = Fraction(0)
    for i, m in enumerate((2, 3, 4)):
        bound += abs(Y[i]) * (L[m] / 2) ** 6
        bound += abs(Y[i + 3]) * 6 * (L[m] / 2) ** 5
    if bound > 720:
        raise ValueError("sixth-derivative bound exceeds 6!; scheme inapplicable")
    # exact Taylor coefficients as intervals
    coeffs: List[Interval] = []
    fact = [1, 1, 2, 6, 24, 120]
    for j in range(6):
        total = Interval.point(Fraction(0))
        for i, m in enumerate((2, 3, 4)):
            e2 = j if m == 2 else (0 if m == 3 else j)
            # (-(ln m)/2)^j: for m=4 this is (-ln 2)^j
            if m == 2:
                mono = _log_monomial_interval(j, 0).scale(Fraction(-1, 2) ** j)
            elif m == 3:
                mono = _log_monomial_interval(0, j).scale(Fraction(-1, 2) ** j)
            else:
                mono = _log_monomial_interval(j, 0).scale(Fraction(-1) ** j)
            if Y[i]:
                total = total + mono.scale(Y[i] / fact[j])
            if j >= 1 and Y[i + 3]:
                if m == 2:
                    mono1 = _log_monomial_interval(j - 1, 0).scale(Fraction(-1, 2) ** (j - 1))
                elif m == 3:
                    mono1 = _log_monomial_interval(0, j - 1).scale(Fraction(-1, 2) ** (j - 1))
                else:
                    mono1 = _log_monomial_interval(j - 1, 0).scale(Fraction(-1) ** (j - 1))
                total = total + mono1.scale(Y[i + 3] * Fraction(j, fact[j]))
        coeffs.append(total)
    lead = next((j for j in range(6) if not (coeffs[j].lo <= 0 <= coeffs[j].hi)),
                None)
    if lead is None or coeffs[lead].lo <= 0:
        raise ValueError("leading Taylor coefficient not positive")
    # row granularity: integers when the leading value reaches 1, else 1/100
    gran = Fraction(1) if coeffs[lead].lo >= 1 else Fraction(1, 100)
    out: List[Fraction] = []
    for j in range(6):
        if j < lead:
            out.append(Fraction(0))
            continue
        v = coeffs[j].lo
        if j > lead and v > 0:
            out.append(Fraction(0))
            continue
        out.append(gran * (v / gran).__floor__())
    out.append(Fraction(-1))  # remainder bound on s^6
    lead_val = out[lead]
    # positivity on (0, 1/4]: divide by s^lead and bound the tail at s = 1/4
    tail = sum(abs(out[j]) * Fraction(1, 4) ** (j - lead)
               for j in range(lead + 1, 7))
    return TaylorUnderApprox(tuple(out), lead, lead_val, lead_val - tail > 0)


# ----------------------------------------------------------------------------
# full checks


@dataclass
class InterpReport:
    pair_id: str
    matrix_published: bool
    matching_identities: bool
    psi_roots_1_2: bool
    coefficient_positivity: Dict[str, PositivityRun] = field(default_factory=dict)
    taylor: Dict[str, TaylorUnderApprox] = field(default_factory=dict)
    a222: Optional[dict] = None

    @property
    def ok(self) -> bool:
        if not (self.matrix_published and self.matching_identities
                and self.psi_roots_1_2):
            return False
        if any(not r.ok for r in self.coefficient_positivity.values()):
            return False
        if any(not t.positive_on_quarter for t in self.taylor.values()):
            return False
        if self.a222 is not None and not self.a222.get("ok", False):
            return False
        return True


def _definite_sign_pattern(coeffs: Sequence[ExpSum], s, grid: int = 64,
                           bits: int = 40) -> List[int]:
    """Certified sign pattern of the psi polynomial on [0,4] sampled on a
    grid; consecutive equal definite signs are collapsed."""
    s = Fraction(s)
    vals = [poly_eval_expsum(coeffs, Fraction(4 * j, grid)).eval_interval(s, bits)
            for j in range(grid + 1)]
    pattern: List[int] = []
    for v in vals:
        if v.lo > 0:
            sg = 1
        elif v.hi < 0:
            sg = -1
        else:
            continue
        if not pattern or pattern[-1] != sg:
            pattern.append(sg)
    return pattern


def check_interpolation(pair_id: str, long_run: bool = False,
                        bits: int = 32) -> InterpReport:
    """The full interpolation verification for one forcing pair."""
    pair = PAIRS[pair_id]
    M = solve_lambda(pair)
    psi = psi_poly(pair, M)
    rep = InterpReport(
        pair_id=pair_id,
        matrix_published=matrix_matches_published(pair),
        matching_identities=verify_matching_conditions(pair),
        psi_roots_1_2=(poly_eval_expsum(psi, 1).is_zero()
                       and poly_eval_expsum(psi, 2).is_zero()),
    )
    lo, hi = pair.interval
    if pair_id == "p1":
        # six quantities on [1/4, 6], Taylor handles (0, 1/4]
        for name, E in case1_quantities(pair).items():
            rep.coefficient_positivity[name] = prove_expsum_positive(
                E, (Fraction(1, 4), hi), bits)
            vec = _extended_vector(E.scale(792 if name.startswith("a") else 1))
            if vec is not None:
                label = f"792*{name}" if name.startswith("a") else name
                rep.taylor[label] = taylor_under_approx(vec)
        rep.a222 = _check_a222_case1(pair, psi)
    elif pair_id in ("p2", "p3"):
        for i in range(1, 5):
            rep.coefficient_positivity[f"a{i}"] = prove_expsum_positive(
                coefficient_expsum(pair, i, M), (lo, hi), bits)
        rep.a222 = check_a222(pair, long_run=long_run, bits=bits)
    else:  # aux pair: closed subinterval of (-2, 0); endpoints degenerate
        for i in range(1, 5):
            rep.coefficient_positivity[f"a{i}"] = prove_expsum_positive(
                coefficient_expsum(pair, i, M),
                (Fraction(-2) + Fraction(1, 64), Fraction(-1, 64)), bits)
    return rep


def _check_a222_case1(pair: ForcingPair, psi: List[ExpSum]) -> dict:
    """Root count for the first pair: monic form t^6 - 48/(12+s) t^5 + ...,
    so the root sum 48/(12+s) < 4 for s > 0 caps the count at 4."""
    lead = psi[6]
    sub = psi[5]
    # (12+s) * psi6 = a4*(s+12); psi5 = -48 a4: check sub*(12+s) = -48*lead... :
    identity = (sub.mul_s_poly([12, 1]) + lead.scale(48)).is_zero()
    spot = _definite_sign_pattern(psi, 2) == [1, -1, 1, -1, 1]
    return {"ok": identity and spot, "monic_identity": identity,
            "spot_pattern_s2": spot}


def check_a222(pair: ForcingPair, long_run: bool = False,
               bits: int = 32) -> dict:
    """Root structure for the shared p2/p3 interpolant.

    Always: exact (t-1)(t-2) factor, gamma matrices, endpoint-derivative
    positivity, one-root count for beta' at s=6, and spot sign patterns.
    The 130-expression positivity battery over [6,16] runs under long_run.
    """
    psi = psi_poly(pair)
    beta = poly_divide_linear(poly_divide_linear(psi, 1), 2)
    bp = poly_deriv(beta)
    out = {"gamma_published": gamma_matches_published(pair)}
    minus_bp0 = -poly_eval_expsum(bp, 0)
    bp4 = poly_eval_expsum(bp, 4)
    out["minus_beta_prime_0"] = prove_expsum_positive(
        minus_bp0, (Fraction(6), Fraction(16)), bits).ok
    out["beta_prime_4"] = prove_expsum_positive(
        bp4, (Fraction(6), Fraction(16)), bits).ok
    # beta' has exactly one root in [0,4] at s=6: definite pattern [-, +]
    pattern = _definite_sign_pattern(bp, 6)
    out["beta_prime_one_root_s6"] = pattern == [-1, 1]
    out["spot_pattern_s8"] = _definite_sign_pattern(psi, 8) == [1, -1, 1, -1, 1]
    out["spot_pattern_s14"] = _definite_sign_pattern(psi, 14) == [1, -1, 1, -1, 1]
    checks_run = 0
    if long_run:
        gamma = gamma_poly(pair)
        failures = []
        for v in range(16):
            shifted = poly_shift_quarter(gamma, v)
            partial = ExpSum()
            for k in range(8):
                partial = partial + shifted[k]
                run = prove_expsum_positive(partial, (Fraction(6), Fraction(16)),
                                            bits)
                checks_run += 1
                if not run.ok:
                    failures.append((v, k))
        for name, E in (("-beta'(0)", minus_bp0), ("beta'(4)", bp4)):
            run = prove_expsum_positive(E, (Fraction(6), Fraction(16)), bits)
            checks_run += 1
            if not run.ok:
                failures.append(name)
        out["long_battery_failures"] = failures
        out["long_battery_count"] = checks_run
        out["long_battery_ok"] = not failures
    core = (out["gamma_published"] and out["minus_beta_prime_0"]
            and out["beta_prime_4"] and out["beta_prime_one_root_s6"]
            and out["spot_pattern_s8"] and out["spot_pattern_s14"])
    out["ok"] = core and (not long_run or out.get("long_battery_ok", False))
    return out
