"""Sparse exact multivariate polynomials and positivity certificates.

The positivity toolkit is the proof workhorse: weak positive dominance
(all box-prefix coefficient sums nonnegative, total positive) certifies
positivity on (0,1]^n, dyadic subdivision splits a failed box, and the
Descartes sign-change count bounds roots of exponential sums.

Coefficients may be Fractions or QSqrt3 values; both compare exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]

MAX_VARS = 7  # the largest instances in the suite use 5 variables


class MultiPoly:
    """Sparse polynomial: map from exponent multi-index to exact coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Monomial, object]] = None):
        if not (1 <= nvars <= MAX_VARS):
            raise ValueError(f"nvars must be in 1..{MAX_VARS}")
        self.nvars = nvars
        self.terms: Dict[Monomial, object] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    # -- constructors
    @staticmethod
    def const(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: c} if c else {})

    @staticmethod
    def var(nvars: int, i: int, coeff=1) -> "MultiPoly":
        m = tuple(1 if j == i else 0 for j in range(nvars))
        return MultiPoly(nvars, {m: Fraction(coeff) if isinstance(coeff, int) else coeff})

    def copy(self) -> "MultiPoly":
        p = MultiPoly(self.nvars)
        p.terms = dict(self.terms)
        return p

    # -- basic ops
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        p = MultiPoly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MultiPoly(self.nvars)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        out: Dict[Monomial, object] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = get(m)
                v = c1 * c2 if v is None else v + c1 * c2
                out[m] = v
        p = MultiPoly(self.nvars)
        p.terms = {m: c for m, c in out.items() if c}
        return p

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly(self.nvars)
        p = MultiPoly(self.nvars)
        p.terms = {m: v * c for m, v in self.terms.items()}
        return p

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.nvars, Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return self.terms == MultiPoly.const(self.nvars, other).terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.nvars} vars, {len(self.terms)} terms)"

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, var: int) -> int:
        return max((m[var] for m in self.terms), default=0)

    def coefficients(self):
        return self.terms.values()

    def eval(self, point: Sequence):
        """Evaluate exactly at a point (per-variable power caching)."""
        powers = []
        for i in range(self.nvars):
            d = self.degree_in(i)
            row = [1]
            for _ in range(d):
                row.append(row[-1] * point[i])
            powers.append(row)
        total = 0
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    v = v * powers[i][e]
            total = total + v
        return total

    def deriv(self, var: int) -> "MultiPoly":
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            e = m[var]
            if e:
                m2 = m[:var] + (e - 1,) + m[var + 1:]
                v = out.get(m2)
                v = c * e if v is None else v + c * e
                out[m2] = v
        p = MultiPoly(self.nvars)
        p.terms = {m: c for m, c in out.items() if c}
        return p

    def restrict(self, var: int, value) -> "MultiPoly":
        """Substitute x_var = value (variable count unchanged)."""
        out = MultiPoly(self.nvars)
        acc: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            e = m[var]
            m2 = m[:var] + (0,) + m[var + 1:]
            v = c * value ** e if e else c
            w = acc.get(m2)
            acc[m2] = v if w is None else w + v
        out.terms = {m: c for m, c in acc.items() if c}
        return out

    def affine_sub_var(self, var: int, c0, c1) -> "MultiPoly":
        """Substitute x_var -> c0 + c1 * x_var, fully expanded."""
        by_deg: Dict[int, Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            by_deg.setdefault(m[var], {})[m] = c
        out = MultiPoly(self.nvars)
        binom = [1]
        for e, bucket in sorted(by_deg.items()):
            while len(binom) <= e:
                k = len(binom)
                binom = [1] + [binom[i] + binom[i + 1] for i in range(k - 1)] + [1]
            for m, c in bucket.items():
                for i in range(e + 1):  # (c0 + c1 x)^e expansion
                    coeff = c * binom[i] * c0 ** (e - i) * c1 ** i if e else c
                    m2 = m[:var] + (i,) + m[var + 1:]
                    v = out.terms.get(m2)
                    v = coeff if v is None else v + coeff
                    if v:
                        out.terms[m2] = v
                    elif m2 in out.terms:
                        del out.terms[m2]
        return out

    def compose(self, args: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute each variable by the given polynomial (all same nvars)."""
        n_out = args[0].nvars
        pow_cache: List[Dict[int, MultiPoly]] = [dict() for _ in range(self.nvars)]

        def power(i: int, e: int) -> MultiPoly:
            cached = pow_cache[i].get(e)
            if cached is None:
                cached = args[i] ** e
                pow_cache[i][e] = cached
            return cached

        out = MultiPoly(n_out)
        for m, c in self.terms.items():
            term = MultiPoly.const(n_out, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    # -- exact division
    def divide_exact(self, divisor: "MultiPoly") -> Optional["MultiPoly"]:
        """Return self / divisor when the division is exact, else None.

        Long division in lex order with a lazy max-heap over the remainder's
        support, so large numerators divide in near-linear time.
        """
        import heapq
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return MultiPoly(self.nvars)
        rem = dict(self.terms)
        lead_d = max(divisor.terms)  # lex order on exponent tuples
        cd = divisor.terms[lead_d]
        quo: Dict[Monomial, object] = {}
        dterms = list(divisor.terms.items())
        heap = [tuple(-e for e in m) for m in rem]
        heapq.heapify(heap)
        in_heap = set(rem)
        while True:
            lead_r = None
            while heap:
                cand = tuple(-e for e in heapq.heappop(heap))
                in_heap.discard(cand)
                if cand in rem:
                    lead_r = cand
                    break
            if lead_r is None:
                break
            m = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(e < 0 for e in m):
                return None
            c = rem[lead_r] / cd
            quo[m] = c
            for md, cdv in dterms:
                mm = tuple(a + b for a, b in zip(m, md))
                v = rem.get(mm)
                v = -c * cdv if v is None else v - c * cdv
                if v:
                    rem[mm] = v
                    if mm not in in_heap:
                        heapq.heappush(heap, tuple(-e for e in mm))
                        in_heap.add(mm)
                elif mm in rem:
                    del rem[mm]
        if rem:
            return None
        p = MultiPoly(self.nvars)
        p.terms = quo
        return p


# ----------------------------------------------------------------------------
# weak positive dominance


def _prefix_sum_grid(P: MultiPoly):
    """Dense grid of box-prefix sums G_J over the support lattice.

    Returns (axes, flat) where axes[i] is the sorted list of exponents present
    in dimension i and flat the row-major prefix-sum array over the grid.
    """
    axes = []
    for i in range(P.nvars):
        vals = sorted({m[i] for m in P.terms})
        axes.append(vals or [0])
    index = [{v: k for k, v in enumerate(ax)} for ax in axes]
    dims = [len(ax) for ax in axes]
    strides = [1] * P.nvars
    for i in range(P.nvars - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    size = strides[0] * dims[0]
    flat = [0] * size
    for m, c in P.terms.items():
        pos = sum(index[i][m[i]] * strides[i] for i in range(P.nvars))
        flat[pos] = flat[pos] + c
    # in-place prefix sums along each axis
    for i in range(P.nvars):
        stride = strides[i]
        block = stride * dims[i]
        for base in range(0, size, block):
            for off in range(stride):
                start = base + off
                for k in range(1, dims[i]):
                    flat[start + k * stride] = (flat[start + k * stride]
                                                + flat[start + (k - 1) * stride])
    return axes, flat


def wpd_check(P: MultiPoly) -> str:
    """'PositiveDominant' | 'WeakPositiveDominant' | 'Inconclusive'.

    PD: every box-prefix sum G_J > 0 (positivity on [0,1]^n); WPD: all >= 0
    with positive total (positivity on (0,1]^n).  Inconclusive is not a
    disproof.  A zero prefix sum always demotes PD to WPD.
    """
    if not P.terms:
        return "Inconclusive"
    _, flat = _prefix_sum_grid(P)
    saw_zero = False
    for v in flat:
        if v < 0:
            return "Inconclusive"
        if v == 0:
            saw_zero = True
    if flat[-1] <= 0:
        return "Inconclusive"
    return "WeakPositiveDominant" if saw_zero else "PositiveDominant"


def is_wpd(P: MultiPoly) -> bool:
    return wpd_check(P) != "Inconclusive"


def subdivide(P: MultiPoly, var: int, half: int) -> MultiPoly:
    """Substitute x_var -> half/2 + x_var/2; positivity of both halves on
    (0,1]^n implies positivity of P there."""
    if half not in (0, 1):
        raise ValueError("half must be 0 or 1")
    return P.affine_sub_var(var, Fraction(half, 2), Fraction(1, 2))


def positive_numerator(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """num_+(num/den): flip signs so the denominator is positive at (1,...,1).

    The caller supplies num/den without common factors; positivity of the
    returned numerator on (0,1]^n then implies positivity of the function.
    """
    ones = (1,) * den.nvars
    d1 = den.eval(ones)
    if not d1:
        raise ValueError("denominator vanishes at (1,...,1)")
    return num if d1 > 0 else -num


@dataclass(frozen=True)
class SignSequence:
    """Nonzero coefficients paired with increasing bases r_i in (0,1)."""

    coeffs: Tuple
    bases: Tuple

    def __post_init__(self):
        if len(self.coeffs) != len(self.bases):
            raise ValueError("length mismatch")
        if any(not c for c in self.coeffs):
            raise ValueError("coefficients must be nonzero")
        if any(not (0 < b < 1) for b in self.bases):
            raise ValueError("bases must lie in (0,1)")
        if any(self.bases[i] > self.bases[i + 1] for i in range(len(self.bases) - 1)):
            raise ValueError("bases must be nondecreasing")


def descartes_max_sign_changes(E) -> int:
    """Sign changes of the coefficient sequence: the exponential sum
    s -> sum c_i r_i^s changes sign at most this many times on R."""
    coeffs = E.coeffs if isinstance(E, SignSequence) else tuple(E)
    signs = [1 if c > 0 else -1 for c in coeffs]
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


@dataclass
class PositivityProof:
    """Certificate tree for P > 0 on (0,1]^n via WPD + dyadic subdivision."""

    ok: bool
    verdict: str = ""
    var: int = -1
    children: Optional[List["PositivityProof"]] = None
    depth_used: int = 0

    def leaf_count(self) -> int:
        if not self.children:
            return 1
        return sum(ch.leaf_count() for ch in self.children)


def prove_positive_box(P: MultiPoly, max_depth: int = 24,
                       split_var: Optional[int] = None,
                       _next: int = 0) -> PositivityProof:
    """Prove P > 0 on (0,1]^n by WPD with recursive dyadic subdivision.

    Splitting cycles through the variables that actually appear unless
    `split_var` pins one.  Returns a failed proof (ok=False) when the depth
    budget is exhausted; failure is inconclusive, not a disproof.
    """
    verdict = wpd_check(P)
    if verdict != "Inconclusive":
        return PositivityProof(True, verdict=verdict)
    if max_depth <= 0:
        return PositivityProof(False, verdict="DepthExhausted")
    if split_var is None:
        var = None
        for off in range(P.nvars):
            cand = (_next + off) % P.nvars
            if P.degree_in(cand) > 0:
                var = cand
                break
        if var is None:
            return PositivityProof(False, verdict="DepthExhausted")
    else:
        var = split_var
    children = []
    for half in (0, 1):
        child = prove_positive_box(subdivide(P, var, half), max_depth - 1,
                                   None if split_var is None else split_var,
                                   _next=(var + 1) % P.nvars)
        children.append(child)
        if not child.ok:
            return PositivityProof(False, verdict="DepthExhausted", var=var,
                                   children=children)
    return PositivityProof(True, var=var, children=children,
                           depth_used=1 + max(c.depth_used for c in children))


# ----------------------------------------------------------------------------
# polynomial text exchange format: one term per line, "<coeff> <e1> ... <en>"


def poly_to_text(P: MultiPoly) -> str:
    lines = []
    for m in sorted(P.terms):
        c = P.terms[m]
        cstr = f"{c.numerator}/{c.denominator}" if isinstance(c, Fraction) else str(c)
        lines.append(cstr + " " + " ".join(str(e) for e in m))
    return "\n".join(lines) + "\n"


def poly_from_text(text: str, nvars: Optional[int] = None) -> MultiPoly:
    terms: Dict[Monomial, object] = {}
    for line in text.strip().splitlines():
        parts = line.split()
        if not parts:
            continue
        c = Fraction(parts[0])
        m = tuple(int(e) for e in parts[1:])
        if nvars is None:
            nvars = len(m)
        elif len(m) != nvars:
            raise ValueError("inconsistent variable count")
        terms[m] = terms.get(m, Fraction(0)) + c
    if nvars is None:
        raise ValueError("empty polynomial text")
    return MultiPoly(nvars, terms)
