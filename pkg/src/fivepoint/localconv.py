"""Local convexity certification at the TBP avatar.

Everything is exact: energies are expanded as truncated 7-variable Taylor
series around the TBP point over Q(sqrt3), so gradients, Hessians and all
partial derivatives up to order six come out as exact field elements.  The
smallest Hessian eigenvalue is bounded below through sign alternation of the
shifted characteristic polynomial, and the seventh-order sup bound comes from
the closed-form bound on "nice" fractions (numerators dominated by the
quadratic denominators), giving the Taylor-chain bound on the third
derivatives over the whole cube.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .potential import Potential
from .sqrt3 import QSqrt3, SQRT3_OVER_3

SymMatrix7 = List[List[QSqrt3]]

MAX_ORDER = 6
CUBE_STEP = Fraction(7, 1 << 18)  # sqrt(7) * (cube radius), squared-up: 7 * 2^-18

# the TBP avatar as a 7-vector (p02 = 0 is implicit)
_XI0 = (QSqrt3.of(1), QSqrt3.of(0), -SQRT3_OVER_3, QSqrt3.of(-1),
        QSqrt3.of(0), QSqrt3.of(0), SQRT3_OVER_3)

# variable index sets per avatar point: p0 = (x1, 0), p1 = (x2, x3), ...
_POINT_VARS = ((0,), (1, 2), (3, 4), (5, 6))


# ----------------------------------------------------------------------------
# truncated multivariate series over Q(sqrt3)


def _series_mul(A: Dict[Tuple[int, ...], QSqrt3],
                B: Dict[Tuple[int, ...], QSqrt3], order: int):
    out: Dict[Tuple[int, ...], QSqrt3] = {}
    for ma, ca in A.items():
        da = sum(ma)
        for mb, cb in B.items():
            if da + sum(mb) > order:
                continue
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m)
            prod = ca * cb
            out[m] = prod if v is None else v + prod
    return {m: c for m, c in out.items() if c}


def _series_add(A, B):
    out = dict(A)
    for m, c in B.items():
        v = out.get(m)
        v = c if v is None else v + c
        if v:
            out[m] = v
        elif m in out:
            del out[m]
    return out


def _series_scale(A, c):
    if not c:
        return {}
    return {m: v * c for m, v in A.items()}


def _series_recip(U, nvars: int, order: int):
    """1/U as a truncated series; U must have nonzero constant term."""
    zero = (0,) * nvars
    u0 = U[zero]
    w = {m: c / u0 for m, c in U.items() if m != zero}
    inv_u0 = QSqrt3.of(1) / u0
    out = {zero: QSqrt3.of(1)}
    power = {zero: QSqrt3.of(1)}
    for j in range(1, order + 1):
        power = _series_mul(power, w, order)
        if not power:
            break
        out = _series_add(out, _series_scale(power, QSqrt3.of(-1) ** j))
    return _series_scale(out, inv_u0)


def _pair_t_series(i: int, j: int, order: int = MAX_ORDER):
    """Truncated series of t = 4 - chordal^2 for the pair (i, j), j=4 = pole.

    Local variables are the offsets of the active coordinates; returns
    (series, active global variable indices).
    """
    if j == 4:
        vars_i = _POINT_VARS[i]
        n = len(vars_i)
        # p = xi0 + h; t = 4|p|^2 / (1+|p|^2)
        coords = []
        for k, gv in enumerate(vars_i):
            e = tuple(1 if t == k else 0 for t in range(n))
            coords.append({(0,) * n: _XI0[gv], e: QSqrt3.of(1)})
        if i == 0:  # second coordinate is identically zero
            coords.append({})
        nsq: Dict[Tuple[int, ...], QSqrt3] = {}
        for c in coords:
            if c:
                nsq = _series_add(nsq, _series_mul(c, c, order))
        U = _series_add({(0,) * n: QSqrt3.of(1)}, nsq)
        N = _series_scale(nsq, QSqrt3.of(4))
        return _series_mul(N, _series_recip(U, n, order), order), vars_i
    vars_i, vars_j = _POINT_VARS[i], _POINT_VARS[j]
    gvars = tuple(vars_i) + tuple(vars_j)
    n = len(gvars)

    def coord(gv: int, pos: Optional[int]):
        if pos is None:
            return {}
        e = tuple(1 if t == pos else 0 for t in range(n))
        return {(0,) * n: _XI0[gv], e: QSqrt3.of(1)}

    if i == 0:
        a = coord(vars_i[0], 0)
        b = {}
        c = coord(vars_j[0], 1)
        d = coord(vars_j[1], 2)
    else:
        a = coord(vars_i[0], 0)
        b = coord(vars_i[1], 1)
        c = coord(vars_j[0], 2)
        d = coord(vars_j[1], 3)
    one = {(0,) * n: QSqrt3.of(1)}
    sq = lambda s: _series_mul(s, s, order)
    nsq1 = _series_add(sq(a), sq(b))
    nsq2 = _series_add(sq(c), sq(d))
    # N = 4 (1 + 2ac + 2bd + |p|^2 |q|^2); U = (1+|p|^2)(1+|q|^2)
    N = _series_add(one, _series_scale(_series_mul(a, c, order), QSqrt3.of(2)))
    N = _series_add(N, _series_scale(_series_mul(b, d, order), QSqrt3.of(2)))
    N = _series_add(N, _series_mul(nsq1, nsq2, order))
    N = _series_scale(N, QSqrt3.of(4))
    U = _series_mul(_series_add(one, nsq1), _series_add(one, nsq2), order)
    return _series_mul(N, _series_recip(U, n, order), order), gvars


@lru_cache(maxsize=None)
def _gk_energy_series(k: int) -> Dict[Tuple[int, ...], QSqrt3]:
    """Global 7-variable Taylor coefficients (order <= 6) of E_{G_k} at xi0."""
    total: Dict[Tuple[int, ...], QSqrt3] = {}
    for i in range(4):
        for j in list(range(i + 1, 4)) + [4]:
            t, gvars = _pair_t_series(i, j)
            tk = t
            for _ in range(k - 1):
                tk = _series_mul(tk, t, MAX_ORDER)
            for m, c in tk.items():
                gm = [0] * 7
                for pos, gv in enumerate(gvars):
                    gm[gv] = m[pos]
                key = tuple(gm)
                v = total.get(key)
                total[key] = c if v is None else v + c
    return {m: c for m, c in total.items() if c}


def energy_series(F: Potential) -> Dict[Tuple[int, ...], QSqrt3]:
    if F.kind != "hybrid":
        raise ValueError("series expansion is for hybrid potentials")
    out: Dict[Tuple[int, ...], QSqrt3] = {}
    for k, c in enumerate(F.coeffs, start=1):
        if c:
            out = _series_add(out, _series_scale(_gk_energy_series(k), QSqrt3.of(c)))
    return out


_FACT = [1, 1, 2, 6, 24, 120, 720]


def _partial_from_series(series, J: Tuple[int, ...]) -> QSqrt3:
    c = series.get(J)
    if c is None:
        return QSqrt3.of(0)
    mult = 1
    for e in J:
        mult *= _FACT[e]
    return c * mult


def grad_hessian_at_tbp(F: Potential):
    """Exact (gradient, Hessian) of E_F at the TBP point over Q(sqrt3)."""
    series = energy_series(F)
    grad = []
    for i in range(7):
        J = tuple(1 if t == i else 0 for t in range(7))
        grad.append(_partial_from_series(series, J))
    H: SymMatrix7 = [[QSqrt3.of(0)] * 7 for _ in range(7)]
    for i in range(7):
        for j in range(i, 7):
            J = tuple((1 if t == i else 0) + (1 if t == j else 0) for t in range(7))
            v = _partial_from_series(series, J)
            H[i][j] = v
            H[j][i] = v
    return grad, H


def char_poly(H: SymMatrix7) -> List[Fraction]:
    """Coefficients (ascending) of det(tI - H) via Faddeev-LeVerrier; the
    sqrt(3) parts must cancel exactly."""
    n = 7
    M = [[QSqrt3.of(0)] * n for _ in range(n)]
    cs = [QSqrt3.of(1)]  # leading coefficient of t^n
    for k in range(1, n + 1):
        # M <- H (M + c_{k-1} I)
        A = [row[:] for row in M]
        for i in range(n):
            A[i][i] = A[i][i] + cs[-1]
        M = [[sum((H[i][l] * A[l][j] for l in range(n)), QSqrt3.of(0))
              for j in range(n)] for i in range(n)]
        tr = sum((M[i][i] for i in range(n)), QSqrt3.of(0))
        cs.append(tr / QSqrt3.of(-k))
    out = []
    for k in range(n + 1):  # coefficient of t^(n-k) is cs[k]
        c = cs[k]
        if not c.is_rational():
            raise ValueError("characteristic polynomial is not rational")
        out.append(c.to_fraction())
    return list(reversed(out))  # ascending in t


def shift_poly(coeffs: Sequence[Fraction], a: Fraction) -> List[Fraction]:
    """Coefficients of p(t + a) from ascending coefficients of p."""
    n = len(coeffs)
    out = [Fraction(0)] * n
    for j, c in enumerate(coeffs):
        if not c:
            continue
        binom = 1
        power = Fraction(1)
        for i in range(j, -1, -1):
            out[i] += c * binom * power
            binom = binom * i // (j - i + 1)
            power *= a
    return out


def check_lambda_bound(H: SymMatrix7, bound: Fraction = Fraction(39)) -> bool:
    """True iff the coefficients of chi(t + bound) strictly alternate in sign
    (zero coefficients fail conservatively); implies lambda_min(H) > bound."""
    shifted = shift_poly(char_poly(H), Fraction(bound))
    signs = []
    for c in shifted:
        if c == 0:
            return False
        signs.append(1 if c > 0 else -1)
    return all(signs[i] != signs[i + 1] for i in range(len(signs) - 1))


def mu_bounds(F: Potential) -> Dict[int, QSqrt3]:
    """mu_N = max_{|J|=N} |d_J E_F(xi0)| for N = 3..6, exactly."""
    series = energy_series(F)
    out = {N: QSqrt3.of(0) for N in range(3, 7)}
    for J, c in series.items():
        N = sum(J)
        if 3 <= N <= 6:
            mult = 1
            for e in J:
                mult *= _FACT[e]
            v = abs(c * mult)
            if v > out[N]:
                out[N] = v
    return out


# ----------------------------------------------------------------------------
# nice-function sup bounds (numerators dominated by quadratic denominators)

NiceTerm = Tuple[int, int, int, int, int, int]  # (alpha, beta, gamma, delta, u, v)


def nice_bound(phi: Dict[NiceTerm, Fraction]) -> Fraction:
    """sup over R^4 of |phi| <= sum |C| (1/2)^(min(a,b) + min(c,d)) for
    phi = sum C a^alpha b^beta c^gamma d^delta / ((1+a^2+b^2)^u (1+c^2+d^2)^v),
    valid when every term satisfies alpha+beta <= 2u and gamma+delta <= 2v."""
    total = Fraction(0)
    for (al, be, ga, de, u, v), c in phi.items():
        if al + be > 2 * u or ga + de > 2 * v:
            raise ValueError("term is not nice")
        total += abs(c) * Fraction(1, 2) ** (min(al, be) + min(ga, de))
    return total


def _poly_n_pow(k: int) -> Dict[Tuple[int, int, int, int], int]:
    """(N/4)^k as an integer polynomial in (a,b,c,d), where
    N/4 = 1 + 2ac + 2bd + (a^2+b^2)(c^2+d^2)."""
    base = {(0, 0, 0, 0): 1, (1, 0, 1, 0): 2, (0, 1, 0, 1): 2,
            (2, 0, 2, 0): 1, (2, 0, 0, 2): 1, (0, 2, 2, 0): 1, (0, 2, 0, 2): 1}
    out = {(0, 0, 0, 0): 1}
    for _ in range(k):
        nxt: Dict[Tuple[int, int, int, int], int] = {}
        for m1, c1 in out.items():
            for m2, c2 in base.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                nxt[m] = nxt.get(m, 0) + c1 * c2
        out = nxt
    return out


def _diff_num(P: Dict[Tuple[int, int, int, int], int], var: int, upow: int):
    """Numerator update for d/dx_var of P / (E1^u E2^v): returns the numerator
    of the derivative over E^(upow+1) for the relevant factor.

    var 0,1 differentiate against E1 = 1+a^2+b^2; var 2,3 against E2.
    """
    out: Dict[Tuple[int, int, int, int], int] = {}
    e_terms = (((0, 0, 0, 0), 1),
               ((2, 0, 0, 0) if var < 2 else (0, 0, 2, 0), 1),
               ((0, 2, 0, 0) if var < 2 else (0, 0, 0, 2), 1))
    for m, c in P.items():
        e = m[var]
        if e:
            md = list(m)
            md[var] -= 1
            for me, ce in e_terms:
                key = (md[0] + me[0], md[1] + me[1], md[2] + me[2], md[3] + me[3])
                out[key] = out.get(key, 0) + c * e * ce
        mk = list(m)
        mk[var] += 1
        key = tuple(mk)
        out[key] = out.get(key, 0) - 2 * upow * c
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=None)
def _sup_monomial(r: int, s: int, d: int) -> Fraction:
    """Rational upper bound of sup x^r y^s / (1+x^2+y^2)^d for r+s <= 2d.

    Weighted AM-GM gives the sharp value sqrt(r^r s^s m^m / (2d)^(2d)) with
    m = 2d-r-s; we return a dyadic upper bound of it, capped by the coarser
    (1/2)^min(r,s).
    """
    if d == 0:
        if r or s:
            raise ValueError("not nice")
        return Fraction(1)
    if r + s > 2 * d:
        raise ValueError("not nice")
    m = 2 * d - r - s
    num = r ** r * s ** s * m ** m  # 0^0 = 1
    den = (2 * d) ** (2 * d)
    bits = 48
    sq = Fraction(num, den) * (1 << (2 * bits))
    from .exactnum import isqrt_ceil
    sharp = Fraction(isqrt_ceil(-(-sq.numerator // sq.denominator)), 1 << bits)
    return min(sharp, Fraction(1, 2) ** min(r, s))


def _nice_value(P: Dict[Tuple[int, int, int, int], int], u: int, v: int,
                scale: Fraction) -> Fraction:
    total = Fraction(0)
    for (al, be, ga, de), c in P.items():
        total += abs(c) * _sup_monomial(al, be, u) * _sup_monomial(ga, de, v)
    return total * abs(scale)


_E1_LEAD = (2, 0, 0, 0)
_E2_LEAD = (0, 0, 2, 0)


def _try_div_e(P: Dict[Tuple[int, int, int, int], int], which: int):
    """Exact division of P by E1 = 1+a^2+b^2 (which=1) or E2 (which=2);
    returns the quotient or None."""
    if not P:
        return {}
    lead = _E1_LEAD if which == 1 else _E2_LEAD
    others = (((0, 0, 0, 0), 1),
              ((0, 2, 0, 0) if which == 1 else (0, 0, 0, 2), 1))
    rem = dict(P)
    quo: Dict[Tuple[int, int, int, int], int] = {}
    while rem:
        m = max(rem)
        q = tuple(a - b for a, b in zip(m, lead))
        if q[0] < 0 or q[1] < 0 or q[2] < 0 or q[3] < 0:
            return None
        c = rem[m]
        quo[q] = c
        del rem[m]
        for mo, co in others:
            key = (q[0] + mo[0], q[1] + mo[1], q[2] + mo[2], q[3] + mo[3])
            v = rem.get(key, 0) - c * co
            if v:
                rem[key] = v
            elif key in rem:
                del rem[key]
    return quo


def _cancel(P, u, v):
    """Strip exact E1/E2 factors from the numerator when the quotient stays
    in the nice ring (sharper nice bounds, never unsound)."""
    while u > 0:
        q = _try_div_e(P, 1)
        if q is None or any(m[0] + m[1] > 2 * (u - 1) for m in q):
            break
        P, u = q, u - 1
    while v > 0:
        q = _try_div_e(P, 2)
        if q is None or any(m[2] + m[3] > 2 * (v - 1) for m in q):
            break
        P, v = q, v - 1
    return P, u, v


@lru_cache(maxsize=None)
def m7_bar_gk(k: int) -> Fraction:
    """max over |I|=7 of the nice bound on d_I g^k (sup over all of R^4).

    g^k = 4^k (N/4)^k / (E1^k E2^k); each differentiation keeps a canonical
    single-fraction form with exact E-factor cancellation, whose merged
    numerator stays in the nice ring.
    """
    start = _poly_n_pow(k)
    best = Fraction(0)
    # DFS over derivative multisets of size 7 over the 4 variables
    stack = [(start, k, k, 0, 0)]  # (numerator, u, v, depth, min_next_var)
    while stack:
        P, u, v, depth, vmin = stack.pop()
        if depth == 7:
            val = _nice_value(P, u, v, Fraction(4) ** k)
            if val > best:
                best = val
            continue
        for var in range(vmin, 4):
            if var < 2:
                child, cu, cv = _cancel(_diff_num(P, var, u), u + 1, v)
            else:
                child, cu, cv = _cancel(_diff_num(P, var, v), u, v + 1)
            stack.append((child, cu, cv, depth + 1, var))
    return best


# ----------------------------------------------------------------------------
# the full chain


@dataclass
class ConvexityReport:
    potential: str
    gradient_zero: bool
    char_poly_rational: bool
    lambda_bound: Fraction
    lambda_ok: bool
    mu3: Fraction
    mu_terms_ok: bool
    mu_mid_bound: Fraction
    tail_bound: Fraction
    tail_ok: bool
    total_bound: Fraction
    chain_ok: bool

    @property
    def ok(self) -> bool:
        return (self.gradient_zero and self.char_poly_rational
                and self.lambda_ok and self.mu_terms_ok and self.tail_ok
                and self.chain_ok)


def _upper_fraction(x: QSqrt3, bits: int = 48) -> Fraction:
    """Exact rational upper bound of a Q(sqrt3) value."""
    if x.b == 0:
        return x.a
    # sqrt(3) in [r0, r1] with r1 - r0 ~ 2^-bits
    from .exactnum import sqrt_interval
    iv = sqrt_interval(Fraction(3), bits)
    return x.a + x.b * (iv.hi if x.b > 0 else iv.lo)


def m3_chain(F: Potential, lambda_bound: Fraction = Fraction(39),
             mu3_cap: Fraction = Fraction(45893),
             mid_cap: Fraction = Fraction(38)) -> ConvexityReport:
    """The convexity certificate: zero gradient, lambda(H0) > bound via sign
    alternation, mu-estimates, the seventh-order tail via nice bounds, and
    the final comparison M3 < 2^12 lambda."""
    grad, H = grad_hessian_at_tbp(F)
    gradient_zero = all(not g for g in grad)
    try:
        char_poly(H)
        rational = True
    except ValueError:
        rational = False
    lam_ok = rational and check_lambda_bound(H, lambda_bound)
    mus = mu_bounds(F)
    mu3 = _upper_fraction(mus[3])
    mid_terms = []
    for j in (1, 2, 3):
        mid_terms.append(CUBE_STEP ** j / _FACT[j] * _upper_fraction(mus[j + 3]))
    mu_terms_ok = mu3 < mu3_cap and all(t < mid_cap for t in mid_terms)
    tail = Fraction(0)
    for k, c in enumerate(F.coeffs, start=1):
        if c:
            tail += abs(c) * m7_bar_gk(k)
    tail = tail * 4 * CUBE_STEP ** 4 / _FACT[4]
    total = mu3 + sum(mid_terms) + tail
    return ConvexityReport(
        potential=str(F.coeffs), gradient_zero=gradient_zero,
        char_poly_rational=rational, lambda_bound=lambda_bound,
        lambda_ok=lam_ok, mu3=mu3, mu_terms_ok=mu_terms_ok,
        mu_mid_bound=max(mid_terms), tail_bound=tail,
        tail_ok=tail < 2354, total_bound=total,
        chain_ok=total < (1 << 12) * lambda_bound)
