"""Exact rational numbers, outward-rounded interval arithmetic, and rigorous
power/log enclosures.

Everything in the sound path is a `fractions.Fraction`.  Powers with rational
exponents are enclosed by iterated integer square roots (dyadic exponents) plus
exponent bracketing, and logarithms by atanh series with explicit tail bounds.
No hardware floats are used anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = Fraction

DYADIC_SCALE = 30  # block coordinates are integers times 2**-30


class IntervalDivisionError(ZeroDivisionError):
    """Division by an interval containing zero."""


def rational_from_str(s: str) -> Fraction:
    """Parse 'p/q' or 'p' (exact; no float round trip)."""
    return Fraction(s.strip())


def rational_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


@dataclass(frozen=True)
class Dyadic30:
    """An exact dyadic number value/2**30, the block-coordinate representation."""

    value: int

    def to_rational(self) -> Fraction:
        return Fraction(self.value, 1 << DYADIC_SCALE)

    @staticmethod
    def from_rational(x: Fraction) -> "Dyadic30":
        v = x * (1 << DYADIC_SCALE)
        if v.denominator != 1:
            raise ValueError(f"{x} is not representable at scale 2^-{DYADIC_SCALE}")
        return Dyadic30(v.numerator)


@dataclass(frozen=True)
class Interval:
    """Closed interval with exact rational endpoints, lo <= hi.

    Arithmetic is exact (rationals are closed under +,-,*,/); `round_out`
    provides the optional dyadic outward rounding used to cap coefficient
    growth in long computations.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x) -> "Interval":
        x = Fraction(x)
        return Interval(x, x)

    @staticmethod
    def hull(values: Iterable[Fraction]) -> "Interval":
        vs = [Fraction(v) for v in values]
        return Interval(min(vs), max(vs))

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: "Interval") -> "Interval":
        c = (self.lo * other.lo, self.lo * other.hi,
             self.hi * other.lo, self.hi * other.hi)
        return Interval(min(c), max(c))

    def __truediv__(self, other: "Interval") -> "Interval":
        if other.lo <= 0 <= other.hi:
            raise IntervalDivisionError(f"divisor {other} contains 0")
        c = (self.lo / other.lo, self.lo / other.hi,
             self.hi / other.lo, self.hi / other.hi)
        return Interval(min(c), max(c))

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def min(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), min(self.hi, other.hi))

    def max(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def scale(self, c) -> "Interval":
        c = Fraction(c)
        return Interval(self.lo * c, self.hi * c) if c >= 0 else Interval(self.hi * c, self.lo * c)

    def round_out(self, bits: int = 64) -> "Interval":
        """Widen endpoints outward to the dyadic grid 2**-bits."""
        one = 1 << bits
        lo = Fraction(_floor_div(self.lo.numerator * one, self.lo.denominator), one)
        hi = Fraction(_ceil_div(self.hi.numerator * one, self.hi.denominator), one)
        return Interval(lo, hi)


def iv_op(kind: str, a: Interval, b: Interval) -> Interval:
    """Dispatch interval arithmetic by name; result contains {x op y}."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind == "min":
        return a.min(b)
    if kind == "max":
        return a.max(b)
    raise ValueError(f"unknown interval op {kind!r}")


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def isqrt_floor(n: int) -> int:
    return math.isqrt(n)


def isqrt_ceil(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def iroot_floor(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1 (Newton on integers)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << (-(-n.bit_length() // k))  # first guess >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


def sqrt_lower(x: Fraction, bits: int) -> Fraction:
    """Dyadic r with r <= sqrt(x), accurate to about 2**-bits."""
    if x < 0:
        raise ValueError("negative radicand")
    n = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(math.isqrt(n), 1 << bits)


def sqrt_upper(x: Fraction, bits: int) -> Fraction:
    """Dyadic r with r >= sqrt(x)."""
    if x < 0:
        raise ValueError("negative radicand")
    n = _ceil_div(x.numerator << (2 * bits), x.denominator)
    return Fraction(isqrt_ceil(n), 1 << bits)


def sqrt_interval(x: Fraction, bits: int = 64) -> Interval:
    return Interval(sqrt_lower(x, bits), sqrt_upper(x, bits))


def _dyadic_frac_pow(base: Fraction, j: int, k: int, bits: int) -> Interval:
    """Enclosure of base ** (j / 2**k) for 0 <= j < 2**k, base > 0.

    Built from the chain base**(1/2), base**(1/4), ... by iterated outward
    square roots; the bits of j select which chain elements to multiply.
    """
    if j == 0:
        return Interval.point(Fraction(1))
    lo, hi = base, base
    chain = []
    for _ in range(k):
        lo, hi = sqrt_lower(lo, bits), sqrt_upper(hi, bits)
        chain.append((lo, hi))
    out_lo, out_hi = Fraction(1), Fraction(1)
    for i in range(k):
        if (j >> (k - 1 - i)) & 1:  # bit for exponent 2**-(i+1)
            out_lo *= chain[i][0]
            out_hi *= chain[i][1]
    return Interval(out_lo, out_hi).round_out(bits)


def pow_interval(base: Fraction, exponent: Fraction, bits: int = 48) -> Interval:
    """Rigorous enclosure of base ** exponent for rational base > 0.

    Dyadic exponents go through exact integer powers and iterated square
    roots.  A general rational exponent is bracketed between dyadics at
    precision 2**-bits and resolved by monotonicity in the exponent.
    """
    base = Fraction(base)
    exponent = Fraction(exponent)
    if base <= 0:
        raise ValueError("base must be positive")
    if base == 1 or exponent == 0:
        return Interval.point(Fraction(1))
    den = exponent.denominator
    if den & (den - 1) == 0:  # power of two: exact dyadic exponent
        k = den.bit_length() - 1
        num = exponent.numerator
        neg = num < 0
        num = abs(num)
        ipart, j = divmod(num, den)
        out = _dyadic_frac_pow(base, j, k, bits)
        if ipart:
            out = out * _int_pow_interval(base, ipart)
        if neg:
            out = Interval.point(Fraction(1)) / out
        return out.round_out(bits)
    # bracket the exponent by dyadics and use monotonicity in the exponent
    scale = 1 << bits
    e_lo = Fraction(_floor_div(exponent.numerator * scale, exponent.denominator), scale)
    e_hi = Fraction(_ceil_div(exponent.numerator * scale, exponent.denominator), scale)
    a = pow_interval(base, e_lo, bits)
    b = pow_interval(base, e_hi, bits)
    if base > 1:
        return Interval(a.lo, b.hi)
    return Interval(b.lo, a.hi)


def _int_pow_interval(base: Fraction, k: int) -> Interval:
    p = base ** k
    return Interval.point(p)


def pow_lower(base: Fraction, exponent: Fraction, bits: int = 48) -> Fraction:
    return pow_interval(base, exponent, bits).lo


def pow_upper(base: Fraction, exponent: Fraction, bits: int = 48) -> Fraction:
    return pow_interval(base, exponent, bits).hi


def compare_power(a: int, b: int, p: int, q: int, c: int, d: int,
                  direction: str = "<") -> bool:
    """Decide (a/b)**(p/q) < (c/d) (or >) by the sign of b**p c**q - a**p d**q.

    All arguments must be positive integers; the decision is exact.
    """
    if min(a, b, p, q, c, d) <= 0:
        raise ValueError("compare_power needs positive integer arguments")
    lhs = b ** p * c ** q - a ** p * d ** q
    if direction == "<":
        return lhs > 0
    if direction == ">":
        return lhs < 0
    raise ValueError(f"unknown direction {direction!r}")


def _verify_upper(base: Fraction, exponent: Fraction, bound: Fraction) -> bool:
    """Exact check that base**exponent <= bound (expanding-out method)."""
    # base**(p/q) <= bound  <=>  base**p <= bound**q (p,q>0), with sign care.
    p, q = exponent.numerator, exponent.denominator
    if bound <= 0:
        return False
    if p >= 0:
        return base ** p <= bound ** q
    return Fraction(1) <= (bound ** q) * (base ** (-p))


def _verify_lower(base: Fraction, exponent: Fraction, bound: Fraction) -> bool:
    """Exact check that base**exponent >= bound."""
    p, q = exponent.numerator, exponent.denominator
    if bound <= 0:
        return True
    if p >= 0:
        return base ** p >= bound ** q
    return (bound ** q) * (base ** (-p)) <= 1


def bound_power_sum(b_list: Sequence[Fraction], a_list: Sequence[int],
                    s: Fraction, C: Fraction, scale_bits: int = 32) -> bool:
    """Rigorously establish  sum b_i**-s - sum a_i**-(s/2) > C.

    Per-term rational approximants (B_i <= b_i**-s, A_i >= a_i**-(s/2)) are
    produced at granularity 2**-scale_bits, re-verified by expanding out, and
    summed exactly.  True is a proof; False only means "not established".
    """
    s = Fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    total = Fraction(0)
    for b in b_list:
        b = Fraction(b)
        if b <= 1:
            raise ValueError("b entries must exceed 1")
        B = pow_lower(b, -s, scale_bits)
        if not _verify_lower(b, -s, B):  # pragma: no cover - enclosure is sound
            return False
        total += B
    for a in a_list:
        if a not in (2, 3, 4):
            raise ValueError("a entries must be in {2,3,4}")
        A = pow_upper(Fraction(a), -s / 2, scale_bits)
        if not _verify_upper(Fraction(a), -s / 2, A):  # pragma: no cover
            return False
        total -= A
    return total > C


# ----------------------------------------------------------------------------
# logarithms


@lru_cache(maxsize=None)
def _atanh_enclosure(num: int, den: int, bits: int) -> Interval:
    """Enclosure of atanh(num/den) for |num/den| < 1 via the odd Taylor series."""
    t = Fraction(num, den)
    t2 = t * t
    term = t
    total = Fraction(0)
    n = 0
    tol = Fraction(1, 1 << (bits + 4))
    while True:
        contrib = term / (2 * n + 1)
        total += contrib
        n += 1
        term *= t2
        tail = abs(term) / ((2 * n + 1) * (1 - t2))
        if tail < tol:
            break
    if t >= 0:
        out = Interval(total, total + tail)
    else:
        out = Interval(total - tail, total)
    return out.round_out(bits + 4)


@lru_cache(maxsize=None)
def ln2_enclosure(bits: int = 60) -> Interval:
    return (_atanh_enclosure(1, 3, bits + 2).scale(2)).round_out(bits)


@lru_cache(maxsize=None)
def ln3_enclosure(bits: int = 60) -> Interval:
    return (_atanh_enclosure(1, 2, bits + 2).scale(2)).round_out(bits)


def ln_enclosure(x: Fraction, bits: int = 60) -> Interval:
    """Enclosure of ln(x) for rational x > 0."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of nonpositive number")
    if x == 1:
        return Interval.point(Fraction(0))
    if x < 1:
        return -ln_enclosure(1 / x, bits)
    # write x = 2**m * z with z in [1, 2)
    m = 0
    z = x
    while z >= 2:
        z /= 2
        m += 1
    out = ln2_enclosure(bits + 4).scale(m) if m else Interval.point(Fraction(0))
    if z != 1:
        # ln z = 2 atanh((z-1)/(z+1)); pre-round z to a dyadic bracket so the
        # series runs on small numbers
        zl = Fraction(_floor_div(z.numerator << bits, z.denominator), 1 << bits)
        zh = Fraction(_ceil_div(z.numerator << bits, z.denominator), 1 << bits)
        lo = _atanh_enclosure((zl - 1).numerator * (zl + 1).denominator,
                              (zl - 1).denominator * (zl + 1).numerator, bits + 2).scale(2)
        hi = _atanh_enclosure((zh - 1).numerator * (zh + 1).denominator,
                              (zh - 1).denominator * (zh + 1).numerator, bits + 2).scale(2)
        out = out + Interval(lo.lo, hi.hi)
    return out.round_out(bits)


def log_enclosure(x: Interval, bits: int = 60) -> Interval:
    """Enclosure of {ln t : t in x}; requires x.lo > 0."""
    if x.lo <= 0:
        raise ValueError("log_enclosure needs a positive interval")
    return Interval(ln_enclosure(x.lo, bits).lo, ln_enclosure(x.hi, bits).hi)
