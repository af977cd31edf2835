"""The field Q(sqrt 3), with exact comparisons.

Needed wherever the TBP avatar (whose coordinates involve sqrt(3)/3) must be
handled exactly: reference energies, gradients/Hessians at the TBP, and the
symmetrization identities of the appendix.
"""

from __future__ import annotations

from fractions import Fraction


class QSqrt3:
    """a + b*sqrt(3) with rational a, b; exact field arithmetic and ordering."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    # -- construction helpers
    @staticmethod
    def of(x) -> "QSqrt3":
        if isinstance(x, QSqrt3):
            return x
        return QSqrt3(Fraction(x), 0)

    def __repr__(self):
        return f"QSqrt3({self.a}, {self.b})"

    def __hash__(self):
        return hash((self.a, self.b))

    # -- ring ops; ints/Fractions coerce
    def __add__(self, other):
        o = QSqrt3.of(other)
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = QSqrt3.of(other)
        return QSqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return QSqrt3.of(other) - self

    def __mul__(self, other):
        o = QSqrt3.of(other)
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt3":
        d = self.a * self.a - 3 * self.b * self.b
        if d == 0:
            raise ZeroDivisionError("zero element of Q(sqrt3)")
        return QSqrt3(self.a / d, -self.b / d)

    def __truediv__(self, other):
        return self * QSqrt3.of(other).inverse()

    def __rtruediv__(self, other):
        return QSqrt3.of(other) * self.inverse()

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QSqrt3(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- exact ordering: sign of a + b*sqrt(3)
    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with 3 b^2
        if a > 0:  # b < 0
            return 1 if a * a > 3 * b * b else (-1 if a * a < 3 * b * b else 0)
        return -1 if a * a > 3 * b * b else (1 if a * a < 3 * b * b else 0)

    def __eq__(self, other):
        o = QSqrt3.of(other)
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        return (self - QSqrt3.of(other)).sign() < 0

    def __le__(self, other):
        return (self - QSqrt3.of(other)).sign() <= 0

    def __gt__(self, other):
        return (self - QSqrt3.of(other)).sign() > 0

    def __ge__(self, other):
        return (self - QSqrt3.of(other)).sign() >= 0

    def __abs__(self):
        return self if self.sign() >= 0 else -self

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self!r} is irrational")
        return self.a

    def to_float(self) -> float:
        return float(self.a) + float(self.b) * 3.0 ** 0.5


SQRT3 = QSqrt3(0, 1)
SQRT3_OVER_3 = QSqrt3(0, Fraction(1, 3))
