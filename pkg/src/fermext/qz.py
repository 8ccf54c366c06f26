"""Exact arithmetic in Q/Z.

Every coefficient that the rest of the package would write as a root of
unity in C^x is stored as an element of Q/Z, i.e. a reduced fraction in
[0, 1).  All cohomology of finite groups with C^x coefficients is torsion,
so nothing is lost.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


class QZ:
    """An element ``num/den`` of Q/Z with ``0 <= num < den`` and gcd 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: int = 0, den: int = 1):
        if den <= 0:
            raise ValueError(f"denominator must be positive, got {den}")
        num %= den
        g = gcd(num, den)
        if num == 0:
            num, den = 0, 1
        else:
            num, den = num // g, den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QZ is immutable")

    @classmethod
    def from_fraction(cls, x) -> "QZ":
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @classmethod
    def parse(cls, s: str) -> "QZ":
        """Parse ``"p/q"``; ``"0"`` (or any integer) is accepted too."""
        s = str(s).strip()
        if "/" in s:
            p, q = s.split("/", 1)
            return cls(int(p), int(q))
        return cls(int(s), 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: "QZ") -> "QZ":
        if not isinstance(other, QZ):
            return NotImplemented
        return QZ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "QZ":
        return QZ(-self.num, self.den)

    def __sub__(self, other: "QZ") -> "QZ":
        if not isinstance(other, QZ):
            return NotImplemented
        return self + (-other)

    def __mul__(self, n: int) -> "QZ":
        if isinstance(n, bool) or not isinstance(n, int):
            return NotImplemented
        return QZ(self.num * n, self.den)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, QZ):
            return self.num == other.num and self.den == other.den
        if other == 0:
            return self.num == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return self.num != 0

    def __lt__(self, other: "QZ") -> bool:
        return self.to_fraction() < other.to_fraction()

    def order(self) -> int:
        return self.den

    def scaled_to(self, N: int) -> int:
        """The integer ``x`` with ``self == x/N``; raises if den does not divide N."""
        if N % self.den:
            raise ValueError(f"{self} is not in (1/{N})Z/Z")
        return self.num * (N // self.den)

    def __str__(self) -> str:
        return "0" if self.num == 0 else f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"QZ({self.num}, {self.den})"


ZERO = QZ(0, 1)
HALF = QZ(1, 2)


def add(a: QZ, b: QZ) -> QZ:
    return a + b


def neg(a: QZ) -> QZ:
    return -a


def scale(n: int, a: QZ) -> QZ:
    return a * n


def order(a: QZ) -> int:
    return a.order()


def qz(x) -> QZ:
    """Coerce ints, Fractions, strings and QZ to QZ."""
    if isinstance(x, QZ):
        return x
    if isinstance(x, str):
        return QZ.parse(x)
    return QZ.from_fraction(x)
