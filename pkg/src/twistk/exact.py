"""Exact numbers of the form ``a + b*sqrt(2)`` with rational ``a`` and ``b``.

Clifford generators with nonzero mode carry a factor ``sqrt(2)`` in an
orthonormal spinor basis, so operator entries live in ``Q(sqrt 2)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import sqrt

_SQRT2 = sqrt(2.0)


class Surd2:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if isinstance(a, Fraction) else Fraction(a)
        self.b = b if isinstance(b, Fraction) else Fraction(b)

    @staticmethod
    def coerce(x) -> "Surd2":
        if isinstance(x, Surd2):
            return x
        return Surd2(x, 0)

    def __add__(self, other):
        o = Surd2.coerce(other)
        return Surd2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = Surd2.coerce(other)
        return Surd2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return Surd2.coerce(other) - self

    def __neg__(self):
        return Surd2(-self.a, -self.b)

    def __mul__(self, other):
        if not isinstance(other, Surd2):
            other = Fraction(other)
            return Surd2(self.a * other, self.b * other)
        return Surd2(self.a * other.a + 2 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, Surd2):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * _SQRT2

    def __abs__(self):
        return abs(float(self))

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        if not self.b:
            return f"Surd2({self.a})"
        return f"Surd2({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt2"
        return f"{self.a}+{self.b}*sqrt2"


SQRT2 = Surd2(0, 1)
ZERO = Surd2(0, 0)
ONE = Surd2(1, 0)
