"""A finite graded-commutative algebra of differential forms.

Generators carry a form degree and a flag saying whether they live on the
compact factor ``M``; any monomial whose total degree along ``M`` exceeds
``dim M`` vanishes.  Odd generators square to zero.  Coefficients are
whatever numbers are supplied: ``Fraction`` keeps everything exact, floats
are used for heat-kernel traces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

__all__ = ["Generator", "GradedAlgebra", "Form", "AlgebraMismatch", "DEFAULT_ALGEBRA", "default_algebra"]


class AlgebraMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    on_m: bool = False


@dataclass(frozen=True)
class GradedAlgebra:
    """Generators in a fixed order; monomials are sorted tuples of names."""

    generators: tuple[Generator, ...]
    dim_m: int = 2
    differentials: tuple = ()  # (name, Form-as-dict) pairs; generators not listed are closed

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        object.__setattr__(self, "_pos", {g.name: i for i, g in enumerate(self.generators)})
        object.__setattr__(self, "_gen", {g.name: g for g in self.generators})

    def generator(self, name: str) -> Generator:
        try:
            return self._gen[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}; known: {list(self._gen)}") from None

    def degree(self, monomial: tuple[str, ...]) -> int:
        return sum(self.generator(n).degree for n in monomial)

    def m_degree(self, monomial) -> int:
        return sum(self.generator(n).degree for n in monomial if self.generator(n).on_m)

    def canonical(self, names: Iterable[str]) -> tuple[int, tuple[str, ...]]:
        """Sort ``names`` into generator order; return ``(sign, monomial)``, sign 0 if it vanishes."""
        seq = list(names)
        sign = 1
        # insertion sort, counting transpositions of odd generators
        for i in range(1, len(seq)):
            j = i
            while j > 0 and self._pos[seq[j - 1]] > self._pos[seq[j]]:
                if self.generator(seq[j - 1]).degree % 2 and self.generator(seq[j]).degree % 2:
                    sign = -sign
                seq[j - 1], seq[j] = seq[j], seq[j - 1]
                j -= 1
        for a, b in zip(seq, seq[1:]):
            if a == b and self.generator(a).degree % 2:
                return 0, ()
        mono = tuple(seq)
        if self.m_degree(mono) > self.dim_m:
            return 0, ()
        return sign, mono

    def one(self, coeff=Fraction(1)) -> "Form":
        return Form(self, {(): coeff})

    def zero(self) -> "Form":
        return Form(self, {})

    def gen(self, name: str, coeff=Fraction(1)) -> "Form":
        self.generator(name)
        return Form(self, {(name,): coeff})

    def monomial(self, *names: str, coeff=Fraction(1)) -> "Form":
        s, m = self.canonical(names)
        return Form(self, {m: coeff * s} if s else {})

    def basis(self) -> list[tuple[str, ...]]:
        """All nonvanishing monomials."""
        out = [()]
        for g in self.generators:
            new = []
            for m in out:
                power = 1
                while True:
                    s, cand = self.canonical(m + (g.name,) * power)
                    if not s:
                        break
                    new.append(cand)
                    if g.degree % 2:
                        break
                    power += 1
            out += new
        return sorted(set(out), key=lambda m: (self.degree(m), [self._pos[n] for n in m]))


class Form:
    """Finitely supported linear combination of monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: Mapping | None = None):
        self.algebra = algebra
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    def _check(self, other: "Form"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("forms belong to different algebras")

    def _lift(self, other) -> "Form":
        if isinstance(other, Form):
            self._check(other)
            return other
        return self.algebra.one(other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Form(self.algebra, t)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def wedge(self, other: "Form") -> "Form":
        other = self._lift(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = self.algebra.canonical(m1 + m2)
                if s:
                    out[m] = out.get(m, 0) + s * c1 * c2
        return Form(self.algebra, out)

    def __mul__(self, other):
        if isinstance(other, Form):
            return self.wedge(other)
        return Form(self.algebra, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __xor__(self, other):
        return self.wedge(other)

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.algebra == other.algebra and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, monomial: Iterable[str]):
        s, m = self.algebra.canonical(monomial)
        if not s:
            return 0
        return s * self.terms.get(m, 0)

    def part(self, degree: int) -> "Form":
        return Form(self.algebra, {m: c for m, c in self.terms.items() if self.algebra.degree(m) == degree})

    def degrees(self) -> list[int]:
        return sorted({self.algebra.degree(m) for m in self.terms})

    def is_odd(self) -> bool:
        return all(d % 2 for d in self.degrees())

    def exp(self) -> "Form":
        """``sum a^j / j!``; terminates because positive-degree forms are nilpotent."""
        if () in self.terms:
            raise ValueError("exp is only defined for forms without a constant term")
        out = self.algebra.one()
        power = self.algebra.one()
        j = 0
        while True:
            j += 1
            power = power.wedge(self)
            if not power:
                return out
            out = out + power * Fraction(1, factorial(j))

    def differential(self) -> "Form":
        """Graded Leibniz extension of the generator differentials (zero by default)."""
        dmap = {name: Form(self.algebra, dict(terms)) for name, terms in self.algebra.differentials}
        out = self.algebra.zero()
        for m, c in self.terms.items():
            sign = 1
            for i, name in enumerate(m):
                if name in dmap:
                    left = self.algebra.monomial(*m[:i])
                    right = self.algebra.monomial(*m[i + 1:])
                    out = out + left.wedge(dmap[name]).wedge(right) * (c * sign)
                if self.algebra.generator(name).degree % 2:
                    sign = -sign
        return out

    def map_coefficients(self, fn) -> "Form":
        return Form(self.algebra, {m: fn(c) for m, c in self.terms.items()})

    def to_json(self) -> list[dict]:
        return [{"monomial": list(m), "coeff": str(c) if isinstance(c, (int, Fraction)) else repr(float(c))}
                for m, c in sorted(self.terms.items(), key=lambda kv: (self.algebra.degree(kv[0]), kv[0]))]

    @classmethod
    def from_json(cls, algebra: GradedAlgebra, items) -> "Form":
        out = algebra.zero()
        for it in items:
            out = out + algebra.monomial(*it["monomial"], coeff=Fraction(it["coeff"]))
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (self.algebra.degree(kv[0]), kv[0])):
            parts.append(f"{c}" + ("" if not m else "*" + "^".join(m)))
        return " + ".join(parts)


# Normalized generators keep all the coefficients below rational.
THETA, PHI, Y = "dtheta/2pi", "dphi/2pi", "dy"
FB_NORM, FB = "F_b/2pi i", "F_b"


def default_algebra(dim_m: int = 2) -> GradedAlgebra:
    return GradedAlgebra((
        Generator(THETA, 1),
        Generator(PHI, 1),
        Generator(Y, 1),
        Generator(FB_NORM, 2, on_m=True),
        Generator(FB, 2, on_m=True),
    ), dim_m)


DEFAULT_ALGEBRA = default_algebra()
