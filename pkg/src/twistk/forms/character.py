"""Index character of the circle Dirac family, the quotient character and the mod-n pairing."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..zlinalg import IntMatrix, reduce_modulo_lattice
from .algebra import DEFAULT_ALGEBRA, FB_NORM, PHI, THETA, Form, GradedAlgebra

__all__ = [
    "fiber_integrate_theta",
    "index_character",
    "CharacterClass",
    "quotient_character",
    "MarkedCycle",
    "UnmarkedCycleError",
    "pairing_mod_n",
]


def fiber_integrate_theta(a: Form) -> Form:
    """Integrate over the theta circle; ``dtheta/2pi`` integrates to 1.

    The ``dtheta/2pi`` factor is moved to the front before it is removed.
    """
    alg = a.algebra
    out = {}
    for m, c in a.terms.items():
        if THETA not in m:
            continue
        i = m.index(THETA)
        sign = -1 if alg.degree(m[:i]) % 2 else 1
        rest = m[:i] + m[i + 1:]
        out[rest] = out.get(rest, 0) + sign * c
    return Form(alg, out)


def index_character(k: int, algebra: GradedAlgebra = DEFAULT_ALGEBRA) -> Form:
    """``int_T exp(dtheta/2pi ^ dphi/2pi + k F_b/2pi i)``.

    Gives ``dphi/2pi + k dphi/2pi ^ F_b/2pi i`` in two dimensions.
    """
    two_form = algebra.monomial(THETA, PHI) + algebra.gen(FB_NORM, Fraction(k))
    return fiber_integrate_theta(two_form.exp())


@dataclass(frozen=True)
class CharacterClass:
    """A representative in odd degree together with the lattice it is reduced modulo."""

    representative: Form
    modulus_basis: tuple
    coordinates: tuple  # on (dphi/2pi, dphi/2pi ^ F_b/2pi i)
    k: int

    @property
    def degree1(self):
        return self.coordinates[0]

    @property
    def degree3_class(self):
        return self.coordinates[1]

    def label(self) -> str:
        d1, d3 = self.coordinates
        if self.k == 0:
            return f"({d1}, {d3})"
        return f"({d1}, {d3} mod {self.k})"

    def to_json(self) -> dict:
        return {"degree1": str(self.degree1), "degree3_class": str(self.degree3_class),
                "modulus": self.k, "label": self.label(),
                "representative": self.representative.to_json(),
                "modulus_basis": [f.to_json() for f in self.modulus_basis]}


def _modulus_forms(k: int, algebra: GradedAlgebra) -> list[Form]:
    """``dphi/2pi ^ ch(x) ^ (1 - ch(lambda))`` over the K^0 basis ``x in {1, b}``."""
    ch_lambda = algebra.gen(FB_NORM, Fraction(k)).exp()
    phi = algebra.gen(PHI)
    one_minus = algebra.one() - ch_lambda
    return [phi.wedge(x).wedge(one_minus) for x in (algebra.one(), algebra.gen(FB_NORM))]


def quotient_character(xi_rank: int, xi_degree: int, k: int,
                       algebra: GradedAlgebra = DEFAULT_ALGEBRA) -> CharacterClass:
    """``dphi/2pi ^ ch(xi)`` with ``ch(xi) = rk + n F_b/2pi i``, reduced modulo the twist lattice."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    phi = algebra.gen(PHI)
    ch_xi = algebra.one(Fraction(xi_rank)) + algebra.gen(FB_NORM, Fraction(xi_degree))
    rep = phi.wedge(ch_xi)
    monos = [(PHI,), (PHI, FB_NORM)]
    coords = [rep.coefficient(m) for m in monos]
    mods = [f for f in _modulus_forms(k, algebra) if f]
    if mods:
        lattice = IntMatrix.from_columns([[int(f.coefficient(m)) for m in monos] for f in mods])
        coords = reduce_modulo_lattice(coords, lattice)
    return CharacterClass(rep, tuple(mods), tuple(Fraction(c) for c in coords), k)


class UnmarkedCycleError(ValueError):
    pass


@dataclass(frozen=True)
class MarkedCycle:
    """A closed surface ``S`` in ``M``; ``flux`` is the integral of ``F_b/2pi i`` over it."""

    name: str = "S"
    marked: bool = True
    flux: int = 1


def pairing_mod_n(cycle: MarkedCycle, xi_degree: int, n: int,
                  algebra: GradedAlgebra = DEFAULT_ALGEBRA) -> dict:
    """``int_S ch(xi) mod n`` where ``ch(xi)`` has degree-two coefficient ``xi_degree``.

    Returns the residue and the cross-check against the quotient character
    modulo ``n``.
    """
    if not cycle.marked:
        raise UnmarkedCycleError(f"cycle {cycle.name!r} carries no localized curvature")
    if n <= 0:
        raise ValueError("modulus must be positive")
    ch_xi = algebra.one() + algebra.gen(FB_NORM, Fraction(xi_degree))
    integral = ch_xi.coefficient((FB_NORM,)) * cycle.flux
    residue = int(integral) % n
    cross = quotient_character(1, int(integral), n, algebra).degree3_class
    return {"integral": int(integral), "modulus": n, "residue": residue,
            "quotient_character_residue": int(cross), "consistent": residue == cross}
