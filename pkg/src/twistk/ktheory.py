"""Twisted K-groups of ``T x M`` for a decomposable twist.

The ordinary K-theory of ``M`` is supplied as a finite presentation with
structure constants (``KRingPresentation``) together with the class of a line
bundle ``lam``.  Covering the circle by two arcs, the gluing map on
``K*(M)^2`` is ``(x, y) -> (x - y, x - y*lam)``, and it reduces to the single
endomorphism ``x -> x*(1 - lam)``.  For each degree ``d`` the group
``K^d(T x M)`` is an extension

    0 -> coker(1 - lam on K^{d-1}(M)) -> K^d(T x M) -> ker(1 - lam on K^d(M)) -> 0

computed here with Smith normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .zlinalg import (
    FgAbGroup,
    IntMatrix,
    PresentationError as _LatticeError,
    _unimodular_inverse,
    cokernel,
    determinant,
    group_of_quotient,
    kernel,
    lattice_basis,
)

__all__ = [
    "KRingPresentation",
    "PresentationError",
    "ExtensionPieces",
    "DegreeResult",
    "TwistedKResult",
    "multiplication_by_one_minus_lambda",
    "twisted_k",
    "preset",
    "change_basis",
]


class PresentationError(_LatticeError):
    """A K-ring presentation violates one or more invariants.

    ``violations`` lists every problem found, not only the first.
    """

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid K-ring presentation:\n  " + "\n  ".join(self.violations))


def _vec(v) -> tuple[int, ...]:
    return tuple(int(x) for x in v)


def _is_relation(v: Sequence[int], orders: Sequence[int]) -> bool:
    """Is ``v`` in the relation lattice ``sum d_i Z e_i``?"""
    return all((x == 0) if d == 0 else (x % d == 0) for x, d in zip(v, orders))


def _relations(orders: Sequence[int]) -> list[list[int]]:
    n = len(orders)
    return [[d if i == j else 0 for i in range(n)] for j, d in enumerate(orders) if d]


@dataclass(frozen=True)
class KRingPresentation:
    """Presented ring ``K^0(M)`` acting on the presented module ``K^1(M)``.

    Generator ``i`` of ``K^0`` has additive order ``k0_orders[i]`` (``0`` for
    infinite order), similarly for ``K^1``.  ``mult_table[i][j]`` is the
    coordinate vector of ``e_i * e_j`` and ``k1_module_action[i]`` is the
    matrix of multiplication by ``e_i`` on ``K^1`` (columns are images of the
    ``K^1`` generators).  ``rank_functional``, when given, is the virtual rank
    on ``K^0``; the line bundle must then have rank one.
    """

    k0_orders: tuple[int, ...]
    unit_vector: tuple[int, ...]
    mult_table: tuple[tuple[tuple[int, ...], ...], ...]
    lambda_class: tuple[int, ...]
    k1_orders: tuple[int, ...] = ()
    k1_module_action: tuple[tuple[tuple[int, ...], ...], ...] = ()
    rank_functional: tuple[int, ...] | None = None
    k0_names: tuple[str, ...] | None = None
    k1_names: tuple[str, ...] | None = None
    label: str = "custom"

    @classmethod
    def build(cls, *, k0_orders, unit_vector, mult_table, lambda_class, k1_orders=(),
              k1_module_action=None, rank_functional=None, k0_names=None, k1_names=None,
              label="custom", validate=True) -> "KRingPresentation":
        """Normalize nested sequences into tuples and (by default) validate."""
        k0_orders = _vec(k0_orders)
        k1_orders = _vec(k1_orders)
        if k1_module_action is None:
            k1_module_action = [[[int(r == c) if i == _unit_index(unit_vector) else 0
                                  for c in range(len(k1_orders))] for r in range(len(k1_orders))]
                                for i in range(len(k0_orders))]
        pres = cls(
            k0_orders=k0_orders,
            unit_vector=_vec(unit_vector),
            mult_table=tuple(tuple(_vec(v) for v in row) for row in mult_table),
            lambda_class=_vec(lambda_class),
            k1_orders=k1_orders,
            k1_module_action=tuple(tuple(_vec(r) for r in A) for A in k1_module_action),
            rank_functional=None if rank_functional is None else _vec(rank_functional),
            k0_names=None if k0_names is None else tuple(k0_names),
            k1_names=None if k1_names is None else tuple(k1_names),
            label=label,
        )
        if validate:
            pres.validate()
        return pres

    @property
    def n0(self) -> int:
        return len(self.k0_orders)

    @property
    def n1(self) -> int:
        return len(self.k1_orders)

    def orders(self, degree: int) -> tuple[int, ...]:
        return self.k0_orders if degree % 2 == 0 else self.k1_orders

    def group(self, degree: int) -> FgAbGroup:
        return FgAbGroup.from_cyclic_orders(self.orders(degree))

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        """Product of two ``K^0`` coordinate vectors."""
        out = [0] * self.n0
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    for m, c in enumerate(self.mult_table[i][j]):
                        out[m] += xi * yj * c
        return out

    def action_matrix(self, x: Sequence[int]) -> list[list[int]]:
        """Matrix of multiplication by the ``K^0`` class ``x`` on ``K^1``."""
        n = self.n1
        out = [[0] * n for _ in range(n)]
        for i, xi in enumerate(x):
            if xi:
                A = self.k1_module_action[i]
                for r in range(n):
                    for c in range(n):
                        out[r][c] += xi * A[r][c]
        return out

    def violations(self) -> list[str]:
        """Every invariant violation, as human-readable strings."""
        bad: list[str] = []
        n0, n1 = self.n0, self.n1
        o0, o1 = self.k0_orders, self.k1_orders
        if any(d < 0 or d == 1 for d in o0 + o1):
            bad.append("generator orders must be 0 (free) or >= 2")
        for name, v in (("unit_vector", self.unit_vector), ("lambda_class", self.lambda_class)):
            if len(v) != n0:
                bad.append(f"{name} has length {len(v)}, expected {n0}")
        if self.rank_functional is not None and len(self.rank_functional) != n0:
            bad.append(f"rank_functional has length {len(self.rank_functional)}, expected {n0}")
        if len(self.mult_table) != n0 or any(len(row) != n0 for row in self.mult_table) or any(
                len(v) != n0 for row in self.mult_table for v in row):
            bad.append(f"mult_table must be {n0}x{n0} of length-{n0} vectors")
        if len(self.k1_module_action) != n0 or any(
                len(A) != n1 or any(len(r) != n1 for r in A) for A in self.k1_module_action):
            bad.append(f"k1_module_action must hold {n0} matrices of size {n1}x{n1}")
        if bad:
            return bad  # structure too broken for the algebraic checks

        E = [[int(i == j) for j in range(n0)] for i in range(n0)]
        mt = self.mult_table
        for i in range(n0):
            for j in range(n0):
                if o0[i] and not _is_relation([o0[i] * c for c in mt[i][j]], o0):
                    bad.append(f"product e{i}*e{j} does not respect the order {o0[i]} of e{i}")
                if j > i:
                    diff = [a - b for a, b in zip(mt[i][j], mt[j][i])]
                    if not _is_relation(diff, o0):
                        bad.append(f"not commutative on ({i}, {j})")
        for i in range(n0):
            for j in range(n0):
                for k in range(n0):
                    lhs = self.multiply(mt[i][j], E[k])
                    rhs = self.multiply(E[i], mt[j][k])
                    if not _is_relation([a - b for a, b in zip(lhs, rhs)], o0):
                        bad.append(f"not associative on triple ({i}, {j}, {k}): "
                                   f"(e{i}e{j})e{k} = {lhs} but e{i}(e{j}e{k}) = {rhs}")
        for j in range(n0):
            p = self.multiply(self.unit_vector, E[j])
            if not _is_relation([a - b for a, b in zip(p, E[j])], o0):
                bad.append(f"unit_vector does not act as identity on e{j}")

        if n1:
            U = self.action_matrix(self.unit_vector)
            for c in range(n1):
                col = [U[r][c] - int(r == c) for r in range(n1)]
                if not _is_relation(col, o1):
                    bad.append(f"unit does not act as identity on K1 generator {c}")
            for i in range(n0):
                A = self.k1_module_action[i]
                for c in range(n1):
                    col = [A[r][c] for r in range(n1)]
                    if o1[c] and not _is_relation([o1[c] * x for x in col], o1):
                        bad.append(f"action of e{i} does not respect the order {o1[c]} "
                                   f"of K1 generator {c}")
                    if o0[i] and not _is_relation([o0[i] * x for x in col], o1):
                        bad.append(f"action of e{i} ignores its order {o0[i]}")
            for i in range(n0):
                for j in range(n0):
                    Ai, Aj = self.k1_module_action[i], self.k1_module_action[j]
                    prod = [[sum(Ai[r][m] * Aj[m][c] for m in range(n1)) for c in range(n1)]
                            for r in range(n1)]
                    comb = self.action_matrix(mt[i][j])
                    for c in range(n1):
                        if not _is_relation([prod[r][c] - comb[r][c] for r in range(n1)], o1):
                            bad.append(f"module action not associative for (e{i}, e{j})")
                            break

        if self.rank_functional is not None:
            rk = sum(a * b for a, b in zip(self.rank_functional, self.lambda_class))
            if rk != 1:
                bad.append(f"lambda_class has rank {rk}; a line bundle must have rank 1")
        return bad

    def validate(self) -> "KRingPresentation":
        bad = self.violations()
        if bad:
            raise PresentationError(bad)
        return self

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "k0_orders": list(self.k0_orders),
            "k1_orders": list(self.k1_orders),
            "unit_vector": list(self.unit_vector),
            "lambda_class": list(self.lambda_class),
            "mult_table": [[list(v) for v in row] for row in self.mult_table],
            "k1_module_action": [[list(r) for r in A] for A in self.k1_module_action],
            "rank_functional": None if self.rank_functional is None else list(self.rank_functional),
        }


def _unit_index(unit_vector) -> int:
    v = list(unit_vector)
    return v.index(1) if v.count(1) == 1 and sum(map(abs, v)) == 1 else -1


def multiplication_by_one_minus_lambda(pres: KRingPresentation, degree: int) -> IntMatrix:
    """Matrix of ``x -> x*(1 - lam)`` on ``K^degree(M)`` in the presented generators.

    Columns are images of generators.  Entries are raw structure-constant
    combinations; they are meaningful modulo the generator orders.
    """
    if degree not in (0, 1):
        raise ValueError("degree must be 0 or 1")
    lam = pres.lambda_class
    if degree == 0:
        n = pres.n0
        cols = []
        for j in range(n):
            ej = [int(i == j) for i in range(n)]
            lj = pres.multiply(lam, ej)
            cols.append([a - b for a, b in zip(ej, lj)])
        return IntMatrix.from_columns(cols, rows=n) if n else IntMatrix.zeros(0, 0)
    n = pres.n1
    A = pres.action_matrix(lam)
    return IntMatrix.from_rows([[int(r == c) - A[r][c] for c in range(n)] for r in range(n)], cols=n)


@dataclass(frozen=True)
class ExtensionPieces:
    """The two ends of the extension in one degree.

    ``kernel_piece`` is the quotient (fixed points of tensoring by ``lam``),
    ``cokernel_piece`` the subgroup.  ``kernel_lattice`` is a basis of the
    preimage lattice in generator coordinates.
    """

    kernel_piece: FgAbGroup
    cokernel_piece: FgAbGroup
    kernel_lattice: IntMatrix

    def to_json(self) -> dict:
        return {"kernel": self.kernel_piece.to_json(), "cokernel": self.cokernel_piece.to_json()}


@dataclass(frozen=True)
class DegreeResult:
    degree: int
    pieces: ExtensionPieces
    split_certain: bool
    group: FgAbGroup | None

    @property
    def rank(self) -> int:
        return self.pieces.kernel_piece.free_rank + self.pieces.cokernel_piece.free_rank

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "rank": self.rank,
            "torsion": None if self.group is None else list(self.group.torsion),
            "split_certain": self.split_certain,
            "pieces": self.pieces.to_json(),
        }


@dataclass(frozen=True)
class TwistedKResult:
    degrees: tuple[DegreeResult, DegreeResult]
    presentation_label: str = "custom"

    @property
    def k0(self) -> FgAbGroup | None:
        return self.degrees[0].group

    @property
    def k1(self) -> FgAbGroup | None:
        return self.degrees[1].group

    @property
    def k0_pieces(self) -> ExtensionPieces:
        return self.degrees[0].pieces

    @property
    def k1_pieces(self) -> ExtensionPieces:
        return self.degrees[1].pieces

    @property
    def extension_split_certain(self) -> tuple[bool, bool]:
        return (self.degrees[0].split_certain, self.degrees[1].split_certain)

    def to_json(self) -> list[dict]:
        return [d.to_json() for d in self.degrees]


def _fixed_lattice(M: IntMatrix, orders: Sequence[int]) -> IntMatrix:
    """Basis of ``{x : M x in relations}``, which contains the relations."""
    n = len(orders)
    rel = _relations(orders)
    if n == 0:
        return IntMatrix.zeros(0, 0)
    aug = M.hstack(IntMatrix.from_columns(rel, rows=n)) if rel else M
    K = kernel(aug)
    gens = [K.column(j)[:n] for j in range(K.cols)] + rel
    gens = [g for g in gens if any(g)]
    if not gens:
        return IntMatrix.zeros(n, 0)
    return lattice_basis(IntMatrix.from_columns(gens, rows=n))


def _coinvariants(M: IntMatrix, orders: Sequence[int]) -> FgAbGroup:
    n = len(orders)
    if n == 0:
        return FgAbGroup.trivial()
    rel = _relations(orders)
    aug = M.hstack(IntMatrix.from_columns(rel, rows=n)) if rel else M
    return cokernel(aug)


def extension_forced_split(quotient: FgAbGroup, sub: FgAbGroup) -> bool:
    """True when ``Ext(quotient, sub) = 0``, so every extension is the direct sum.

    ``Ext(Z^r + sum Z_d, A) = sum A/dA`` vanishes exactly when each ``A/dA``
    does, i.e. ``A`` is finite with order prime to every ``d``.
    """
    if not quotient.torsion:
        return True
    if sub.free_rank:
        return False
    return all(gcd(d, a) == 1 for d in quotient.torsion for a in sub.torsion)


def twisted_k(pres: KRingPresentation) -> TwistedKResult:
    """Twisted K-groups of ``T x M`` in both degrees."""
    pres.validate()
    out = []
    for d in (0, 1):
        prev = 1 - d
        M_here = multiplication_by_one_minus_lambda(pres, d)
        M_prev = multiplication_by_one_minus_lambda(pres, prev)
        orders_here = pres.orders(d)
        P = _fixed_lattice(M_here, orders_here)
        rel = _relations(orders_here)
        if P.cols == 0:
            ker = FgAbGroup.trivial()
        elif rel:
            ker = group_of_quotient(P, IntMatrix.from_columns(rel, rows=len(orders_here)))
        else:
            ker = FgAbGroup(P.cols, ())
        coker = _coinvariants(M_prev, pres.orders(prev))
        split = extension_forced_split(ker, coker)
        group = ker + coker if split else None
        out.append(DegreeResult(d, ExtensionPieces(ker, coker, P), split, group))
    return TwistedKResult(tuple(out), pres.label)


def preset(name: str, k: int = 0, custom: KRingPresentation | None = None) -> KRingPresentation:
    """Built-in presentations with ``lam`` of degree ``k``.

    ``"S2"``: ``K^0 = Z{1, b}`` with ``b^2 = 0``, ``K^1 = 0``, ``lam = 1 + k b``.
    ``"T2"``: ``K^0 = Z{1, beta}`` with ``beta^2 = 0``, ``K^1 = Z{a1, a2}``
    on which ``beta`` acts by zero, ``lam = 1 + k beta``.
    ``"custom"`` validates and returns ``custom``.
    """
    if k < 0:
        raise ValueError(f"twist degree k must be >= 0, got {k}")
    key = name.upper()
    ring = dict(
        k0_orders=(0, 0),
        unit_vector=(1, 0),
        mult_table=(((1, 0), (0, 1)), ((0, 1), (0, 0))),
        lambda_class=(1, k),
        rank_functional=(1, 0),
    )
    if key == "S2":
        return KRingPresentation.build(**ring, k1_orders=(), k1_module_action=((), ()),
                                       k0_names=("1", "b"), k1_names=(), label=f"S2(k={k})")
    if key == "T2":
        action = (((1, 0), (0, 1)), ((0, 0), (0, 0)))
        return KRingPresentation.build(**ring, k1_orders=(0, 0), k1_module_action=action,
                                       k0_names=("1", "beta"), k1_names=("a1", "a2"),
                                       label=f"T2(k={k})")
    if key == "CUSTOM":
        if custom is None:
            raise ValueError("preset 'custom' needs a presentation")
        return custom.validate()
    raise ValueError(f"unknown preset {name!r}; expected S2, T2 or custom")


def change_basis(pres: KRingPresentation, P0: IntMatrix, P1: IntMatrix | None = None) -> KRingPresentation:
    """Re-express a torsion-free presentation in new generators.

    Column ``j`` of ``P0`` (resp. ``P1``) gives the ``j``-th new ``K^0``
    (resp. ``K^1``) generator in old coordinates; both must be unimodular.
    """
    if any(pres.k0_orders) or any(pres.k1_orders):
        raise ValueError("change_basis supports torsion-free presentations only")
    n0, n1 = pres.n0, pres.n1
    if P1 is None:
        P1 = IntMatrix.identity(n1) if n1 else IntMatrix.zeros(0, 0)
    for P, n in ((P0, n0), (P1, n1)):
        if (P.rows, P.cols) != (n, n) or (n and determinant(P) not in (1, -1)):
            raise ValueError("basis change must be a unimodular square matrix")
    Q0 = _unimodular_inverse(P0)
    cols0 = P0.columns()
    mult = tuple(tuple(_vec(Q0.apply(pres.multiply(cols0[i], cols0[j]))) for j in range(n0))
                 for i in range(n0))
    action = []
    if n1:
        Q1 = _unimodular_inverse(P1)
        for i in range(n0):
            A = IntMatrix.from_rows(pres.action_matrix(cols0[i]), cols=n1)
            action.append(tuple(_vec(r) for r in (Q1 @ A @ P1).to_rows()))
    else:
        action = [()] * n0
    rank = None
    if pres.rank_functional is not None:
        rank = _vec(sum(pres.rank_functional[m] * P0[m, j] for m in range(n0)) for j in range(n0))
    return KRingPresentation.build(
        k0_orders=pres.k0_orders, unit_vector=Q0.apply(pres.unit_vector), mult_table=mult,
        lambda_class=Q0.apply(pres.lambda_class), k1_orders=pres.k1_orders,
        k1_module_action=action, rank_functional=rank, label=pres.label + "'")
