"""Exact sparse operators on a truncated basis.

Every operator is stored column by column with entries in ``Q(sqrt 2)``.
Columns whose true image has components outside the basis are recorded in
``leaks``; products propagate this set, so an identity between two operator
expressions is certified exactly on the columns that leak in neither.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from ..exact import Surd2, SQRT2
from .basis import Basis, BasisState, FockBasisState, SpinorBasisState

__all__ = [
    "SparseOperator",
    "identity",
    "charge_operator",
    "shift_operator",
    "inverse_shift_operator",
    "creation",
    "annihilation",
    "current",
    "clifford",
    "supercharge",
    "spinor_energy",
    "fock_energy",
]

Column = dict[int, Surd2]
StateMap = Callable[[BasisState], Iterable[tuple[object, BasisState]]]


class SparseOperator:
    """Column-sparse exact matrix on a ``Basis``."""

    __slots__ = ("basis", "cols", "leaks", "name")

    def __init__(self, basis: Basis, cols: list[Column], leaks: Iterable[int] = (), name: str = ""):
        if len(cols) != len(basis):
            raise ValueError("column count must match basis size")
        self.basis = basis
        self.cols = cols
        self.leaks = frozenset(leaks)
        self.name = name

    @classmethod
    def from_state_map(cls, basis: Basis, fn: StateMap, name: str = "") -> "SparseOperator":
        cols, leaks = [], set()
        for c, st in enumerate(basis):
            col: Column = {}
            for coef, img in fn(st):
                if not coef:
                    continue
                r = basis.index(img)
                if r is None:
                    leaks.add(c)
                    continue
                v = col.get(r)
                col[r] = Surd2.coerce(coef) if v is None else v + coef
            cols.append({r: v for r, v in col.items() if v})
        return cls(basis, cols, leaks, name)

    @property
    def dim(self) -> int:
        return len(self.cols)

    @property
    def interior(self) -> frozenset[int]:
        """Columns on which this (truncated) operator agrees with the untruncated one."""
        return frozenset(range(self.dim)) - self.leaks

    def _check(self, other: "SparseOperator"):
        if other.basis is not self.basis:
            raise ValueError("operators live on different bases")

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._check(other)
        cols, leaks = [], set(other.leaks)
        A = self.cols
        for c, bcol in enumerate(other.cols):
            out: Column = {}
            for k, bv in bcol.items():
                if k in self.leaks:
                    leaks.add(c)
                for r, av in A[k].items():
                    v = out.get(r)
                    p = av * bv
                    out[r] = p if v is None else v + p
            cols.append({r: v for r, v in out.items() if v})
        return SparseOperator(self.basis, cols, leaks)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._check(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            out = dict(a)
            for r, v in b.items():
                w = out.get(r)
                out[r] = v if w is None else w + v
            cols.append({r: v for r, v in out.items() if v})
        return SparseOperator(self.basis, cols, self.leaks | other.leaks)

    def __neg__(self):
        return SparseOperator(self.basis, [{r: -v for r, v in c.items()} for c in self.cols],
                              self.leaks)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, x) -> "SparseOperator":
        if not x:
            return SparseOperator(self.basis, [{} for _ in self.cols], self.leaks)
        return SparseOperator(self.basis, [{r: v * x for r, v in c.items()} for c in self.cols],
                              self.leaks)

    def __mul__(self, x):
        return self.scale(x)

    __rmul__ = __mul__

    def transpose(self) -> "SparseOperator":
        """Plain transpose; the leak set is not meaningful for the result and is cleared."""
        cols: list[Column] = [{} for _ in self.cols]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                cols[r][c] = v
        return SparseOperator(self.basis, cols, ())

    def apply(self, vec: dict[int, object]) -> dict[int, Surd2]:
        out: dict[int, Surd2] = {}
        for c, x in vec.items():
            for r, v in self.cols[c].items():
                p = v * x
                w = out.get(r)
                out[r] = p if w is None else w + p
        return {r: v for r, v in out.items() if v}

    def column(self, c: int) -> dict[int, Surd2]:
        return dict(self.cols[c])

    def entries(self):
        for c, col in enumerate(self.cols):
            for r, v in sorted(col.items()):
                yield r, c, v

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def equal_on(self, other: "SparseOperator", columns: Iterable[int]) -> list[int]:
        """Columns in ``columns`` where the two operators differ (empty list means equal)."""
        self._check(other)
        return [c for c in columns if self.cols[c] != other.cols[c]]

    def max_abs_difference(self, other: "SparseOperator", columns: Iterable[int]) -> float:
        worst = 0.0
        for c in columns:
            a, b = self.cols[c], other.cols[c]
            for r in set(a) | set(b):
                d = abs(float(a.get(r, Surd2()) - b.get(r, Surd2())))
                worst = max(worst, d)
        return worst

    def is_symmetric(self) -> bool:
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                if self.cols[r].get(c) != v:
                    return False
        return True

    def restrict(self, indices) -> np.ndarray:
        """Dense float block on ``indices`` (rows and columns)."""
        idx = list(indices)
        pos = {g: i for i, g in enumerate(idx)}
        M = np.zeros((len(idx), len(idx)))
        for j, c in enumerate(idx):
            for r, v in self.cols[c].items():
                i = pos.get(r)
                if i is not None:
                    M[i, j] = float(v)
        return M

    def to_dense(self) -> np.ndarray:
        return self.restrict(range(self.dim))

    def to_coordinate_text(self) -> str:
        """One line per nonzero: ``row col num den``, followed by ``sqrt2_num sqrt2_den`` if irrational."""
        lines = [f"% {self.name or 'operator'} dim={self.dim} nnz={self.nnz()}"]
        for r, c, v in self.entries():
            line = f"{r} {c} {v.a.numerator} {v.a.denominator}"
            if v.b:
                line += f" {v.b.numerator} {v.b.denominator}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"SparseOperator({self.name or '?'}, dim={self.dim}, nnz={self.nnz()}, leaks={len(self.leaks)})"


def parse_coordinate_text(text: str) -> dict[tuple[int, int], Surd2]:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        f = [int(x) for x in line.split()]
        a = Fraction(f[2], f[3])
        b = Fraction(f[4], f[5]) if len(f) > 4 else Fraction(0)
        out[(f[0], f[1])] = Surd2(a, b)
    return out


# --- wedge-level helpers -------------------------------------------------

def _floor_for(fs: FockBasisState, reach: int) -> int:
    return fs.charge - len(fs.partition) - 1 - max(reach, 0) - 1


def _count_above(occ: list[int], j: int) -> int:
    return sum(1 for m in occ if m > j)


def fock_create(fs: FockBasisState, j: int):
    floor = min(_floor_for(fs, 0), j - 1)
    occ = fs.occupied_above(floor)
    if j in occ:
        return None
    sign = -1 if _count_above(occ, j) % 2 else 1
    return sign, FockBasisState.from_occupied(occ + [j], floor)


def fock_annihilate(fs: FockBasisState, j: int):
    floor = min(_floor_for(fs, 0), j - 1)
    occ = fs.occupied_above(floor)
    if j not in occ:
        return None
    sign = -1 if _count_above(occ, j) % 2 else 1
    occ = [m for m in occ if m != j]
    return sign, FockBasisState.from_occupied(occ, floor)


def fock_current(fs: FockBasisState, n: int):
    """``e_n |fs>`` as a list of ``(coefficient, state)``."""
    if n == 0:
        return [(fs.charge, fs)] if fs.charge else []
    floor = _floor_for(fs, abs(n))
    occ = fs.occupied_above(floor)
    occset = set(occ)
    out = []
    for i in occ:
        t = i + n
        if t in occset or t < floor:
            continue
        s1 = _count_above(occ, i)
        rest = [m for m in occ if m != i]
        s2 = _count_above(rest, t)
        sign = -1 if (s1 + s2) % 2 else 1
        out.append((sign, FockBasisState.from_occupied(rest + [t], floor)))
    return out


def fock_shift(fs: FockBasisState, power: int = 1) -> FockBasisState:
    return FockBasisState(fs.charge + power, fs.partition)


def spinor_clifford(sp: SpinorBasisState, n: int):
    ex = sp.excitations
    if n == 0:
        return (-1 if len(ex) % 2 else 1), sp
    if n > 0:
        if n in ex:
            return None
        pos = sum(1 for m in ex if m > n)
        sign = -1 if pos % 2 else 1
        new = tuple(sorted(ex + (n,), reverse=True))
        return sign * SQRT2, SpinorBasisState(new)
    m = -n
    if m not in ex:
        return None
    pos = ex.index(m)
    sign = -1 if pos % 2 else 1
    return sign * SQRT2, SpinorBasisState(tuple(x for x in ex if x != m))


# --- operator constructors -------------------------------------------------

def identity(basis: Basis) -> SparseOperator:
    return SparseOperator(basis, [{c: Surd2(1)} for c in range(len(basis))], (), "1")


def charge_operator(basis: Basis) -> SparseOperator:
    return SparseOperator.from_state_map(basis, lambda s: [(s.charge, s)], "N")


def shift_operator(basis: Basis) -> SparseOperator:
    """``S``: shifts every occupied mode up by one; raises the charge."""
    return SparseOperator.from_state_map(
        basis, lambda s: [(1, BasisState(s.spinor, fock_shift(s.fock, 1), s.xi))], "S")


def inverse_shift_operator(basis: Basis) -> SparseOperator:
    return SparseOperator.from_state_map(
        basis, lambda s: [(1, BasisState(s.spinor, fock_shift(s.fock, -1), s.xi))], "S^-1")


def creation(j: int, basis: Basis) -> SparseOperator:
    def fn(s):
        r = fock_create(s.fock, j)
        return [] if r is None else [(r[0], BasisState(s.spinor, r[1], s.xi))]
    return SparseOperator.from_state_map(basis, fn, f"a*(v{j})")


def annihilation(j: int, basis: Basis) -> SparseOperator:
    def fn(s):
        r = fock_annihilate(s.fock, j)
        return [] if r is None else [(r[0], BasisState(s.spinor, r[1], s.xi))]
    return SparseOperator.from_state_map(basis, fn, f"a(v{j})")


def current(n: int, basis: Basis) -> SparseOperator:
    """Normally ordered current ``e_n = sum_i :a*(v_{n+i}) a(v_i):``."""
    lam = basis.truncation.mode_cutoff
    if abs(n) > lam:
        raise ValueError(f"|n| must be <= mode_cutoff={lam}")
    return SparseOperator.from_state_map(
        basis, lambda s: [(c, BasisState(s.spinor, f, s.xi)) for c, f in fock_current(s.fock, n)],
        f"e{n}")


def clifford(n: int, basis: Basis) -> SparseOperator:
    """``psi_n`` with ``{psi_n, psi_m} = 2 delta_{n,-m}`` and ``psi_0 eta0 = eta0``."""
    lam = basis.truncation.mode_cutoff
    if abs(n) > lam:
        raise ValueError(f"|n| must be <= mode_cutoff={lam}")

    def fn(s):
        r = spinor_clifford(s.spinor, n)
        return [] if r is None else [(r[0], BasisState(r[1], s.fock, s.xi))]
    return SparseOperator.from_state_map(basis, fn, f"psi{n}")


def supercharge(y, basis: Basis) -> SparseOperator:
    """``Q_y = sum_{|n| <= Lambda} psi_n (x) e_{-n} + y psi_0``, acting trivially on xi."""
    y = Fraction(y)
    lam = basis.truncation.mode_cutoff

    def fn(s):
        out = []
        sign0 = -1 if s.spinor.parity else 1
        diag = sign0 * (s.charge + y)
        if diag:
            out.append((diag, s))
        for n in range(1, lam + 1):
            for m in (n, -n):
                r = spinor_clifford(s.spinor, m)
                if r is None:
                    continue
                for c, f in fock_current(s.fock, -m):
                    out.append((r[0] * c, BasisState(r[1], f, s.xi)))
        return out
    return SparseOperator.from_state_map(basis, fn, f"Q_{y}")


def spinor_energy(basis: Basis) -> SparseOperator:
    return SparseOperator.from_state_map(basis, lambda s: [(s.spinor.energy, s)], "spinor energy")


def fock_energy(basis: Basis) -> SparseOperator:
    return SparseOperator.from_state_map(basis, lambda s: [(s.fock.level, s)], "level")
