"""Exact integer linear algebra.

Smith normal form, integer kernels and cokernels, and the classification of
finitely generated abelian groups.  Entries are Python ``int`` throughout, so
intermediate blow-up during elimination is harmless.

>>> A = IntMatrix.from_rows([[2, 4], [6, 8]])
>>> smith_normal_form(A).diagonal()
[2, 4]
>>> print(cokernel(IntMatrix.from_rows([[3]])))
Z_3
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "FgAbGroup",
    "PresentationError",
    "smith_normal_form",
    "cokernel",
    "kernel",
    "lattice_basis",
    "group_of_quotient",
    "hermite_normal_form",
    "reduce_modulo_lattice",
]


class PresentationError(ValueError):
    """An abelian-group presentation is inconsistent."""


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major integer matrix."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"integer entries required, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count needed for a matrix with no columns")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise ValueError("ragged columns")
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = int(v)
        return cls.from_rows(out, cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [[self[i, j] for i in range(self.rows)] for j in range(self.cols)]

    def column(self, j: int) -> list[int]:
        return [self[i, j] for i in range(self.rows)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
                                   cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, cols=other.cols)

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(self[i, j] * v[j] for j in range(self.cols)) for i in range(self.rows)]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        a, b = self.to_rows(), other.to_rows()
        return IntMatrix.from_rows([ra + rb for ra, rb in zip(a, b)], cols=self.cols + other.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"


def _det(rows: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(rows)
    if n == 0:
        return 1
    m = [r[:] for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def determinant(A: IntMatrix) -> int:
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    return _det(A.to_rows())


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)

    def check(self, A: IntMatrix) -> None:
        """Raise ``AssertionError`` unless every Smith invariant holds for ``A``."""
        assert self.U @ A @ self.V == self.D, "U A V != D"
        assert determinant(self.U) in (1, -1), "U not unimodular"
        assert determinant(self.V) in (1, -1), "V not unimodular"
        D = self.D
        for i in range(D.rows):
            for j in range(D.cols):
                if i != j:
                    assert D[i, j] == 0, "D not diagonal"
        diag = self.diagonal()
        assert all(d >= 0 for d in diag), "negative invariant factor"
        r = self.rank
        assert all(d != 0 for d in diag[:r]) and not any(diag[r:]), "zeros not trailing"
        for a, b in zip(diag[:r], diag[1:r]):
            assert b % a == 0, f"divisibility chain broken: {a} does not divide {b}"


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form by gcd-driven elimination.

    The pivot at each stage is the nonzero entry of least absolute value in the
    remaining block, ties broken by lowest row and then lowest column, which
    makes the output a deterministic function of ``A``.
    """
    if A.rows == 0 or A.cols == 0:
        raise ValueError("Smith normal form of an empty matrix")
    m, n = A.rows, A.cols
    a = A.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        if q:
            for r in a:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]

    def min_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(a[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        return best

    for t in range(min(m, n)):
        piv = min_pivot(t)
        if piv is None:
            break
        _, i0, j0 = piv
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        clean = False
            if not clean:
                # a remainder is smaller than the pivot; bring the smallest in
                best = None
                for i in range(t + 1, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), "r", i)
                for j in range(t + 1, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), "c", j)
                if best[1] == "r":
                    swap_rows(t, best[2])
                else:
                    swap_cols(t, best[2])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    return SmithDecomposition(IntMatrix.from_rows(U, cols=m), IntMatrix.from_rows(a, cols=n),
                              IntMatrix.from_rows(V, cols=n))


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank + Z_d1 + ... + Z_dk`` with ``d1 | d2 | ... | dk`` and ``d1 >= 2``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"torsion coefficients must be >= 2: {self.torsion}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion not in divisibility order: {self.torsion}")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FgAbGroup":
        """Direct sum of cyclic groups ``Z/m`` (``m = 0`` meaning ``Z``), in any order."""
        orders = [abs(int(m)) for m in orders]
        free = sum(1 for m in orders if m == 0)
        finite = [m for m in orders if m > 1]
        if not finite:
            return cls(free, ())
        snf = smith_normal_form(IntMatrix.diag(finite))
        return cls(free, tuple(d for d in snf.diagonal() if d > 1))

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, ())

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def has_torsion(self) -> bool:
        return bool(self.torsion)

    @property
    def order(self) -> int | None:
        """Group order, ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def direct_sum(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_cyclic_orders([0] * (self.free_rank + other.free_rank)
                                            + list(self.torsion) + list(other.torsion))

    __add__ = direct_sum

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def cokernel(A: IntMatrix) -> FgAbGroup:
    """``Z^rows / (column span of A)`` in invariant-factor form."""
    if A.rows == 0:
        return FgAbGroup.trivial()
    if A.cols == 0:
        return FgAbGroup(A.rows, ())
    diag = smith_normal_form(A).diagonal()
    nonzero = [d for d in diag if d]
    return FgAbGroup(A.rows - len(nonzero), tuple(d for d in nonzero if d > 1))


def kernel(A: IntMatrix) -> IntMatrix:
    """Basis of the integer lattice ``{x : A x = 0}``, one vector per column.

    An empty basis is returned as a ``cols x 0`` matrix.
    """
    if A.cols == 0:
        return IntMatrix.zeros(0, 0)
    if A.rows == 0:
        return IntMatrix.identity(A.cols)
    snf = smith_normal_form(A)
    r = snf.rank
    V = snf.V
    cols = [V.column(j) for j in range(r, A.cols)]
    if not cols:
        return IntMatrix.zeros(A.cols, 0)
    return IntMatrix.from_columns(cols, rows=A.cols)


def lattice_basis(generators: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the lattice spanned by the columns of ``generators``."""
    n = generators.rows
    if generators.cols == 0 or generators.is_zero():
        return IntMatrix.zeros(n, 0)
    snf = smith_normal_form(generators)
    # G V = U^{-1} D, and the nonzero columns of U^{-1} D form a basis.
    Uinv = _unimodular_inverse(snf.U)
    cols = []
    for j, d in enumerate(snf.diagonal()):
        if d:
            cols.append([d * x for x in Uinv.column(j)])
    return IntMatrix.from_columns(cols, rows=n)


def _unimodular_inverse(U: IntMatrix) -> IntMatrix:
    n = U.rows
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(U.to_rows())]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = []
    for row in aug:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return IntMatrix.from_rows(out, cols=n)


def _solve_integral(K: IntMatrix, L: IntMatrix) -> IntMatrix:
    """Integer ``X`` with ``K X = L``; ``K`` must have independent columns."""
    snf = smith_normal_form(K)
    diag = snf.diagonal()
    if snf.rank != K.cols:
        raise PresentationError("kernel_lattice columns are not linearly independent")
    UL = snf.U @ L
    Y = [[0] * L.cols for _ in range(K.cols)]
    for j in range(L.cols):
        for i in range(K.rows):
            x = UL[i, j]
            if i < K.cols:
                if x % diag[i]:
                    raise PresentationError(
                        f"sublattice column {j} is not an integral combination of the lattice basis")
                Y[i][j] = x // diag[i]
            elif x:
                raise PresentationError(f"sublattice column {j} lies outside the lattice span")
    return snf.V @ IntMatrix.from_rows(Y, cols=L.cols)


def group_of_quotient(kernel_lattice: IntMatrix, sublattice: IntMatrix) -> FgAbGroup:
    """Isomorphism class of ``span(kernel_lattice) / span(sublattice)``.

    ``kernel_lattice`` must be a lattice basis (independent columns) and every
    column of ``sublattice`` must be an integral combination of it.
    """
    k = kernel_lattice.cols
    if k == 0:
        if sublattice.cols and not sublattice.is_zero():
            raise PresentationError("nonzero sublattice inside the zero lattice")
        return FgAbGroup.trivial()
    if sublattice.cols == 0:
        return FgAbGroup(k, ())
    if sublattice.rows != kernel_lattice.rows:
        raise PresentationError("lattices live in different ambient ranks")
    X = _solve_integral(kernel_lattice, sublattice)
    return cokernel(X)


def hermite_normal_form(A: IntMatrix) -> tuple[IntMatrix, list[int]]:
    """Column-style Hermite normal form of the lattice spanned by ``A``'s columns.

    Returns ``(H, pivots)``: the columns of ``H`` are a basis of the lattice in
    echelon form, column ``c`` having its leading positive entry in row
    ``pivots[c]`` and entries to the left of each pivot reduced into
    ``[0, pivot)``.
    """
    cols = [c[:] for c in A.columns() if any(c)]
    out, pivots = [], []
    row = 0
    while cols and row < A.rows:
        nz = [c for c in cols if c[row] != 0]
        if not nz:
            row += 1
            continue
        rest = [c for c in cols if c[row] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda c: abs(c[row]))
            p = nz[0]
            new = [p]
            for c in nz[1:]:
                q = c[row] // p[row]
                c = [x - q * y for x, y in zip(c, p)]
                (new if c[row] else rest).append(c)
            nz = new
        p = nz[0]
        if p[row] < 0:
            p = [-x for x in p]
        out.append(p)
        pivots.append(row)
        cols = [c for c in rest if any(c)]
        row += 1
    for c in range(len(out)):
        for prev in range(c):
            r = pivots[c]
            q = out[prev][r] // out[c][r]
            if q:
                out[prev] = [x - q * y for x, y in zip(out[prev], out[c])]
    if not out:
        return IntMatrix.zeros(A.rows, 0), []
    return IntMatrix.from_columns(out, rows=A.rows), pivots


def reduce_modulo_lattice(vector: Sequence, lattice: IntMatrix) -> list:
    """Canonical representative of ``vector`` modulo the integer span of ``lattice``.

    Works for rational vectors: along each Hermite pivot the coordinate is
    brought into ``[0, pivot)``.
    """
    H, pivots = hermite_normal_form(lattice)
    v = [Fraction(x) for x in vector]
    for c, r in enumerate(pivots):
        col = H.column(c)
        q = v[r] // col[r]
        if q:
            v = [x - q * y for x, y in zip(v, col)]
    return v
