"""Exact identity checks and spectral analysis of the supercharge."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

import numpy as np

from ..exact import Surd2
from .basis import Basis, BasisState, FockBasisState, SpinorBasisState, Truncation
from .operators import (
    SparseOperator,
    annihilation,
    charge_operator,
    clifford,
    creation,
    current,
    identity,
    inverse_shift_operator,
    shift_operator,
    supercharge,
)

__all__ = [
    "IdentityCheck",
    "Spectrum",
    "UnreliableTruncation",
    "check_identity",
    "anticommutator",
    "commutator",
    "square_decomposition_check",
    "sector_eigensystem",
    "spectrum",
    "kernel_at",
    "p_sector_spectrum",
    "bounded_transform",
    "continuity_probe",
]

KERNEL_TOL = 1e-9


class UnreliableTruncation(ValueError):
    def __init__(self, message: str, suggested: Truncation):
        self.suggested = suggested
        super().__init__(f"{message}; try mode_cutoff={suggested.mode_cutoff}, "
                         f"charge_window={suggested.charge_window}")


@dataclass
class IdentityCheck:
    name: str
    interior: int
    boundary: int
    failures: list[int] = field(default_factory=list)
    boundary_residual: float = 0.0

    @property
    def ok(self) -> bool:
        return self.interior > 0 and not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "interior_states": self.interior,
                "boundary_states": self.boundary, "interior_failures": len(self.failures),
                "max_boundary_residual": self.boundary_residual, "ok": self.ok}


def check_identity(name: str, lhs: SparseOperator, rhs: SparseOperator) -> IdentityCheck:
    """Compare two expressions exactly on the columns where neither leaks."""
    inter = sorted(lhs.interior & rhs.interior)
    rest = sorted(set(range(lhs.dim)) - set(inter))
    return IdentityCheck(name, len(inter), len(rest), lhs.equal_on(rhs, inter),
                         lhs.max_abs_difference(rhs, rest))


def anticommutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    return a @ b + b @ a


def commutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    return a @ b - b @ a


def square_decomposition_check(y, basis: Basis) -> dict:
    """Check ``Q_y^2 = l0s + 2 sum_{n>0} e_n e_{-n} + (e_0 + y)^2`` exactly.

    ``l0s = sum_{n>0} n psi_n psi_{-n}``.  The ``e_0^2`` piece is counted
    once, inside ``(e_0 + y)^2``.
    """
    y = Fraction(y)
    lam = basis.truncation.mode_cutoff
    Q = supercharge(y, basis)
    I = identity(basis)
    l0s = None
    l0f = None
    for n in range(1, lam + 1):
        term_s = (clifford(n, basis) @ clifford(-n, basis)).scale(n)
        term_f = (current(n, basis) @ current(-n, basis)).scale(2)
        l0s = term_s if l0s is None else l0s + term_s
        l0f = term_f if l0f is None else l0f + term_f
    shifted = charge_operator(basis) + I.scale(y)
    rhs = l0s + l0f + shifted @ shifted
    chk = check_identity(f"Q_{y}^2 = l0s + l0f + (e0+y)^2", Q @ Q, rhs)
    v = basis.vacuum_index()
    return {"y": str(y), "check": chk, "vacuum_value": (Q @ Q).cols[v].get(v, Surd2())}


def sector_eigensystem(op: SparseOperator, indices) -> tuple[np.ndarray, np.ndarray]:
    M = op.restrict(indices)
    return np.linalg.eigh(M)


def _blocks(basis: Basis):
    """Q-invariant blocks, one per (charge, energy), with xi copies merged."""
    out = {}
    for (q, E, x), idx in basis.sectors.items():
        out.setdefault((q, E), []).append(idx)
    return out


@dataclass
class Spectrum:
    """Eigenvalues of ``Q_y^2`` with kernel information."""

    y: Fraction
    eigenvalues: list[float]
    kernel_dimension: int
    truncation_reliable_below: float
    kernel_states: list[int] = field(default_factory=list)
    q_eigenvalues: list[float] = field(default_factory=list)

    @property
    def smallest_nonzero(self) -> float:
        nz = [e for e in self.eigenvalues if e > KERNEL_TOL]
        return min(nz) if nz else float("inf")

    def to_json(self) -> dict:
        return {"y": str(self.y), "eigenvalues": self.eigenvalues,
                "kernel_dimension": self.kernel_dimension,
                "truncation_reliable_below": self.truncation_reliable_below,
                "smallest_nonzero": self.smallest_nonzero}


def _reliable_below(basis: Basis, y) -> float:
    t = basis.truncation
    return float(min(2 * (t.max_energy + 1), (t.charge_window + 1 - abs(Fraction(y))) ** 2))


def spectrum(y, basis: Basis) -> Spectrum:
    """Full spectrum by dense eigensolves on each (charge, energy) block."""
    y = Fraction(y)
    Q = supercharge(y, basis)
    qs, kern = [], []
    for (q, E), copies in sorted(_blocks(basis).items()):
        w, V = sector_eigensystem(Q, copies[0])
        for idx in copies:
            qs.extend(w.tolist())
            for j in np.nonzero(np.abs(w) ** 2 < KERNEL_TOL)[0]:
                kern.append(idx[int(np.argmax(np.abs(V[:, j])))])
    q_eigs = sorted(qs)
    sq = sorted(x * x for x in qs)
    return Spectrum(y, sq, sum(1 for e in sq if e < KERNEL_TOL), _reliable_below(basis, y),
                    sorted(kern), q_eigs)


def kernel_at(y, basis: Basis) -> Spectrum:
    """Spectrum of ``Q_y^2`` with a check that the kernel candidate is inside the window.

    The candidate kernel vector for integer ``y`` is ``eta0 (x) S^{-y}|0>``.
    """
    y = Fraction(y)
    t = basis.truncation
    if abs(y) + 1 > t.charge_window:
        need = int(ceil(abs(y))) + 2
        raise UnreliableTruncation(
            f"|y| + 1 = {float(abs(y) + 1)} exceeds charge_window={t.charge_window}",
            Truncation(max(t.mode_cutoff, need + 1), need, t.fermion_cutoff,
                       t.energy_cutoff, t.max_states))
    return spectrum(y, basis)


def p_sector_spectrum(y, basis: Basis) -> list[tuple[int, int, float]]:
    """``(charge, xi, eigenvalue)`` of ``Q_y^2`` on ``eta0 (x) S^k|0> (x) xi``.

    The vectors span a ``Q_y^2``-invariant subspace (checked exactly), and
    the restricted block is diagonalized numerically.
    """
    y = Fraction(y)
    Q = supercharge(y, basis)
    Q2 = Q @ Q
    labels = [(k, x) for k in basis.charges() for x in range(basis.xi_rank)]
    idx = [basis.vacuum_index(k, x) for k, x in labels]
    inside = set(idx)
    for i in idx:
        if any(r not in inside for r in Q2.cols[i]):
            raise AssertionError("P-subspace is not invariant under Q^2")
    w, V = np.linalg.eigh(Q2.restrict(idx))
    out = []
    for j in range(len(idx)):
        k, x = labels[int(np.argmax(np.abs(V[:, j])))]
        out.append((k, x, float(w[j])))
    return sorted(out)


@dataclass
class DenseOperator:
    basis: Basis
    matrix: np.ndarray

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))


def _functional_calculus(y, basis: Basis, f) -> np.ndarray:
    Q = supercharge(Fraction(y), basis)
    out = np.zeros((len(basis), len(basis)))
    for (_, _, _), idx in basis.sectors.items():
        w, V = sector_eigensystem(Q, idx)
        block = (V * f(w)) @ V.T
        out[np.ix_(idx, idx)] = block
    return out


def bounded_transform(y, basis: Basis) -> DenseOperator:
    """``F_y = Q_y / sqrt(1 + Q_y^2)`` as a dense matrix."""
    return DenseOperator(basis, _functional_calculus(y, basis, lambda w: w / np.sqrt(1 + w * w)))


def resolvent(y, basis: Basis) -> np.ndarray:
    """``(1 + Q_y^2)^{-1}``."""
    return _functional_calculus(y, basis, lambda w: 1.0 / (1 + w * w))


def continuity_probe(y, y2, basis: Basis, probe: np.ndarray | None = None,
                     gaps=(1e-1, 1e-2, 1e-3)) -> dict:
    """Resolvent Lipschitz estimate between ``y`` and ``y2`` and strong continuity of ``F``.

    With ``A = Q_y2``, ``B = Q_y`` and ``A - B = (y2 - y) psi0``,
    ``R_B - R_A = R_B (A^2 - B^2) R_A`` and ``A^2 - B^2 = ((A+B)D + D(A+B))/2``
    give ``||R_B - R_A|| <= M |y2 - y|`` with
    ``M = (||R_B (A+B)|| + ||(A+B) R_A||) / 2``.
    """
    y, y2 = Fraction(y), Fraction(y2)
    if abs(y - y2) > 1:
        raise ValueError("continuity probe expects |y - y'| <= 1")
    Ra, Rb = resolvent(y2, basis), resolvent(y, basis)
    A = supercharge(y2, basis).to_dense()
    B = supercharge(y, basis).to_dense()
    diff = float(np.linalg.norm(Rb - Ra, 2))
    M = 0.5 * (np.linalg.norm(Rb @ (A + B), 2) + np.linalg.norm((A + B) @ Ra, 2))
    bound = float(M) * float(abs(y2 - y))
    if probe is None:
        probe = np.zeros(len(basis))
        probe[basis.vacuum_index()] = 1.0
        probe[basis.vacuum_index(1)] = 1.0
        probe /= np.linalg.norm(probe)
    F0 = bounded_transform(y, basis).matrix
    strong = []
    for g in gaps:
        Fg = bounded_transform(y + Fraction(g).limit_denominator(10 ** 9), basis).matrix
        strong.append(float(np.linalg.norm((Fg - F0) @ probe)))
    return {
        "y": str(y), "y_prime": str(y2),
        "resolvent_difference": diff,
        "lipschitz_estimate": float(M),
        "bound": bound,
        "bound_holds": diff <= bound + 1e-12,
        "strong_gaps": list(gaps),
        "strong_differences": strong,
        "strong_decreasing": all(a > b for a, b in zip(strong, strong[1:])),
    }


def interior_operator_checks(basis: Basis, y=Fraction(1, 3), modes: int | None = None) -> list[IdentityCheck]:
    """CAR, Clifford, shift and current relations as exact interior checks."""
    lam = basis.truncation.mode_cutoff
    modes = lam if modes is None else modes
    I = identity(basis)
    Z = I.scale(0)
    out = []
    car_modes = range(-modes, modes + 1)
    a = {j: annihilation(j, basis) for j in car_modes}
    ad = {j: creation(j, basis) for j in car_modes}
    car_fail, car_int, car_bd = [], 0, 0
    for i in car_modes:
        for j in car_modes:
            c = check_identity("", anticommutator(a[i], ad[j]), I if i == j else Z)
            car_fail += c.failures
            car_int += c.interior
            car_bd += c.boundary
            c2 = check_identity("", anticommutator(a[i], a[j]), Z)
            car_fail += c2.failures
    out.append(IdentityCheck("CAR {a(v_i), a*(v_j)} = delta_ij, {a, a} = 0", car_int, car_bd,
                             car_fail))
    psi = {n: clifford(n, basis) for n in range(-lam, lam + 1)}
    cl_fail, cl_int, cl_bd = [], 0, 0
    for n in psi:
        for m in psi:
            rhs = I.scale(2) if n == -m else Z
            c = check_identity("", anticommutator(psi[n], psi[m]), rhs)
            cl_fail += c.failures
            cl_int += c.interior
            cl_bd += c.boundary
    out.append(IdentityCheck("Clifford {psi_n, psi_m} = 2 delta_{n,-m}", cl_int, cl_bd, cl_fail))
    S, Si, N = shift_operator(basis), inverse_shift_operator(basis), charge_operator(basis)
    out.append(check_identity("S N S^-1 = N - 1", S @ N @ Si, N - I))
    return out


def shift_covariance_checks(y, basis: Basis) -> dict[str, IdentityCheck]:
    """``S Q_y S^-1`` against ``Q_y`` and against ``Q_{y-1}``.

    The second form is the one the algebra supports: conjugation by the shift
    commutes with every ``e_n`` for ``n != 0`` and lowers ``e_0`` by one.
    """
    y = Fraction(y)
    S, Si = shift_operator(basis), inverse_shift_operator(basis)
    conj = S @ supercharge(y, basis) @ Si
    return {
        "invariance": check_identity(f"S Q_y S^-1 = Q_y (y={y})", conj, supercharge(y, basis)),
        "covariance": check_identity(f"S Q_y S^-1 = Q_(y-1) (y={y})", conj,
                                     supercharge(y - 1, basis)),
    }


def current_adjoint_checks(basis: Basis) -> list[IdentityCheck]:
    """``e_n^T = e_{-n}`` entrywise on the basis."""
    lam = basis.truncation.mode_cutoff
    out = []
    for n in range(1, lam + 1):
        en, emn = current(n, basis), current(-n, basis)
        bad = [c for c in range(len(basis)) if en.transpose().cols[c] != emn.cols[c]]
        out.append(IdentityCheck(f"e_{n}^T = e_-{n}", len(basis), 0, bad))
    return out
