"""Truncated spinor x Fock x xi bases.

A fermionic Fock state of charge ``q`` is the semi-infinite wedge whose
occupied modes are ``lam_i - i + q`` (``i = 1, 2, ...``) for a partition
``lam``; the partition size is the level.  Spinor states are sets of distinct
positive Clifford modes acting on ``eta0``.  The cutoff on
``spinor energy + level`` keeps the truncation invariant under the shift
operator and under the supercharge, which preserve both quantities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator

__all__ = [
    "Truncation",
    "TruncationError",
    "BasisSizeError",
    "FockBasisState",
    "SpinorBasisState",
    "BasisState",
    "Basis",
    "build_basis",
    "partitions",
    "estimate_basis_size",
    "DEFAULT_MAX_STATES",
]

DEFAULT_MAX_STATES = 200_000


class TruncationError(ValueError):
    pass


class BasisSizeError(MemoryError):
    def __init__(self, estimate: int, bound: int):
        self.estimate = estimate
        self.bound = bound
        super().__init__(f"basis would hold about {estimate} states, above the bound of {bound}; "
                         f"lower the cutoffs or raise max_states")


@dataclass(frozen=True)
class Truncation:
    """Desk-scale cutoffs.

    ``mode_cutoff`` bounds Clifford modes and the current index range,
    ``charge_window`` the absolute charge, ``fermion_cutoff`` the number of
    spinor excitations and ``energy_cutoff`` the sum of spinor energy and
    Fock level.
    """

    mode_cutoff: int = 6
    charge_window: int = 4
    fermion_cutoff: int = 6
    energy_cutoff: Fraction = Fraction(6)
    max_states: int = DEFAULT_MAX_STATES

    def __post_init__(self):
        object.__setattr__(self, "energy_cutoff", Fraction(self.energy_cutoff))

    def violations(self) -> list[str]:
        bad = []
        for name, least in (("mode_cutoff", 1), ("charge_window", 0), ("fermion_cutoff", 1)):
            v = getattr(self, name)
            if not isinstance(v, int) or v < least:
                bad.append(f"{name} must be an integer >= {least}, got {v!r}")
        if self.energy_cutoff <= 0:
            bad.append(f"energy_cutoff must be positive, got {self.energy_cutoff}")
        if not bad:
            if self.charge_window >= self.mode_cutoff:
                bad.append(f"charge_window (q_max={self.charge_window}) must be smaller than "
                           f"mode_cutoff (Lambda={self.mode_cutoff})")
            if self.energy_cutoff > self.mode_cutoff:
                bad.append(f"energy_cutoff (E_max={self.energy_cutoff}) must not exceed "
                           f"mode_cutoff (Lambda={self.mode_cutoff})")
        return bad

    def validate(self) -> "Truncation":
        bad = self.violations()
        if bad:
            raise TruncationError("; ".join(bad))
        return self

    @property
    def max_energy(self) -> int:
        return int(self.energy_cutoff)  # energies are integers


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of ``n`` into parts ``<= max_part`` as decreasing tuples, in reverse-lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _spinor_sets(trunc: Truncation) -> list[tuple[int, ...]]:
    modes = range(1, trunc.mode_cutoff + 1)
    out = []
    for r in range(0, min(trunc.fermion_cutoff, trunc.mode_cutoff) + 1):
        for c in combinations(modes, r):
            if sum(c) <= trunc.max_energy:
                out.append(tuple(sorted(c, reverse=True)))
    return out


def estimate_basis_size(trunc: Truncation, xi_rank: int = 1) -> int:
    """Exact basis size, computed from counts without enumerating states."""
    E = trunc.max_energy
    spin = [0] * (E + 1)
    for s in _spinor_sets(trunc):
        spin[sum(s)] += 1
    fock = [len(partitions(d)) for d in range(E + 1)]
    per_charge = sum(spin[s] * fock[d] for s in range(E + 1) for d in range(E + 1 - s))
    return per_charge * (2 * trunc.charge_window + 1) * xi_rank


@dataclass(frozen=True, order=True)
class FockBasisState:
    """Fock state given by its charge and partition."""

    charge: int
    partition: tuple[int, ...] = ()

    @property
    def level(self) -> int:
        return sum(self.partition)

    def occupied_above(self, floor: int) -> list[int]:
        """Occupied modes ``>= floor`` in decreasing order (``floor`` at most the sea top)."""
        q, lam = self.charge, self.partition
        L = len(lam)
        top_of_sea = q - L - 1
        if floor > top_of_sea + 1:
            raise ValueError("floor above the filled sea")
        modes = [lam[i] - (i + 1) + q for i in range(L)]
        modes += list(range(top_of_sea, floor - 1, -1))
        return modes

    @property
    def created(self) -> tuple[int, ...]:
        """Occupied modes ``>= 0`` (decreasing), relative to the charge-zero vacuum."""
        lo = min(0, self.charge - len(self.partition) - 1)
        return tuple(m for m in self.occupied_above(lo) if m >= 0)

    @property
    def annihilated(self) -> tuple[int, ...]:
        """Empty negative modes (increasing)."""
        lo = min(-1, self.charge - len(self.partition) - 1)
        occ = set(self.occupied_above(lo))
        return tuple(m for m in range(lo, 0) if m not in occ)

    @classmethod
    def from_occupied(cls, modes, floor: int) -> "FockBasisState":
        """Inverse of ``occupied_above``: all modes below ``floor`` are filled."""
        occ = sorted(modes, reverse=True)
        q = len(occ) + floor
        lam = [j + (i + 1) - q for i, j in enumerate(occ)]
        while lam and lam[-1] == 0:
            lam.pop()
        if any(x < 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
            raise ValueError("mode list is not a valid semi-infinite wedge")
        return cls(q, tuple(lam))

    @classmethod
    def from_modes(cls, created=(), annihilated=()) -> "FockBasisState":
        created, annihilated = set(created), set(annihilated)
        if any(m < 0 for m in created) or any(m >= 0 for m in annihilated):
            raise ValueError("created modes must be >= 0 and annihilated modes < 0")
        floor = min([-1] + list(annihilated)) - 1
        occ = [m for m in created] + [m for m in range(floor, 0) if m not in annihilated]
        return cls.from_occupied(occ, floor)

    def __str__(self):
        parts = [f"a*(v{m})" for m in self.created] + [f"a(v{m})" for m in self.annihilated]
        return (" ".join(parts) + " |0>") if parts else "|0>"


@dataclass(frozen=True, order=True)
class SpinorBasisState:
    """``psi_{n1} psi_{n2} ... eta0`` with ``n1 > n2 > ... > 0``, normalized."""

    excitations: tuple[int, ...] = ()

    @property
    def energy(self) -> int:
        return sum(self.excitations)

    @property
    def parity(self) -> int:
        return len(self.excitations) % 2

    def __str__(self):
        return "".join(f"psi{n} " for n in self.excitations) + "eta0"


@dataclass(frozen=True)
class BasisState:
    spinor: SpinorBasisState
    fock: FockBasisState
    xi: int = 0

    @property
    def charge(self) -> int:
        return self.fock.charge

    @property
    def energy(self) -> int:
        return self.spinor.energy + self.fock.level

    def sort_key(self):
        return (self.energy, self.charge, self.spinor.excitations, self.fock.created,
                self.fock.annihilated, self.xi)

    def __str__(self):
        xi = f" (x) xi{self.xi}" if self.xi else ""
        return f"{self.spinor} (x) {self.fock}{xi}"


class Basis:
    """Ordered basis with index lookup and sector bookkeeping.  Immutable."""

    def __init__(self, trunc: Truncation, xi_rank: int, states: list[BasisState]):
        self.truncation = trunc
        self.xi_rank = xi_rank
        self.states = tuple(states)
        self._index = {s: i for i, s in enumerate(self.states)}
        sectors: dict[tuple[int, int, int], list[int]] = {}
        for i, s in enumerate(self.states):
            sectors.setdefault((s.charge, s.energy, s.xi), []).append(i)
        self.sectors = {k: tuple(v) for k, v in sectors.items()}

    def __len__(self):
        return len(self.states)

    def __iter__(self) -> Iterator[BasisState]:
        return iter(self.states)

    def __getitem__(self, i: int) -> BasisState:
        return self.states[i]

    def index(self, state: BasisState) -> int | None:
        return self._index.get(state)

    def vacuum_index(self, charge: int = 0, xi: int = 0) -> int:
        """Index of ``eta0 (x) S^charge |0> (x) xi``."""
        return self._index[BasisState(SpinorBasisState(), FockBasisState(charge), xi)]

    def charges(self) -> list[int]:
        return list(range(-self.truncation.charge_window, self.truncation.charge_window + 1))

    def __repr__(self):
        t = self.truncation
        return (f"Basis(Lambda={t.mode_cutoff}, q_max={t.charge_window}, "
                f"fermion_cutoff={t.fermion_cutoff}, E_max={t.energy_cutoff}, "
                f"xi_rank={self.xi_rank}, size={len(self)})")


def build_basis(trunc: Truncation | None = None, xi_rank: int = 1) -> Basis:
    """Enumerate all states within the cutoffs, ordered by energy then lexicographically."""
    trunc = (trunc or Truncation()).validate()
    if xi_rank < 1:
        raise TruncationError(f"xi_rank must be positive, got {xi_rank}")
    est = estimate_basis_size(trunc, xi_rank)
    if est > trunc.max_states:
        raise BasisSizeError(est, trunc.max_states)
    E = trunc.max_energy
    states = []
    for sp in _spinor_sets(trunc):
        s = sum(sp)
        for d in range(E - s + 1):
            for lam in partitions(d):
                for q in range(-trunc.charge_window, trunc.charge_window + 1):
                    for x in range(xi_rank):
                        states.append(BasisState(SpinorBasisState(sp), FockBasisState(q, lam), x))
    states.sort(key=BasisState.sort_key)
    return Basis(trunc, xi_rank, states)
