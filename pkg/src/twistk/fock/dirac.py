"""The circle Dirac family ``-i d/dtheta + phi/2pi`` and its spectral flow."""

from __future__ import annotations

from math import ceil, floor, pi
from typing import Callable, Sequence

import numpy as np

__all__ = ["dirac_spectrum", "spectral_flow", "SpectralFlowError", "loop_path"]


class SpectralFlowError(ValueError):
    pass


def dirac_spectrum(phi: float, window: tuple[int, int]) -> list[float]:
    """Eigenvalues ``n + phi/2pi`` for integer ``n`` in ``window`` (inclusive), sorted."""
    lo, hi = window
    if hi < lo:
        raise ValueError("empty window")
    shift = phi / (2 * pi)
    return sorted(n + shift for n in range(int(lo), int(hi) + 1))


def loop_path(samples: int = 64, turns: float = 1.0) -> np.ndarray:
    """``samples`` equally spaced parameter values from 0 to ``2 pi turns`` inclusive."""
    return np.linspace(0.0, 2 * pi * turns, samples)


def spectral_flow(phi_path: Sequence[float], level: float,
                  family: Callable[[float, tuple[int, int]], list[float]] = dirac_spectrum,
                  gap: float = 1.0) -> int:
    """Net number of eigenvalues crossing ``level`` upward along the sampled path.

    Eigenvalues are tracked by sorted position inside a fixed index window
    wide enough that the window edges stay at least one gap away from
    ``level``.  Sorted matching is valid when each step moves eigenvalues by
    less than half the gap, which is enforced.
    """
    path = [float(p) for p in phi_path]
    if len(path) < 1:
        raise SpectralFlowError("empty path")
    for end in (path[0], path[-1]):
        eigs = family(end, (int(floor(level - end / (2 * pi))) - 1,
                            int(ceil(level - end / (2 * pi))) + 1))
        if any(abs(e - level) < 1e-12 for e in eigs):
            raise SpectralFlowError(f"level {level} is an eigenvalue at path endpoint phi={end}; "
                                    f"shift the level")
    for a, b in zip(path, path[1:]):
        if abs(b - a) / (2 * pi) >= gap / 2:
            raise SpectralFlowError(f"step {a} -> {b} moves eigenvalues by at least half the gap; "
                                    f"sample the path more finely")
    lo_s, hi_s = min(path) / (2 * pi), max(path) / (2 * pi)
    window = (int(floor(level - hi_s)) - 3, int(ceil(level - lo_s)) + 3)
    prev = np.asarray(family(path[0], window))
    flow = 0
    for p in path[1:]:
        cur = np.asarray(family(p, window))
        flow += int(np.sum((prev < level) & (cur >= level)))
        flow -= int(np.sum((prev >= level) & (cur < level)))
        prev = cur
    return flow
