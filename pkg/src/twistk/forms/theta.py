"""Heat-trace character of the superconnection on the truncated Fock bundle.

For a twist of degree ``k`` and a vacuum bundle ``xi`` of rank ``r`` and
degree ``n`` (``tr_xi F_xi = n F_b``) the character is

    Theta = sqrt(t) dy ^ sum_q T_q(t, y) (1 - q k F_b)(r - n F_b),

with ``T_q = Tr_q(psi_0 exp(-t Q_y^2))`` taken over the charge-``q`` part of
the truncated space.  ``T_q`` is evaluated numerically from block
eigendecompositions of ``Q_y``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy import integrate

from ..fock import Basis, build_basis, clifford, supercharge
from ..fock.analysis import _blocks
from .algebra import DEFAULT_ALGEBRA, FB, Y, Form, GradedAlgebra

__all__ = [
    "XiData", "ThetaTrace", "TruncationTooSmall",
    "theta", "charge_traces", "beta_exponential", "periodicity_check",
    "theta_limit_check", "profile_csv", "gaussian_comb",
]

TAIL_TOL = 1e-6


class TruncationTooSmall(ValueError):
    """Heat-kernel mass beyond the charge window is not negligible."""


@dataclass(frozen=True)
class XiData:
    rank: int = 1
    degree: int = 0

    def trace_exp_minus_curvature(self, algebra: GradedAlgebra = DEFAULT_ALGEBRA) -> Form:
        """``tr_xi exp(-F_xi) = r - n F_b`` in two dimensions."""
        return algebra.one(self.rank) - algebra.gen(FB, self.degree)


class _BlockCache:
    """Dense ``Q_0`` and ``psi_0`` blocks per (charge, energy), built once per basis."""

    _store: dict = {}

    @classmethod
    def get(cls, basis: Basis):
        key = id(basis)
        hit = cls._store.get(key)
        if hit is not None and hit[0] is basis:
            return hit[1]
        Q0 = supercharge(0, basis)
        G = clifford(0, basis)
        blocks = []
        for (q, E), copies in sorted(_blocks(basis).items()):
            idx = copies[0]  # xi copies are identical; xi enters through XiData
            blocks.append((q, E, Q0.restrict(idx), np.diag(G.restrict(idx))))
        cls._store = {key: (basis, blocks)}
        return blocks


def charge_traces(t: float, y: float, basis: Basis) -> dict[int, float]:
    """``T_q = Tr_q(psi_0 exp(-t Q_y^2))`` per charge ``q``."""
    out: dict[int, float] = {}
    for q, E, Q0, gamma in _BlockCache.get(basis):
        Qy = Q0 + y * np.diag(gamma)
        w, V = np.linalg.eigh(Qy)
        weights = np.einsum("ij,i,ij->j", V, gamma, V)
        out[q] = out.get(q, 0.0) + float(np.sum(weights * np.exp(-t * w * w)))
    return out


def _tail_fraction(t: float, y: float, qmax: int) -> float:
    """Gaussian mass of the charges outside ``|q| <= qmax`` relative to the total."""
    inside = sum(math.exp(-t * (q + y) ** 2) for q in range(-qmax, qmax + 1))
    outside = 0.0
    for sgn in (1, -1):
        q = sgn * (qmax + 1)
        while True:
            term = math.exp(-t * (q + y) ** 2)
            outside += term
            if term < 1e-300 or abs(q) > qmax + 200:
                break
            q += sgn
    return outside / (inside + outside)


@dataclass
class ThetaTrace:
    """Numeric coefficients of ``Theta`` at fixed ``(t, y)``."""

    t: float
    y: float
    k: int
    xi: XiData
    form: Form
    traces: dict = field(default_factory=dict)
    tail_fraction: float = 0.0

    def coefficient(self, *monomial: str) -> float:
        return float(self.form.coefficient(monomial))

    @property
    def dy(self) -> float:
        return self.coefficient(Y)

    @property
    def dy_fb(self) -> float:
        return self.coefficient(Y, FB)

    def rows(self) -> list[tuple]:
        return [(self.y, self.t, "^".join(m), float(c)) for m, c in sorted(self.form.terms.items())]


def theta(t: float, y: float, basis: Basis | None = None, xi: XiData = XiData(), k: int = 1,
          algebra: GradedAlgebra = DEFAULT_ALGEBRA, tail_tol: float = TAIL_TOL) -> ThetaTrace:
    if t <= 0:
        raise ValueError("t must be positive")
    basis = basis or build_basis()
    qmax = basis.truncation.charge_window
    tail = _tail_fraction(t, y, qmax)
    if tail > tail_tol:
        raise TruncationTooSmall(
            f"heat-kernel mass outside |q| <= {qmax} is {tail:.2e} of the total at t={t}, y={y}; "
            f"raise charge_window or move y towards 0")
    T = charge_traces(t, y, basis)
    xi_form = xi.trace_exp_minus_curvature(algebra)
    total = algebra.zero()
    for q, Tq in sorted(T.items()):
        f_hat = algebra.one() - algebra.gen(FB, q * k)  # exp(-q beta_M) with beta_M = k F_b
        total = total + f_hat.wedge(xi_form) * Tq
    form = algebra.gen(Y, 1.0).wedge(total) * math.sqrt(t)
    return ThetaTrace(float(t), float(y), k, xi, form, T, tail)


def beta_exponential(k: int, sign: int = 1, algebra: GradedAlgebra = DEFAULT_ALGEBRA) -> Form:
    """``exp(sign * beta_M)`` with ``beta_M = k F_b``."""
    return algebra.gen(FB, Fraction(sign * k)).exp()


def periodicity_check(t: float, y: float, basis: Basis, xi: XiData = XiData(), k: int = 1,
                      sign: int = 1) -> dict:
    """Compare ``Theta_{y+1}`` with ``Theta_y ^ exp(sign * beta_M)`` coefficientwise."""
    a = theta(t, y + 1, basis, xi, k)
    b = theta(t, y, basis, xi, k)
    rhs = b.form.wedge(beta_exponential(k, sign).map_coefficients(float))
    monos = set(a.form.terms) | set(rhs.terms)
    scale = max([abs(float(c)) for c in a.form.terms.values()] + [1e-300])
    per = {"^".join(m): abs(float(a.form.terms.get(m, 0)) - float(rhs.terms.get(m, 0))) / scale
           for m in sorted(monos)}
    worst = max(per.values()) if per else 0.0
    return {"t": t, "y": y, "sign": sign, "relative_deviation": per, "max_relative_deviation": worst,
            "lhs": a.form.to_json(), "rhs": rhs.to_json()}


def gaussian_comb(y: float, t: float, centers: Iterable[int] = range(-10, 11)) -> float:
    return sum(math.sqrt(t / math.pi) * math.exp(-t * (n + y) ** 2) for n in centers)


def theta_limit_check(t_schedule: Sequence[float], basis: Basis | None = None, xi: XiData = XiData(),
                      k: int = 1, y_range: float = 1.5, samples: int = 601) -> dict:
    """Localization of the ``dy`` coefficient as ``t`` grows.

    The profile is the ``dy`` coefficient divided by ``r sqrt(pi)``; it is
    compared against the Gaussian comb, integrated over each unit window
    around an integer centre, and its width around ``y = 0`` is measured.
    The form factor is the ratio of the ``dy ^ F_b`` and ``dy`` coefficients
    at the centre ``y = -q``, which should be the ``F_b`` part of
    ``tr_xi exp(-F)`` on the charge-``q`` vacuum, ``-(n + q k r) / r``.
    """
    ts = list(t_schedule)
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_schedule must be increasing")
    basis = basis or build_basis()
    norm = xi.rank * math.sqrt(math.pi)
    centers = [n for n in range(-math.floor(y_range), math.floor(y_range) + 1)]
    per_t = []
    for t in ts:
        def profile(y, t=t):
            return theta(t, y, basis, xi, k).dy / norm

        ys = np.linspace(-y_range, y_range, samples)
        prof = np.array([profile(v) for v in ys])
        comb = np.array([gaussian_comb(v, t) for v in ys])
        sup = float(np.max(np.abs(prof - comb)) / np.max(comb))
        integrals = {}
        for c in centers:
            val, _ = integrate.quad(profile, c - 0.5, c + 0.5, points=[c], limit=200, epsabs=1e-12)
            integrals[c] = val
        mean = integrate.quad(lambda v: v * profile(v), -0.5, 0.5, points=[0], epsabs=1e-13)[0]
        var = integrate.quad(lambda v: (v - mean) ** 2 * profile(v), -0.5, 0.5, points=[0], epsabs=1e-13)[0]
        width = math.sqrt(var / integrals[0])
        factors = {}
        for c in centers:
            th = theta(t, float(c), basis, xi, k)
            q = -c
            factors[c] = {"measured": th.dy_fb / th.dy, "expected": -(xi.degree + q * k * xi.rank) / xi.rank}
        per_t.append({"t": t, "sup_relative_deviation": sup, "center_integrals": integrals,
                      "width": width, "form_factor": factors,
                      "grid": {"y": ys.tolist(), "profile": prof.tolist()}})
    ratios = [per_t[i]["width"] / per_t[i + 1]["width"] for i in range(len(per_t) - 1)]
    return {"t_schedule": ts, "per_t": per_t, "width_ratios": ratios}


def profile_csv(traces: Iterable[ThetaTrace]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["y", "t", "monomial", "value"])
    for tr in traces:
        for row in tr.rows():
            w.writerow([repr(row[0]), repr(row[1]), row[2], repr(row[3])])
    return buf.getvalue()
