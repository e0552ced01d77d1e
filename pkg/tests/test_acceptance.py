"""Acceptance criteria 1-12, one test each.

Every test records a single ``criterion N: PASS/FAIL`` line, printed in the
terminal summary (and directly when this file is run as a script).  A few
criteria bundle several identities; their sub-results are listed on the
same line.  Tolerances are pinned below.
"""

import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE_LINES  # noqa: E402

from twistk.cech import (  # noqa: E402
    coboundary_class,
    cover_preset,
    hilbert_cocycle,
    lifted_cocycle,
    projective_cochain,
    verify_equivalence,
)
from twistk.fock import (  # noqa: E402
    Truncation,
    build_basis,
    interior_operator_checks,
    loop_path,
    p_sector_spectrum,
    shift_covariance_checks,
    spectral_flow,
    spectrum,
    square_decomposition_check,
)
from twistk.forms import (  # noqa: E402
    FB_NORM,
    PHI,
    MarkedCycle,
    XiData,
    index_character,
    pairing_mod_n,
    periodicity_check,
    quotient_character,
    theta_limit_check,
)
from twistk.ktheory import preset, twisted_k  # noqa: E402
from twistk.zlinalg import FgAbGroup  # noqa: E402

# pinned tolerances and budgets
RUNTIME_KGROUPS = 1.0        # seconds, criteria 1 and 2
RUNTIME_OPERATORS = 60.0     # criterion 5
RUNTIME_KERNEL = 120.0       # criterion 6
RUNTIME_CECH = 5.0           # criterion 8
RUNTIME_LOCALIZATION = 600.0  # criterion 11
GAP_SLACK = 1e-9             # criterion 6
P_SECTOR_REL = 1e-10         # criterion 7
PERIODICITY_REL = 1e-8       # criterion 10
PROFILE_SUP = 0.02           # criterion 11
CENTER_INTEGRAL = 1e-3       # criterion 11

KS = range(1, 13)
OPERATOR_YS = (Fraction(1, 3), Fraction(1, 2))
KERNEL_YS = (-1, 0, 1, 2)
GAPPED_YS = (Fraction(1, 4), Fraction(-1, 4), Fraction(1, 2), Fraction(-1, 2), Fraction(3, 4))


def record(n: int, ok: bool, text: str, elapsed: float):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}  [{elapsed:.2f}s]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@pytest.fixture(scope="module")
def basis():
    return build_basis(Truncation(mode_cutoff=6, charge_window=4))


def test_criterion_01_sphere_groups():
    t0 = time.perf_counter()
    bad = []
    for k in KS:
        res = twisted_k(preset("S2", k))
        if res.k0 != FgAbGroup.from_cyclic_orders([0]) or res.k1 != FgAbGroup.from_cyclic_orders([0, k]):
            bad.append((k, str(res.k0), str(res.k1)))
    dt = time.perf_counter() - t0
    ok = not bad and dt < RUNTIME_KGROUPS
    record(1, ok, f"S2, k=1..12: K0=Z, K1=Z+Z_k; mismatches={bad}", dt)
    assert ok


def test_criterion_02_torus_groups():
    t0 = time.perf_counter()
    bad = []
    for k in KS:
        res = twisted_k(preset("T2", k))
        if res.k0 != FgAbGroup.from_cyclic_orders([0, 0]) or res.k1 != FgAbGroup.from_cyclic_orders([0, 0, k]):
            bad.append((k, str(res.k0), str(res.k1)))
    dt = time.perf_counter() - t0
    ok = not bad and dt < RUNTIME_KGROUPS
    sample = bad[0] if bad else None
    record(2, ok, f"T2, k=1..12: want K0=Z^2, K1=Z^2+Z_k; {len(bad)} mismatches, e.g. {sample}", dt)
    assert ok


def test_criterion_03_untwisted_kunneth():
    t0 = time.perf_counter()
    out = []
    for space in ("S2", "T2"):
        pres = preset(space, 0)
        res = twisted_k(pres)
        want0 = pres.group(1) + pres.group(0)
        want1 = pres.group(0) + pres.group(1)
        out.append((space, res.k0 == want0 and res.k1 == want1, str(res.k0), str(res.k1)))
    ok = all(o[1] for o in out)
    record(3, ok, "trivial lambda gives K^{*+1}(M)+K^*(M): " + ", ".join(f"{s}: ({a} | {b})" for s, _, a, b in out),
           time.perf_counter() - t0)
    assert ok


def test_criterion_04_spectral_flow():
    t0 = time.perf_counter()
    flow = spectral_flow(loop_path(64), 0.25)
    ok = flow == 1
    record(4, ok, f"spectral flow of -i d/dtheta + phi/2pi at level 0.25, 64 samples: {flow}",
           time.perf_counter() - t0)
    assert ok


def test_criterion_05_operator_identities(basis):
    t0 = time.perf_counter()
    parts = {}
    checks = interior_operator_checks(basis)
    parts["5a CAR"] = checks[0]
    parts["5b Clifford"] = checks[1]
    parts["5c SNS^-1=N-1"] = checks[2]
    literal, covariant, square = [], [], []
    for y in OPERATOR_YS:
        sh = shift_covariance_checks(y, basis)
        literal.append(sh["invariance"])
        covariant.append(sh["covariance"])
        square.append(square_decomposition_check(y, basis)["check"])
    dt = time.perf_counter() - t0
    status = {name: c.ok for name, c in parts.items()}
    status["5d SQ_yS^-1=Q_y"] = all(c.ok for c in literal)
    status["5e Q^2 decomposition"] = all(c.ok for c in square)
    covariance_ok = all(c.ok for c in covariant)
    fails = sum(len(c.failures) for c in literal)
    summary = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in status.items())
    ok = all(status.values()) and dt < RUNTIME_OPERATORS
    record(5, ok, f"Lambda=6, q_max=4, exact: {summary}; 5d interior failures={fails}; "
                  f"(S Q_y S^-1 = Q_(y-1) holds: {covariance_ok})", dt)
    assert covariance_ok
    assert ok


def test_criterion_06_kernel_localization():
    t0 = time.perf_counter()
    xi_rank = 2
    b = build_basis(Truncation(mode_cutoff=6, charge_window=4), xi_rank=xi_rank)
    bad = []
    worst_gap = float("inf")
    for y in KERNEL_YS:
        sp = spectrum(y, b)
        if sp.kernel_dimension != xi_rank:
            bad.append((y, sp.kernel_dimension))
    for y in GAPPED_YS:
        sp = spectrum(y, b)
        gap = min((n + float(y)) ** 2 for n in range(-10, 11))
        worst_gap = min(worst_gap, sp.smallest_nonzero - gap)
        if sp.kernel_dimension != 0 or sp.smallest_nonzero < gap - GAP_SLACK:
            bad.append((str(y), sp.kernel_dimension, sp.smallest_nonzero))
    dt = time.perf_counter() - t0
    ok = not bad and dt < RUNTIME_KERNEL
    record(6, ok, f"xi_rank={xi_rank}: kernel dims at y in {{-1,0,1,2}} and 0 off integers; "
                  f"min(smallest - gap)={worst_gap:.2e} (slack {GAP_SLACK}); bad={bad}", dt)
    assert ok


def test_criterion_07_p_sector(basis):
    t0 = time.perf_counter()
    worst = 0.0
    for y in KERNEL_YS + GAPPED_YS + (Fraction(2, 7),):
        for k, xi, e in p_sector_spectrum(y, basis):
            want = float((k + Fraction(y)) ** 2)
            worst = max(worst, abs(e - want) / max(want, 1.0))
    ok = worst <= P_SECTOR_REL
    record(7, ok, f"P-sector eigenvalues (k+y)^2: max rel deviation {worst:.2e} (tol {P_SECTOR_REL})",
           time.perf_counter() - t0)
    assert ok


def test_criterion_08_cech():
    t0 = time.perf_counter()
    cover = cover_preset("tetra")
    hilbert_cocycle(cover)  # raises if the cocycle condition fails
    f_prime = coboundary_class(lifted_cocycle(cover, "symmetric"))  # raises if not scalar
    f_double = coboundary_class(lifted_cocycle(cover, "right"))
    f = coboundary_class(lifted_cocycle(cover, "left"))
    a = verify_equivalence(f_double, f_prime, projective_cochain(cover, "right"))
    b = verify_equivalence(f, f_prime, projective_cochain(cover, "left"))
    dt = time.perf_counter() - t0
    ok = a["equal"] and b["equal"] and dt < RUNTIME_CECH
    record(8, ok, f"4-patch cover: g cocycle ok, f' scalar, f''~f' ({len(a['certificates'])} certificates, "
                  f"{len(a['failing'])} failing), f~f' ({len(b['failing'])} failing)", dt)
    assert ok


def test_criterion_09_index_character():
    t0 = time.perf_counter()
    bad = []
    for k in range(0, 13):
        ch = index_character(k)
        if ch.coefficient((PHI,)) != 1 or ch.coefficient((PHI, FB_NORM)) != k or set(ch.degrees()) - {1, 3}:
            bad.append(k)
    ok = not bad
    record(9, ok, f"index character = dphi/2pi + k dphi/2pi ^ F_b/2pi i for k=0..12; bad={bad}",
           time.perf_counter() - t0)
    assert ok


def test_criterion_10_theta_periodicity(basis):
    t0 = time.perf_counter()
    literal = [periodicity_check(t, -0.5, basis, XiData(), k=1, sign=-1)["max_relative_deviation"]
               for t in (1.0, 10.0)]
    corrected = [periodicity_check(t, -0.5, basis, XiData(), k=1, sign=1)["max_relative_deviation"]
                 for t in (1.0, 10.0)]
    ok = max(literal) <= PERIODICITY_REL
    record(10, ok, f"Theta_(y+1) vs Theta_y ^ exp(-beta) at t=1,10: rel dev {[f'{v:.2e}' for v in literal]}; "
                   f"with exp(+beta): {[f'{v:.2e}' for v in corrected]} (tol {PERIODICITY_REL})",
           time.perf_counter() - t0)
    assert max(corrected) <= PERIODICITY_REL
    assert ok


def test_criterion_11_theta_localization(basis):
    t0 = time.perf_counter()
    out = theta_limit_check([400.0], basis, XiData(), k=1)["per_t"][0]
    worst_int = max(abs(v - 1) for v in out["center_integrals"].values())
    dt = time.perf_counter() - t0
    ok = out["sup_relative_deviation"] <= PROFILE_SUP and worst_int <= CENTER_INTEGRAL and dt < RUNTIME_LOCALIZATION
    record(11, ok, f"t=400: sup deviation {out['sup_relative_deviation']:.2e} (tol {PROFILE_SUP}), "
                   f"worst |integral-1| {worst_int:.2e} (tol {CENTER_INTEGRAL})", dt)
    assert ok


def test_criterion_12_quotient_character():
    t0 = time.perf_counter()
    bad = []
    for rk in (1, 2):
        for n in range(0, 7):
            for k in (2, 3, 5):
                qc = quotient_character(rk, n, k)
                if qc.coordinates != (rk, n % k):
                    bad.append(("value", rk, n, k))
                if quotient_character(rk, n + k, k).coordinates != qc.coordinates:
                    bad.append(("shift", rk, n, k))
    for n in (2, 3, 5):
        for deg in range(0, 13):
            pr = pairing_mod_n(MarkedCycle(), deg, n)
            if pr["residue"] != deg % n or not pr["consistent"]:
                bad.append(("pairing", deg, n))
    ok = not bad
    record(12, ok, f"(rk, n mod k) on rk in {{1,2}}, n in 0..6, k in {{2,3,5}}; n->n+k invariance; "
                   f"pairing k mod n; bad={bad}", time.perf_counter() - t0)
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
