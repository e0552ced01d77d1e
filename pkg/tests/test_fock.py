from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistk.exact import SQRT2, Surd2
from twistk.fock import (
    BasisSizeError,
    BasisState,
    FockBasisState,
    SpectralFlowError,
    SpinorBasisState,
    Truncation,
    TruncationError,
    UnreliableTruncation,
    bounded_transform,
    build_basis,
    charge_operator,
    check_identity,
    clifford,
    continuity_probe,
    current,
    current_adjoint_checks,
    dirac_spectrum,
    estimate_basis_size,
    identity,
    interior_operator_checks,
    kernel_at,
    loop_path,
    p_sector_spectrum,
    parse_coordinate_text,
    shift_covariance_checks,
    shift_operator,
    spectral_flow,
    spectrum,
    square_decomposition_check,
    supercharge,
)
from twistk.fock.analysis import commutator


def test_default_basis_size(default_basis):
    assert len(default_basis) == estimate_basis_size(Truncation()) == 837


def test_truncation_rules():
    with pytest.raises(TruncationError, match="q_max=6.*Lambda=6"):
        build_basis(Truncation(mode_cutoff=6, charge_window=6))
    with pytest.raises(TruncationError):
        build_basis(Truncation(mode_cutoff=3, energy_cutoff=4))
    with pytest.raises(BasisSizeError) as err:
        build_basis(Truncation(max_states=100))
    assert err.value.estimate == 837
    b = build_basis(Truncation(mode_cutoff=1, charge_window=0, fermion_cutoff=1, energy_cutoff=1))
    assert len(b) == estimate_basis_size(b.truncation)


def test_state_labels():
    assert str(FockBasisState(0)) == "|0>"
    assert str(FockBasisState(1)) == "a*(v0) |0>"
    assert str(FockBasisState(-1)) == "a(v-1) |0>"
    assert FockBasisState.from_modes(created=[2], annihilated=[-1]) == FockBasisState(0, (3,))


@settings(max_examples=100, deadline=None)
@given(st.integers(-3, 3), st.lists(st.integers(0, 4), max_size=4))
def test_mode_roundtrip(q, parts):
    lam = tuple(sorted(parts, reverse=True))
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    s = FockBasisState(q, lam)
    assert FockBasisState.from_modes(s.created, s.annihilated) == s


def test_basis_ordered_by_energy(small_basis):
    energies = [s.energy for s in small_basis]
    assert energies == sorted(energies)
    assert all(small_basis.index(s) == i for i, s in enumerate(small_basis))


def test_relations_on_interior(small_basis):
    for chk in interior_operator_checks(small_basis):
        assert chk.ok, chk.to_json()
    for chk in current_adjoint_checks(small_basis):
        assert chk.ok, chk.to_json()


def test_current_commutator_sign(small_basis):
    # [e_1, e_-1] = -1 in this normal ordering, the central term of level one
    chk = check_identity("[e1,e-1]", commutator(current(1, small_basis), current(-1, small_basis)),
                         identity(small_basis).scale(-1))
    assert chk.ok


def test_current_moves_a_particle(small_basis):
    v = small_basis.index(BasisState(SpinorBasisState(), FockBasisState(1)))
    out = current(1, small_basis).cols[v]
    target = small_basis.index(BasisState(SpinorBasisState(), FockBasisState.from_modes(created=[1])))
    assert out == {target: Surd2(1)}
    assert current(-1, small_basis).cols[v] == {}


def test_clifford_normalization(small_basis):
    vac = small_basis.vacuum_index()
    assert clifford(0, small_basis).cols[vac] == {vac: Surd2(1)}
    (row, val), = clifford(2, small_basis).cols[vac].items()
    assert val == SQRT2
    assert small_basis[row].spinor.excitations == (2,)


def test_shift_covariance(small_basis):
    checks = shift_covariance_checks(Fraction(1, 3), small_basis)
    assert checks["covariance"].ok
    # the y-independent statement S Q_y S^-1 = Q_y is false away from the charge-free part
    assert checks["invariance"].failures


@pytest.mark.parametrize("y", [Fraction(1, 2), Fraction(-1, 3), Fraction(0)])
def test_square_decomposition(small_basis, y):
    out = square_decomposition_check(y, small_basis)
    assert out["check"].ok
    assert out["vacuum_value"] == y * y


def test_square_is_energy_plus_charge(small_basis):
    y = Fraction(1, 4)
    Q = supercharge(y, small_basis)
    QQ = Q @ Q
    for j in QQ.interior:
        s = small_basis[j]
        expect = 2 * s.energy + (s.charge + y) ** 2
        col = QQ.cols[j]
        assert col.get(j, Surd2()) == expect
        assert all(r == j for r, v in col.items() if v)


def test_mask_agrees_with_larger_basis(small_basis):
    """Interior entries of Q^2 do not depend on the truncation."""
    big = build_basis(Truncation(mode_cutoff=5, charge_window=3, fermion_cutoff=5, energy_cutoff=5))
    y = Fraction(1, 3)
    small = supercharge(y, small_basis) @ supercharge(y, small_basis)
    large = supercharge(y, big) @ supercharge(y, big)
    for j in small.interior:
        jb = big.index(small_basis[j])
        got = {small_basis[r]: v for r, v in small.cols[j].items() if v}
        want = {big[r]: v for r, v in large.cols[jb].items() if v}
        assert got == want


@pytest.mark.parametrize("y", [-1, 0, 1, 2])
def test_kernel_at_integers(default_basis, y):
    sp = kernel_at(y, default_basis)
    assert sp.kernel_dimension == 1
    (state,) = sp.kernel_states
    assert default_basis[state].charge == -y
    assert default_basis[state].energy == 0


@pytest.mark.parametrize("y", [Fraction(1, 4), Fraction(-1, 4), Fraction(1, 2), Fraction(-1, 2), Fraction(3, 4)])
def test_gap_off_integers(default_basis, y):
    sp = spectrum(y, default_basis)
    assert sp.kernel_dimension == 0
    assert sp.smallest_nonzero == pytest.approx(min((n + float(y)) ** 2 for n in range(-5, 6)), abs=1e-12)


def test_kernel_needs_headroom(default_basis):
    with pytest.raises(UnreliableTruncation):
        kernel_at(4, default_basis)


def test_kernel_scales_with_xi_rank():
    b = build_basis(Truncation(mode_cutoff=4, charge_window=2, fermion_cutoff=4, energy_cutoff=4), xi_rank=2)
    assert spectrum(0, b).kernel_dimension == 2


def test_p_sector(default_basis):
    y = Fraction(2, 7)
    for k, xi, e in p_sector_spectrum(y, default_basis):
        assert e == pytest.approx(float((k + y) ** 2), rel=1e-12, abs=1e-14)


def test_bounded_transform_norm(small_basis):
    F = bounded_transform(Fraction(1, 2), small_basis)
    assert F.norm < 1


def test_continuity_probe(small_basis):
    out = continuity_probe(Fraction(1, 2), Fraction(1, 2) + Fraction(1, 10), small_basis)
    assert out["bound_holds"]
    assert out["strong_decreasing"]


def test_coordinate_text_roundtrip(small_basis):
    Q = supercharge(Fraction(1, 3), small_basis)
    text = Q.to_coordinate_text()
    back = parse_coordinate_text(text)
    assert back == {(r, c): v for c, col in enumerate(Q.cols) for r, v in col.items() if v}
    assert any(len(line.split()) == 6 for line in text.splitlines())


def test_charge_and_shift(small_basis):
    N, S = charge_operator(small_basis), shift_operator(small_basis)
    vac = small_basis.vacuum_index()
    (row,) = S.cols[vac]
    assert small_basis[row].charge == 1
    assert N.cols[row][row] == 1


def test_dirac_spectrum():
    assert dirac_spectrum(np.pi, (-2, 2)) == pytest.approx([-1.5, -0.5, 0.5, 1.5, 2.5])


@pytest.mark.parametrize("turns", [1, 2])
def test_spectral_flow_counts_turns(turns):
    assert spectral_flow(loop_path(64 * turns, turns), 0.25) == turns


def test_spectral_flow_constant_path():
    assert spectral_flow(np.full(10, 1.0), 0.25) == 0


def test_spectral_flow_guards():
    with pytest.raises(SpectralFlowError):
        spectral_flow(loop_path(64), 0.0)  # level is an eigenvalue at phi = 0
    with pytest.raises(SpectralFlowError):
        spectral_flow(loop_path(3), 0.25)  # steps too coarse to track
