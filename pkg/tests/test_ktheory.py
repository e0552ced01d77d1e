"""Twisted K-groups from the Mayer-Vietoris presentation.

The rational oracle computes ranks with floating-point linear algebra on
``1 - lambda`` directly, independent of the Smith form.
"""

import numpy as np
import pytest

from twistk.ktheory import (
    KRingPresentation,
    PresentationError,
    change_basis,
    multiplication_by_one_minus_lambda,
    preset,
    twisted_k,
)
from twistk.zlinalg import FgAbGroup, IntMatrix


def rational_ranks(pres):
    """``rank K^d = dim ker(1 - lam on K^d) + dim coker(1 - lam on K^{d-1})`` over Q."""
    out = []
    for d in (0, 1):
        ranks = {}
        for deg in (d, (d - 1) % 2):
            n = pres.n0 if deg % 2 == 0 else pres.n1
            free = [i for i, o in enumerate(pres.orders(deg)) if o == 0]
            if not n:
                ranks[deg] = (0, 0)
                continue
            M = np.array(multiplication_by_one_minus_lambda(pres, deg).to_rows(), dtype=float)
            M = M[np.ix_(free, free)]
            r = np.linalg.matrix_rank(M) if M.size else 0
            ranks[deg] = (len(free) - r, len(free) - r)  # kernel and cokernel ranks
        out.append(ranks[d][0] + ranks[(d - 1) % 2][1])
    return out


@pytest.mark.parametrize("k", range(1, 13))
def test_sphere(k):
    res = twisted_k(preset("S2", k))
    assert res.k0 == FgAbGroup.from_cyclic_orders([0])
    assert res.k1 == FgAbGroup.from_cyclic_orders([0, k])


@pytest.mark.parametrize("space", ["S2", "T2"])
@pytest.mark.parametrize("k", [0, 1, 2, 5, 12])
def test_ranks_agree_with_rational_oracle(space, k):
    pres = preset(space, k)
    res = twisted_k(pres)
    assert [res.k0.free_rank, res.k1.free_rank] == rational_ranks(pres)


@pytest.mark.parametrize("k", [1, 4, 9])
def test_torus_groups(k):
    # K^1(T^2) = Z^2 is fixed by lambda, so it survives in both degrees
    res = twisted_k(preset("T2", k))
    assert res.k0 == FgAbGroup.from_cyclic_orders([0, 0, 0])
    assert res.k1 == FgAbGroup.from_cyclic_orders([0, 0, 0, k])


@pytest.mark.parametrize("space", ["S2", "T2"])
def test_untwisted_kunneth(space):
    pres = preset(space, 0)
    res = twisted_k(pres)
    assert res.k0 == pres.group(1) + pres.group(0)
    assert res.k1 == pres.group(0) + pres.group(1)


def test_one_minus_lambda_matrix():
    M = multiplication_by_one_minus_lambda(preset("S2", 3), 0)
    assert M.to_rows() == [[0, 0], [-3, 0]]


def test_basis_change_does_not_change_groups():
    pres = preset("T2", 6)
    P0 = IntMatrix.from_rows([[1, 2], [0, 1]])
    P1 = IntMatrix.from_rows([[2, 1], [1, 1]])
    other = change_basis(pres, P0, P1)
    assert twisted_k(other).k1 == twisted_k(pres).k1
    assert twisted_k(other).k0 == twisted_k(pres).k0


def test_validation_reports_failing_triple():
    table = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
             [[0, 1, 0], [0, 0, 1], [0, 1, 0]],
             [[0, 0, 1], [0, 1, 0], [0, 0, 0]]]
    with pytest.raises(PresentationError) as err:
        KRingPresentation.build(k0_orders=[0, 0, 0], unit_vector=[1, 0, 0],
                                mult_table=table, lambda_class=[1, 0, 0])
    assert any("triple (1, 1, 2)" in v for v in err.value.violations)


def test_lambda_must_have_rank_one():
    with pytest.raises(PresentationError):
        KRingPresentation.build(k0_orders=[0, 0], unit_vector=[1, 0],
                                mult_table=[[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
                                lambda_class=[2, 1], rank_functional=[1, 0])


def test_torsion_extension_flagged():
    # K^0 = Z + Z_2 with lambda acting by -1 on the torsion summand
    pres = KRingPresentation.build(
        k0_orders=[0, 2], unit_vector=[1, 0],
        mult_table=[[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        lambda_class=[1, 1], k1_orders=[2], k1_module_action=[[[1]], [[0]]],
        rank_functional=[1, 0])
    res = twisted_k(pres)
    assert res.degrees[0].pieces.kernel_piece is not None
    json = res.to_json()
    assert {d["degree"] for d in json} == {0, 1}


def test_json_shape():
    out = twisted_k(preset("S2", 2)).to_json()
    k1 = next(d for d in out if d["degree"] == 1)
    assert k1["rank"] == 1 and k1["torsion"] == [2] and k1["split_certain"]
