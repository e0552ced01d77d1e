"""Integer linear algebra against independent oracles.

The invariant-factor oracle uses determinantal divisors: ``d_k`` is the gcd
of all ``k x k`` minors and the invariant factors are ``d_k / d_{k-1}``.
"""

import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistk.zlinalg import (
    FgAbGroup,
    IntMatrix,
    PresentationError,
    cokernel,
    determinant,
    group_of_quotient,
    hermite_normal_form,
    kernel,
    lattice_basis,
    reduce_modulo_lattice,
    smith_normal_form,
)


def _det(rows):
    n = len(rows)
    M = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return int(det)


def invariant_factors_oracle(rows):
    m, n = len(rows), len(rows[0])
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = gcd(g, _det([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_matches_determinantal_divisors(rows):
    A = IntMatrix.from_rows(rows)
    snf = smith_normal_form(A)
    snf.check(A)
    diag = [d for d in snf.diagonal() if d]
    assert diag == invariant_factors_oracle(rows)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_kernel_rank_nullity(rows):
    A = IntMatrix.from_rows(rows)
    K = kernel(A)
    assert (A @ K).is_zero()
    assert K.cols + smith_normal_form(A).rank == A.cols


@settings(max_examples=100, deadline=None)
@given(matrices, st.integers(0, 2**31))
def test_cokernel_invariant_under_unimodular_changes(rows, seed):
    import random

    rng = random.Random(seed)
    A = IntMatrix.from_rows(rows)

    def unimodular(n):
        U = IntMatrix.identity(n)
        for _ in range(6):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if i == j:
                continue
            E = [[int(r == c) for c in range(n)] for r in range(n)]
            E[i][j] = rng.randint(-3, 3)
            U = IntMatrix.from_rows(E) @ U
        return U

    B = unimodular(A.rows) @ A @ unimodular(A.cols)
    assert cokernel(A) == cokernel(B)


def test_coset_count_matches_order():
    # Z^2 / span{(2,4), (6,8)}: index |det| = 8, invariant factors 2 and 4
    A = IntMatrix.from_rows([[2, 6], [4, 8]])
    G = cokernel(A)
    assert G == FgAbGroup.from_cyclic_orders([2, 4])
    # brute-force coset enumeration in a box
    reps = set()
    for x in range(16):
        for y in range(16):
            reps.add(tuple(reduce_modulo_lattice([x, y], A)))
    assert len(reps) == G.order == 8


def test_smith_example():
    snf = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert snf.diagonal() == [2, 4]


def test_empty_matrix_rejected():
    with pytest.raises(ValueError):
        smith_normal_form(IntMatrix.zeros(0, 3))


def test_quotient_of_lattices():
    K = IntMatrix.from_columns([[2, 0], [0, 1]])
    L = IntMatrix.from_columns([[2, 0], [0, 2]])
    assert group_of_quotient(K, L) == FgAbGroup.from_cyclic_orders([2])
    with pytest.raises(PresentationError):
        group_of_quotient(L, K)


def test_group_formatting():
    assert str(FgAbGroup.from_cyclic_orders([0, 0, 2])) == "Z^2 + Z_2"
    assert str(FgAbGroup.trivial()) == "0"
    assert FgAbGroup.from_cyclic_orders([0, 6]).to_json() == {"rank": 1, "torsion": [6]}
    assert FgAbGroup.from_cyclic_orders([2, 3]) == FgAbGroup.from_cyclic_orders([6])


def test_hermite_and_lattice_basis():
    A = IntMatrix.from_columns([[4, 6], [2, 2], [6, 8]])
    H, piv = hermite_normal_form(A)
    B = lattice_basis(A)
    assert B.cols == 2
    assert abs(determinant(B)) == abs(determinant(IntMatrix.from_columns(H.columns()[:2])))


def test_reduction_of_rational_vector():
    L = IntMatrix.from_columns([[0, 3]])
    assert reduce_modulo_lattice([Fraction(1, 2), 7], L) == [Fraction(1, 2), 1]
