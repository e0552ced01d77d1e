import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistk.cech import (
    C,
    CechCochain,
    CocycleFault,
    Cover,
    E,
    H,
    Rewriter,
    Sh,
    antisymmetry_violations,
    coboundary,
    coboundary_class,
    cover_preset,
    dd_class_report,
    derived_c_values,
    expected_cocycle,
    format_word,
    hilbert_cocycle,
    is_cocycle,
    lifted_cocycle,
    projective_cochain,
    verify_equivalence,
    word_inverse,
)

HALF = Fraction(1, 2)


def hh(i, j, a=0, b=1):
    return H((i, j), Fraction(a), Fraction(b))


@pytest.fixture(scope="module")
def tetra():
    return cover_preset("tetra")


@pytest.fixture(scope="module")
def lifts(tetra):
    return {form: coboundary_class(lifted_cocycle(tetra, form)) for form in ("symmetric", "right", "left")}


def test_shift_rule():
    rw = Rewriter()
    assert rw.normalize((Sh(1), hh(1, 2, 1, 0))) == (hh(1, 2, 1, -1), Sh(1))
    assert rw.normalize((Sh(-1), hh(1, 2, HALF, 0))) == (hh(1, 2, HALF, HALF), Sh(-1))
    assert rw.normalize((Sh(1), Sh(-1))) == ()


def test_orientation_and_cocycle_relation():
    rw = Rewriter({1, 2, 3})
    # h_23 = h_12^-1 h_13 on the triple overlap
    assert rw.normalize((hh(3, 2),)) == rw.normalize((hh(1, 2), hh(1, 3, 0, -1)))
    assert rw.normalize((hh(1, 2), hh(2, 3), hh(1, 3, 0, -1))) == ()
    assert rw.normalize((hh(2, 2),)) == ()


def test_c_values_are_forced():
    vals = derived_c_values()
    assert vals["c(h,e^it) exponent"] == HALF
    assert vals["c(e^it,h) exponent"] == -HALF


def test_trivial_bundle_drops_everything():
    rw = Rewriter({1, 2}, trivial=True)
    assert rw.normalize((hh(1, 2, 1, 0), Sh(1), C((1, 2), "h,t", 1, 1))) == (Sh(1),)


LETTERS = [Sh(1), Sh(-1), hh(1, 2, HALF, 0), hh(2, 3, 1, -1), hh(3, 1, 0, 1), hh(1, 3, -HALF, HALF),
           C((1, 3), "h,t", 1, 1), C((2, 3), "t,h", 1, -1), E(1)]


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(LETTERS), max_size=12), st.integers(0, 2**32))
def test_confluence_under_random_rule_order(word, seed):
    rw = Rewriter({1, 2, 3})
    reference = rw.normalize(word)
    assert rw.normalize(word, rng=random.Random(seed)) == reference
    shuffled = list(Rewriter.RULES)
    random.Random(seed).shuffle(shuffled)
    assert rw.normalize(word, order=shuffled) == reference


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(LETTERS), max_size=10))
def test_inverse_word(word):
    rw = Rewriter({1, 2, 3})
    assert rw.normalize(tuple(word) + word_inverse(word)) == ()


@pytest.mark.parametrize("name", ["S2", "tetra"])
def test_hilbert_cocycle(name):
    g = hilbert_cocycle(cover_preset(name))
    assert g.get((1, 2 + g.cover.n_patches), 1) == (E(1), hh(1, 2))


@pytest.mark.parametrize("form,name", [("symmetric", "f_prime"), ("right", "f_double_prime"), ("left", "f")])
def test_lifts_give_closed_forms(tetra, lifts, form, name):
    want = expected_cocycle(tetra, name)
    got = lifts[form]
    for (s, arc) in want.components:
        assert got.normal_form(s, arc) == want.normal_form(s, arc), (s, arc)


def test_component_values(tetra, lifts):
    n = tetra.n_patches
    assert format_word(lifts["symmetric"].normal_form((1, 2, 3 + n), 1)) == "h12^(1/2)"
    assert lifts["right"].normal_form((1, 2 + n, 3 + n), 1) == Rewriter({1, 2, 3}).normalize((hh(2, 3, 0, -1),))
    assert lifts["left"].normal_form((1, 2, 3 + n), 1) == (hh(1, 2),)
    assert lifts["left"].normal_form((1, 2, 3 + n), -1) == ()


def test_equivalences(tetra, lifts):
    a = verify_equivalence(lifts["right"], lifts["symmetric"], projective_cochain(tetra, "right"))
    b = verify_equivalence(lifts["left"], lifts["symmetric"], projective_cochain(tetra, "left"))
    assert a["equal"] and b["equal"]
    cert = a["certificates"][0]
    assert set(cert) == {"simplex", "arc", "lhs_normal_form", "rhs_normal_form", "equal"}


def test_equivalence_direction_matters(tetra, lifts):
    out = verify_equivalence(lifts["symmetric"], lifts["right"], projective_cochain(tetra, "right"))
    assert not out["equal"]


def test_cocycles_and_antisymmetry(tetra, lifts):
    for f in lifts.values():
        assert is_cocycle(f)
        assert not antisymmetry_violations(f)


def test_dd_of_coboundary(tetra):
    c = projective_cochain(tetra, "right")
    assert all(not w for w in coboundary(coboundary(c)).components.values())


def test_non_scalar_coboundary_is_rejected():
    cover = cover_preset("tetra")
    bad = CechCochain(cover, 1, {((1, 2), 0): (Sh(1),), ((2, 1), 0): (Sh(-1),)}, "bad")
    with pytest.raises(CocycleFault):
        coboundary_class(bad)


def test_invalid_cover():
    with pytest.raises(ValueError, match="closed under subsets"):
        Cover.build(3, [[1], [2], [3], [1, 2, 3], [1, 2], [1, 3]])
    with pytest.raises(ValueError, match="not an edge"):
        Cover.build(2, [[1], [2]], {(1, 2): 1})


@pytest.mark.parametrize("k", [1, 3, 7])
def test_dd_class_report(k):
    rep = dd_class_report(cover_preset("S2", k), k)
    assert rep["consistent"] and rep["cech_degree"] == k
    assert not rep["all_trivial"]


def test_dd_class_report_untwisted():
    rep = dd_class_report(cover_preset("tetra", 0), 0)
    assert rep["consistent"] and rep["all_trivial"]
