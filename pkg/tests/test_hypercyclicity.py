import random
from fractions import Fraction

import pytest

import treeshift as ts
from treeshift import specio
from treeshift.exceptions import LeafObstructionError, OutOfDepthError, ParameterError
from treeshift.functions import TreeFunction


def test_S_is_never_hypercyclic(k2, homog2, leafy):
    for tree in (k2, homog2, leafy):
        rep = ts.verdict(tree, "S")
        assert rep.verdict == "no"
        assert rep.reason == "S_never"


def test_B_yes_when_gamma_diverges(homog2, k2):
    for tree in (homog2, k2):
        rep = ts.verdict(tree, "B")
        assert rep.verdict == "yes"
        assert rep.reason == "gamma_divergent"
        assert rep.evidence["gamma_prefix"][0] == 1


def test_B_no_on_bounded_gamma(path_tree):
    rep = ts.verdict(path_tree, "B")
    assert rep.verdict == "no"
    assert rep.reason == "gamma_bounded"


def test_B_no_on_leaf(leafy):
    rep = ts.verdict(leafy, "B")
    assert rep.verdict == "no"
    assert rep.reason == "leaf_found"
    assert rep.evidence["leaf"] == (1, 0)


def test_B_inconclusive_without_certificate():
    spec = specio.parse_tree_ref(
        {"kind": "degree_table", "params": {"rows": [[2]], "default_degree": 2}}
    )
    tree = ts.materialize(spec, 6)
    rep = ts.verdict(tree, "B")
    assert rep.verdict == "inconclusive"
    assert rep.reason == "depth_limited"


def test_bad_operator(k2):
    with pytest.raises(ParameterError):
        ts.verdict(k2, "Q")


def test_right_inverse_exact(homog2):
    g = TreeFunction.from_entries(
        [((0, 0), Fraction(1)), ((2, 1), Fraction(-2, 3)), ((3, 4), Fraction(5))]
    )
    for n in (1, 2, 4):
        tn = ts.kgs_right_inverse(homog2, g, n)
        assert ts.apply_backward(homog2, tn, n) == g
        # the lift spreads each value evenly over the n-descendants
        assert tn((n, 0)) == Fraction(1, 2 ** n)


def test_right_inverse_identity_at_zero(homog2):
    g = TreeFunction.chi((1, 0))
    assert ts.kgs_right_inverse(homog2, g, 0) == g


def test_right_inverse_depth_guard(homog2):
    g = TreeFunction.chi((homog2.depth, 0))
    with pytest.raises(OutOfDepthError):
        ts.kgs_right_inverse(homog2, g, 1)


def test_right_inverse_leaf_obstruction(leafy):
    g = TreeFunction.chi((1, 0))  # the leaf
    with pytest.raises(LeafObstructionError):
        ts.kgs_right_inverse(leafy, g, 1)


def test_annihilation_past_support(homog2):
    rng = random.Random(5)
    for _ in range(5):
        g = ts.random_rational_function(homog2, rng, max_level=4)
        top = g.max_support_level
        assert ts.apply_backward(homog2, g, top + 1).is_zero()


def test_suite_homogeneous(homog2):
    rep = ts.kgs_suite(homog2, samples=12, n_max=6, p=1, seed=3)
    assert rep.samples == 12
    assert rep.inversion_failures == 0
    assert rep.bound_failures == 0
    assert rep.decay_summary["max_final_ratio_p_power"] <= Fraction(1, 2) ** 6
    for s in rep.sample_reports:
        assert s.annihilation_checked
        assert s.inversion_exact
        assert s.bounds_hold
        # homogeneous tree: the norm sequence halves at every step
        for a, b in zip(s.norm_p_powers, s.norm_p_powers[1:]):
            assert b == a / 2


def test_suite_deterministic(homog2):
    a = ts.kgs_suite(homog2, samples=6, n_max=4, p=1, seed=11)
    b = ts.kgs_suite(homog2, samples=6, n_max=4, p=1, seed=11)
    assert specio.jsonable(a) == specio.jsonable(b)
    c = ts.kgs_suite(homog2, samples=6, n_max=4, p=1, seed=12)
    assert specio.jsonable(a) != specio.jsonable(c)


def test_suite_on_irregular_tree():
    tree = ts.materialize(ts.build("two_three_blocks").spec, 12)
    rep = ts.kgs_suite(tree, samples=8, n_max=4, p=2, seed=9)
    assert rep.inversion_failures == 0
    assert rep.bound_failures == 0
