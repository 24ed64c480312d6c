from fractions import Fraction

import pytest

import treeshift as ts
from treeshift.exceptions import BudgetError


@pytest.mark.parametrize("op", ["S", "B"])
@pytest.mark.parametrize("p", [1, 2])
def test_lower_bound_never_exceeds_formula(periodic21, op, p):
    for power in (1, 2):
        rep = ts.randomized_norm_lower_bound(periodic21, op, power, p, trials=80, seed=17)
        assert rep.never_exceeded
        assert rep.best_ratio_p_power <= rep.formula_p_power


def test_extremal_hits_backward_formula(homog2):
    rep = ts.randomized_norm_lower_bound(homog2, "B", 2, 1, trials=30, seed=1)
    assert rep.extremal_included
    assert rep.best_ratio_p_power == rep.formula_p_power == Fraction(4)
    assert rep.gap_p_power == 0.0


def test_k_tree_forward_gap_is_honest(k2):
    """Forward sup on the k-tree is a limit: no finite function attains it."""
    rep = ts.randomized_norm_lower_bound(k2, "S", 1, 1, trials=60, seed=2)
    assert rep.never_exceeded
    assert rep.best_ratio_p_power < rep.formula_p_power
    assert rep.gap_p_power > 0


def test_oracle_deterministic(periodic21):
    a = ts.randomized_norm_lower_bound(periodic21, "B", 1, 2, trials=50, seed=33)
    b = ts.randomized_norm_lower_bound(periodic21, "B", 1, 2, trials=50, seed=33)
    assert a.best_ratio_p_power == b.best_ratio_p_power
    assert a.best_trial == b.best_trial


@pytest.mark.parametrize("op", ["S", "B"])
def test_extremal_attainment_identity(periodic21, op):
    for power in (1, 2):
        for p in (1, 2):
            rep = ts.extremal_attainment(periodic21, op, power, p)
            assert rep.all_equal, [lv for lv in rep.levels if not lv.equal]
            assert len(rep.levels) > 0


def test_extremal_attainment_two_three():
    tree = ts.materialize(ts.build("two_three_blocks").spec, 10)
    rep = ts.extremal_attainment(tree, "B", 3, 2)
    assert rep.all_equal


def test_grid_check_small(periodic21):
    small = ts.materialize(ts.build("periodic", {"q": [2, 1]}).spec, 4)
    for op in ("S", "B"):
        rep = ts.truncated_finite_support_check(small, op, 1, 1, grid=(-1, 0, 1))
        assert rep.within_formula
        assert rep.functions_enumerated > 0


def test_grid_check_budget(homog2):
    with pytest.raises(BudgetError):
        ts.truncated_finite_support_check(homog2, "B", 1, 1, grid=(-1, 0, 1, 2))
