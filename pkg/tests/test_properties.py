"""Structural identities checked over randomized finitely-supported functions.

Everything here is exact Fraction arithmetic, so the properties are equalities
and inequalities that must hold with no tolerance at all.
"""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from treeshift import apply_backward, apply_forward, build, hardy_norm, materialize, mean_p_power
from treeshift.functions import TreeFunction


DEPTH = 8
H2 = materialize(build("homogeneous", {"q": 2}).spec, DEPTH)
K2 = materialize(build("k_tree", {"k": 2}).spec, DEPTH)


def functions_on(tree, max_level):
    """Strategy for exact finitely-supported functions with valid vertex indices."""

    @st.composite
    def build(draw):
        n_entries = draw(st.integers(min_value=0, max_value=8))
        entries = {}
        for _ in range(n_entries):
            level = draw(st.integers(min_value=0, max_value=max_level))
            index = draw(st.integers(min_value=0, max_value=tree.gamma(level) - 1))
            num = draw(st.integers(min_value=-9, max_value=9))
            den = draw(st.integers(min_value=1, max_value=9))
            entries[(level, index)] = Fraction(num, den)
        f = TreeFunction.zero()
        for (level, index), value in entries.items():
            if value:
                f = f + TreeFunction.chi((level, index), value=value)
        return f

    return build()


@settings(max_examples=60, deadline=None)
@given(f=functions_on(K2, DEPTH - 1))
def test_forward_shift_norm_bounded_by_formula(f):
    # on the binary-ish k-tree, ||S|| = k = 2 for every p; check p = 1 exactly
    lhs = hardy_norm(K2, apply_forward(K2, f, 1), 1).value_p_power
    rhs = hardy_norm(K2, f, 1).value_p_power
    assert lhs <= 2 * rhs


@settings(max_examples=60, deadline=None)
@given(f=functions_on(H2, DEPTH - 1))
def test_backward_is_left_inverse_of_forward(f):
    # B(Sf) sums f(v) over the children of each v: with q = 2 children sharing
    # the parent's value, BSf = 2 f... no: S copies f(v) to *each* child, so
    # (BSf)(v) = sum over children of f(v) = deg(v) * f(v) = 2 f(v).
    g = apply_backward(H2, apply_forward(H2, f, 1), 1)
    assert (g - f.scale(2)).is_zero()


@settings(max_examples=60, deadline=None)
@given(f=functions_on(H2, 5))
def test_backward_annihilates_past_support(f):
    top = max((level for (level, _idx) in f.support()), default=0)
    assert apply_backward(H2, f, top + 1).is_zero()


@settings(max_examples=60, deadline=None)
@given(
    f=functions_on(K2, DEPTH),
    num=st.integers(min_value=-7, max_value=7),
    den=st.integers(min_value=1, max_value=7),
)
def test_mean_scales_homogeneously(f, num, den):
    c = Fraction(num, den)
    scaled = f.scale(c)
    for p in (1, 2):
        for n in (0, 2, 5):
            assert mean_p_power(K2, scaled, p, n) == abs(c) ** p * mean_p_power(K2, f, p, n)


@settings(max_examples=60, deadline=None)
@given(f=functions_on(K2, DEPTH), g=functions_on(K2, DEPTH))
def test_norm_subadditive(f, g):
    s = hardy_norm(K2, f + g, 1).value_p_power
    assert s <= hardy_norm(K2, f, 1).value_p_power + hardy_norm(K2, g, 1).value_p_power


@settings(max_examples=40, deadline=None)
@given(f=functions_on(H2, DEPTH - 2), m=st.integers(min_value=1, max_value=2))
def test_forward_norm_formula_is_upper_bound(f, m):
    # homogeneous(2) makes S^m an exact isometry: each level-n sum doubles m
    # times while gamma(n+m) = 2^m gamma(n), so every level mean is preserved.
    lhs = hardy_norm(H2, apply_forward(H2, f, m), 1)
    rhs = hardy_norm(H2, f, 1)
    assert lhs.value_p_power == rhs.value_p_power
