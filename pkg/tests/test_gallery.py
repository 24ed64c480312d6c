from fractions import Fraction

import pytest

import treeshift as ts
from treeshift.exceptions import OutOfDepthError, ParameterError


CEIL_PREFIX = [1, 2, 3, 5, 8, 12, 18, 27, 41, 62, 93, 140]
TWO_THREE_PREFIX = [2, 3, 2, 2, 3, 3, 2, 2, 2, 3, 3, 3]


def test_names_stable():
    assert ts.names() == [
        "ceil_three_halves",
        "factorial",
        "homogeneous",
        "k_tree",
        "level_sequence",
        "periodic",
        "quadratic_growth",
        "two_three_blocks",
    ]


def test_self_test_all_passes():
    for result in ts.self_test_all(max_power=3, p_values=(1, 2)):
        assert result["passed"], result["failures"]


def test_ceil_gamma_prefix():
    certs = ts.build("ceil_three_halves").spec.certificates
    assert [certs.gamma(n) for n in range(12)] == CEIL_PREFIX


def test_ceil_recurrence_and_K():
    certs = ts.build("ceil_three_halves").spec.certificates
    a = [certs.gamma(n) for n in range(40)]
    for n in range(39):
        assert a[n + 1] == (3 * a[n] + 1) // 2
    for m in range(1, 6):
        for t in range(m - 1, 10):
            assert certs.K(m, t) == 2 ** m
    # below the covered band the closed form defers to counting
    assert certs.K(5, 2) is None


def test_two_three_degree_prefix():
    entry = ts.build("two_three_blocks")
    tree = ts.materialize(entry.spec, 12)
    got = [int(tree.degrees(n)[0]) for n in range(12)]
    assert got == TWO_THREE_PREFIX


def test_quadratic_growth_gamma():
    certs = ts.build("quadratic_growth").spec.certificates
    assert [certs.gamma(n) for n in range(6)] == [1, 2, 4, 7, 11, 16]


def test_factorial_gamma():
    certs = ts.build("factorial").spec.certificates
    assert [certs.gamma(n) for n in range(6)] == [1, 2, 6, 24, 120, 720]


def test_k_tree_gamma_and_K():
    certs = ts.build("k_tree", {"k": 5}).spec.certificates
    assert certs.gamma(10) == 41
    assert certs.K(3, 7) == 13


def test_bad_params_rejected():
    with pytest.raises(ParameterError):
        ts.build("homogeneous", {"q": 0})
    with pytest.raises(ParameterError):
        ts.build("level_sequence", {"sequence": [1, 0, 2]})
    with pytest.raises(ParameterError):
        ts.build("k_tree", {"k": 1})
    with pytest.raises(ParameterError):
        ts.build("periodic", {"q": []})
    with pytest.raises(ParameterError):
        ts.build("does_not_exist")


def test_level_sequence_extensions():
    for extend, degree_8 in (("periodic", 3), ("constant", 2), ("ones", 1)):
        entry = ts.build("level_sequence", {"sequence": [1, 2, 1, 3, 2], "extend": extend})
        tree = ts.materialize(entry.spec, 9)
        assert int(tree.degrees(8)[0]) == degree_8


def test_certified_levels_huge_depth():
    data = ts.certified_levels("k_tree", 64, {"k": 3})
    assert data.gamma(64) == 64 * 2 + 1
    assert data.K(4, 60) == 9
    with pytest.raises(OutOfDepthError):
        data.gamma(65)
    with pytest.raises(OutOfDepthError):
        data.K(4, 61)


def test_certified_levels_homogeneous_beyond_materialization():
    data = ts.certified_levels("homogeneous", 200, {"q": 3})
    assert data.gamma(200) == 3 ** 200
    assert data.K(5, 100) == 3 ** 5


def test_certified_fallback_matches_counting():
    data = ts.certified_levels("ceil_three_halves", 40)
    tree = ts.materialize(ts.build("ceil_three_halves").spec, 7)
    assert data.K(5, 2) == tree.K(5, 2)  # closed form has a gap here
    assert data.K(3, 2) == 2 ** 3


def test_certified_requires_certificates():
    from treeshift import specio

    spec = specio.parse_tree_ref(
        {"kind": "degree_table", "params": {"rows": [[2]], "default_degree": 2}}
    )
    with pytest.raises(ParameterError):
        ts.CertifiedLevels(spec, 10)


def test_gallery_list_entries():
    entries = ts.list_entries()
    assert len(entries) == 8
    for e in entries:
        assert e["summary"]
        assert e["claims"]


def test_backward_sup_level_sequence_windows():
    seq = [1, 2, 1, 3, 2]
    entry = ts.build("level_sequence", {"sequence": seq, "extend": "periodic"})
    tree = ts.materialize(entry.spec, 20)
    ext = [seq[n % 5] for n in range(20)]
    for m in (1, 2, 3, 4):
        best = 0
        for n in range(0, 20 - m + 1):
            prod = 1
            for j in range(m):
                prod *= ext[n + j]
            best = max(best, prod)
        rep = ts.backward_norm(tree, 1, m)
        assert rep.value_p_power == best


def test_periodic_23_even_powers():
    data = ts.certified_levels("periodic", 64, {"q": [2, 3]})
    for k in (1, 2, 3):
        rep = ts.backward_norm(data, 1, 2 * k)
        assert rep.value_p_power == Fraction(6) ** k
