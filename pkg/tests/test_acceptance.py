"""Acceptance suite: one test per headline claim, at desk scale.

Every check is either an exact rational identity or carries its tolerance
inline.  Each test prints a single [PASS] line with the measured quantities
(surfaced by ``-rA``); `pytest -v` gives the one-line pass/fail verdict per
criterion.
"""

import math
import random
import time
from fractions import Fraction

import treeshift as ts
from treeshift import gallery, hypercyclicity, oracle, spectral
from treeshift.functions import TreeFunction, mean_p_power
from treeshift.sampling import random_rational_function
from treeshift.trees import VertexId


def _pass(n: int, msg: str) -> None:
    print(f"[PASS] criterion {n}: {msg}")


def test_criterion_01_k_tree_first_norm():
    timings = []
    for k in (2, 3, 5):
        for p in (1, 2):
            t0 = time.perf_counter()
            data = gallery.certified_levels("k_tree", 64, {"k": k})
            rep = ts.forward_norm(data, p, 1)
            dt = time.perf_counter() - t0
            timings.append(dt)
            assert rep.value_p_power == Fraction(k)
            assert abs(rep.value - k ** (1.0 / p)) <= 1e-9
            assert rep.truncated is False
            assert rep.bounded_verdict == "bounded"
            assert dt < 1.0
    _pass(1, f"||S||^p = k exact for k in {{2,3,5}}, p in {{1,2}} at depth 64; "
             f"slowest case {max(timings)*1000:.0f} ms")


def test_criterion_02_k_tree_power_norms():
    for k in (2, 3):
        data = gallery.certified_levels("k_tree", 80, {"k": k})
        for m in range(1, 11):
            rep = ts.forward_norm(data, 1, m)
            assert rep.value_p_power == Fraction(m * k - (m - 1))
        sr = spectral.spectral_radius(data, "S", 1, max_power=20)
        roots = sr.radius_sequence
        assert all(roots[i + 1] <= roots[i] + 1e-12 for i in range(len(roots) - 1))
        assert roots[-1] <= 1.3
        assert sr.radius_estimate == min(roots)
    _pass(2, "||S^m|| = mk-(m-1) exact for m <= 10 (k = 2, 3) at depth 80; "
             f"roots decreasing, final {roots[-1]:.4f} <= 1.3")


def test_criterion_03_ceil_three_halves_forward():
    t0 = time.perf_counter()
    data = gallery.certified_levels("ceil_three_halves", 80)
    a = [data.gamma(n) for n in range(81)]
    for n in range(80):
        assert a[n + 1] == (3 * a[n] + 1) // 2  # == ceil(3 a_n / 2)
    prefix = ts.materialize(ts.build("ceil_three_halves").spec, 24)
    assert prefix.level_sizes == a[:25]

    for m in range(1, 13):
        for t in range(m - 1, 81 - m):
            assert data.K(m, t) == 2 ** m
        for n in range(m, 81):
            assert Fraction(a[n - m], a[n]) <= Fraction(2, 3) ** m

    worst_rel = 0.0
    for m in range(1, 9):
        rep = ts.forward_norm(data, 1, m)
        target = Fraction(4, 3) ** m
        assert rep.value_p_power == target
        rel = abs(float(rep.scanned_sup_p_power / target) - 1.0)
        worst_rel = max(worst_rel, rel)
        assert rel <= 1e-6

    sr = spectral.spectral_radius(data, "S", 1, max_power=20)
    r20 = sr.radius_sequence[19]
    assert abs(r20 - 4.0 / 3.0) <= 0.02 * 4.0 / 3.0
    dt = time.perf_counter() - t0
    assert dt < 30.0
    _pass(3, f"recurrence + K = 2^m + ratio bound exact to depth 80; scan vs (4/3)^m "
             f"rel err <= {worst_rel:.2e}; root at m=20 {r20:.6f}; {dt:.1f} s")


def test_criterion_04_backward_norms():
    for q in (2, 3):
        data = gallery.certified_levels("homogeneous", 64, {"q": q})
        for p in (1, 2, 3):
            rep = ts.backward_norm(data, p, 1)
            assert rep.value_p_power == Fraction(q) ** p
            assert abs(rep.value - q) <= 1e-9
            assert rep.truncated is False

    fact = ts.materialize(ts.build("factorial").spec, 7)
    for p in (1, 2):
        rep = ts.backward_norm(fact, p, 1)
        assert rep.bounded_verdict == "unbounded"
        assert "(n+2)^p" in rep.divergence
        assert rep.scanned_sup_p_power == Fraction(8) ** p  # sup over n <= 6 of (n+2)^p

    seq = [2, 1, 3, 1, 2]
    entry = ts.build("level_sequence", {"sequence": seq, "extend": "periodic"})
    data = gallery.certified_levels(entry, 40)
    degree = lambda level: seq[level % len(seq)]
    for m in range(1, 11):
        expected = max(
            math.prod(degree(l) for l in range(n, n + m)) for n in range(4 * len(seq))
        )
        rep = ts.backward_norm(data, 1, m)
        assert rep.value_p_power == Fraction(expected)
    _pass(4, "||B|| = q exact (q = 2, 3; p = 1, 2, 3); factorial unbounded with "
             "(n+2)^p ratio; level-sequence ||B^m|| = max window product, m <= 10")


def test_criterion_05_periodic_and_block_radii():
    data = gallery.certified_levels("periodic", 64, {"q": [2, 3]})
    for k in range(1, 7):
        rep = ts.backward_norm(data, 1, 2 * k)
        assert rep.value_p_power == Fraction(6) ** k
    sr = spectral.spectral_radius(data, "B", 1, max_power=12)
    assert abs(sr.radius_estimate - math.sqrt(6)) <= 1e-3

    blocks = gallery.certified_levels("two_three_blocks", 160)
    for m in range(1, 13):
        rep = ts.backward_norm(blocks, 1, m)
        assert rep.value_p_power == Fraction(3) ** m

    deep = gallery.certified_levels("two_three_blocks", 420)
    g420 = deep.gamma(420)  # n_k = k(k+1) at k = 20
    assert g420 == 6 ** 210
    root = math.exp(math.log(6) * 210 / 420)
    assert abs(root - math.sqrt(6)) <= 1e-2
    _pass(5, f"periodic(2,3): ||B^2k|| = 6^k exact, radius {sr.radius_estimate:.6f} "
             f"~ sqrt(6); blocks: ||B^m|| = 3^m exact to m = 12, gamma(420) = 6^210")


def test_criterion_06_witness_residuals():
    tree = ts.materialize(ts.build("periodic", {"q": [2, 1]}).spec, 30)
    threshold = ts.point_spectrum_membership_B(tree, 0.1).threshold
    rng = random.Random(2026)
    worst = 0.0
    for _ in range(50):
        r = rng.uniform(0.05, 0.9 * threshold)
        th = rng.uniform(0.0, 2.0 * math.pi)
        lam = complex(r * math.cos(th), r * math.sin(th))
        rep = spectral.eigenfunction_B(tree, lam, mode="complex")
        assert rep.verdict == "verified"
        worst = max(worst, abs(rep.residual))
        assert abs(rep.residual) <= 1e-10

    k2 = ts.materialize(ts.build("k_tree", {"k": 2}).spec, 10)
    for _ in range(20):
        lam = Fraction(rng.randint(110, 300), 100) * rng.choice((-1, 1))
        rep = spectral.resolvent_witness_S(k2, lam, mode="exact")
        assert rep.verdict == "verified"
        assert rep.residual == 0

    h2 = ts.materialize(ts.build("homogeneous", {"q": 2}).spec, 14)
    for p in (1, 2):
        rep = spectral.nonsurjectivity_blowup_S(h2, Fraction(1, 2), p=p)
        assert rep.verdict == "verified"
        assert rep.profile["mean_p_powers"] == [
            Fraction(2) ** (p * (n + 1)) for n in range(h2.depth + 1)
        ]
        assert rep.profile["divergent"] is True
    _pass(6, f"50 complex eigenfunctions |residual| <= {worst:.1e}; 20 rational "
             "resolvent witnesses residual exactly 0; blowup means = |lambda|^{-p(n+1)} exact")


def test_criterion_07_hypercyclicity_suite():
    h2 = ts.materialize(ts.build("homogeneous", {"q": 2}).spec, 16)
    ce = ts.materialize(ts.build("ceil_three_halves").spec, 20)
    ratios = {}
    for label, tree, kwargs in (
        ("homogeneous(2)", h2, {"max_support_level": 6}),
        ("ceil_three_halves", ce, {}),
    ):
        rep = hypercyclicity.kgs_suite(tree, samples=100, n_max=10, p=1, seed=7, **kwargs)
        assert rep.inversion_failures == 0
        assert rep.bound_failures == 0
        for sample in rep.sample_reports:
            assert sample.annihilation_checked
            assert sample.inversion_exact
            assert sample.bounds_hold
            norms = sample.norm_p_powers
            assert all(norms[i + 1] <= norms[i] for i in range(len(norms) - 1))
        ratios[label] = rep.decay_summary["max_final_ratio_p_power"]
        assert ratios[label] < 0.05

    for info in gallery.list_entries():
        entry = ts.build(info["name"])
        depth = 5 if info["name"] == "factorial" else 8
        tree = ts.materialize(entry.spec, depth)
        assert hypercyclicity.verdict(tree, "S").verdict == "no"

    leafy_spec = ts.specio.parse_tree_ref(
        {"kind": "degree_table", "params": {"rows": [[2], [0, 2]], "default_degree": 2}}
    )
    leafy = ts.materialize(leafy_spec, 6)
    v = hypercyclicity.verdict(leafy, "B")
    assert v.verdict == "no" and v.reason == "leaf_found"
    assert v.evidence["leaf"] == (1, 0)
    _pass(7, "200/200 exact inversions B^n T_n g = g, all bounds exact, norms "
             f"nonincreasing; final ratios {ratios['homogeneous(2)']:.2e} and "
             f"{ratios['ceil_three_halves']:.2e} < 0.05; verdict(S) = no on all 8 "
             "families; verdict(B) = no with leaf witness")


def test_criterion_08_oracle_consistency():
    depths = {
        "homogeneous": (None, 10),
        "level_sequence": ({"sequence": [2, 1, 3], "extend": "periodic"}, 12),
        "periodic": (None, 10),
        "k_tree": (None, 12),
        "quadratic_growth": (None, 12),
        "factorial": (None, 6),
        "ceil_three_halves": (None, 12),
        "two_three_blocks": (None, 10),
    }
    assert sorted(depths) == [e["name"] for e in gallery.list_entries()]
    t0 = time.perf_counter()
    combos = 0
    for name, (params, depth) in depths.items():
        tree = ts.materialize(ts.build(name, params).spec, depth)
        for op in ("S", "B"):
            for m in (1, 2, 3):
                for p in (1, 2):
                    low = oracle.randomized_norm_lower_bound(
                        tree, op, m, p, trials=500, seed=42
                    )
                    assert low.never_exceeded, (name, op, m, p)
                    ext = oracle.extremal_attainment(tree, op, m, p)
                    assert ext.all_equal, (name, op, m, p)
                    combos += 1
    dt = time.perf_counter() - t0
    assert dt < 60.0
    _pass(8, f"{combos} combos x 500 trials: no random ratio ever exceeded the "
             f"formula, extremal functions attain it at every level; {dt:.1f} s")


def test_criterion_09_isometry():
    seq = [1, 2, 1, 3, 2]
    tree = ts.materialize(
        ts.build("level_sequence", {"sequence": seq, "extend": "periodic"}).spec, 20
    )
    rep = ts.isometry_check(tree, p=1)
    assert rep.isometric is True
    assert rep.degree_sequence == [seq[i % len(seq)] for i in range(20)]

    rng = random.Random(31)
    for trial in range(100):
        f = random_rational_function(tree, rng, tree.depth - 1)
        sf = ts.apply_forward(tree, f, 1)
        for p in (1, 2):
            for n in range(tree.depth):
                assert mean_p_power(tree, sf, p, n + 1) == mean_p_power(tree, f, p, n)

    k2 = ts.materialize(ts.build("k_tree", {"k": 2}).spec, 10)
    rep2 = ts.isometry_check(k2, p=1)
    assert rep2.isometric is False
    w = rep2.witness
    assert w.vertex_a[0] == w.vertex_b[0] == w.level
    assert w.degree_a != w.degree_b
    assert len(k2.children_range(VertexId(*w.vertex_a))) == w.degree_a
    assert len(k2.children_range(VertexId(*w.vertex_b))) == w.degree_b
    assert w.chi_norm_p_power != w.shifted_norm_p_power
    _pass(9, "level-sequence tree isometric with recovered degrees; 100 random f "
             "preserve every level mean exactly (p = 1, 2); k_tree(2) refuted by a "
             f"level-{w.level} degree mismatch {w.degree_a} vs {w.degree_b}")


def test_criterion_10_forward_orbit_obstruction():
    tree = ts.materialize(ts.build("homogeneous", {"q": 2}).spec, 12)
    rng = random.Random(77)
    for trial in range(100):
        p = 1 if trial % 2 == 0 else 2
        f = random_rational_function(tree, rng, tree.depth - 8)
        g = random_rational_function(tree, rng, tree.depth)
        if g((0, 0)) == 0:
            g = g + TreeFunction.chi((0, 0), value=Fraction(1, 3))
        rep = ts.forward_orbit_obstruction(tree, f, g, p, n_max=8)
        assert rep.all_hold is True
        for bound in rep.bounds:
            assert bound.holds
            assert bound.lower_bound_p_power == rep.g_root_abs_p_power
            assert bound.norm_p_power >= rep.g_root_abs_p_power
    _pass(10, "100 random (f, g) with g(root) != 0: ||S^N f - g||^p >= |g(root)|^p "
              "exactly for every N <= 8")
