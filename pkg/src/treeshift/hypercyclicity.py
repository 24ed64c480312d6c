"""Hypercyclicity of the shifts on the little space H^p_0(T).

S is never hypercyclic on any tree: evaluation at the root survives every
forward shift ((S^N f)(root) = 0), so ||S^N f - g|| >= |g(root)| and orbits
stay away from any target with g(root) != 0.

B is hypercyclic on H^p_0 exactly when the tree is leafless and gamma(n) ->
infinity.  The constructive half rests on three pieces of data, produced
here: B^n annihilates anything supported below level n; the averaging right
inverse

    (T_n g)(v) = g(u) / gamma(n, u),   u the n-fold parent of v,

satisfies B^n T_n g = g exactly; and ||T_n g||^p <= max_{0<=s<=N}
gamma(s)/gamma(s+n) * ||g||^p for g supported in levels 0..N, which tends to
0 when the level sizes diverge.  ``kgs_suite`` exercises all three on seeded
random samples.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .exceptions import LeafObstructionError, OutOfDepthError, ParameterError
from .functions import TreeFunction, hardy_norm
from .reports import HypercyclicityVerdict, KgsReport, KgsSample
from .sampling import random_rational_function
from .shifts import BACKWARD, FORWARD, apply_backward
from .trees import LevelTree, VertexId


def verdict(tree: LevelTree, op: str) -> HypercyclicityVerdict:
    """Hypercyclicity verdict for op on H^p_0 over the tree behind ``tree``.

    For B the certificate hierarchy is: a leaf anywhere kills hypercyclicity
    (chi_leaf generates an invariant defect); certified gamma divergence (or
    certified boundedness) settles the growth condition; otherwise the only
    honest answer at finite depth is "inconclusive".
    """
    if op == FORWARD:
        return HypercyclicityVerdict(
            operator=FORWARD,
            verdict="no",
            reason="S_never",
            evidence={
                "obstruction": "(S^N f)(root) = 0 for N >= 1, so ||S^N f - g|| >= |g(root)|; "
                "orbits never approach targets with g(root) != 0"
            },
        )
    if op != BACKWARD:
        raise ParameterError(f"unknown operator {op!r}, expected 'S' or 'B'")
    leaf = tree.find_leaf()
    if leaf is not None:
        return HypercyclicityVerdict(
            operator=BACKWARD,
            verdict="no",
            reason="leaf_found",
            evidence={
                "leaf": (leaf.level, leaf.index),
                "obstruction": "a leaf makes B fail the transitivity criterion below it",
            },
        )
    certs = tree.spec.certificates if tree.spec is not None else None
    profile = [tree.gamma(n) for n in range(min(tree.depth, 12) + 1)]
    if certs is not None and certs.gamma_diverges is True:
        return HypercyclicityVerdict(
            operator=BACKWARD,
            verdict="yes",
            reason="gamma_divergent",
            evidence={
                "closed_form": certs.gamma_divergence_claim,
                "gamma_prefix": profile,
                "criterion": "leafless (no leaf to the horizon) and gamma(n) -> infinity",
            },
        )
    if certs is not None and certs.gamma_diverges is False:
        return HypercyclicityVerdict(
            operator=BACKWARD,
            verdict="no",
            reason="gamma_bounded",
            evidence={
                "closed_form": certs.gamma_divergence_claim,
                "gamma_prefix": profile,
                "criterion": "gamma(n) stays bounded, so ||T_n g|| cannot shrink",
            },
        )
    return HypercyclicityVerdict(
        operator=BACKWARD,
        verdict="inconclusive",
        reason="depth_limited",
        evidence={
            "gamma_prefix": profile,
            "gamma_at_depth": tree.gamma(tree.depth),
            "note": "no closed form for gamma; divergence cannot be certified from a finite prefix",
        },
    )


def kgs_right_inverse(tree: LevelTree, g: TreeFunction, n: int) -> TreeFunction:
    """T_n g: spread each value g(u) uniformly over the n-fold children of u.

    Exact in rational mode (division by the integer gamma(n, u)).  Raises
    LeafObstructionError when some supported vertex has no n-fold children.
    """
    if n < 0:
        raise ParameterError("n must be >= 0")
    if n == 0:
        return g
    if g.max_support_level + n > tree.depth:
        raise OutOfDepthError(
            f"T_{n} pushes support to level {g.max_support_level + n} > depth {tree.depth}"
        )
    entries: dict[tuple[int, int], object] = {}
    for (lv, idx), val in g.values.items():
        lo, hi = tree.descendant_range(VertexId(lv, idx), n)
        count = hi - lo
        if count == 0:
            raise LeafObstructionError(
                f"vertex ({lv}, {idx}) has no descendants at distance {n}; "
                "the right inverse needs a leafless sector"
            )
        share = val / count
        for j in range(lo, hi):
            entries[(lv + n, j)] = share
    return TreeFunction.from_entries(entries.items(), g.mode)


def kgs_suite(
    tree: LevelTree,
    samples: int = 25,
    n_max: int = 6,
    p=1,
    seed: int = 0,
    max_support_level: Optional[int] = None,
) -> KgsReport:
    """Exercise the right-inverse data on seeded random rational g.

    Per sample: (a) B^{N+1} g = 0 for N the top support level (annihilation
    past the support), (b) B^n T_n g = g exactly for every n <= n_max,
    (c) ||T_n g||^p_p <= max_{0<=s<=N} gamma(s)/gamma(s+n) * ||g||^p_p, with
    the norm sequence recorded so decay toward 0 is visible.  All checks are
    exact rational arithmetic; any failure is counted, never masked.
    """
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    if n_max < 1:
        raise ParameterError("n_max must be >= 1")
    if max_support_level is None:
        max_support_level = min(tree.depth - n_max, max(tree.depth // 2, 0))
    if max_support_level < 0 or max_support_level + n_max > tree.depth:
        raise OutOfDepthError(
            f"suite needs max_support_level + n_max <= depth; got "
            f"{max_support_level} + {n_max} > {tree.depth}"
        )
    rng = random.Random(seed)
    reports: list[KgsSample] = []
    inversion_failures = 0
    bound_failures = 0
    final_ratios: list[float] = []
    for si in range(samples):
        g = random_rational_function(tree, rng, max_support_level)
        g_norm_p = hardy_norm(tree, g, p).value_p_power
        top = g.max_support_level
        annihilated = apply_backward(tree, g, top + 1).is_zero()
        inversion_ok = True
        norm_seq = []
        bound_seq = []
        bounds_ok = True
        for n in range(1, n_max + 1):
            f_n = kgs_right_inverse(tree, g, n)
            if apply_backward(tree, f_n, n) != g:
                inversion_ok = False
            norm_p = hardy_norm(tree, f_n, p).value_p_power
            bound = max(Fraction(tree.gamma(s), tree.gamma(s + n)) for s in range(top + 1))
            bound_p = bound * g_norm_p
            norm_seq.append(norm_p)
            bound_seq.append(bound_p)
            if norm_p > bound_p:
                bounds_ok = False
        if not inversion_ok:
            inversion_failures += 1
        if not bounds_ok:
            bound_failures += 1
        final_ratios.append(float(norm_seq[-1] / g_norm_p))
        reports.append(
            KgsSample(
                seed_index=si,
                support_size=len(g.values),
                max_support_level=top,
                annihilation_checked=annihilated,
                inversion_exact=inversion_ok,
                norm_p_powers=norm_seq,
                bound_p_powers=bound_seq,
                bounds_hold=bounds_ok,
            )
        )
    decay = {
        "max_final_ratio_p_power": max(final_ratios),
        "mean_final_ratio_p_power": sum(final_ratios) / len(final_ratios),
        "note": "ratio ||T_n g||^p / ||g||^p at n = n_max; -> 0 iff gamma diverges",
    }
    return KgsReport(
        samples=samples,
        n_max=n_max,
        p=float(p),
        seed=seed,
        inversion_failures=inversion_failures,
        bound_failures=bound_failures,
        decay_summary=decay,
        sample_reports=reports,
    )
