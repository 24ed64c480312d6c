"""Independent validation of the norm formulas.

Everything here produces ratios ||T^m f|| / ||f|| through the application
machinery (apply_forward / apply_backward / hardy_norm) and compares them
against the formula value from the outside; none of it reuses the sup-scan
code path being validated.

Three instruments:

* randomized_norm_lower_bound: seeded random rational f; every ratio must sit
  below the formula norm, and the best one is reported as a lower bound.
* extremal_attainment: the proof constructions (value gamma(n)^{1/p} at a
  maximizing vertex for S; value (gamma(n+m)/K(m,n))^{1/p} spread over the
  m-children of a maximizing vertex for B) achieve the formula ratio exactly,
  level by level.  Values c * rho^{1/p} are carried as exact pairs (c, rho)
  so |value|^p = c^p rho stays rational for any integer p.
* truncated_finite_support_check: exhaustive grid search on a tiny tree.  A
  maximizer of the ratio may be assumed single-level (restricting f to the
  source level of the numerator's sup keeps the numerator and cannot grow the
  denominator), so enumeration per level is exhaustive for the max.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional

from .exceptions import BudgetError, ParameterError
from .functions import EXACT, TreeFunction, hardy_norm
from .reports import ExtremalLevel, ExtremalReport, GridReport, OracleReport
from .sampling import random_rational_function
from .shifts import BACKWARD, FORWARD, apply, operator_norm
from .trees import LevelTree, VertexId


def _formula_p_power(tree: LevelTree, op: str, power: int, p):
    report = operator_norm(tree, op, p, power)
    return report.value_p_power


def _extremal_rational(tree: LevelTree, op: str, power: int) -> Optional[TreeFunction]:
    """The p = 1 extremal as an actual rational function, at the best level."""
    if op == FORWARD:
        best, best_t = None, None
        for t in range(0, tree.depth - power + 1):
            r = Fraction(tree.K(power, t) * tree.gamma(t), tree.gamma(t + power))
            if best is None or r > best:
                best, best_t = r, t
        if best_t is None:
            return None
        w = tree.argmax_gamma_sub(power, best_t)
        return TreeFunction.chi(w, EXACT, value=tree.gamma(best_t))
    best, best_n = None, None
    for n in range(0, tree.depth - power + 1):
        r = Fraction(tree.gamma(n + power), tree.gamma(n))  # p = 1: K drops out
        if best is None or r > best:
            best, best_n = r, n
    if best_n is None:
        return None
    w = tree.argmax_gamma_sub(power, best_n)
    lo, hi = tree.descendant_range(w, power)
    val = Fraction(tree.gamma(best_n + power), hi - lo)
    return TreeFunction.from_entries(
        (((best_n + power, j), val) for j in range(lo, hi)), EXACT
    )


def randomized_norm_lower_bound(
    tree: LevelTree,
    op: str,
    power: int,
    p,
    trials: int,
    seed: int,
    max_level: Optional[int] = None,
    include_extremal: bool = True,
) -> OracleReport:
    """Best ratio ||op^power f||_p / ||f||_p over seeded random rational f.

    The seed is part of the report; identical inputs give identical outputs.
    ``never_exceeded`` asserts that no sampled ratio (extremal included) got
    above the formula norm; with exact arithmetic this is a hard comparison,
    not a tolerance.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    if op not in (FORWARD, BACKWARD):
        raise ParameterError(f"unknown operator {op!r}")
    if max_level is None:
        max_level = tree.depth - power if op == FORWARD else tree.depth
    rng = random.Random(seed)
    formula_p = _formula_p_power(tree, op, power, p)
    exact = float(p) == int(p)
    pool: list[tuple[Optional[int], TreeFunction]] = [
        (i, random_rational_function(tree, rng, max_level)) for i in range(trials)
    ]
    extremal_included = False
    if include_extremal and float(p) == 1.0:
        extremal = _extremal_rational(tree, op, power)
        if extremal is not None:
            pool.append((None, extremal))
            extremal_included = True
    best = Fraction(0) if exact else 0.0
    best_idx: Optional[int] = None
    never_exceeded = True
    for idx, f in pool:
        den = hardy_norm(tree, f, p).value_p_power
        num = hardy_norm(tree, apply(tree, f, op, power), p).value_p_power
        ratio = num / den
        if ratio > best:
            best, best_idx = ratio, idx
        if exact:
            if ratio > formula_p:
                never_exceeded = False
        elif float(ratio) > float(formula_p) * (1 + 1e-12):
            never_exceeded = False
    return OracleReport(
        operator=op,
        power=power,
        p=float(p),
        seed=seed,
        trials=trials,
        best_ratio_p_power=best,
        formula_p_power=formula_p,
        gap_p_power=float(formula_p) - float(best),
        never_exceeded=never_exceeded,
        extremal_included=extremal_included,
        best_trial=best_idx,
    )


# ---------------------------------------------------------------------------
# Extremal attainment with (coeff, payload) pairs
# ---------------------------------------------------------------------------

def extremal_attainment(
    tree: LevelTree, op: str, power: int, p: int, levels: Optional[range] = None
) -> ExtremalReport:
    """Verify the proof constructions attain the level ratios exactly.

    For S^m at target level n (source t = n-m): f = gamma(t)^{1/p} at a
    vertex w maximizing gamma(m, .); then M_p^p(t, f) = 1 and

        M_p^p(n, S^m f) = K(m, t) gamma(t) / gamma(n).

    For B^m at source level n: f = (gamma(n+m)/K(m,n))^{1/p} on the m-children
    of a maximizing vertex; M_p^p(n+m, f) = 1 and

        M_p^p(n, B^m f) = K(m, n)^{p-1} gamma(n+m) / gamma(n).

    The left sides are computed by actually fanning out / summing over the
    materialized arrays with |c * rho^{1/p}|^p = c^p rho kept rational.
    """
    if int(p) != p or p < 1:
        raise ParameterError("extremal attainment needs integer p >= 1")
    p = int(p)
    if power < 1:
        raise ParameterError("power must be >= 1")
    out: list[ExtremalLevel] = []
    if op == FORWARD:
        rng_levels = levels if levels is not None else range(power, tree.depth + 1)
        for n in rng_levels:
            t = n - power
            if t < 0 or n > tree.depth:
                raise ParameterError(f"level {n} out of range for S^{power}")
            w = tree.argmax_gamma_sub(power, t)
            payload = Fraction(tree.gamma(t))
            lo, hi = tree.descendant_range(w, power)
            # S^m relocates the single pair (1, payload) to hi-lo vertices.
            lhs = Fraction(hi - lo) * payload / tree.gamma(n)
            rhs = Fraction(tree.K(power, t) * tree.gamma(t), tree.gamma(n))
            out.append(ExtremalLevel(level=n, lhs_p_power=lhs, rhs_p_power=rhs, equal=lhs == rhs))
    elif op == BACKWARD:
        rng_levels = levels if levels is not None else range(0, tree.depth - power + 1)
        for n in rng_levels:
            if n < 0 or n + power > tree.depth:
                raise ParameterError(f"level {n} out of range for B^{power}")
            w = tree.argmax_gamma_sub(power, n)
            k_here = tree.gamma_sub(power, w)
            payload = Fraction(tree.gamma(n + power), k_here)
            lo, hi = tree.descendant_range(w, power)
            # B^m sums equal-payload pairs: accumulate integer coefficients by
            # walking each supported vertex up to its power-fold ancestor.
            coeffs: dict[tuple[int, int], int] = {}
            for j in range(lo, hi):
                anc = tree.ancestor(VertexId(n + power, j), power)
                key = (anc.level, anc.index)
                coeffs[key] = coeffs.get(key, 0) + 1
            lhs_sum = sum(Fraction(c**p) * payload for c in coeffs.values())
            lhs = lhs_sum / tree.gamma(n)
            rhs = Fraction(tree.K(power, n) ** (p - 1) * tree.gamma(n + power), tree.gamma(n))
            out.append(ExtremalLevel(level=n, lhs_p_power=lhs, rhs_p_power=rhs, equal=lhs == rhs))
    else:
        raise ParameterError(f"unknown operator {op!r}")
    return ExtremalReport(
        operator=op, power=power, p=p, levels=out, all_equal=all(e.equal for e in out)
    )


def truncated_finite_support_check(
    tree: LevelTree,
    op: str,
    power: int,
    p,
    grid=(-1, 0, 1, 2),
    budget: int = 500_000,
) -> GridReport:
    """Exhaustively maximize the ratio over grid-valued single-level functions.

    Single-level supports are exhaustive for the max: restricting a maximizer
    f to the source level of the level attaining sup_n M_p(n, T^m f) keeps
    that numerator term and can only shrink ||f||.  The enumeration cost is
    sum over admissible levels of len(grid)^gamma(level); a budget overrun
    raises BudgetError instead of silently sampling.
    """
    if op == FORWARD:
        source_levels = range(0, tree.depth - power + 1)
    elif op == BACKWARD:
        source_levels = range(power, tree.depth + 1)
    else:
        raise ParameterError(f"unknown operator {op!r}")
    grid_vals = [Fraction(x) for x in grid]
    if not any(v != 0 for v in grid_vals):
        raise ParameterError("grid needs at least one nonzero value")
    cost = sum(len(grid_vals) ** tree.gamma(t) for t in source_levels)
    if cost > budget:
        # cost can be astronomically large; report its size, not its digits
        shown = str(cost) if cost.bit_length() < 60 else f"about 2^{cost.bit_length()}"
        raise BudgetError(
            f"grid enumeration needs {shown} evaluations > budget {budget}; "
            "shrink the tree, the grid, or the depth"
        )
    formula_p = _formula_p_power(tree, op, power, p)
    exact = float(p) == int(p)
    best = Fraction(0) if exact else 0.0
    best_level: Optional[int] = None
    enumerated = 0
    for t in source_levels:
        size = tree.gamma(t)
        for combo in itertools.product(grid_vals, repeat=size):
            if all(v == 0 for v in combo):
                continue
            enumerated += 1
            f = TreeFunction.from_entries(
                (((t, i), v) for i, v in enumerate(combo) if v != 0), EXACT
            )
            den = hardy_norm(tree, f, p).value_p_power
            num = hardy_norm(tree, apply(tree, f, op, power), p).value_p_power
            ratio = num / den
            if ratio > best:
                best, best_level = ratio, t
    if float(p) == 1.0:
        extremal = _extremal_rational(tree, op, power)
        if extremal is not None:
            enumerated += 1
            den = hardy_norm(tree, extremal, p).value_p_power
            num = hardy_norm(tree, apply(tree, extremal, op, power), p).value_p_power
            ratio = num / den
            if ratio > best:
                best, best_level = ratio, extremal.support()[0][0]
    within = best <= formula_p if exact else float(best) <= float(formula_p) * (1 + 1e-12)
    return GridReport(
        operator=op,
        power=power,
        p=float(p),
        grid=[str(x) for x in grid_vals],
        functions_enumerated=enumerated,
        max_ratio_p_power=best,
        argmax_level=best_level,
        formula_p_power=formula_p,
        within_formula=within,
    )
