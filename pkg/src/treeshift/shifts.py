"""Forward and backward shifts on H^p(T): application, norms, isometry, orbits.

Application works pointwise on sparse functions over a materialized tree:

    (S^m f)(v) = f(m-fold parent of v)        support fans out to m-children
    (B^m f)(v) = sum_{w an m-child of v} f(w) support contracts by m levels

Norms come from sup scans of exact level ratios:

    ||S^m||^p = sup_{n >= m} K(m, n-m) gamma(n-m) / gamma(n)      (p-free ratio)
    ||B^m||^p = sup_{n >= 0} K(m, n)^{p-1} gamma(n+m) / gamma(n)

The scans accept either a materialized LevelTree or certified level data from
the gallery (anything with gamma/K/depth/spec).  When the spec carries a
certificate resolving the sup for (m, p), the report states the certified
exact value (the sup may be attained only in the limit, or beyond any
materializable depth) alongside the honest finite-depth scan.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .certificates import SupClaim
from .exceptions import OutOfDepthError, ParameterError, TreeShiftError
from .functions import TreeFunction, hardy_norm, mean_p_power, _check_p, abs_p_power
from .reports import (
    BOUNDED,
    INCONCLUSIVE,
    UNBOUNDED,
    IsometryReport,
    IsometryWitness,
    NormReport,
    ObstructionBound,
    ObstructionReport,
)
from .trees import LevelTree, VertexId

FORWARD = "S"
BACKWARD = "B"


def apply_forward(tree: LevelTree, f: TreeFunction, m: int = 1) -> TreeFunction:
    """S^m f: each supported vertex hands its value to all of its m-children."""
    if m < 0:
        raise ParameterError("shift power must be >= 0")
    if m == 0:
        return f
    if f.max_support_level + m > tree.depth:
        raise OutOfDepthError(
            f"S^{m} pushes support to level {f.max_support_level + m} > depth {tree.depth}"
        )
    out: dict[tuple[int, int], object] = {}
    for (lv, idx), val in f.values.items():
        lo, hi = tree.descendant_range(VertexId(lv, idx), m)
        target = lv + m
        for j in range(lo, hi):
            out[(target, j)] = val
    return TreeFunction.from_entries(out.items(), f.mode)


def apply_backward(tree: LevelTree, f: TreeFunction, m: int = 1) -> TreeFunction:
    """B^m f: each vertex collects the sum of its m-children's values."""
    if m < 0:
        raise ParameterError("shift power must be >= 0")
    if m == 0:
        return f
    if f.max_support_level > tree.depth:
        raise OutOfDepthError("function lives beyond the materialized depth")
    acc: dict[tuple[int, int], object] = {}
    for (lv, idx), val in f.values.items():
        if lv < m:
            continue  # no vertex m levels up; the mass falls off the root
        anc = tree.ancestor(VertexId(lv, idx), m)
        key = (anc.level, anc.index)
        acc[key] = acc.get(key, 0) + val
    return TreeFunction.from_entries(acc.items(), f.mode)


def apply(tree: LevelTree, f: TreeFunction, op: str, m: int = 1) -> TreeFunction:
    if op == FORWARD:
        return apply_forward(tree, f, m)
    if op == BACKWARD:
        return apply_backward(tree, f, m)
    raise ParameterError(f"unknown operator {op!r}, expected 'S' or 'B'")


# ---------------------------------------------------------------------------
# Norm scans
# ---------------------------------------------------------------------------

def _validate_norm_args(data, p, m: int, needed_depth: int) -> bool:
    if m < 1:
        raise ParameterError("operator power must be >= 1")
    exact = float(p) == int(p) if p >= 1 else False
    if p < 1:
        raise ParameterError(f"p must be >= 1, got {p}")
    if data.depth < needed_depth:
        raise OutOfDepthError(
            f"norm scan needs depth >= {needed_depth}, have {data.depth}"
        )
    return exact


def _scan(ratios) -> tuple[object, int, bool]:
    """Max, argmax level (smallest on ties), and a still-growing flag."""
    best = None
    best_n = None
    prev = None
    growing_tail = False
    last_n = None
    for n, value in ratios:
        if best is None or value > best:
            best, best_n = value, n
        growing_tail = prev is not None and value >= prev
        prev = value
        last_n = n
    still_growing = best_n is not None and last_n is not None and best_n >= last_n - 1 and growing_tail
    return best, best_n, still_growing


def _certified_sup(data, op: str, m: int, p) -> Optional[SupClaim]:
    spec = getattr(data, "spec", None)
    certs = getattr(spec, "certificates", None)
    if certs is None:
        return None
    getter = certs.forward_sup if op == FORWARD else certs.backward_sup
    if getter is None:
        return None
    return getter(m, p)


def _norm_report(op: str, m: int, p, data, ratios) -> NormReport:
    scanned, attained, still_growing = _scan(ratios)
    claim = _certified_sup(data, op, m, p)
    root = 1.0 / float(p)
    if claim is not None and claim.bounded:
        certified = claim.p_power
        if isinstance(scanned, Fraction) and isinstance(certified, Fraction):
            if scanned > certified:
                raise TreeShiftError(
                    f"certificate for ||{op}^{m}|| ({certified}) is below the scanned sup "
                    f"({scanned}); the certificate is wrong"
                )
            attained_level = attained if scanned == certified else None
        else:
            if float(scanned) > float(certified) * (1 + 1e-12):
                raise TreeShiftError(
                    f"certificate for ||{op}^{m}|| ({certified}) is below the scanned sup "
                    f"({scanned}); the certificate is wrong"
                )
            attained_level = attained if float(scanned) >= float(certified) * (1 - 1e-12) else None
        return NormReport(
            value_p_power=certified,
            value=float(certified) ** root,
            attained_level=attained_level,
            truncated=False,
            bounded_verdict=BOUNDED,
            operator=op,
            power=m,
            p=float(p),
            scanned_sup_p_power=scanned,
            scan_depth=data.depth,
            certificate=claim.claim,
        )
    if claim is not None and not claim.bounded:
        return NormReport(
            value_p_power=scanned,
            value=float(scanned) ** root,
            attained_level=None,
            truncated=True,
            bounded_verdict=UNBOUNDED,
            operator=op,
            power=m,
            p=float(p),
            scanned_sup_p_power=scanned,
            scan_depth=data.depth,
            certificate=claim.claim,
            divergence=claim.ratio_text,
        )
    # No certificate: report the scan, flagged when it was still climbing.
    return NormReport(
        value_p_power=scanned,
        value=float(scanned) ** root,
        attained_level=None if still_growing else attained,
        truncated=still_growing,
        bounded_verdict=INCONCLUSIVE if still_growing else BOUNDED,
        operator=op,
        power=m,
        p=float(p),
        scanned_sup_p_power=scanned,
        scan_depth=data.depth,
    )


def forward_norm(data, p, power: int = 1) -> NormReport:
    """||S^power|| on H^p for the tree behind ``data`` (LevelTree or certified levels)."""
    m = power
    exact = _validate_norm_args(data, p, m, m + 1)

    def ratios():
        for n in range(m, data.depth + 1):
            num = data.K(m, n - m) * data.gamma(n - m)
            den = data.gamma(n)
            yield n, (Fraction(num, den) if exact else num / den)

    return _norm_report(FORWARD, m, p, data, ratios())


def backward_norm(data, p, power: int = 1) -> NormReport:
    """||B^power|| on H^p; the ratio carries the Jensen factor K^{p-1}."""
    m = power
    exact = _validate_norm_args(data, p, m, m)

    def ratios():
        for n in range(0, data.depth - m + 1):
            k = data.K(m, n)
            if exact:
                yield n, Fraction(k ** (int(p) - 1) * data.gamma(n + m), data.gamma(n))
            else:
                yield n, float(k) ** (float(p) - 1.0) * (data.gamma(n + m) / data.gamma(n))

    return _norm_report(BACKWARD, m, p, data, ratios())


def operator_norm(data, op: str, p, power: int = 1) -> NormReport:
    if op == FORWARD:
        return forward_norm(data, p, power)
    if op == BACKWARD:
        return backward_norm(data, p, power)
    raise ParameterError(f"unknown operator {op!r}, expected 'S' or 'B'")


# ---------------------------------------------------------------------------
# Isometry and orbit obstruction
# ---------------------------------------------------------------------------

def isometry_check(tree: LevelTree, p=1) -> IsometryReport:
    """S is an isometry iff children counts are constant per level.

    When they are, the common counts form the level degree sequence (s_n) and
    gamma(n) = s_1 ... s_n.  Otherwise two same-level vertices with different
    counts give chi_w with ||S chi_w||^p = gamma(1, w) / gamma(|w|+1)
    differing from ||chi_w||^p = 1 / gamma(|w|) for at least one of them.
    """
    _check_p(p, "exact")
    sequence: list[int] = []
    for n in range(tree.depth):
        row = tree.degrees(n)
        lo, hi = int(row.min()), int(row.max())
        if lo == hi:
            sequence.append(lo)
            continue
        a = int(np.flatnonzero(row == lo)[0])
        b = int(np.flatnonzero(row == hi)[0])
        # chi at whichever vertex breaks gamma(1, w) * gamma(n) == gamma(n+1).
        g_n, g_n1 = tree.gamma(n), tree.gamma(n + 1)
        w_idx, w_deg = (a, lo) if lo * g_n != g_n1 else (b, hi)
        witness = IsometryWitness(
            level=n,
            vertex_a=(n, a),
            vertex_b=(n, b),
            degree_a=lo,
            degree_b=hi,
            chi_vertex=(n, w_idx),
            chi_norm_p_power=Fraction(1, g_n),
            shifted_norm_p_power=Fraction(w_deg, g_n1),
        )
        return IsometryReport(
            isometric=False, p=float(p), levels_checked=n + 1, witness=witness
        )
    return IsometryReport(
        isometric=True, p=float(p), levels_checked=tree.depth, degree_sequence=sequence
    )


def forward_orbit_obstruction(
    tree: LevelTree, f: TreeFunction, g: TreeFunction, p, n_max: int
) -> ObstructionReport:
    """Verify ||S^N f - g|| >= |g(root)| for N = 1..n_max.

    Evaluation at the root survives every forward shift: (S^N f)(root) = 0
    for N >= 1, so the level-0 mean of S^N f - g is exactly |g(root)| and the
    sup norm dominates it.  This is the obstruction that makes S never
    hypercyclic regardless of the tree.
    """
    if n_max < 1:
        raise ParameterError("n_max must be >= 1")
    if f.mode != g.mode:
        raise ParameterError("f and g must share a value mode")
    g_root = g((0, 0))
    if g_root == 0:
        raise ParameterError("the obstruction needs g(root) != 0")
    exact = _check_p(p, f.mode)
    bound_p = abs_p_power(g_root, p, exact)
    bounds = []
    all_hold = True
    for n_power in range(1, n_max + 1):
        shifted = apply_forward(tree, f, n_power)
        report = hardy_norm(tree, shifted - g, p)
        holds = report.value_p_power >= bound_p
        all_hold = all_hold and holds
        bounds.append(
            ObstructionBound(
                n_power=n_power,
                norm_p_power=report.value_p_power,
                norm=report.value,
                lower_bound_p_power=bound_p,
                holds=holds,
            )
        )
    return ObstructionReport(
        g_root_abs=float(abs(g_root)),
        g_root_abs_p_power=bound_p,
        bounds=bounds,
        all_hold=all_hold,
    )
