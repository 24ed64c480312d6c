"""Spectral constructions for the shifts: eigenfunctions of B, resolvent-type
witnesses for S, spectral radii via power norms.

The backward shift has a one-parameter family of eigenfunctions on any tree:
start with f(root) = 1 and divide by the children count at each step,

    f(v) = lambda^{|v|} / ( gamma(1, v_1) gamma(1, v_2) ... gamma(1, root) )

(v_1, v_2, ... the ancestors of v).  Summing over children then reproduces
lambda * f(v) wherever a vertex has children at all.  For S the picture is
rigid instead: (S - lambda) f = chi_w forces f = -lambda^{-(|v|-|w|+1)} on the
sector below w, which lies in H^p for |lambda| > 1 and blows up level by
level for 0 < |lambda| < 1.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

import numpy as np

from .exceptions import OutOfDepthError, ParameterError
from .functions import COMPLEX, EXACT, TreeFunction, mean_p_power
from .reports import (
    UNBOUNDED,
    MembershipReport,
    NormReport,
    PointSpectrumS,
    SpectralReport,
    WitnessReport,
)
from .shifts import BACKWARD, FORWARD, apply_forward, operator_norm
from .trees import LevelTree, VertexId

Scalar = Union[int, Fraction, float, complex]


def _is_rational(lam: Scalar) -> bool:
    return isinstance(lam, Rational)


def _resolve_mode(lam: Scalar, mode: str) -> str:
    if mode == "auto":
        return EXACT if _is_rational(lam) else COMPLEX
    if mode == EXACT:
        if not _is_rational(lam):
            raise ParameterError("exact mode needs a rational (real) lambda")
        return EXACT
    if mode == COMPLEX:
        return COMPLEX
    raise ParameterError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Eigenfunctions of the backward shift
# ---------------------------------------------------------------------------

def eigenfunction_B(tree: LevelTree, lam: Scalar, mode: str = "auto", p=1) -> WitnessReport:
    """Build the canonical eigenfunction of B for eigenvalue lambda.

    Returns the witness with the max residual |(B f - lambda f)(v)| over all
    vertices whose children are materialized (levels 0..depth-1).  In exact
    mode the residual is an exact Fraction (zero on leafless trees).  On a
    tree with a leaf the identity genuinely fails at the leaf for lambda != 0
    and the report says so rather than hiding the level.
    """
    mode = _resolve_mode(lam, mode)
    if mode == EXACT:
        report = _eigenfunction_exact(tree, Fraction(lam))
    else:
        report = _eigenfunction_complex(tree, complex(lam))
    try:
        prof = [mean_p_power(tree, report.witness, p, n) for n in range(tree.depth + 1)]
    except ParameterError:
        prof = None  # exact values with non-integer p: means are not representable
    if prof is not None:
        report.profile["p"] = float(p)
        report.profile["mean_p_powers"] = prof
    return report


def _eigenfunction_exact(tree: LevelTree, lam: Fraction) -> WitnessReport:
    levels: list[list[Fraction]] = [[Fraction(1)]]
    for n in range(tree.depth):
        starts = tree._child_starts[n]
        row: list[Fraction] = [Fraction(0)] * tree.gamma(n + 1)
        for i, val in enumerate(levels[n]):
            deg = int(starts[i + 1] - starts[i])
            if deg == 0 or val == 0:
                continue
            child_val = val * lam / deg
            for j in range(int(starts[i]), int(starts[i + 1])):
                row[j] = child_val
        levels.append(row)
    residual = Fraction(0)
    for n in range(tree.depth):
        starts = tree._child_starts[n]
        child = levels[n + 1]
        for i, val in enumerate(levels[n]):
            s = sum(child[j] for j in range(int(starts[i]), int(starts[i + 1])))
            defect = abs(s - lam * val)
            if defect > residual:
                residual = defect
    entries = {
        (n, i): v for n, row in enumerate(levels) for i, v in enumerate(row) if v != 0
    }
    witness = TreeFunction(entries, EXACT, max((lv for lv, _ in entries), default=0))
    return WitnessReport(
        identity="B f = lambda f",
        verdict="verified" if residual == 0 else "residual_nonzero",
        residual=residual,
        region=(0, tree.depth - 1),
        witness=witness,
        profile={"lambda": str(lam), "mode": EXACT},
    )


def _eigenfunction_complex(tree: LevelTree, lam: complex) -> WitnessReport:
    levels: list[np.ndarray] = [np.array([1.0 + 0.0j])]
    for n in range(tree.depth):
        degs = tree.degrees(n)
        vals = levels[n]
        with np.errstate(divide="ignore", invalid="ignore"):
            per_child = np.where(degs > 0, vals * lam / np.where(degs > 0, degs, 1), 0.0)
        levels.append(np.repeat(per_child, degs))
    residual = 0.0
    for n in range(tree.depth):
        starts = tree._child_starts[n]
        child = levels[n + 1]
        degs = np.diff(starts)
        if child.size and bool(np.all(degs > 0)):
            sums = np.add.reduceat(child, starts[:-1])
        else:
            sums = np.array(
                [child[int(starts[i]) : int(starts[i + 1])].sum() for i in range(len(degs))]
            )
        defect = float(np.max(np.abs(sums - lam * levels[n]))) if len(degs) else 0.0
        residual = max(residual, defect)
    entries: dict[tuple[int, int], complex] = {}
    top = 0
    for n, row in enumerate(levels):
        nz = np.flatnonzero(row != 0)
        if nz.size:
            top = n
        for i in nz:
            entries[(n, int(i))] = complex(row[i])
    witness = TreeFunction(entries, COMPLEX, top)
    return WitnessReport(
        identity="B f = lambda f",
        verdict="verified" if residual <= 1e-10 else "residual_nonzero",
        residual=residual,
        region=(0, tree.depth - 1),
        witness=witness,
        profile={"lambda": repr(lam), "mode": COMPLEX},
    )


def point_spectrum_membership_B(
    tree: LevelTree, lam: Scalar, p=1, space: str = "hardy"
) -> MembershipReport:
    """Is lambda witnessed as an eigenvalue of B on H^p (or H^p_0)?

    Membership certificates, in order: |lambda| <= 1 (strict for the little
    space) on any tree; |lambda| < t on level-regular trees, where t is the
    certified liminf of (s_1...s_n)^{1/n} when the spec carries one, else its
    finite-depth estimate.  Values within 1e-9 (relative) of the deciding
    threshold report "boundary"; anything beyond reports "not_witnessed"
    (no construction available), never "not a member".
    """
    if space not in ("hardy", "little"):
        raise ParameterError("space must be 'hardy' or 'little'")
    mod = abs(complex(lam))
    certs = tree.spec.certificates if tree.spec is not None else None

    t_value: Optional[float] = None
    t_kind = ""
    window = None
    if certs is not None and certs.liminf_geometric_mean is not None:
        t_value = float(certs.liminf_geometric_mean)
        t_kind = "certified liminf (s_1...s_n)^(1/n)"
    else:
        regular = True
        seq: list[int] = []
        for n in range(tree.depth):
            row = tree.degrees(n)
            if row.size and int(row.min()) == int(row.max()):
                seq.append(int(row[0]))
            else:
                regular = False
                break
        if regular and seq:
            start = max(1, tree.depth // 2)
            window = (start, tree.depth)
            t_value = min(
                float(tree.gamma(n)) ** (1.0 / n) for n in range(start, tree.depth + 1)
            )
            t_kind = f"liminf estimate over levels {start}..{tree.depth}"

    base = 1.0
    threshold = base
    threshold_kind = "unit disk (any tree)"
    if t_value is not None and t_value > base:
        threshold = t_value
        threshold_kind = t_kind
    tol = 1e-9 * max(threshold, 1.0)

    if abs(mod - threshold) <= tol:
        verdict = "boundary"
    elif mod < threshold:
        if space == "hardy":
            verdict = "member"
        else:
            # Little space: strict decay needed; |lambda| < 1 or < t both give it,
            # except exactly |lambda| = 1 on trees with bounded gamma.
            verdict = "member" if (mod < 1.0 - 1e-15 or (t_value or 0.0) > mod) else "boundary"
    elif space == "hardy" and abs(mod - 1.0) <= 1e-9 and threshold == 1.0:
        verdict = "boundary"
    else:
        verdict = "not_witnessed"

    eigen = None
    if verdict == "member":
        eigen = eigenfunction_B(tree, lam, mode="auto")
    return MembershipReport(
        space=space,
        lam=complex(lam),
        verdict=verdict,
        threshold=threshold,
        threshold_kind=threshold_kind,
        liminf_estimate=t_value,
        liminf_window=window,
        eigen_report=eigen,
    )


# ---------------------------------------------------------------------------
# Forward shift: sector witnesses
# ---------------------------------------------------------------------------

def _sector_function(tree: LevelTree, w: VertexId, lam, exact: bool) -> TreeFunction:
    """f = -lambda^{-(d+1)} at distance d below w (the sector of w)."""
    entries: dict[tuple[int, int], object] = {}
    inv = (Fraction(1) / lam) if exact else (1.0 / complex(lam))
    value = -inv
    for lv in range(w.level, tree.depth + 1):
        lo, hi = tree.descendant_range(w, lv - w.level)
        for i in range(lo, hi):
            entries[(lv, i)] = value
        value = value * inv
    return TreeFunction(entries, EXACT if exact else COMPLEX, tree.depth)


def _shift_residual(tree: LevelTree, f: TreeFunction, lam, w: VertexId, exact: bool):
    """max |(S - lambda) f - chi_w| over every materialized vertex."""
    residual: dict[tuple[int, int], object] = {}
    for (lv, idx), val in f.values.items():
        key = (lv, idx)
        residual[key] = residual.get(key, 0) - lam * val
        if lv < tree.depth:
            lo, hi = tree.descendant_range(VertexId(lv, idx), 1)
            for j in range(lo, hi):
                ck = (lv + 1, j)
                residual[ck] = residual.get(ck, 0) + val
    wk = (w.level, w.index)
    residual[wk] = residual.get(wk, 0) - 1
    worst = Fraction(0) if exact else 0.0
    for val in residual.values():
        a = abs(val)
        if a > worst:
            worst = a
    return worst


def resolvent_witness_S(
    tree: LevelTree, lam: Scalar, w: Optional[VertexId] = None, p=1, mode: str = "auto"
) -> WitnessReport:
    """Solve (S - lambda) f = chi_w inside H^p for |lambda| > 1.

    The solution is forced on the sector below w: f(v) = -lambda^{-(d+1)} at
    distance d.  Its level means obey

        M_p^p(n, f) = gamma(n-|w|, w)/gamma(n) * |lambda|^{-p(n-|w|+1)},

    reported alongside, so the witness visibly lies in H^p (the profile dies
    geometrically).  Rational lambda in exact mode gives a Fraction-zero
    residual.
    """
    w = VertexId(0, 0) if w is None else VertexId(*w)
    tree._check_vertex(w)
    if abs(complex(lam)) <= 1:
        raise ParameterError(f"resolvent witness needs |lambda| > 1, got |{lam}| <= 1")
    mode = _resolve_mode(lam, mode)
    exact = mode == EXACT
    lam_val = Fraction(lam) if exact else complex(lam)
    f = _sector_function(tree, w, lam_val, exact)
    residual = _shift_residual(tree, f, lam_val, w, exact)
    prof = [mean_p_power(tree, f, p, n) for n in range(w.level, tree.depth + 1)]
    ok = residual == 0 if exact else residual <= 1e-10
    return WitnessReport(
        identity="(S - lambda) f = chi_w on the materialized levels",
        verdict="verified" if ok else "residual_nonzero",
        residual=residual,
        region=(0, tree.depth),
        witness=f,
        profile={
            "lambda": str(lam),
            "vertex": (w.level, w.index),
            "p": float(p),
            "mean_p_powers": prof,
            "decays": True,
            "bound": "gamma(n-|w|, w)/gamma(n) * |lambda|^(-p(n-|w|+1))",
        },
    )


def nonsurjectivity_blowup_S(tree: LevelTree, lam: Scalar, p=1, mode: str = "auto") -> WitnessReport:
    """The forced solution of (S - lambda) f = chi_root for 0 < |lambda| < 1.

    f(v) = -lambda^{-(|v|+1)} satisfies the identity on every materialized
    level but M_p(n, f) = |lambda|^{-(n+1)} explodes, so no H^p solution
    exists: S - lambda is not surjective.  lambda = 0 is the trivial case
    ((S f)(root) = 0 can never equal 1) and reports "no_solution".
    """
    mod = abs(complex(lam))
    if mod == 0:
        return WitnessReport(
            identity="S f = chi_root",
            verdict="no_solution",
            residual=None,
            region=(0, tree.depth),
            witness=None,
            profile={"reason": "(S f)(root) = 0 for every f, so S f = chi_root has no solution"},
        )
    if mod >= 1:
        raise ParameterError(f"blowup witness needs 0 < |lambda| < 1, got |{lam}| = {mod}")
    mode = _resolve_mode(lam, mode)
    exact = mode == EXACT
    lam_val = Fraction(lam) if exact else complex(lam)
    root = VertexId(0, 0)
    f = _sector_function(tree, root, lam_val, exact)
    residual = _shift_residual(tree, f, lam_val, root, exact)
    prof = [mean_p_power(tree, f, p, n) for n in range(tree.depth + 1)]
    ok = residual == 0 if exact else residual <= 1e-10
    return WitnessReport(
        identity="(S - lambda) f = chi_root on the materialized levels",
        verdict="verified" if ok else "residual_nonzero",
        residual=residual,
        region=(0, tree.depth),
        witness=f,
        profile={
            "lambda": str(lam),
            "p": float(p),
            "mean_p_powers": prof,
            "divergent": True,
            "growth": "M_p(n, f) = |lambda|^(-(n+1)) -> infinity, so f is in no H^p",
        },
    )


def point_spectrum_S(tree: LevelTree) -> PointSpectrumS:
    """sigma_p(S) = {0} when the tree has a leaf (chi_leaf is killed by S),
    empty otherwise; leaflessness can only be certified up to the horizon."""
    leaf = tree.find_leaf()
    if leaf is not None:
        chi = TreeFunction.chi(leaf)
        shifted = apply_forward(tree, chi, 1) if leaf.level + 1 <= tree.depth else TreeFunction.zero()
        norm = 0.0 if shifted.is_zero() else 1.0
        return PointSpectrumS(
            kind="zero_only",
            leaf=(leaf.level, leaf.index),
            caveat="S chi_leaf = 0: the indicator of a leaf is an eigenfunction for 0",
            check_norm=norm,
        )
    return PointSpectrumS(
        kind="empty",
        leaf=None,
        caveat=(
            f"no leaf within depth {tree.depth}; on a leafless tree S is injective with "
            "closed range, so no eigenvalues exist (0 included)"
        ),
        check_norm=None,
    )


# ---------------------------------------------------------------------------
# Spectral radius
# ---------------------------------------------------------------------------

def spectral_radius(data, op: str, p=1, max_power: int = 8) -> SpectralReport:
    """r(T) from the power norms ||T^m||^{1/m}, m = 1..max_power.

    The estimate is the min of the sequence (the limit is also the inf for
    exact norms); ``converged`` says whether the last three entries agree to
    1e-3 relative.  Closed forms from certificates ride along when available.
    Raises ParameterError when some power norm is certified unbounded.
    """
    if max_power < 1:
        raise ParameterError("max_power must be >= 1")
    if op not in (FORWARD, BACKWARD):
        raise ParameterError(f"unknown operator {op!r}, expected 'S' or 'B'")
    needed = max_power + 1 if op == FORWARD else max_power
    if data.depth < needed:
        raise OutOfDepthError(
            f"spectral radius up to power {max_power} needs depth >= {needed}, have {data.depth}"
        )
    norms: list[NormReport] = []
    seq: list[float] = []
    for m in range(1, max_power + 1):
        report = operator_norm(data, op, p, m)
        if report.bounded_verdict == UNBOUNDED:
            raise ParameterError(
                f"||{op}^{m}|| is unbounded on H^p (p={p}): {report.divergence}; "
                "the spectral radius on H^p is undefined"
            )
        norms.append(report)
        seq.append(float(report.value_p_power) ** (1.0 / (float(p) * m)))
    estimate = min(seq)
    tail = seq[-3:]
    converged = len(tail) == 3 and (max(tail) - min(tail)) <= 1e-3 * max(tail)
    closed: Optional[object] = None
    certs = getattr(getattr(data, "spec", None), "certificates", None)
    if certs is not None:
        getter = certs.forward_radius if op == FORWARD else certs.backward_radius
        if getter is not None:
            closed = getter(p)
    truncated_any = any(r.truncated for r in norms)
    note = "some power norms were truncated scans; the estimate may undershoot" if truncated_any else ""
    return SpectralReport(
        operator=op,
        p=float(p),
        max_power=max_power,
        power_norms=norms,
        radius_sequence=seq,
        radius_estimate=estimate,
        converged=converged,
        closed_form=closed,
        note=note,
    )
