"""Finitely supported functions on a materialized tree and their level means.

The norm on H^p(T) is sup_n M_p(n, f) with

    M_p(n, f) = ( (1/gamma(n)) * sum_{|v| = n} |f(v)|^p )^{1/p},

and the primary computed quantity everywhere is the p-th power M_p^p, which
is a ratio of exact integers/rationals whenever f is rational-valued and p is
a positive integer.  Two value modes:

  * "exact":   values are Fractions (real). Requires integer p >= 1.
  * "complex": values are Python complex; means are floats.

Functions are sparse dicts keyed by (level, index); zeros are never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Optional, Union

from .exceptions import OutOfDepthError, ParameterError
from .reports import LittleSpaceReport, MeanProfile, NormReport
from .trees import LevelTree, VertexId

EXACT = "exact"
COMPLEX = "complex"

Value = Union[Fraction, complex]
Entry = tuple[tuple[int, int], Value]


def _coerce(value, mode: str) -> Value:
    if mode == EXACT:
        if isinstance(value, Rational):
            return Fraction(value)
        raise ParameterError(f"exact mode needs rational values, got {type(value).__name__}")
    return complex(value)


@dataclass(frozen=True)
class TreeFunction:
    """Sparse function on tree vertices; immutable by convention."""

    values: Mapping[tuple[int, int], Value]
    mode: str
    max_support_level: int = field(default=0)

    @staticmethod
    def from_entries(entries: Iterable[Entry], mode: str = EXACT) -> "TreeFunction":
        if mode not in (EXACT, COMPLEX):
            raise ParameterError(f"unknown value mode {mode!r}")
        vals: dict[tuple[int, int], Value] = {}
        for (level, index), raw in entries:
            if level < 0 or index < 0:
                raise ParameterError(f"bad vertex ({level}, {index})")
            v = _coerce(raw, mode)
            if v != 0:
                vals[(level, index)] = v
            elif (level, index) in vals:
                del vals[(level, index)]
        top = max((lv for lv, _ in vals), default=0)
        return TreeFunction(vals, mode, top)

    @staticmethod
    def zero(mode: str = EXACT) -> "TreeFunction":
        return TreeFunction({}, mode, 0)

    @staticmethod
    def chi(v, mode: str = EXACT, value=1) -> "TreeFunction":
        """Indicator (times ``value``) of a single vertex; v is (level, index)."""
        level, index = v
        return TreeFunction.from_entries([((level, index), value)], mode)

    def __call__(self, v) -> Value:
        key = (v[0], v[1])
        return self.values.get(key, Fraction(0) if self.mode == EXACT else 0j)

    def is_zero(self) -> bool:
        return not self.values

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.values)

    def level_slice(self, n: int) -> dict[int, Value]:
        return {idx: val for (lv, idx), val in self.values.items() if lv == n}

    def restrict_level(self, n: int) -> "TreeFunction":
        return TreeFunction.from_entries(
            (((lv, idx), val) for (lv, idx), val in self.values.items() if lv == n), self.mode
        )

    def scale(self, c) -> "TreeFunction":
        return TreeFunction.from_entries(
            (((lv, idx), val * _coerce(c, self.mode)) for (lv, idx), val in self.values.items()),
            self.mode,
        )

    def _merge(self, other: "TreeFunction", sign: int) -> "TreeFunction":
        if self.mode != other.mode:
            raise ParameterError("cannot combine functions in different value modes")
        vals = dict(self.values)
        for key, val in other.values.items():
            acc = vals.get(key, 0) + sign * val
            if acc == 0:
                vals.pop(key, None)
            else:
                vals[key] = acc
        return TreeFunction.from_entries(vals.items(), self.mode)

    def __add__(self, other: "TreeFunction") -> "TreeFunction":
        return self._merge(other, 1)

    def __sub__(self, other: "TreeFunction") -> "TreeFunction":
        return self._merge(other, -1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeFunction):
            return NotImplemented
        return self.mode == other.mode and dict(self.values) == dict(other.values)


def _check_p(p, mode: str) -> bool:
    """Validate p >= 1; return True when arithmetic can stay exact."""
    if p is None or (isinstance(p, float) and not math.isfinite(p)) or p < 1:
        raise ParameterError(f"p must be a finite number >= 1, got {p}")
    integer_p = float(p) == int(p)
    if mode == EXACT and not integer_p:
        raise ParameterError("exact mode supports integer p only; use complex mode for fractional p")
    return integer_p and mode == EXACT


def abs_p_power(value: Value, p, exact: bool):
    """|value|^p as a Fraction (exact path) or float."""
    if exact:
        return abs(value) ** int(p)
    return abs(value) ** float(p)


def mean_p_power(tree: LevelTree, f: TreeFunction, p, n: int):
    """M_p^p(n, f), exact Fraction in rational mode with integer p."""
    if n < 0 or n > tree.depth:
        raise OutOfDepthError(f"level {n} outside materialized range 0..{tree.depth}")
    exact = _check_p(p, f.mode)
    total = Fraction(0) if exact else 0.0
    for (lv, idx), val in f.values.items():
        if lv == n:
            if idx >= tree.gamma(n):
                raise ParameterError(f"function entry ({lv}, {idx}) is not a vertex of the tree")
            total += abs_p_power(val, p, exact)
    return total / tree.gamma(n)


def mean_p(tree: LevelTree, f: TreeFunction, p, n: int) -> float:
    """M_p(n, f) as a float."""
    return float(mean_p_power(tree, f, p, n)) ** (1.0 / float(p))


def _level_p_power_sums(tree: LevelTree, f: TreeFunction, p, exact: bool) -> dict:
    sums: dict[int, Union[Fraction, float]] = {}
    for (lv, idx), val in f.values.items():
        if lv > tree.depth:
            raise OutOfDepthError(f"function supported at level {lv} > depth {tree.depth}")
        if idx >= tree.gamma(lv):
            raise ParameterError(f"function entry ({lv}, {idx}) is not a vertex of the tree")
        sums[lv] = sums.get(lv, Fraction(0) if exact else 0.0) + abs_p_power(val, p, exact)
    return sums

def hardy_norm(tree: LevelTree, f: TreeFunction, p) -> NormReport:
    """sup_n M_p(n, f) over the materialized levels.

    For finitely supported f the sup over all n equals the sup over the
    support levels, so the report is never truncated.  Ties go to the
    smallest level; the zero function reports value 0 at level 0.
    """
    exact = _check_p(p, f.mode)
    sums = _level_p_power_sums(tree, f, p, exact)
    best = Fraction(0) if exact else 0.0
    best_level = 0
    for lv in sorted(sums):
        m = sums[lv] / tree.gamma(lv)
        if m > best:
            best, best_level = m, lv
    return NormReport(
        value_p_power=best,
        value=float(best) ** (1.0 / float(p)) if best else 0.0,
        attained_level=best_level,
        truncated=False,
        operator=None,
        power=None,
        p=float(p),
        scanned_sup_p_power=best,
        scan_depth=tree.depth,
    )


def mean_profile(tree: LevelTree, f: TreeFunction, p) -> MeanProfile:
    """M_p^p(n, f) for every materialized level n (0 beyond the support)."""
    exact = _check_p(p, f.mode)
    sums = _level_p_power_sums(tree, f, p, exact)
    zero = Fraction(0) if exact else 0.0
    powers = [sums.get(n, zero) / tree.gamma(n) for n in range(tree.depth + 1)]
    return MeanProfile(p=float(p), p_powers=powers)


def little_space_profile(tree: LevelTree, f: TreeFunction, p) -> LittleSpaceReport:
    """Mean profile plus a vanishing-tail verdict for membership in H^p_0.

    Finitely supported functions (support strictly inside the depth horizon)
    vanish exactly.  For dense constructions evaluated out to the horizon the
    verdict comes from the monotone-tail heuristic over the last half of the
    profile: all-zero or decreasing tail -> "vanishing", constant tail ->
    "stationary", anything else -> "inconclusive".
    """
    prof = mean_profile(tree, f, p)
    tail_start = (tree.depth + 1) // 2
    tail = prof.p_powers[tail_start:]
    if f.max_support_level < tree.depth or all(x == 0 for x in tail):
        return LittleSpaceReport(prof, "vanishing", tail_start)
    floats = [float(x) for x in tail]
    top = max(floats)
    if top - min(floats) <= 1e-12 * top:
        return LittleSpaceReport(prof, "stationary", tail_start)
    nonincreasing = all(b <= a * (1 + 1e-12) for a, b in zip(floats, floats[1:]))
    if nonincreasing and floats[-1] < 0.999 * floats[0]:
        return LittleSpaceReport(prof, "vanishing", tail_start)
    return LittleSpaceReport(prof, "inconclusive", tail_start)
