"""Rooted locally finite trees, declared by degree rules and materialized to finite depth.

A tree spec gives, for every vertex (identified by ``(level, index)`` in BFS
order), its number of children.  Materialization walks levels 0..depth and
stores, per level, the parent index of each vertex and the cumulative offsets
of children blocks.  Children of vertex ``(n, i)`` occupy a contiguous index
range at level ``n+1``; by induction the m-fold descendants of any vertex form
a contiguous range as well, which makes subtree counts gamma(m, v) and their
per-level maxima K(m, r) cheap range arithmetic instead of tree walks.

All counts are exact Python integers; numpy int64 arrays hold only indices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple, Optional

import numpy as np

from .certificates import Certificates
from .exceptions import (
    DeadTreeError,
    LeaflessClaimError,
    OutOfDepthError,
    ParameterError,
    VertexCapError,
)

DEFAULT_VERTEX_CAP = 10**8
VERTEX_CAP_ENV = "TREESHIFT_MAX_VERTICES"


def vertex_cap(override: Optional[int] = None) -> int:
    """Resolve the vertex budget: explicit argument, else env var, else default."""
    if override is not None:
        return int(override)
    raw = os.environ.get(VERTEX_CAP_ENV)
    if raw is None:
        return DEFAULT_VERTEX_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ParameterError(f"{VERTEX_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap <= 0:
        raise ParameterError(f"{VERTEX_CAP_ENV} must be positive, got {cap}")
    return cap


class VertexId(NamedTuple):
    level: int
    index: int


ROOT = VertexId(0, 0)


@dataclass(frozen=True)
class TreeSpec:
    """Declarative description of an infinite tree.

    ``degree_rule(level, index)`` returns the children count of one vertex.
    ``level_degrees(level, count)``, when present, returns the whole degree
    row as an int64 array (vectorized fast path; must agree with the rule).
    ``leafless_claim`` is an assertion about the infinite tree: True means no
    vertex anywhere has zero children, and materialization enforces it on the
    prefix it sees.  ``certificates`` carry closed forms for this family.
    """

    kind: str
    params: dict
    degree_rule: Callable[[int, int], int]
    level_degrees: Optional[Callable[[int, int], np.ndarray]] = None
    leafless_claim: Optional[bool] = None
    certificates: Optional[Certificates] = None
    label: str = ""

    def describe(self) -> str:
        return self.label or self.kind


def _degree_row(spec: TreeSpec, level: int, count: int) -> np.ndarray:
    if spec.level_degrees is not None:
        row = np.asarray(spec.level_degrees(level, count), dtype=np.int64)
        if row.shape != (count,):
            raise ParameterError(
                f"level_degrees({level}, {count}) returned shape {row.shape}, expected ({count},)"
            )
    else:
        row = np.fromiter(
            (spec.degree_rule(level, i) for i in range(count)), dtype=np.int64, count=count
        )
    if row.size and int(row.min()) < 0:
        raise ParameterError(f"negative degree at level {level}")
    return row


class LevelTree:
    """A materialized prefix of an infinite tree: levels 0..depth inclusive.

    Vertices at level n are indexed 0..gamma(n)-1 in BFS order.  For n < depth
    the children of (n, i) are the contiguous block
    ``child_starts[n][i] : child_starts[n][i+1]`` at level n+1.  Degree data
    exists for levels 0..depth-1; level ``depth`` vertices have unknown
    (not yet generated) children.
    """

    def __init__(
        self,
        spec: TreeSpec,
        depth: int,
        level_sizes: list[int],
        parents: list[np.ndarray],
        child_starts: list[np.ndarray],
    ):
        self.spec = spec
        self.depth = depth
        self.level_sizes = level_sizes
        self._parents = parents
        self._child_starts = child_starts
        self.total_vertices = sum(level_sizes)
        self._k_cache: dict[tuple[int, int], int] = {}

    # -- counting ---------------------------------------------------------

    def gamma(self, n: int) -> int:
        """Number of vertices at level n."""
        self._check_level(n)
        return self.level_sizes[n]

    def degrees(self, n: int) -> np.ndarray:
        """Children counts of all vertices at level n (needs n < depth)."""
        if not 0 <= n < self.depth:
            raise OutOfDepthError(f"degree data exists for levels 0..{self.depth - 1}, got {n}")
        return np.diff(self._child_starts[n])

    def degree(self, v: VertexId) -> int:
        self._check_vertex(v)
        if v.level >= self.depth:
            raise OutOfDepthError(f"children of level-{v.level} vertices are beyond depth {self.depth}")
        starts = self._child_starts[v.level]
        return int(starts[v.index + 1] - starts[v.index])

    def children_range(self, v: VertexId) -> range:
        """Indices of the children of v at level v.level + 1."""
        self._check_vertex(v)
        if v.level >= self.depth:
            raise OutOfDepthError(f"children of level-{v.level} vertices are beyond depth {self.depth}")
        starts = self._child_starts[v.level]
        return range(int(starts[v.index]), int(starts[v.index + 1]))

    def parent(self, v: VertexId) -> VertexId:
        self._check_vertex(v)
        if v.level == 0:
            raise ParameterError("the root has no parent")
        return VertexId(v.level - 1, int(self._parents[v.level][v.index]))

    def ancestor(self, v: VertexId, m: int) -> VertexId:
        """The m-fold parent of v (m=0 is v itself)."""
        if m < 0:
            raise ParameterError("ancestor distance must be >= 0")
        if m > v.level:
            raise ParameterError(f"vertex at level {v.level} has no {m}-fold parent")
        idx = v.index
        for lev in range(v.level, v.level - m, -1):
            idx = int(self._parents[lev][idx])
        return VertexId(v.level - m, idx)

    def descendant_range(self, v: VertexId, m: int) -> tuple[int, int]:
        """Index range [start, stop) of the m-fold descendants of v at level v.level + m."""
        self._check_vertex(v)
        if m < 0:
            raise ParameterError("descendant distance must be >= 0")
        if v.level + m > self.depth:
            raise OutOfDepthError(
                f"{m}-fold descendants of a level-{v.level} vertex live at level "
                f"{v.level + m} > depth {self.depth}"
            )
        lo, hi = v.index, v.index + 1
        for lev in range(v.level, v.level + m):
            starts = self._child_starts[lev]
            lo, hi = int(starts[lo]), int(starts[hi])
        return lo, hi

    def gamma_sub(self, m: int, v: VertexId) -> int:
        """gamma(m, v): number of descendants of v at distance exactly m."""
        lo, hi = self.descendant_range(v, m)
        return hi - lo

    def K(self, m: int, r: int) -> int:
        """K(m, r) = max over |v| = r of gamma(m, v)."""
        if m < 0 or r < 0:
            raise ParameterError("K(m, r) needs m, r >= 0")
        if m == 0:
            self._check_level(r)
            return 1
        key = (m, r)
        cached = self._k_cache.get(key)
        if cached is not None:
            return cached
        if r + m > self.depth:
            raise OutOfDepthError(f"K({m}, {r}) needs level {r + m} > depth {self.depth}")
        # Compose children-offset arrays: boundaries of m-fold descendant blocks.
        bounds = np.arange(self.level_sizes[r] + 1, dtype=np.int64)
        for lev in range(r, r + m):
            bounds = self._child_starts[lev][bounds]
        value = int(np.max(np.diff(bounds))) if self.level_sizes[r] else 0
        self._k_cache[key] = value
        return value

    def argmax_gamma_sub(self, m: int, r: int) -> VertexId:
        """A vertex at level r realizing K(m, r) (smallest index on ties)."""
        if m == 0:
            self._check_level(r)
            return VertexId(r, 0)
        if r + m > self.depth:
            raise OutOfDepthError(f"level {r + m} > depth {self.depth}")
        bounds = np.arange(self.level_sizes[r] + 1, dtype=np.int64)
        for lev in range(r, r + m):
            bounds = self._child_starts[lev][bounds]
        return VertexId(r, int(np.argmax(np.diff(bounds))))

    # -- structure queries --------------------------------------------------

    def is_leafless_up_to(self) -> bool:
        """True when no vertex at levels 0..depth-1 has zero children."""
        return self.find_leaf() is None

    def find_leaf(self) -> Optional[VertexId]:
        """First (BFS order) vertex with zero children among levels 0..depth-1."""
        for n in range(self.depth):
            row = self.degrees(n)
            zero = np.flatnonzero(row == 0)
            if zero.size:
                return VertexId(n, int(zero[0]))
        return None

    def vertices_at(self, n: int) -> Iterator[VertexId]:
        self._check_level(n)
        return (VertexId(n, i) for i in range(self.level_sizes[n]))

    def degree_histogram(self, n: int) -> dict[int, int]:
        values, counts = np.unique(self.degrees(n), return_counts=True)
        return {int(d): int(c) for d, c in zip(values, counts)}

    # -- guards -------------------------------------------------------------

    def _check_level(self, n: int) -> None:
        if not 0 <= n <= self.depth:
            raise OutOfDepthError(f"level {n} outside materialized range 0..{self.depth}")

    def _check_vertex(self, v: VertexId) -> None:
        self._check_level(v.level)
        if not 0 <= v.index < self.level_sizes[v.level]:
            raise ParameterError(
                f"vertex index {v.index} out of range at level {v.level} "
                f"(size {self.level_sizes[v.level]})"
            )

    def __repr__(self) -> str:
        return (
            f"LevelTree({self.spec.describe()}, depth={self.depth}, "
            f"vertices={self.total_vertices})"
        )


def materialize(spec: TreeSpec, depth: int, max_vertices: Optional[int] = None) -> LevelTree:
    """Generate levels 0..depth of the tree described by ``spec``.

    Deterministic: the same spec and depth always yield identical arrays, and
    a deeper materialization extends a shallower one (BFS order is stable).
    Raises VertexCapError when the running vertex count would exceed the
    budget, DeadTreeError if some level comes out empty (the spec then
    describes a finite tree), and LeaflessClaimError when a zero degree
    contradicts ``leafless_claim=True``.
    """
    if depth < 0:
        raise ParameterError("depth must be >= 0")
    cap = vertex_cap(max_vertices)
    level_sizes = [1]
    parents: list[np.ndarray] = [np.zeros(0, dtype=np.int64)]
    child_starts: list[np.ndarray] = []
    total = 1
    if total > cap:
        raise VertexCapError(f"vertex budget {cap} exhausted at the root")
    for n in range(depth):
        count = level_sizes[n]
        if count == 0:
            raise DeadTreeError(
                f"level {n} of {spec.describe()} is empty: the tree is finite, "
                "not an infinite tree"
            )
        row = _degree_row(spec, n, count)
        if spec.leafless_claim and row.size and int(row.min()) == 0:
            i = int(np.flatnonzero(row == 0)[0])
            raise LeaflessClaimError(
                f"{spec.describe()} claims leaflessness but vertex ({n}, {i}) has no children"
            )
        starts = np.empty(count + 1, dtype=np.int64)
        starts[0] = 0
        np.cumsum(row, out=starts[1:])
        nxt = int(starts[-1])
        total += nxt
        if total > cap:
            raise VertexCapError(
                f"materializing {spec.describe()} to depth {depth} needs more than "
                f"{cap} vertices (level {n + 1} alone has {nxt}); raise the cap via "
                f"{VERTEX_CAP_ENV} or the max_vertices argument"
            )
        child_starts.append(starts)
        parents.append(np.repeat(np.arange(count, dtype=np.int64), row))
        level_sizes.append(nxt)
    if depth > 0 and level_sizes[depth] == 0:
        raise DeadTreeError(
            f"level {depth} of {spec.describe()} is empty: the tree is finite, not an infinite tree"
        )
    return LevelTree(spec, depth, level_sizes, parents, child_starts)


# Module-level conveniences mirroring the LevelTree methods.

def gamma(tree: LevelTree, n: int) -> int:
    return tree.gamma(n)


def gamma_sub(tree: LevelTree, m: int, v: VertexId) -> int:
    return tree.gamma_sub(m, v)


def K(tree: LevelTree, m: int, r: int) -> int:
    return tree.K(m, r)


def is_leafless_up_to(tree: LevelTree) -> bool:
    return tree.is_leafless_up_to()
