"""Seeded random finitely supported functions, shared by the oracle and the
hypercyclicity suite.  All sampling goes through random.Random(seed) so CLI
and service runs are byte-reproducible."""

from __future__ import annotations

import random
from fractions import Fraction

from .exceptions import ParameterError
from .functions import EXACT, TreeFunction
from .trees import LevelTree


def random_rational_function(
    tree: LevelTree,
    rng: random.Random,
    max_level: int,
    max_terms: int = 4,
    value_bound: int = 9,
) -> TreeFunction:
    """A nonzero rational-valued function supported on levels 0..max_level."""
    if max_level < 0 or max_level > tree.depth:
        raise ParameterError(f"max_level must lie in 0..{tree.depth}, got {max_level}")
    entries: dict[tuple[int, int], Fraction] = {}
    terms = rng.randint(1, max_terms)
    for _ in range(terms):
        lv = rng.randint(0, max_level)
        idx = rng.randrange(tree.gamma(lv))
        num = rng.randint(1, value_bound) * rng.choice((-1, 1))
        den = rng.randint(1, value_bound)
        entries[(lv, idx)] = Fraction(num, den)
    return TreeFunction.from_entries(entries.items(), EXACT)
