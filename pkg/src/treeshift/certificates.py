"""Closed-form certificates attached to tree specs.

A certificate records an identity that holds for the *infinite* tree, not just
for a materialized prefix: level sizes, subtree-count maxima, operator-norm
sups, spectral radii.  Norm evaluators consult them so that reports can state
exact values even when the sup is attained only in the limit or the relevant
levels are far beyond anything materializable.  Every certificate carries a
human-readable ``claim`` so reports are self-describing; the gallery self-test
cross-validates certified values against direct computation on a prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

Exactish = Union[Fraction, float]


@dataclass(frozen=True)
class SupClaim:
    """Resolution of sup_n of a norm ratio for one (power, p) pair.

    bounded=True:  ``p_power`` is the exact sup of the p-th power quantity;
                   ``attained`` says whether some finite level realizes it.
    bounded=False: the ratio diverges; ``ratio_text`` names the divergent
                   closed form used as the certificate.
    """

    bounded: bool
    claim: str
    p_power: Optional[Exactish] = None
    attained: bool = True
    attained_at: Optional[int] = None
    ratio_text: Optional[str] = None


@dataclass(frozen=True)
class Certificates:
    """Optional closed forms for one tree family.

    Any field may be None (or return None for arguments it does not cover);
    consumers fall back to direct computation. ``gamma(n)`` and ``K(m, r)``
    must agree with vertex counting wherever both are defined.
    """

    gamma: Optional[Callable[[int], int]] = None
    K: Optional[Callable[[int, int], Optional[int]]] = None
    forward_sup: Optional[Callable[[int, float], Optional[SupClaim]]] = None
    backward_sup: Optional[Callable[[int, float], Optional[SupClaim]]] = None
    forward_radius: Optional[Callable[[float], Optional[Exactish]]] = None
    backward_radius: Optional[Callable[[float], Optional[Exactish]]] = None
    # True/False when gamma(n) -> infinity is settled by the closed form; None if unknown.
    gamma_diverges: Optional[bool] = None
    gamma_divergence_claim: str = ""
    # s_n (1-indexed children count per level) when the tree is level-regular.
    degree_sequence: Optional[Callable[[int], int]] = None
    # liminf_n (s_1...s_n)^{1/n} for level-regular trees, when known in closed form.
    liminf_geometric_mean: Optional[Exactish] = None
    notes: tuple = field(default_factory=tuple)
