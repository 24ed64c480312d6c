"""Report dataclasses shared across modules.

Exact quantities (p-th powers of norms, residuals in rational mode) are kept
as Fractions next to their float renderings, so callers choose the precision
they need and serialization stays lossless.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Exactish = Union[Fraction, float, int]

BOUNDED = "bounded"
UNBOUNDED = "unbounded"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NormReport:
    """Result of a sup-of-level-ratios norm evaluation (or of a plain Hardy norm).

    ``value_p_power`` is the p-th power of the reported norm, exact whenever
    the computation stayed in rational arithmetic.  ``value`` is its float
    p-th root.  ``attained_level`` is the smallest level realizing the sup, or
    None when the sup is only a limit.  ``truncated`` marks a scan that was
    still growing at the depth horizon and had no certificate to resolve it.
    ``scanned_sup_p_power`` always carries the honest finite-depth sup next to
    any certified value, with ``scan_depth`` the horizon used.
    """

    value_p_power: Exactish
    value: float
    attained_level: Optional[int]
    truncated: bool
    bounded_verdict: Optional[str] = None
    operator: Optional[str] = None
    power: Optional[int] = None
    p: Optional[float] = None
    scanned_sup_p_power: Optional[Exactish] = None
    scan_depth: Optional[int] = None
    certificate: Optional[str] = None
    divergence: Optional[str] = None


@dataclass(frozen=True)
class MeanProfile:
    """Level means M_p^p(n, f) for n = 0..depth (index = level)."""

    p: float
    p_powers: list

    def values(self) -> list:
        """M_p(n, f) as floats."""
        return [float(x) ** (1.0 / self.p) for x in self.p_powers]


@dataclass(frozen=True)
class LittleSpaceReport:
    """Mean profile plus a tail verdict: vanishing / stationary / inconclusive."""

    profile: MeanProfile
    verdict: str
    tail_start: int


@dataclass(frozen=True)
class WitnessReport:
    """A constructed function together with the identity it satisfies.

    ``residual`` is the max absolute defect of the identity over the checked
    region (levels lo..hi); exact zero (Fraction(0)) in rational mode.
    ``verdict`` is "verified" for constructions, or a named trivial case
    (e.g. "no_solution") where no witness exists.
    """

    identity: str
    verdict: str
    residual: Optional[Exactish]
    region: tuple[int, int]
    witness: Optional[object] = None  # TreeFunction; kept loose to avoid an import cycle
    profile: Optional[dict] = None


@dataclass(frozen=True)
class SpectralReport:
    """Power norms ||T^m||, their m-th roots, and the radius estimate."""

    operator: str
    p: float
    max_power: int
    power_norms: list
    radius_sequence: list
    radius_estimate: float
    converged: bool
    closed_form: Optional[Exactish] = None
    note: str = ""


@dataclass(frozen=True)
class IsometryWitness:
    """Two same-level vertices with different children counts, plus the norm defect."""

    level: int
    vertex_a: tuple[int, int]
    vertex_b: tuple[int, int]
    degree_a: int
    degree_b: int
    chi_vertex: tuple[int, int]
    chi_norm_p_power: Fraction
    shifted_norm_p_power: Fraction


@dataclass(frozen=True)
class IsometryReport:
    isometric: bool
    p: float
    levels_checked: int
    degree_sequence: Optional[list] = None
    witness: Optional[IsometryWitness] = None


@dataclass(frozen=True)
class MembershipReport:
    """Point-spectrum membership of lambda for the backward shift."""

    space: str  # "hardy" or "little"
    lam: complex
    verdict: str = "not_witnessed"
    threshold: Optional[float] = None
    threshold_kind: str = ""
    liminf_estimate: Optional[float] = None
    liminf_window: Optional[tuple[int, int]] = None
    eigen_report: Optional[WitnessReport] = None


@dataclass(frozen=True)
class PointSpectrumS:
    """sigma_p(S) is {0} exactly when the tree has a leaf, else empty."""

    kind: str  # "zero_only" | "empty"
    leaf: Optional[tuple[int, int]]
    caveat: str
    check_norm: Optional[float] = None


@dataclass(frozen=True)
class ObstructionBound:
    n_power: int
    norm_p_power: Exactish
    norm: float
    lower_bound_p_power: Exactish
    holds: bool


@dataclass(frozen=True)
class ObstructionReport:
    """||S^N f - g|| >= |g(root)| for every N: the root evaluation obstruction."""

    g_root_abs: float
    g_root_abs_p_power: Exactish
    bounds: list
    all_hold: bool


@dataclass(frozen=True)
class HypercyclicityVerdict:
    operator: str
    verdict: str  # "yes" | "no" | "inconclusive"
    reason: str  # leaf_found | gamma_bounded | gamma_divergent | S_never | depth_limited
    evidence: dict


@dataclass(frozen=True)
class KgsSample:
    seed_index: int
    support_size: int
    max_support_level: int
    annihilation_checked: bool
    inversion_exact: bool
    norm_p_powers: list
    bound_p_powers: list
    bounds_hold: bool


@dataclass(frozen=True)
class KgsReport:
    """Right-inverse suite for the backward shift: B^n T_n g = g plus norm decay."""

    samples: int
    n_max: int
    p: float
    seed: int
    inversion_failures: int
    bound_failures: int
    decay_summary: dict
    sample_reports: list


@dataclass(frozen=True)
class OracleTrial:
    best_ratio_p_power: Exactish
    best_trial_index: Optional[int]
    trials: int


@dataclass(frozen=True)
class OracleReport:
    """Randomized lower bound for a norm, compared against the formula value."""

    operator: str
    power: int
    p: float
    seed: int
    trials: int
    best_ratio_p_power: Exactish
    formula_p_power: Exactish
    gap_p_power: float
    never_exceeded: bool
    extremal_included: bool
    best_trial: Optional[int]


@dataclass(frozen=True)
class ExtremalLevel:
    level: int
    lhs_p_power: Fraction
    rhs_p_power: Fraction
    equal: bool


@dataclass(frozen=True)
class ExtremalReport:
    """Level-by-level equality of the proof-construction means with the formula ratios."""

    operator: str
    power: int
    p: int
    levels: list
    all_equal: bool


@dataclass(frozen=True)
class GridReport:
    """Exhaustive small-tree ratio maximization over a value grid."""

    operator: str
    power: int
    p: float
    grid: list
    functions_enumerated: int
    max_ratio_p_power: Exactish
    argmax_level: Optional[int]
    formula_p_power: Exactish
    within_formula: bool
