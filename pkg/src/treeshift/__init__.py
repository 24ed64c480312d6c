"""treeshift: shift operators on discrete Hardy spaces over rooted trees.

Materialize locally finite rooted trees to finite depth, evaluate level
means and Hardy norms exactly, and compute operator norms, spectral radii,
eigenfunctions, surjectivity witnesses, and hypercyclicity verdicts for the
forward and backward shifts.
"""

from .certificates import Certificates, SupClaim
from .exceptions import (
    BudgetError,
    DeadTreeError,
    LeafObstructionError,
    LeaflessClaimError,
    OutOfDepthError,
    ParameterError,
    TreeShiftError,
    VertexCapError,
)
from .functions import (
    COMPLEX,
    EXACT,
    TreeFunction,
    hardy_norm,
    little_space_profile,
    mean_p,
    mean_p_power,
    mean_profile,
)
from .gallery import (
    DEFAULT_PARAMS,
    CertifiedLevels,
    GalleryEntry,
    build,
    certified_levels,
    list_entries,
    names,
    self_test,
    self_test_all,
)
from .hypercyclicity import kgs_right_inverse, kgs_suite, verdict
from .oracle import (
    extremal_attainment,
    randomized_norm_lower_bound,
    truncated_finite_support_check,
)
from .reports import (
    BOUNDED,
    INCONCLUSIVE,
    UNBOUNDED,
    NormReport,
    SpectralReport,
    WitnessReport,
)
from .sampling import random_rational_function
from .shifts import (
    BACKWARD,
    FORWARD,
    apply,
    apply_backward,
    apply_forward,
    backward_norm,
    forward_norm,
    forward_orbit_obstruction,
    isometry_check,
    operator_norm,
)
from .spectral import (
    eigenfunction_B,
    nonsurjectivity_blowup_S,
    point_spectrum_S,
    point_spectrum_membership_B,
    resolvent_witness_S,
    spectral_radius,
)
from .trees import (
    ROOT,
    LevelTree,
    TreeSpec,
    VertexId,
    gamma,
    gamma_sub,
    is_leafless_up_to,
    K,
    materialize,
    vertex_cap,
)

__version__ = "0.1.0"

__all__ = [
    "BACKWARD",
    "BOUNDED",
    "BudgetError",
    "COMPLEX",
    "Certificates",
    "CertifiedLevels",
    "DEFAULT_PARAMS",
    "DeadTreeError",
    "EXACT",
    "FORWARD",
    "GalleryEntry",
    "INCONCLUSIVE",
    "K",
    "LeafObstructionError",
    "LeaflessClaimError",
    "LevelTree",
    "NormReport",
    "OutOfDepthError",
    "ParameterError",
    "ROOT",
    "SpectralReport",
    "SupClaim",
    "TreeFunction",
    "TreeShiftError",
    "TreeSpec",
    "UNBOUNDED",
    "VertexCapError",
    "VertexId",
    "WitnessReport",
    "apply",
    "apply_backward",
    "apply_forward",
    "backward_norm",
    "build",
    "certified_levels",
    "eigenfunction_B",
    "extremal_attainment",
    "forward_norm",
    "forward_orbit_obstruction",
    "gamma",
    "gamma_sub",
    "hardy_norm",
    "is_leafless_up_to",
    "isometry_check",
    "kgs_right_inverse",
    "kgs_suite",
    "list_entries",
    "little_space_profile",
    "materialize",
    "mean_p",
    "mean_p_power",
    "mean_profile",
    "names",
    "nonsurjectivity_blowup_S",
    "operator_norm",
    "point_spectrum_S",
    "point_spectrum_membership_B",
    "random_rational_function",
    "randomized_norm_lower_bound",
    "resolvent_witness_S",
    "self_test",
    "self_test_all",
    "spectral_radius",
    "truncated_finite_support_check",
    "verdict",
    "vertex_cap",
]
