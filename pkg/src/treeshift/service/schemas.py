"""Request/response models for the HTTP service.

Tree references are either inline gallery strings ("gallery:k_tree?k=3") or
objects ({"kind": ..., "params": ...}); they are validated structurally here
and semantically by the spec parser. Numeric report fields that may be exact
rationals travel as "num/den" strings.
"""

from __future__ import annotations

from typing import Any, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

TreeRef = Union[str, dict]

DEFAULT_DEPTH = 32


class TreeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    tree: TreeRef
    depth: int = Field(default=DEFAULT_DEPTH, ge=1, le=4096)


class DescribeRequest(TreeRequest):
    histogram_levels: int = Field(default=8, ge=0, le=64)


class NormRequest(TreeRequest):
    op: Literal["S", "B"]
    power: int = Field(default=1, ge=0, le=512)
    p: float = Field(default=1.0, ge=1.0)


class RadiusRequest(TreeRequest):
    op: Literal["S", "B"]
    p: float = Field(default=1.0, ge=1.0)
    max_power: int = Field(default=12, ge=1, le=256)


class WitnessRequest(TreeRequest):
    kind: Literal["eigenfunction_B", "resolvent_S", "blowup_S", "point_spectrum_S"]
    lam: Optional[str] = None
    vertex: Optional[List[int]] = Field(default=None, min_length=2, max_length=2)
    p: float = Field(default=1.0, ge=1.0)
    mode: Literal["auto", "exact", "complex"] = "auto"
    include_function: bool = True
    max_entries: int = Field(default=200_000, ge=0)


class HypercyclicRequest(TreeRequest):
    op: Literal["S", "B"]
    suite: bool = True
    samples: int = Field(default=25, ge=1, le=2000)
    n_max: int = Field(default=6, ge=1, le=64)
    p: int = Field(default=1, ge=1)
    seed: int = 0


class GallerySelfTestRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    name: str
    params: dict = Field(default_factory=dict)
    depth: Optional[int] = Field(default=None, ge=2, le=64)
    max_power: int = Field(default=3, ge=1, le=16)
    p_values: List[int] = Field(default_factory=lambda: [1, 2])


class VerifyRequest(TreeRequest):
    op: Literal["S", "B"]
    power: int = Field(default=1, ge=1, le=64)
    # randomized verification runs in exact arithmetic, so p must be integral
    p: int = Field(default=1, ge=1)
    trials: int = Field(default=200, ge=1, le=100_000)
    seed: int
    extremal: bool = True
    max_level: Optional[int] = Field(default=None, ge=0)


class ApplyRequest(TreeRequest):
    op: Literal["S", "B"]
    power: int = Field(default=1, ge=0, le=512)
    function: List[dict]


class ErrorBody(BaseModel):
    type: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody


class DescribeResponse(BaseModel):
    model_config = ConfigDict(extra="allow")
    label: str
    kind: str
    depth: int
    total_vertices: int
    level_sizes: List[int]
    leafless_up_to_depth: bool
    first_leaf: Optional[List[int]] = None


class NormResponse(BaseModel):
    model_config = ConfigDict(extra="allow")
    operator: str
    power: int
    p: float
    value_p_power: Union[str, float, None] = None
    value: Optional[float] = None
    bounded_verdict: str
    truncated: bool


class RadiusResponse(BaseModel):
    model_config = ConfigDict(extra="allow")
    operator: str
    p: float
    radius_estimate: float
    radius_sequence: List[float]
    converged: bool
    closed_form: Optional[float] = None


class WitnessResponse(BaseModel):
    model_config = ConfigDict(extra="allow")
    identity: str
    verdict: str


class HypercyclicResponse(BaseModel):
    model_config = ConfigDict(extra="allow")
    operator: str
    verdict: str
    reason: str


class GalleryListResponse(BaseModel):
    entries: List[dict]


class SelfTestResponse(BaseModel):
    model_config = ConfigDict(extra="allow")
    name: str
    passed: bool
    failures: List[str]


class VerifyResponse(BaseModel):
    model_config = ConfigDict(extra="allow")
    lower_bound: dict
    extremal: Optional[dict] = None


class ApplyResponse(BaseModel):
    mode: str
    entries: List[dict]


class ServiceInfo(BaseModel):
    name: str
    version: str
    endpoints: List[str]


class AnyReport(BaseModel):
    """Escape hatch for report payloads whose shape varies by verdict."""

    model_config = ConfigDict(extra="allow")


REQUEST_MODELS = {
    "describe": DescribeRequest,
    "norm": NormRequest,
    "radius": RadiusRequest,
    "witness": WitnessRequest,
    "hypercyclic": HypercyclicRequest,
    "verify": VerifyRequest,
    "apply": ApplyRequest,
}
