"""Request and error models for the HTTP facade."""

from typing import Literal, Optional

from pydantic import BaseModel, Field

Linkage = Literal["single", "complete", "average"]


class ClusterRequest(BaseModel):
    k: int = Field(ge=1)
    linkage: Linkage = "average"


class ValidateRequest(BaseModel):
    kmin: int = Field(default=2, ge=2)
    kmax: int = Field(default=10, ge=2)
    B: int = Field(default=100, ge=1)
    seed: int = Field(ge=0)
    threshold: float = Field(default=0.5, gt=0.0, lt=1.0)
    linkage: Linkage = "average"
    # Stability is the expensive half; None means every k in [kmin, kmax].
    stability_k: Optional[list[int]] = None


class RecommendRequest(BaseModel):
    bindings: dict[str, str] = Field(default_factory=dict)


class DescendRequest(BaseModel):
    path: list[str] = Field(default_factory=list)


class ErrorBody(BaseModel):
    code: Literal[
        "bad_request",
        "unknown_dimension",
        "unknown_value",
        "degenerate_input",
        "internal",
    ]
    message: str = Field(min_length=1)
