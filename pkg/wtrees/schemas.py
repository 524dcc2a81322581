from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

WEIGHT_PATTERN = r"^\d+/[1-9]\d*$"

SWEEP_SCHEMA_VERSION = "wtree.verify.v1"


class VertexDocument(BaseModel):
    model_config = {"extra": "forbid"}

    id: int = Field(..., ge=0)
    color: Literal["white", "black"]
    weight: str = Field(..., pattern=WEIGHT_PATTERN)


class EdgeDocument(BaseModel):
    model_config = {"extra": "forbid"}

    id: int = Field(..., ge=0)
    u: int
    v: int
    weight: str = Field(..., pattern=WEIGHT_PATTERN)


class TreeDocument(BaseModel):
    """A w-tree: rotation maps a vertex id (as a string) to its edge ids counterclockwise."""

    model_config = {"extra": "forbid"}

    vertices: list[VertexDocument] = Field(..., min_length=2)
    edges: list[EdgeDocument]
    rotation: dict[str, list[int]]
    code: Optional[str] = None

    @model_validator(mode="after")
    def _validate_rotation_keys(self) -> "TreeDocument":
        ids = {str(x.id) for x in self.vertices}
        if set(self.rotation) != ids:
            raise ValueError("rotation keys must be exactly the vertex ids")
        return self


class CensusDocument(BaseModel):
    model_config = {"extra": "forbid"}

    total: int = Field(..., ge=0)
    byOrder: dict[str, int]

    @model_validator(mode="after")
    def _validate_total(self) -> "CensusDocument":
        if sum(self.byOrder.values()) != self.total:
            raise ValueError("byOrder counts must add up to total")
        return self


class CountDocument(BaseModel):
    model_config = {"extra": "forbid"}

    type: str
    cardinality: int
    simple: bool
    decomposable: bool
    labeled_total: int
    p: int
    symmetric: dict[str, int] = Field(default_factory=dict)
    nonsymmetric_labeled: int
    symmetric_labeled: dict[str, int] = Field(default_factory=dict)


class PartitionDocument(BaseModel):
    model_config = {"extra": "forbid"}

    parts: list[dict[str, list[int]]]
    text: str
    summand: str


# Command inputs
_Budget = Optional[int]


class CountInput(BaseModel):
    model_config = {"extra": "forbid"}
    type_literal: str = Field(..., min_length=3)
    explain: bool = False
    format: Literal["text", "json"] = "text"
    budget: _Budget = Field(default=None, gt=0)


class EnumerateInput(BaseModel):
    model_config = {"extra": "forbid"}
    type_literal: str = Field(..., min_length=3)
    format: Literal["json", "jsonl", "dot", "text"] = "jsonl"
    census: bool = False
    jobs: int = Field(default=1, ge=1)
    budget: _Budget = Field(default=None, gt=0)


class VerifyInput(BaseModel):
    model_config = {"extra": "forbid"}
    max_weight: int = Field(..., ge=1)
    jobs: int = Field(default=1, ge=1)
    report: Optional[str] = None
    budget: _Budget = Field(default=None, gt=0)


class SystemInput(BaseModel):
    model_config = {"extra": "forbid"}
    type_literal: Optional[str] = None
    qpoly: Optional[int] = Field(default=None, ge=1)
    solve: bool = False
    reduction: bool = False
    starts: int = Field(default=500, ge=1)
    tol: float = Field(default=1e-10, gt=0)
    seed: int = 0
    jobs: int = Field(default=1, ge=1)
    format: Literal["text", "json"] = "text"

    @model_validator(mode="after")
    def _validate_target(self) -> "SystemInput":
        if self.type_literal is None and self.qpoly is None:
            raise ValueError("a type literal or --qpoly is required")
        if (self.solve or self.reduction) and self.type_literal is None:
            raise ValueError("--solve and --reduction need a type literal")
        return self


class PartitionsInput(BaseModel):
    model_config = {"extra": "forbid"}
    type_literal: str = Field(..., min_length=3)
    format: Literal["text", "json"] = "text"


# Verification report
class SweepRow(BaseModel):
    model_config = {"extra": "forbid"}

    type: str
    status: Literal["ok", "mismatch", "skipped"]
    formula: Optional[int] = None
    enumeration: Optional[int] = None
    census: Optional[CensusDocument] = None
    checks: dict[str, bool] = Field(default_factory=dict)
    note: Optional[str] = None

    @model_validator(mode="after")
    def _validate_counts(self) -> "SweepRow":
        if self.status != "skipped" and (self.formula is None or self.enumeration is None):
            raise ValueError("checked rows carry both counts")
        return self


class SweepSummary(BaseModel):
    model_config = {"extra": "forbid"}

    types_checked: int
    mismatches: int
    skipped: int


class SweepReport(BaseModel):
    model_config = {"extra": "forbid"}

    schema_version: Literal["wtree.verify.v1"] = SWEEP_SCHEMA_VERSION
    max_weight: int
    rows: list[SweepRow]
    summary: SweepSummary

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"
