"""Request/response models for the HTTP service.

Everything numeric stays exact: integers ride as ints, the d3 invariant
rides as a fraction string like "-1/2".  Diagrams and open books cross
the wire in their line-oriented text formats so the service and the file
tools agree byte for byte.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class LutzLinkRequest(BaseModel):
    tb: int
    rot: int
    simple: bool = False


class ComponentModel(BaseModel):
    id: str
    tb: int
    rot: int
    tf: int
    coefficient: int


class DiagramResponse(BaseModel):
    ambient: str
    components: list[ComponentModel]
    linking_matrix: list[list[int]]
    diagram: str


class InvariantsRequest(BaseModel):
    diagram: str


class GroupModel(BaseModel):
    free_rank: int
    torsion: list[int]
    description: str
    meridian_images: list[list[int]]


class InvariantsResponse(BaseModel):
    ambient: str
    components: list[str]
    h1: GroupModel
    euler_class: list[int]
    euler_vanishes: bool
    d2: str
    d3: str | None
    d3_reason: str | None


class SnfRequest(BaseModel):
    matrix: list[list[int]]


class SnfResponse(BaseModel):
    diagonal: list[int]
    d: list[list[int]]
    u: list[list[int]]
    v: list[list[int]]


class OpenBookLutzRequest(BaseModel):
    openbook: str
    binding: str


class TraceModel(BaseModel):
    lutz_curves: list[str]
    stabilization_curves: list[str]
    boundaries_added: int
    genus_before: int
    genus_after: int


class OpenBookLutzResponse(BaseModel):
    openbook: str
    genus: int
    boundaries: int
    trace: TraceModel


class RelativePieceResponse(BaseModel):
    relative_openbook: str
    genus: int
    circles: int
    manifold_boundary: list[str]


class CheckModel(BaseModel):
    name: str
    expected: str
    got: str
    passed: bool


class VerifyResponse(BaseModel):
    checks: list[CheckModel]
    passed: bool
    summary: str = Field(description="counts line, e.g. '28/28 checks passed'")
