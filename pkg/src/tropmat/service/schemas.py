"""Pydantic request/response models for the HTTP service.

Scalars are strings ('p/q', decimal, or 'inf'); ground-set elements are
1-based ids with optional string labels alongside ('*' labels the
extension element).  Deep combinatorial payloads (decompositions, lab
reports) travel as plain JSON objects produced by tropmat.serialize.
"""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field


class MatrixModel(BaseModel):
    d: Optional[int] = None
    n: Optional[int] = None
    rows: list[list[str]]
    labels: Optional[list[str]] = None


class MatroidModel(BaseModel):
    n: int
    d: int
    bases: list[list[int]]


class ValuatedModel(BaseModel):
    n: int
    d: int
    values: dict[str, str]
    labels: Optional[list[str]] = None


class StiefelRequest(BaseModel):
    matrix: MatrixModel


class StiefelResponse(BaseModel):
    mu: ValuatedModel
    underlying: MatroidModel
    labels: list[str]


class CheckPlueckerRequest(BaseModel):
    n: int
    d: int
    values: dict[str, str]


class CheckPlueckerResponse(BaseModel):
    ok: bool
    failure: Optional[str] = None


class UnderlyingRequest(BaseModel):
    mu: ValuatedModel


class UnderlyingResponse(BaseModel):
    underlying: MatroidModel
    labels: list[str]


class DapxRequest(BaseModel):
    matrix: MatrixModel


class DapxResponse(BaseModel):
    apex: MatrixModel
    decomposition: dict[str, Any]
    labels: list[str]


class DecomposeRequest(BaseModel):
    matrix: MatrixModel
    apex_of: Optional[MatrixModel] = Field(
        default=None,
        description="matrix whose apex decomposition is the reference; defaults to `matrix`",
    )


class DecomposeResponse(BaseModel):
    decomposition: dict[str, Any]
    labels: list[str]


class IsMinimalRequest(BaseModel):
    matrix: MatrixModel


class IsMinimalResponse(BaseModel):
    minimal: bool


class MinimizeRequest(BaseModel):
    matrix: MatrixModel
    keep: Optional[str] = Field(default=None, description="column label whose membership is preserved")


class MinimizeResponse(BaseModel):
    matrix: MatrixModel
    labels: list[str]


class ExtendRequest(BaseModel):
    matrix: MatrixModel
    x: list[str]


class ExtendResponse(BaseModel):
    extension: ValuatedModel
    labels: list[str]


class CollideRequest(BaseModel):
    matrix: MatrixModel


class CollideResponse(BaseModel):
    row: int
    x: list[str]
    y: list[str]


class CertificatesRequest(BaseModel):
    matrix: MatrixModel


class CertificateModel(BaseModel):
    row: int
    subset: list[str]
    a: str


class CertificatesResponse(BaseModel):
    verdict: Literal["INJECTIVE", "COLLISION"]
    certificates: Optional[list[CertificateModel]] = None
    witness: Optional[CollideResponse] = None


class MeetRequest(BaseModel):
    matrix: MatrixModel
    x: list[str]
    y: list[str]


class MeetResponse(BaseModel):
    extension: ValuatedModel
    labels: list[str]


class PresentMinRequest(BaseModel):
    matrix: MatrixModel = Field(description="presentation of the extension; the last column is *")


class PresentMinResponse(BaseModel):
    base: MatrixModel
    x: list[str]
    full: MatrixModel
    labels: list[str]


class VerifyRequest(BaseModel):
    suite: Literal["different", "minimal", "join", "fo-maximal", "decompose"]
    n: int
    d: int
    count: int = 100
    seed: int = 0
    trials: int = 20
    inf_probability: str = "1/4"
    value_grid: Optional[list[str]] = None


class VerifyResponse(BaseModel):
    report: dict[str, Any]
    ok: bool


class LabRequest(BaseModel):
    n: int = 3
    d: int = 2
    trials: int = 10
    seed: int = 0
    pinned: Optional[Literal["u23"]] = None


class LabResponse(BaseModel):
    reports: list[dict[str, Any]]


class GenRequest(BaseModel):
    n: int
    d: int
    count: int = 10
    seed: int = 0
    inf_probability: str = "1/4"
    value_grid: Optional[list[str]] = None


class GenResponse(BaseModel):
    instances: list[MatrixModel]


class ErrorModel(BaseModel):
    kind: Literal["input", "theorem"]
    message: str
