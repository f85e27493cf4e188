"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..inequality_lab import CLAIM_IDS

ClaimLiteral = Literal[
    "T2.1", "T2.2", "C2.3", "T2.4",
    "T2.5.1", "T2.5.2", "T2.5.3", "T2.5.4",
    "L3.1f", "L3.1g", "L3.2J",
]

assert set(ClaimLiteral.__args__) == set(CLAIM_IDS)


class EvalRequest(BaseModel):
    a: float = Field(gt=0, allow_inf_nan=False)
    b: float = Field(gt=0, allow_inf_nan=False)
    c: float = Field(gt=0, allow_inf_nan=False)
    x: float = Field(ge=0, lt=1, allow_inf_nan=False)


class EvalResponse(BaseModel):
    value: float
    abs_err_estimate: float
    method: str


class VerifyRequest(BaseModel):
    name: Literal["rct1", "rct2", "landen1", "landen2", "drct"]
    n: int = Field(default=99, ge=2, le=100_000)
    tol: Optional[float] = Field(default=None, gt=0)


class VerifyResponse(BaseModel):
    name: str
    max_residual: float
    worst_r: float
    n_points: int
    contract: float
    within_contract: bool


class ClassifyRequest(BaseModel):
    a: float = Field(gt=0, allow_inf_nan=False)
    b: float = Field(gt=0, allow_inf_nan=False)
    eps: float = Field(default=0.0, ge=0, allow_inf_nan=False)


class ClassifyResponse(BaseModel):
    d1: bool
    d2: bool
    d3: bool
    d4: bool
    d5: bool
    d6: bool
    equality_point: bool
    labels: list[str]


class RangeSpec(BaseModel):
    lo: float = Field(gt=0, allow_inf_nan=False)
    hi: float = Field(gt=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _ordered(self) -> "RangeSpec":
        if self.hi < self.lo:
            raise ValueError("range hi must be >= lo")
        return self


class ScanRequest(BaseModel):
    claim: ClaimLiteral
    a: RangeSpec
    b: RangeSpec
    na: int = Field(ge=1)
    nb: int = Field(ge=1)
    nr: int = Field(default=200, ge=2, le=1_000_000)
    tol: float = Field(default=1e-9, gt=0)

    @model_validator(mode="after")
    def _bounded(self) -> "ScanRequest":
        if self.na * self.nb > 1_000_000:
            raise ValueError("na*nb must not exceed 1e6")
        return self


class TurningPointRequest(BaseModel):
    a: float = Field(gt=0, allow_inf_nan=False)
    b: float = Field(gt=0, allow_inf_nan=False)
    which: Literal["f", "g"] = "f"


class TurningPointResponse(BaseModel):
    found: bool
    r0: Optional[float] = None
    bracket_lo: Optional[float] = None
    bracket_hi: Optional[float] = None
    kind: Optional[str] = None
    derivative_residual: Optional[float] = None
    detail: Optional[str] = None
