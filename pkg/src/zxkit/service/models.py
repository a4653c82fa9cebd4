"""Request and response bodies for the HTTP service.

These are plain data shapes; all semantics live in the core modules and
the bridging logic in ``ops``.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class RuleValidationRequest(BaseModel):
    samples: int = Field(default=20, ge=1)
    seed: int = 0
    max_arity: int = Field(default=4, ge=0)
    tol: float = Field(default=1e-9, gt=0)
    only: list[str] | None = None
    include_timings: bool = False


class RuleCheckRecord(BaseModel):
    rule: str
    variant: str
    angles: list[str]
    arities: list[int]
    color_swapped: bool
    equal: bool
    residual: float
    elapsed: float | None = None


class RuleValidationResponse(BaseModel):
    samples: int
    seed: int
    max_arity: int
    tol: float
    passed: bool
    checks: int
    failures: int
    records: list[RuleCheckRecord]


class CatalogEntry(BaseModel):
    id: str
    group: str
    description: str
    signature: str
    color_swappable: bool


class DecomposeRequest(BaseModel):
    mode: Literal["parity-to-and", "pi4"]
    wires: int | None = Field(default=None, ge=1)
    support: list[int] | None = None
    beta: str | None = None
    circuit_text: str | None = None


class DecomposeResponse(BaseModel):
    circuit_text: str
    monomials: dict
    t_count: int


class OptimizeRequest(BaseModel):
    circuit_text: str


class OptimizeResponse(BaseModel):
    circuit_text: str
    t_before: int
    t_after: int
    terms_before: int
    terms_after: int
    monomials: dict


class QbcCheckRequest(BaseModel):
    circuit_a: str
    circuit_b: str
    data_bits_only: bool = False


class QbcCheckResponse(BaseModel):
    equivalent: bool
    witness: int | None
    witness_bits: str | None


class QbcSoundnessRequest(BaseModel):
    rule: int = Field(ge=1, le=6)
    trials: int = Field(default=100, ge=1)
    seed: int = 0
    max_wires: int = Field(default=8, ge=2)
    tol: float = Field(default=1e-9, gt=0)
    zx_max_wires: int = Field(default=6, ge=0)
    corrupt: bool = False


class QbcSoundnessResponse(BaseModel):
    rule: int
    trials: int
    seed: int
    corrupt: bool
    passed: bool
    failures: int
    records: list[dict]


class ScalarMatchModel(BaseModel):
    equal: bool
    scalar_re: float | None = None
    scalar_im: float | None = None
    residual: float


class EvalRequest(BaseModel):
    diagram: dict
    compare: dict | None = None
    tol: float = Field(default=1e-9, gt=0)
    budget: int | None = Field(default=None, ge=0)


class EvalResponse(BaseModel):
    tensor: dict
    match: ScalarMatchModel | None = None


class HealthResponse(BaseModel):
    status: str
    version: str
