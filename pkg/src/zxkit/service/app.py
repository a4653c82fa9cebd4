"""FastAPI wiring: routes delegate to ``ops``; core errors map to 400."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..tensor import ResourceLimitError
from . import ops
from .models import (
    CatalogEntry,
    DecomposeRequest,
    DecomposeResponse,
    EvalRequest,
    EvalResponse,
    HealthResponse,
    OptimizeRequest,
    OptimizeResponse,
    QbcCheckRequest,
    QbcCheckResponse,
    QbcSoundnessRequest,
    QbcSoundnessResponse,
    RuleValidationRequest,
    RuleValidationResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="zxkit", version=__version__)

    @app.exception_handler(ResourceLimitError)
    async def resource_limit(request: Request, exc: ResourceLimitError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"detail": str(exc), "kind": "resource-limit"}
        )

    @app.exception_handler(ValueError)
    async def invalid_input(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"detail": str(exc), "kind": "invalid-input"}
        )

    @app.get("/health", response_model=HealthResponse)
    async def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.get("/rules/catalog", response_model=list[CatalogEntry])
    async def rules_catalog() -> list[CatalogEntry]:
        return ops.rule_catalog()

    @app.post("/rules/validate", response_model=RuleValidationResponse)
    async def rules_validate(req: RuleValidationRequest) -> RuleValidationResponse:
        return ops.validate_rules(req)

    @app.post("/decompose", response_model=DecomposeResponse)
    async def decompose(req: DecomposeRequest) -> DecomposeResponse:
        return ops.decompose(req)

    @app.post("/optimize", response_model=OptimizeResponse)
    async def optimize(req: OptimizeRequest) -> OptimizeResponse:
        return ops.optimize(req)

    @app.post("/qbc/check", response_model=QbcCheckResponse)
    async def qbc_check(req: QbcCheckRequest) -> QbcCheckResponse:
        return ops.qbc_check(req)

    @app.post("/qbc/soundness", response_model=QbcSoundnessResponse)
    async def qbc_soundness(req: QbcSoundnessRequest) -> QbcSoundnessResponse:
        return ops.qbc_soundness(req)

    @app.post("/eval", response_model=EvalResponse)
    async def eval_diagram(req: EvalRequest) -> EvalResponse:
        return ops.eval_diagram(req)

    return app
