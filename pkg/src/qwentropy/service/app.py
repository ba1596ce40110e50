"""FastAPI application: four POST endpoints plus a health probe.

Error mapping (mirrored by the CLI's exit codes):
    InputError          -> 422  (bad parameters, excluded orders, parse failures)
    DivergentIntegral   -> 400  (order outside the convergent range)
    NumericError        -> 500  (quadrature non-convergence, scale overflow)
Every error body is ``{"error": <exception class name>, "detail": <message>}``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DivergentIntegral, InputError, NumericError, WalkError
from . import ops
from .models import (
    ConvergeRequest,
    ConvergeResponse,
    EntropyRequest,
    EntropyResponse,
    LimitRequest,
    LimitResponse,
    SimulateRequest,
    SimulateResponse,
)


def _error_response(status: int, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"error": type(exc).__name__, "detail": str(exc)}
    )


def create_app() -> FastAPI:
    app = FastAPI(title="qwentropy", version="0.1.0")

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError):
        return _error_response(422, exc)

    @app.exception_handler(DivergentIntegral)
    async def _divergent(request: Request, exc: DivergentIntegral):
        return _error_response(400, exc)

    @app.exception_handler(NumericError)
    async def _numeric(request: Request, exc: NumericError):
        return _error_response(500, exc)

    @app.exception_handler(WalkError)
    async def _walk(request: Request, exc: WalkError):
        return _error_response(500, exc)

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/v1/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest) -> SimulateResponse:
        return ops.run_simulate(req)

    @app.post("/v1/entropy", response_model=EntropyResponse)
    def entropy(req: EntropyRequest) -> EntropyResponse:
        return ops.run_entropy(req)

    @app.post("/v1/limit", response_model=LimitResponse)
    def limit(req: LimitRequest) -> LimitResponse:
        return ops.run_limit(req)

    @app.post("/v1/converge", response_model=ConvergeResponse)
    def converge(req: ConvergeRequest) -> ConvergeResponse:
        return ops.run_converge(req)

    return app


app = create_app()
