"""FastAPI application exposing the numerical core over HTTP.

Scalar endpoints return JSON; /scan streams one line per parameter point,
as CSV (default) or newline-delimited JSON, in a deterministic order.
"""

from __future__ import annotations

from typing import Iterator, Literal

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from .. import __version__
from ..errors import DomainError, TurningPointNotFound
from ..formatting import SCAN_CSV_HEADER, scan_obj_csv, scan_obj_json, scan_row_dict
from ..hypergeometric import HypParams, hyp2f1
from ..inequality_lab import default_grid, find_turning_point, iter_scan, linspace
from ..rct_transforms import VERIFY_CONTRACTS, run_verification, uniform_grid
from ..regions import classify
from ..special_core import Params
from .schemas import (
    ClassifyRequest,
    ClassifyResponse,
    EvalRequest,
    EvalResponse,
    ScanRequest,
    TurningPointRequest,
    TurningPointResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="rct-hyper", version=__version__)

    @app.exception_handler(DomainError)
    async def _domain_error(_: Request, exc: DomainError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/eval", response_model=EvalResponse)
    def eval_point(req: EvalRequest) -> EvalResponse:
        res = hyp2f1(HypParams(req.a, req.b, req.c), req.x)
        return EvalResponse(value=res.value, abs_err_estimate=res.abs_err_estimate,
                            method=res.method.value)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        result = run_verification(req.name, uniform_grid(req.n))
        contract = req.tol if req.tol is not None else VERIFY_CONTRACTS[req.name]
        return VerifyResponse(name=result.name, max_residual=result.max_residual,
                              worst_r=result.worst_r, n_points=result.n_points,
                              contract=contract,
                              within_contract=result.max_residual <= contract)

    @app.post("/classify", response_model=ClassifyResponse)
    def classify_point(req: ClassifyRequest) -> ClassifyResponse:
        label = classify(Params(req.a, req.b), eps=req.eps)
        return ClassifyResponse(d1=label.in_d1, d2=label.in_d2, d3=label.in_d3,
                                d4=label.in_d4, d5=label.in_d5, d6=label.in_d6,
                                equality_point=label.is_equality_point,
                                labels=list(label.labels()))

    @app.post("/turning-point", response_model=TurningPointResponse)
    def turning_point(req: TurningPointRequest) -> TurningPointResponse:
        try:
            tp = find_turning_point(Params(req.a, req.b), req.which)
        except TurningPointNotFound as exc:
            return TurningPointResponse(found=False, detail=str(exc))
        return TurningPointResponse(found=True, r0=tp.r0, bracket_lo=tp.bracket[0],
                                    bracket_hi=tp.bracket[1], kind=tp.kind,
                                    derivative_residual=tp.derivative_residual)

    @app.post("/scan")
    def scan(req: ScanRequest, format: Literal["csv", "json"] = "csv") -> StreamingResponse:
        a_values = linspace(req.a.lo, req.a.hi, req.na)
        b_values = linspace(req.b.lo, req.b.hi, req.nb)

        def rows() -> Iterator[str]:
            if format == "csv":
                yield SCAN_CSV_HEADER + "\n"
            for row in iter_scan(req.claim, a_values, b_values,
                                 r_grid=default_grid(req.nr), tol=req.tol):
                obj = scan_row_dict(row)
                if format == "csv":
                    yield scan_obj_csv(obj) + "\n"
                else:
                    yield scan_obj_json(obj) + "\n"

        media = "text/csv" if format == "csv" else "application/x-ndjson"
        return StreamingResponse(rows(), media_type=media)

    return app


app = create_app()
