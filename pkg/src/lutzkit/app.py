"""HTTP surface: a thin FastAPI layer over the service handlers.

Run with `uvicorn lutzkit.app:app`.  Malformed text payloads (diagram or
open book syntax errors) and semantically invalid inputs both come back
as 422 with the underlying message in `detail`.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, service
from .errors import ParseError
from .schemas import (
    DiagramResponse,
    InvariantsRequest,
    InvariantsResponse,
    LutzLinkRequest,
    OpenBookLutzRequest,
    OpenBookLutzResponse,
    RelativePieceResponse,
    SnfRequest,
    SnfResponse,
    VerifyResponse,
)

app = FastAPI(
    title="lutzkit",
    version=__version__,
    description="Exact contact-surgery and open-book calculations.",
)


@app.exception_handler(ParseError)
async def _parse_error(request: Request, exc: ParseError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(KeyError)
async def _key_error(request: Request, exc: KeyError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": str(exc.args[0]) if exc.args else "unknown id"})


@app.get("/health")
async def health() -> dict[str, str]:
    return {"status": "ok", "version": __version__}


@app.post("/lutz-link", response_model=DiagramResponse)
async def lutz_link(req: LutzLinkRequest) -> DiagramResponse:
    return service.build_lutz_link(req.tb, req.rot, req.simple)


@app.post("/invariants", response_model=InvariantsResponse)
async def invariants(req: InvariantsRequest) -> InvariantsResponse:
    return service.compute_invariants(req.diagram)


@app.post("/snf", response_model=SnfResponse)
async def snf(req: SnfRequest) -> SnfResponse:
    return service.compute_snf(req.matrix)


@app.post("/openbook/lutz", response_model=OpenBookLutzResponse)
async def openbook_lutz(req: OpenBookLutzRequest) -> OpenBookLutzResponse:
    return service.transform_openbook(req.openbook, req.binding)


@app.get("/openbook/t2xi", response_model=RelativePieceResponse)
async def openbook_t2xi() -> RelativePieceResponse:
    return service.relative_piece()


@app.get("/verify-paper", response_model=VerifyResponse)
async def verify_paper() -> VerifyResponse:
    return service.verify()
