"""HTTP face of the analyser.

POST /analyze runs a request and returns the report bytes exactly as
the CLI would print them; the X-Result-Id header carries a content
hash of the analysis.  POST /chain reruns a stored wt/rta analysis
with chaining enabled, or takes the same fields inline.  GET /examples
lists the bundled programs, GET /healthz answers liveness probes.

Status codes: 400 for requests that do not parse at all, 413 for
oversized texts, 422 for well-formed requests the analyser rejects
(the body's `kind` field separates input errors from resource
limits), 429 when the concurrency gate is closed.
"""
from __future__ import annotations

import threading
from collections import OrderedDict

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, ConfigDict, Field

from .bundled import EXAMPLES
from .errors import InputError, ResourceLimitError
from .limits import MAX_PROGRAM_BYTES, MAX_TYPES_BYTES
from .pipeline import AnalysisRequest, request_id, run_analysis
from .report import FORMATS, emit

MEDIA_TYPES = {"json": "application/json", "xml": "application/xml"}
CACHE_ENTRIES = 64


class AnalyzeBody(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    program: str
    types: str = ""
    contextual: list[str] = []
    engine: str = "dm"
    goal: str | None = None
    max_states: int | None = Field(default=None, alias="maxStates")
    chain: bool = False
    format: str = "json"


class ChainBody(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    result_id: str | None = Field(default=None, alias="resultId")
    program: str | None = None
    types: str = ""
    contextual: list[str] = []
    engine: str | None = None
    goal: str | None = None
    max_states: int | None = Field(default=None, alias="maxStates")
    format: str = "json"


def create_app(max_concurrent: int | None = None) -> FastAPI:
    app = FastAPI(title="tattoo", version="0.1.0")
    lock = threading.Lock()
    active = 0
    stored: OrderedDict[str, AnalysisRequest] = OrderedDict()
    rendered: OrderedDict[tuple[str, str], bytes] = OrderedDict()

    def acquire() -> bool:
        nonlocal active
        if max_concurrent is None:
            return True
        with lock:
            if active >= max_concurrent:
                return False
            active += 1
            return True

    def release() -> None:
        nonlocal active
        if max_concurrent is None:
            return
        with lock:
            active -= 1

    def remember(key, value, cache: OrderedDict) -> None:
        cache[key] = value
        cache.move_to_end(key)
        while len(cache) > CACHE_ENTRIES:
            cache.popitem(last=False)

    def render(req: AnalysisRequest, fmt: str) -> Response:
        if fmt not in FORMATS:
            raise InputError(f"unknown report format {fmt!r}")
        rid = request_id(req)
        with lock:
            hit = rendered.get((rid, fmt))
            if hit is not None:
                rendered.move_to_end((rid, fmt))
        if hit is None:
            hit = emit(run_analysis(req), fmt)
        with lock:
            remember((rid, fmt), hit, rendered)
            remember(rid, req, stored)
        return Response(content=hit, media_type=MEDIA_TYPES[fmt],
                        headers={"X-Result-Id": rid})

    def oversized(program: str, types: str) -> JSONResponse | None:
        if len(program.encode("utf-8")) > MAX_PROGRAM_BYTES:
            return JSONResponse(status_code=413, content={
                "error": f"program text exceeds {MAX_PROGRAM_BYTES} bytes"})
        if len(types.encode("utf-8")) > MAX_TYPES_BYTES:
            return JSONResponse(status_code=413, content={
                "error": f"type text exceeds {MAX_TYPES_BYTES} bytes"})
        return None

    @app.exception_handler(RequestValidationError)
    async def malformed(_request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": "malformed request",
                                     "detail": exc.errors()})

    @app.exception_handler(InputError)
    async def rejected(_request, exc: InputError):
        return JSONResponse(status_code=422,
                            content={"error": str(exc), "kind": "input"})

    @app.exception_handler(ResourceLimitError)
    async def limited(_request, exc: ResourceLimitError):
        return JSONResponse(status_code=422,
                            content={"error": str(exc),
                                     "kind": "resource-limit"})

    @app.post("/analyze")
    def analyze(body: AnalyzeBody):
        if not acquire():
            return JSONResponse(status_code=429,
                                content={"error": "analyser is busy"})
        try:
            toobig = oversized(body.program, body.types)
            if toobig is not None:
                return toobig
            req = AnalysisRequest(program=body.program, types=body.types,
                                  contextual=tuple(body.contextual),
                                  engine=body.engine, goal=body.goal,
                                  max_states=body.max_states, chain=body.chain)
            return render(req, body.format)
        finally:
            release()

    @app.post("/chain")
    def chain(body: ChainBody):
        if not acquire():
            return JSONResponse(status_code=429,
                                content={"error": "analyser is busy"})
        try:
            if body.result_id is not None:
                with lock:
                    base = stored.get(body.result_id)
                if base is None:
                    return JSONResponse(status_code=404, content={
                        "error": f"no stored analysis {body.result_id!r}"})
                req = AnalysisRequest(
                    program=base.program, types=base.types,
                    contextual=base.contextual, engine=base.engine,
                    goal=body.goal if body.goal is not None else base.goal,
                    max_states=body.max_states if body.max_states is not None
                    else base.max_states,
                    chain=True)
            else:
                if body.program is None or body.engine is None:
                    raise InputError("chain needs a resultId or an inline "
                                     "program and engine")
                toobig = oversized(body.program, body.types)
                if toobig is not None:
                    return toobig
                req = AnalysisRequest(program=body.program, types=body.types,
                                      contextual=tuple(body.contextual),
                                      engine=body.engine, goal=body.goal,
                                      max_states=body.max_states, chain=True)
            return render(req, body.format)
        finally:
            release()

    @app.get("/examples")
    def examples():
        return [{"name": e.name, "description": e.description,
                 "program": e.program, "types": e.types, "goal": e.goal,
                 "contextual": list(e.contextual)} for e in EXAMPLES]

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    return app


app = create_app()
