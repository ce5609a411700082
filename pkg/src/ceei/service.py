"""Stateless HTTP facade over the division engine.

Routes:
    POST /api/classify    problem document -> classification
    POST /api/solve       problem document -> selected division + fairness
    POST /api/enumerate   problem document -> all profiles (negative problems)
    POST /api/audit       problem document -> fairness/axiom report
    POST /api/components  two-bads document -> EF component report
    GET  /api/demos       list of built-in demos
    GET  /api/demos/{name}  replay one demo
    GET  /healthz

Identical request bodies produce byte-identical response bodies (timing
lives in the X-Elapsed-Ms header, never in the payload).  Schema errors
are 400, domain mismatches (wrong classification or arity) are 422,
oversized requests are 413.  Support enumeration gets a per-request time
budget; a truncated search is reported via "exhaustive": false rather
than silently.
"""

from __future__ import annotations

import json
import os
import time

from fastapi import FastAPI, Request, Response

from . import reports
from .instances import DEMOS, run_demo
from .enumeration import EnumerationLimitExceeded
from .io import DocumentError, parse_document
from .solver import ClassificationMismatch

MAX_BODY_BYTES = 64 * 1024
SUPPORT_BUDGET_SECONDS = 5.0

app = FastAPI(title="ceei", docs_url=None, redoc_url=None)


def _json_response(body: dict, status: int = 200, elapsed: float = 0.0) -> Response:
    return Response(content=json.dumps(body, sort_keys=True),
                    status_code=status, media_type="application/json",
                    headers={"X-Elapsed-Ms": f"{elapsed * 1000:.1f}"})


def _error(status: int, message: str) -> Response:
    return _json_response({"error": message}, status)


async def _read_document(request: Request):
    raw = await request.body()
    if len(raw) > MAX_BODY_BYTES:
        return None, _error(413, f"request body exceeds {MAX_BODY_BYTES} bytes")
    try:
        return parse_document(raw), None
    except DocumentError as exc:
        return None, _error(400, str(exc))


def _handle(doc, fn) -> Response:
    start = time.monotonic()
    try:
        body = fn(doc)
    except EnumerationLimitExceeded as exc:
        return _error(413, str(exc))
    except ClassificationMismatch as exc:
        return _error(422, str(exc))
    except ValueError as exc:
        return _error(422, str(exc))
    return _json_response(body, elapsed=time.monotonic() - start)


@app.get("/healthz")
def healthz():
    return {"status": "ok"}


@app.post("/api/classify")
async def classify_route(request: Request):
    doc, err = await _read_document(request)
    if err:
        return err
    return _handle(doc, lambda d: reports.classify_response(d.problem))


@app.post("/api/solve")
async def solve_route(request: Request):
    doc, err = await _read_document(request)
    if err:
        return err
    deadline = time.monotonic() + SUPPORT_BUDGET_SECONDS
    return _handle(doc, lambda d: reports.solve_response(d, deadline))


@app.post("/api/enumerate")
async def enumerate_route(request: Request):
    doc, err = await _read_document(request)
    if err:
        return err
    deadline = time.monotonic() + SUPPORT_BUDGET_SECONDS
    return _handle(doc, lambda d: reports.enumerate_response(d, deadline))


@app.post("/api/audit")
async def audit_route(request: Request):
    doc, err = await _read_document(request)
    if err:
        return err
    return _handle(doc, reports.audit_response)


@app.post("/api/components")
async def components_route(request: Request):
    doc, err = await _read_document(request)
    if err:
        return err
    return _handle(doc, reports.components_response)


@app.get("/api/demos")
def demos_index():
    return {"demos": sorted(DEMOS)}


@app.get("/api/demos/{name}")
def demo_route(name: str):
    if name not in DEMOS:
        return _error(404, f"unknown demo {name!r}")
    start = time.monotonic()
    body = reports.demo_response(run_demo(name))
    return _json_response(body, elapsed=time.monotonic() - start)


def main() -> None:
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=int(os.environ.get("PORT", "8000")))


if __name__ == "__main__":
    main()
