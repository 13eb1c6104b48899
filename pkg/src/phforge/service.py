"""Stateless HTTP front end.

Thin request parsing around the shared op layer; responses are rendered
with the same deterministic JSON writer as the CLI, so identical inputs
produce byte-identical payloads through either front end.  No state is
kept between requests.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request, Response

from .docio import ValidationError, document_to_json, parse_document, render_json
from .ops import (
    SolverEmptyError,
    op_arclen,
    op_convert,
    op_info,
    op_ortho_basis,
    op_ortho_ph,
    op_perturb,
    op_render,
    op_sample_family,
)

app = FastAPI(title="phforge", docs_url=None, redoc_url=None, openapi_url=None)


def _json_response(payload, status=200):
    return Response(render_json(payload) + "\n", status_code=status,
                    media_type="application/json")


@app.exception_handler(ValidationError)
async def _validation_handler(request, exc):
    return _json_response({"error": str(exc), "path": exc.path}, status=400)


@app.exception_handler(SolverEmptyError)
async def _empty_handler(request, exc):
    return _json_response({"error": str(exc), "diagnostics": exc.diagnostics}, status=422)


async def _body(request):
    try:
        payload = await request.json()
    except json.JSONDecodeError as exc:
        raise ValidationError("body", f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValidationError("body", "expected a JSON object")
    return payload


def _curve(payload, key="curve"):
    if key not in payload:
        raise ValidationError(key, "missing field")
    return parse_document(payload[key], path=key)


def _number(payload, key, default=None):
    val = payload.get(key, default)
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ValidationError(key, "expected a number")
    return val


def _pair_or_zero(payload, key):
    val = payload.get(key)
    if val is None:
        return 0.0 + 0.0j
    if (not isinstance(val, list) or len(val) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in val)):
        raise ValidationError(key, "expected [re, im]")
    return complex(float(val[0]), float(val[1]))


@app.get("/api/health")
async def health():
    return _json_response({"status": "ok"})


@app.post("/api/info")
async def info(request: Request):
    w, p0, metadata = _curve(await _body(request))
    return _json_response(op_info(w, p0, metadata))


@app.post("/api/convert")
async def convert(request: Request):
    payload = await _body(request)
    w, p0, metadata = _curve(payload)
    target = payload.get("to")
    if not isinstance(target, str):
        raise ValidationError("to", "expected a basis name")
    doc = op_convert(w, p0, metadata, to=target)
    return Response(document_to_json(doc), media_type="application/json")


@app.post("/api/ortho-basis")
async def ortho_basis(request: Request):
    w, _, _ = _curve(await _body(request))
    return _json_response(op_ortho_basis(w))


@app.post("/api/ortho-ph")
async def ortho_ph(request: Request):
    payload = await _body(request)
    w, _, _ = _curve(payload)
    sigma = payload.get("sigma")
    if (not isinstance(sigma, list) or not sigma
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in sigma)):
        raise ValidationError("sigma", "expected a list of numbers")
    basis = payload.get("sigma_basis", "power")
    if not isinstance(basis, str):
        raise ValidationError("sigma_basis", "expected a basis name")
    start = _pair_or_zero(payload, "start")
    starts = int(_number(payload, "starts", 512))
    return _json_response(op_ortho_ph(w, [float(v) for v in sigma], sigma_basis=basis,
                                      start=start, starts=starts))


@app.post("/api/perturb/{scheme}")
async def perturb_scheme(scheme: str, request: Request):
    payload = await _body(request)
    w, p0, _ = _curve(payload)
    params = payload.get("params", {})
    if not isinstance(params, dict):
        raise ValidationError("params", "expected an object")
    return _json_response(op_perturb(w, scheme, params, p0))


@app.post("/api/sample-family")
async def sample_family(request: Request):
    payload = await _body(request)
    w, p0, _ = _curve(payload)
    scheme = payload.get("scheme")
    if not isinstance(scheme, str):
        raise ValidationError("scheme", "expected a scheme name")
    params = payload.get("params", {})
    if not isinstance(params, dict):
        raise ValidationError("params", "expected an object")
    grid = payload.get("grid")
    align = bool(payload.get("align", False))
    return _json_response(op_sample_family(w, scheme, params, grid, align=align, p0=p0))


@app.post("/api/arclen")
async def arclen(request: Request):
    payload = await _body(request)
    w, p0, _ = _curve(payload)
    delta_s = _number(payload, "delta_s")
    fixed = payload.get("fixed", {})
    starts = int(_number(payload, "starts", 256))
    return _json_response(op_arclen(w, delta_s, fixed, p0, starts=starts))


@app.post("/api/render")
async def render(request: Request):
    payload = await _body(request)
    docs = payload.get("curves")
    if not isinstance(docs, list) or not docs:
        raise ValidationError("curves", "expected a nonempty list of curve documents")
    parsed = [parse_document(d, path=f"curves[{k}]") for k, d in enumerate(docs)]
    samples = int(_number(payload, "samples", 256))
    centroid = bool(payload.get("centroid_align", False))
    controls = bool(payload.get("show_controls", True))
    svg = op_render(parsed, samples=samples, centroid_align=centroid,
                    show_controls=controls)
    return Response(svg, media_type="image/svg+xml")
