"""Curve document I/O: a small versioned JSON schema for pre-images.

A document stores the pre-image coefficients, the integration constant
p0, and free-form metadata.  Serialization is deterministic: fixed key
order and floats printed with 17 significant digits, which round-trip
exactly through IEEE doubles.  The same renderer backs the CLI and the
HTTP service so both produce byte-identical JSON.
"""

from __future__ import annotations

import json

import numpy as np

from .poly import BERNSTEIN, LEGENDRE, ComplexPoly

SCHEMA_VERSION = 1


class ValidationError(ValueError):
    """Malformed document or request; carries the offending field path."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def format_float(x):
    """17-significant-digit decimal form; round-trips any finite double."""
    x = float(x)
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("non-finite number in output")
    if x == int(x) and abs(x) < 1e16:
        return repr(x)  # keep short integral forms like 0.0 and 11.0
    return f"{x:.17g}"


def render_json(obj, indent=0):
    """Deterministic JSON text: insertion-ordered keys, fixed float format."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {render_json(v, indent + 1)}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        flat = all(isinstance(v, (int, float, bool, str)) or v is None for v in seq)
        if flat and len(seq) <= 8:
            return "[" + ", ".join(render_json(v) for v in seq) + "]"
        items = [f"{pad}  {render_json(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")


def pair(z):
    """Complex number as a [re, im] list."""
    z = complex(z)
    return [z.real, z.imag]


def pairs(zs):
    return [pair(z) for z in np.asarray(zs)]


def _require(obj, key, kind, path):
    if not isinstance(obj, dict):
        raise ValidationError(path, "expected an object")
    if key not in obj:
        raise ValidationError(f"{path}.{key}" if path else key, "missing field")
    val = obj[key]
    if kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ValidationError(f"{path}.{key}" if path else key, "expected a number")
        return float(val)
    if not isinstance(val, kind):
        raise ValidationError(f"{path}.{key}" if path else key,
                              f"expected {kind.__name__}")
    return val


def _parse_pair(val, path):
    if (not isinstance(val, list) or len(val) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in val)):
        raise ValidationError(path, "expected [re, im]")
    z = complex(float(val[0]), float(val[1]))
    if not np.isfinite(val[0]) or not np.isfinite(val[1]):
        raise ValidationError(path, "non-finite value")
    return z


def parse_document(obj, path="curve"):
    """Validate a document dict into (pre-image, p0, metadata)."""
    version = _require(obj, "version", int, path)
    if isinstance(version, bool) or version != SCHEMA_VERSION:
        raise ValidationError(f"{path}.version", f"unsupported version {version!r}")
    pre = _require(obj, "preimage", dict, path)
    ppath = f"{path}.preimage"
    basis = _require(pre, "basis", str, ppath)
    if basis not in (BERNSTEIN, LEGENDRE):
        raise ValidationError(f"{ppath}.basis", f"unknown basis {basis!r}")
    degree = _require(pre, "degree", int, ppath)
    if isinstance(degree, bool) or degree < 0:
        raise ValidationError(f"{ppath}.degree", "degree must be a nonnegative integer")
    coeffs = _require(pre, "coeffs", list, ppath)
    if len(coeffs) != degree + 1:
        raise ValidationError(f"{ppath}.coeffs",
                              f"expected {degree + 1} coefficients, got {len(coeffs)}")
    zs = [_parse_pair(c, f"{ppath}.coeffs[{k}]") for k, c in enumerate(coeffs)]
    p0 = _parse_pair(_require(obj, "p0", list, path), f"{path}.p0")
    metadata = obj.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ValidationError(f"{path}.metadata", "expected an object")
    return ComplexPoly(basis, zs), p0, metadata


def document(w, p0=0.0, metadata=None):
    """Document dict for a pre-image polynomial."""
    return {
        "version": SCHEMA_VERSION,
        "preimage": {
            "basis": w.basis,
            "degree": w.degree,
            "coeffs": pairs(w.coeffs),
        },
        "p0": pair(p0),
        "metadata": dict(metadata or {}),
    }


def document_to_json(doc):
    return render_json(doc) + "\n"


def load_document(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(str(path), f"invalid JSON: {exc}") from exc
    except OSError as exc:
        raise ValidationError(str(path), f"cannot read: {exc}") from exc
    return parse_document(obj)
