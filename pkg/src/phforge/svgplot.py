"""Deterministic SVG rendering of curve families.

Byte-for-byte reproducible for fixed input: fixed palette, fixed
coordinate format, viewBox derived from the sampled points.  The y axis
is flipped so mathematical orientation renders upward.
"""

from __future__ import annotations

import numpy as np

from .curves import sample

PALETTE = (
    "#1f5fa8", "#d4622a", "#2e8540", "#b03a9c",
    "#6a4fd8", "#a8731f", "#3092a8", "#c23b4e",
)


def _fmt(x):
    # fixed-point keeps output stable across platforms
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _polyline(points, attrs):
    pts = " ".join(f"{_fmt(p.real)},{_fmt(-p.imag)}" for p in points)
    attr_text = " ".join(f'{k}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{pts}" {attr_text} />'


def render_svg(curves, samples=256, show_controls=True):
    """SVG document showing each curve and optionally its control polygon."""
    if not curves:
        raise ValueError("nothing to render")
    if samples < 2:
        raise ValueError("need at least 2 samples")
    traces = [sample(c, samples) for c in curves]
    cloud = np.concatenate(traces + [np.asarray(c.controls) for c in curves])
    xs, ys = cloud.real, -cloud.imag
    x0, x1 = float(np.min(xs)), float(np.max(xs))
    y0, y1 = float(np.min(ys)), float(np.max(ys))
    span = max(x1 - x0, y1 - y0, 1e-9)
    pad = 0.05 * span
    x0, x1 = x0 - pad, x1 + pad
    y0, y1 = y0 - pad, y1 + pad
    stroke = 0.008 * span
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}">'
    ]
    for k, (curve, trace) in enumerate(zip(curves, traces)):
        color = PALETTE[k % len(PALETTE)]
        if show_controls:
            parts.append(_polyline(curve.controls, {
                "fill": "none", "stroke": color,
                "stroke-width": _fmt(0.5 * stroke),
                "stroke-dasharray": f"{_fmt(2 * stroke)} {_fmt(2 * stroke)}",
                "opacity": "0.6",
            }))
        parts.append(_polyline(trace, {
            "fill": "none", "stroke": color, "stroke-width": _fmt(stroke),
            "stroke-linecap": "round", "stroke-linejoin": "round",
        }))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
