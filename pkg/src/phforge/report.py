"""Figure-and-data report generation.

Renders the loaded curves to a PNG figure with matplotlib, writes the
sampled points as CSV, and returns tab-delimited summary rows for the
terminal.  Complements the deterministic SVG path when a quick visual
check plus importable data matters more than byte stability.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import poly
from .curves import arc_length, sample
from .svgplot import PALETTE


def write_report(curves, out_dir, samples=256, labels=None, dpi=150):
    """PNG + CSV for a curve list; returns (figure_path, csv_path, rows).

    rows are tab-delimited summary lines: index, label, curve degree,
    arc length, max control magnitude.
    """
    if not curves:
        raise ValueError("nothing to report")
    os.makedirs(out_dir, exist_ok=True)
    if labels is None:
        labels = [f"curve-{k}" for k in range(len(curves))]

    fig, ax = plt.subplots(figsize=(7.0, 5.5))
    traces = []
    for k, curve in enumerate(curves):
        color = PALETTE[k % len(PALETTE)]
        pts = sample(curve, samples)
        traces.append(pts)
        ax.plot(pts.real, pts.imag, color=color, lw=1.6, label=labels[k])
        ctrl = np.asarray(curve.controls)
        ax.plot(ctrl.real, ctrl.imag, color=color, lw=0.8, ls="--", alpha=0.5)
        ax.plot(ctrl.real, ctrl.imag, ".", color=color, ms=4, alpha=0.7)
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, lw=0.3, alpha=0.5)
    ax.legend(loc="best", fontsize=8)
    fig_path = os.path.join(out_dir, "curves.png")
    fig.savefig(fig_path, dpi=dpi, bbox_inches="tight")
    plt.close(fig)

    csv_path = os.path.join(out_dir, "samples.csv")
    ts = np.linspace(0.0, 1.0, samples)
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["curve", "t", "x", "y"])
        for label, pts in zip(labels, traces):
            for t, z in zip(ts, pts):
                writer.writerow([label, f"{t:.10g}", f"{z.real:.17g}", f"{z.imag:.17g}"])

    rows = []
    for k, (label, curve) in enumerate(zip(labels, curves)):
        if curve.preimage is not None:
            length = arc_length(curve.preimage)
        else:
            h = curve.hodograph
            nodes, weights = np.polynomial.legendre.leggauss(max(2 * h.degree + 2, 8))
            vals = np.abs(poly.eval_poly(h, 0.5 * (nodes + 1.0)))
            length = float(0.5 * np.sum(weights * vals))
        ctrl_mag = float(np.max(np.abs(np.asarray(curve.controls))))
        rows.append("\t".join([str(k), label, str(curve.degree),
                               f"{length:.12g}", f"{ctrl_mag:.12g}"]))
    return fig_path, csv_path, rows
