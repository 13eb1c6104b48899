"""Operation layer shared by the CLI and the HTTP service.

Each op takes parsed inputs and returns a plain JSON-ready dict (or SVG
text for rendering).  Validation problems raise ValidationError with a
field path; solvers that come back empty raise SolverEmptyError with
diagnostics.  Keeping this layer common guarantees the two front ends
return identical results for identical requests.
"""

from __future__ import annotations

import numpy as np

from . import arclength, perturb, poly
from .curves import arc_length, build_curve, is_canonical, verify_ph
from .docio import ValidationError, document, pair, pairs
from .ortho import DEFAULT_SEED, basis_for, orthogonal_ph_with_speed
from .perturb import SCHEMES
from .poly import BERNSTEIN, LEGENDRE, ComplexPoly
from .svgplot import render_svg


class SolverEmptyError(Exception):
    """A solve produced no admissible solutions."""

    def __init__(self, message, diagnostics):
        self.diagnostics = diagnostics
        super().__init__(message)


def _hodo_length(curve):
    # integral of |r'(t)| for curves carried by their hodograph only
    h = curve.hodograph
    nodes, weights = np.polynomial.legendre.leggauss(max(2 * h.degree + 2, 8))
    t = 0.5 * (nodes + 1.0)
    vals = np.abs(poly.eval_poly(h, t))
    return float(0.5 * np.sum(weights * vals))


def _perturbation_payload(w, p, p0=0.0):
    applied = perturb.apply(w, p, p0=p0)
    return {
        "norm": p.norm,
        "flags": list(p.flags),
        "delta_legendre": pairs(p.delta_legendre.coeffs),
        "delta_bernstein": pairs(p.delta_bernstein.coeffs),
        "preimage": document(applied.preimage, p0),
        "curve": {
            "controls": pairs(applied.curve.controls),
            "curve_distance": applied.curve_distance,
            "control_displacements": pairs(applied.control_displacements),
        },
    }


def op_info(w, p0=0.0, metadata=None):
    curve = build_curve(w, p0=p0)
    canon_ok, canon_res = is_canonical(w)
    report = verify_ph(curve)
    return {
        "basis": w.basis,
        "degree": w.degree,
        "curve_degree": curve.degree,
        "norm": poly.norm(w),
        "arc_length": arc_length(w),
        "canonical": {"is_canonical": bool(canon_ok), "residual": canon_res},
        "ph_check": {"is_ph": bool(report.is_ph), "residual": report.residual},
        "endpoints": [pair(curve.controls[0]), pair(curve.controls[-1])],
        "metadata": dict(metadata or {}),
    }


def op_convert(w, p0=0.0, metadata=None, to=LEGENDRE):
    if to not in (BERNSTEIN, LEGENDRE):
        raise ValidationError("to", f"unknown basis {to!r}")
    return document(poly.convert(w, to), p0, metadata)


def op_ortho_basis(w):
    wl = poly.to_legendre(w)
    basis = basis_for(wl)
    return {
        "dimension": basis.complexQ.shape[1],
        "householder_vector": basis.g.tolist(),
        "Q": [[float(v) for v in row] for row in basis.Q],
        "complexQ": [pairs(row) for row in basis.complexQ],
        "basis_curves": [pairs(c.coeffs) for c in basis.curves],
    }


def op_ortho_ph(w, sigma, sigma_basis="power", start=0.0, starts=512, seed=DEFAULT_SEED):
    if sigma_basis == "power":
        sig = poly.power_to_bernstein(sigma)
    elif sigma_basis == BERNSTEIN:
        sig = poly.bernstein_poly(sigma)
    else:
        raise ValidationError("sigma_basis", f"unknown basis {sigma_basis!r}")
    if np.max(np.abs(np.asarray(sig.coeffs).imag)) > 1e-12:
        raise ValidationError("sigma", "speed coefficients must be real")
    sols = orthogonal_ph_with_speed(_cubic_curve(w), sig, start=start, starts=starts, seed=seed)
    if len(sols) == 0:
        raise SolverEmptyError("no orthogonal curves found", {
            "starts_used": sols.starts_used,
            "converged_fraction": sols.converged_fraction,
        })
    out = []
    for s in sols.solutions:
        entry = {
            "kind": s.kind,
            "xi": list(map(float, s.xi)),
            "residual": s.residual,
            "controls": pairs(s.curve.controls),
            "arc_length": _hodo_length(s.curve) if s.curve.preimage is None
            else arc_length(s.curve.preimage),
        }
        if s.curve.preimage is not None:
            entry["preimage"] = document(s.curve.preimage, s.curve.p0)
        out.append(entry)
    return {
        "count": len(out),
        "start_point": pair(complex(start)),
        "solutions": out,
        "diagnostics": {
            "starts_used": sols.starts_used,
            "converged_fraction": sols.converged_fraction,
        },
    }


def _cubic_curve(w):
    curve = build_curve(w)
    if curve.degree != 3:
        raise ValidationError("curve", "speed-matched orthogonals need a cubic source curve")
    return curve


def _parse_scheme_params(w, scheme, params):
    """Scheme parameter extraction with path-tagged validation errors."""
    def need(key, kind=float):
        if key not in params:
            raise ValidationError(f"params.{key}", "missing parameter")
        val = params[key]
        if kind is float:
            if isinstance(val, bool) or not isinstance(val, (int, float)):
                raise ValidationError(f"params.{key}", "expected a number")
            return float(val)
        if kind is list:
            if not isinstance(val, (list, tuple)):
                raise ValidationError(f"params.{key}", "expected a list of numbers")
            return [float(v) for v in val]
        raise ValidationError(f"params.{key}", "bad parameter kind")

    bound = params.get("bound", np.inf)
    if isinstance(bound, bool) or not isinstance(bound, (int, float)):
        raise ValidationError("params.bound", "expected a number")
    bound = float(bound)

    if scheme == perturb.EQUAL_MAGNITUDE_LEGENDRE:
        return {"rhos": need("rhos", list), "phis": need("phis", list), "bound": bound}
    if scheme == perturb.EQUAL_MAGNITUDE_BERNSTEIN:
        return {"rs": need("rs", list), "phis": need("phis", list), "bound": bound}
    if scheme == perturb.TANGENT_PRESERVING_BERNSTEIN:
        return {"r": need("r"), "interior_phis": need("interior_phis", list), "bound": bound}
    if scheme == perturb.TANGENT_PRESERVING_LEGENDRE:
        return {"rho": need("rho"), "phi0": need("phi0"), "bound": bound}
    if scheme == perturb.ENDPOINT_EQUAL_ANGLE:
        return {"d": need("d"), "phi": need("phi"), "bound": bound}
    if scheme == perturb.ENDPOINTS_TANGENTS_QUINTIC:
        return {"r": need("r"), "bound": bound}
    raise ValidationError("scheme", f"unknown scheme {scheme!r}")


def op_perturb(w, scheme, params, p0=0.0):
    if scheme not in SCHEMES:
        raise ValidationError("scheme", f"unknown scheme {scheme!r}")
    merged = _parse_scheme_params(w, scheme, params)
    try:
        found = perturb.perturbations_for(w, scheme, merged)
    except ValueError as exc:
        raise ValidationError("params", str(exc)) from exc
    if not found:
        raise SolverEmptyError("no admissible perturbation", {
            "scheme": scheme, "solution_count": 0,
        })
    try:
        solutions = [_perturbation_payload(w, p, p0) for p in found]
    except perturb.BoundViolationError as exc:
        raise ValidationError("params.bound", str(exc)) from exc
    return {
        "scheme": scheme,
        "count": len(found),
        "solutions": solutions,
    }


def op_arclen(w, delta_s, fixed, p0=0.0, starts=256, seed=DEFAULT_SEED):
    if isinstance(delta_s, bool) or not isinstance(delta_s, (int, float)):
        raise ValidationError("delta_s", "expected a number")
    if not isinstance(fixed, dict):
        raise ValidationError("fixed", "expected a map of gamma index to value")
    parsed = {}
    for key, val in fixed.items():
        try:
            idx = int(key)
        except (TypeError, ValueError):
            raise ValidationError(f"fixed.{key}", "index must be an integer") from None
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ValidationError(f"fixed.{key}", "expected a number")
        parsed[idx] = float(val)
    try:
        system = arclength.build_system(w, float(delta_s), parsed)
    except ValueError as exc:
        raise ValidationError("arclen", str(exc)) from exc
    sols = arclength.solve_arc_system(system, starts=starts, seed=seed)
    if len(sols) == 0:
        raise SolverEmptyError("no admissible arc-length modification", {
            "starts_used": sols.starts_used,
            "converged_fraction": sols.converged_fraction,
            "delta_s": system.delta_s,
            "fixed": {str(k): v for k, v in system.fixed.items()},
        })
    out = []
    for p, res in zip(sols.solutions, sols.residuals):
        gamma = p.spec.params["gamma"]
        curve = arclength.perturbed_curve(poly.to_legendre(w), p, p0=p0)
        out.append({
            "gamma": list(map(float, gamma)),
            "gamma_free": list(map(float, p.spec.params["gamma_free"])),
            "free_indices": list(p.spec.params["free_indices"]),
            "norm": p.norm,
            "residual": float(res),
            "delta_legendre": pairs(p.delta_legendre.coeffs),
            "arc_length_after": arclength.arc_length_after(w, gamma),
            "preimage": document(curve.preimage, p0),
            "controls": pairs(curve.controls),
        })
    return {
        "arc_length_before": system.S,
        "delta_s": system.delta_s,
        "count": len(out),
        "solutions": out,
        "diagnostics": {
            "starts_used": sols.starts_used,
            "converged_fraction": sols.converged_fraction,
        },
    }


def op_sample_family(w, scheme, params, grid, align=False, p0=0.0):
    """One curve document per admissible perturbation over a parameter grid.

    Each grid point is a partial parameter object merged over params; the
    returned documents are ready to feed straight into render.  Grid points
    whose admissible set is empty contribute nothing; an entirely empty
    family is a solver-empty condition.
    """
    if scheme not in SCHEMES:
        raise ValidationError("scheme", f"unknown scheme {scheme!r}")
    if not isinstance(params, dict):
        raise ValidationError("params", "expected an object")
    if not isinstance(grid, list) or not grid:
        raise ValidationError("grid", "expected a nonempty list of parameter objects")
    for k, point in enumerate(grid):
        if not isinstance(point, dict):
            raise ValidationError(f"grid[{k}]", "expected an object")
    base = build_curve(w, p0=p0)
    docs, members = [], []
    for k, point in enumerate(grid):
        merged = dict(params)
        merged.update(point)
        parsed = _parse_scheme_params(w, scheme, merged)
        try:
            found = perturb.perturbations_for(w, scheme, parsed)
        except ValueError as exc:
            raise ValidationError("params", str(exc)) from exc
        for p in found:
            try:
                applied = perturb.apply(w, p, p0=p0)
            except perturb.BoundViolationError as exc:
                raise ValidationError("params.bound", str(exc)) from exc
            curve = applied.curve
            if align:
                curve = perturb.centroid_align(curve, base)
            docs.append(document(curve.preimage, curve.p0))
            members.append({
                "grid_index": k,
                "point": {key: merged[key] for key in point},
                "norm": p.norm,
                "curve_distance": applied.curve_distance,
            })
    if not docs:
        raise SolverEmptyError("no admissible modification anywhere on the grid", {
            "scheme": scheme, "grid_points": len(grid), "solution_count": 0,
        })
    return {
        "scheme": scheme,
        "count": len(docs),
        "aligned": bool(align),
        "curves": docs,
        "members": members,
    }


def op_render(parsed_docs, samples=256, centroid_align=False, show_controls=True):
    curves = [build_curve(w, p0=p0) for w, p0, _ in parsed_docs]
    if centroid_align and curves:
        curves = [curves[0]] + [perturb.centroid_align(c, curves[0]) for c in curves[1:]]
    try:
        return render_svg(curves, samples=samples, show_controls=show_controls)
    except ValueError as exc:
        raise ValidationError("render", str(exc)) from exc
