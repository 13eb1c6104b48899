"""Bounded pre-image perturbations with optional tangent/endpoint preservation.

A perturbation delta-w of the pre-image lives in the same coefficient
space as the curve geometry: its size is the induced norm
||delta w|| = ||delta C||_2 of the Legendre coefficients, so a budget
||delta w|| <= Delta is a Euclidean ball.  The schemes here choose
delta-w inside that ball while preserving combinations of

* end tangent directions (collinear end coefficients), and/or
* curve end points (the quadratic constraint delta C . (delta C + 2 C) = 0
  for canonical curves).

All schemes return explicit Perturbation values carrying both the
Legendre and the Bernstein coefficient forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import poly
from .curves import build_curve
from .poly import BERNSTEIN, LEGENDRE, ComplexPoly
from .solvers import SolutionSet, bracket_roots, multistart, quadratic_complex, quadratic_real

EQUAL_MAGNITUDE_LEGENDRE = "equal-magnitude-legendre"
EQUAL_MAGNITUDE_BERNSTEIN = "equal-magnitude-bernstein"
TANGENT_PRESERVING_BERNSTEIN = "tangent-preserving-bernstein"
TANGENT_PRESERVING_LEGENDRE = "tangent-preserving-legendre"
ENDPOINT_EQUAL_ANGLE = "endpoint-equal-angle"
ENDPOINTS_TANGENTS_QUINTIC = "endpoints-tangents-quintic"
ARC_LENGTH = "arc-length"

SCHEMES = (
    EQUAL_MAGNITUDE_LEGENDRE,
    EQUAL_MAGNITUDE_BERNSTEIN,
    TANGENT_PRESERVING_BERNSTEIN,
    TANGENT_PRESERVING_LEGENDRE,
    ENDPOINT_EQUAL_ANGLE,
    ENDPOINTS_TANGENTS_QUINTIC,
)

ALL_SCHEMES = SCHEMES + (ARC_LENGTH,)


class BoundViolationError(ValueError):
    """Perturbation norm exceeds the declared budget."""

    def __init__(self, norm, bound):
        self.norm = norm
        self.bound = bound
        self.excess = norm - bound
        super().__init__(f"perturbation norm {norm:.6g} exceeds bound {bound:.6g}")


@dataclass(frozen=True)
class PerturbSpec:
    scheme: str
    params: dict
    bound: float = np.inf

    def __post_init__(self):
        if self.scheme not in ALL_SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not self.bound > 0:
            raise ValueError("bound must be positive")


@dataclass(eq=False)
class Perturbation:
    """A concrete delta-w in both coefficient forms.

    norm is the Euclidean norm of the Legendre coefficients, which the
    inner product makes the exact function-space norm of delta-w.
    """

    delta_legendre: ComplexPoly
    delta_bernstein: ComplexPoly
    norm: float
    spec: PerturbSpec
    flags: tuple = ()


@dataclass(eq=False)
class ApplyResult:
    preimage: ComplexPoly
    curve: object
    curve_distance: float
    control_displacements: np.ndarray
    norm: float


def _from_legendre(delta_C, spec, flags=()):
    dl = ComplexPoly(LEGENDRE, delta_C)
    db = poly.to_bernstein(dl)
    return Perturbation(dl, db, float(np.linalg.norm(dl.coeffs)), spec, tuple(flags))


def _from_bernstein(delta_W, spec, flags=()):
    db = ComplexPoly(BERNSTEIN, delta_W)
    dl = poly.to_legendre(db)
    return Perturbation(dl, db, float(np.linalg.norm(dl.coeffs)), spec, tuple(flags))


def norm_of_legendre_perturbation(delta_C):
    delta_C = np.asarray(delta_C, dtype=complex)
    return float(np.linalg.norm(delta_C))


def norm_of_bernstein_perturbation(delta_W, m=None):
    """Norm of a perturbation given by Bernstein coefficients.

    Computed as ||Minv delta_W||_2; equal to the Gram quadratic form
    sqrt(sum G_jk r_j r_k cos(phi_j - phi_k)) for delta_w_k =
    r_k e^{i phi_k}.
    """
    delta_W = np.asarray(delta_W, dtype=complex)
    if m is None:
        m = delta_W.size - 1
    Minv = poly.bernstein_to_legendre_matrix(m)
    return float(np.linalg.norm(Minv @ delta_W))


def magnitude_angle_norm_factor(m, phis):
    """Scale factor ||delta w|| / r for equal-magnitude Bernstein angles.

    Never exceeds 1; equals 1 when all angles agree.
    """
    phis = np.asarray(phis, dtype=float)
    G = poly.gram_matrix(m)
    Phi = np.cos(phis[:, None] - phis[None, :])
    return float(np.sqrt(max(np.sum(G * Phi), 0.0)))


def equal_magnitude_budget(m, bound):
    """Largest per-coefficient rho with m+1 equal Legendre magnitudes."""
    return float(bound) / np.sqrt(m + 1.0)


def equal_magnitude_legendre(rhos, phis, bound=np.inf):
    rhos = np.asarray(rhos, dtype=float)
    phis = np.asarray(phis, dtype=float)
    if np.any(rhos < 0):
        raise ValueError("magnitudes must be nonnegative")
    spec = PerturbSpec(EQUAL_MAGNITUDE_LEGENDRE,
                       {"rhos": rhos.tolist(), "phis": phis.tolist()}, bound)
    return _from_legendre(rhos * np.exp(1j * phis), spec)


def equal_magnitude_bernstein(rs, phis, bound=np.inf):
    rs = np.asarray(rs, dtype=float)
    phis = np.asarray(phis, dtype=float)
    if np.any(rs < 0):
        raise ValueError("magnitudes must be nonnegative")
    spec = PerturbSpec(EQUAL_MAGNITUDE_BERNSTEIN,
                       {"rs": rs.tolist(), "phis": phis.tolist()}, bound)
    return _from_bernstein(rs * np.exp(1j * phis), spec)


def _end_flags(w_b, delta_W):
    flags = []
    if abs(delta_W[0]) > abs(w_b[0]) or abs(delta_W[-1]) > abs(w_b[-1]):
        flags.append("end-magnitude-exceeded")
    return flags


def tangent_preserving_bernstein(w, r, interior_phis, bound=np.inf):
    """Perturbation collinear with the end coefficients of w.

    The end angles are pinned to arg(w_0) and arg(w_m); interior
    magnitudes share r (scalar or per-coefficient list) with free
    interior angles.  Negative r slides along the same line; it is
    flagged when it could pass through zero.
    """
    wb = poly.to_bernstein(w).coeffs
    m = wb.size - 1
    if abs(wb[0]) < 1e-14 or abs(wb[-1]) < 1e-14:
        raise ValueError("end tangent undefined: zero end coefficient")
    interior_phis = np.atleast_1d(np.asarray(interior_phis, dtype=float))
    if interior_phis.size != m - 1:
        raise ValueError(f"expected {m - 1} interior angles, got {interior_phis.size}")
    rs = np.broadcast_to(np.asarray(r, dtype=float), (m + 1,)).copy()
    phis = np.empty(m + 1)
    phis[0] = np.angle(wb[0])
    phis[-1] = np.angle(wb[-1])
    phis[1:-1] = interior_phis
    delta_W = rs * np.exp(1j * phis)
    spec = PerturbSpec(TANGENT_PRESERVING_BERNSTEIN,
                       {"r": np.asarray(r, dtype=float).tolist(),
                        "interior_phis": interior_phis.tolist()}, bound)
    return _from_bernstein(delta_W, spec, _end_flags(wb, delta_W))


def tangent_preserving_legendre(w, rho, phi0, grid=64, tol=1e-12, bound=np.inf):
    """Equal-rho Legendre perturbations keeping both end tangent lines (m=2).

    delta c_k = rho e^{i phi_k} with phi_0 prescribed; the interior pair
    (phi_1, phi_2) must keep the Bernstein end coefficients of delta-w
    collinear with those of w.  The two angle conditions are solved on
    the torus by a seeded grid plus Newton refinement; each root gives a
    perturbation of norm rho*sqrt(3) exactly.
    """
    wb = poly.to_bernstein(w).coeffs
    if wb.size != 3:
        raise ValueError("angle-pair construction is specific to quadratic pre-images")
    if abs(wb[0]) < 1e-14 or abs(wb[-1]) < 1e-14:
        raise ValueError("end tangent undefined: zero end coefficient")
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    M = poly.legendre_to_bernstein_matrix(2)
    e0 = np.exp(-1j * np.angle(wb[0]))
    e2 = np.exp(-1j * np.angle(wb[-1]))
    z0 = np.exp(1j * phi0)

    def residual(x):
        u = np.exp(1j * x[0])
        v = np.exp(1j * x[1])
        d0 = M[0, 0] * z0 + M[0, 1] * u + M[0, 2] * v
        d2 = M[2, 0] * z0 + M[2, 1] * u + M[2, 2] * v
        return np.array([(e0 * d0).imag, (e2 * d2).imag])

    ticks = np.linspace(-np.pi, np.pi, grid, endpoint=False)
    starts = np.array([(a, b) for a in ticks for b in ticks])
    # raw dedup collapses per-sheet clusters; sheets merge mod 2pi below
    found = multistart(residual, starts, tol=tol)

    def wrap(x):
        return (x + np.pi) % (2.0 * np.pi) - np.pi

    reps = []
    for x, rn in zip(found.solutions, found.residuals):
        xw = wrap(x)
        dup = False
        for i, (xr, rr) in enumerate(reps):
            d = np.max(np.abs(wrap(xw - xr)))
            if d < 1e-6:
                if rn < rr:
                    reps[i] = (xw, rn)
                dup = True
                break
        if not dup:
            reps.append((xw, rn))
    reps.sort(key=lambda pair: (round(pair[0][0], 12), round(pair[0][1], 12)))

    out = SolutionSet(starts_used=len(starts), converged_fraction=found.converged_fraction)
    for x, rn in reps:
        out.solutions.append(x)
        out.residuals.append(rn)
    return out


def materialize_legendre_angles(rho, phi0, pair, bound=np.inf):
    """Perturbation for one (phi_1, phi_2) solution of the angle system."""
    phis = np.array([phi0, pair[0], pair[1]])
    return equal_magnitude_legendre(np.full(3, rho), phis, bound)


def endpoint_constraint_residual(C, delta_C):
    """delta_C . (delta_C + 2 C), unconjugated; zero keeps both end points."""
    C = C.coeffs if isinstance(C, ComplexPoly) else np.asarray(C, dtype=complex)
    dC = delta_C.coeffs if isinstance(delta_C, ComplexPoly) else np.asarray(delta_C, dtype=complex)
    return complex(np.sum(dC * (dC + 2.0 * C)))


def endpoint_equal_angle_system(C, d, phi):
    """Reduced system for equal-angle endpoint-preserving perturbations.

    With delta c_k = rho_k e^{i phi}, the endpoint constraint becomes
    two equations linear in (rho_0, rho_1, rho_2) given sum rho_k^2 =
    d^2; solving for rho_1, rho_2 as affine functions of rho_0 leaves a
    real quadratic in rho_0.  Returns (slopes, intercepts, (a, b, c)).
    """
    C = C.coeffs if isinstance(C, ComplexPoly) else np.asarray(C, dtype=complex)
    if C.size != 3:
        raise ValueError("equal-angle reduction is specific to quadratic pre-images")
    z = np.exp(1j * phi) * C
    u, v = z.real, z.imag
    A = np.array([[u[1], u[2]], [v[1], v[2]]])
    rhs_const = -0.5 * d * d * np.array([np.cos(2 * phi), np.sin(2 * phi)])
    rhs_slope = -np.array([u[0], v[0]])
    try:
        sol_const = np.linalg.solve(A, rhs_const)
        sol_slope = np.linalg.solve(A, rhs_slope)
    except np.linalg.LinAlgError as exc:
        raise ValueError("degenerate coefficient geometry: linear system singular") from exc
    # sum rho_k^2 = d^2 with rho_1, rho_2 affine in rho_0
    a = 1.0 + np.sum(sol_slope**2)
    b = 2.0 * np.sum(sol_slope * sol_const)
    c = np.sum(sol_const**2) - d * d
    return sol_slope, sol_const, (a, b, c)


def endpoint_preserving_equal_angle(C, d, phi, bound=np.inf):
    """All equal-angle perturbations of size d preserving both end points."""
    if d <= 0:
        raise ValueError("d must be positive")
    Cp = C if isinstance(C, ComplexPoly) else ComplexPoly(LEGENDRE, C)
    slopes, intercepts, (a, b, c) = endpoint_equal_angle_system(Cp, d, phi)
    roots, disc = quadratic_real(a, b, c)
    out = SolutionSet(starts_used=0, converged_fraction=1.0)
    sols = []
    for r0 in roots:
        rho = np.array([r0, slopes[0] * r0 + intercepts[0], slopes[1] * r0 + intercepts[1]])
        delta_C = rho * np.exp(1j * phi)
        spec = PerturbSpec(ENDPOINT_EQUAL_ANGLE, {"d": float(d), "phi": float(phi)}, bound)
        p = _from_legendre(delta_C, spec)
        res = abs(endpoint_constraint_residual(Cp, delta_C))
        sols.append((p, res))
    sols.sort(key=lambda pr: (pr[0].norm, pr[0].delta_legendre.coeffs[0].real))
    for p, res in sols:
        out.solutions.append(p)
        out.residuals.append(res)
    return out


def endpoints_and_tangents_quintic(w, r, bound=np.inf):
    """Both-end point and tangent preserving perturbations of a quintic.

    End coefficients move by r along the squared-tangent half-angle
    directions theta_k = arg(w_k^2)/2, which represent the curve's end
    tangents and are invariant under w -> -w; the middle coefficient
    solves the endpoint constraint as a complex quadratic.  Both roots
    are returned, ordered by perturbation size.
    """
    wb_poly = poly.to_bernstein(w)
    wb = wb_poly.coeffs
    if wb.size != 3:
        raise ValueError("scheme is specific to quadratic pre-images")
    if abs(wb[0]) < 1e-14 or abs(wb[-1]) < 1e-14:
        raise ValueError("end tangent undefined: zero end coefficient")
    th0 = 0.5 * np.angle(wb[0] ** 2)
    th2 = 0.5 * np.angle(wb[-1] ** 2)
    dw0 = r * np.exp(1j * th0)
    dw2 = r * np.exp(1j * th2)
    G = poly.gram_matrix(2)
    gw = G @ wb
    a = G[1, 1]
    b = 2.0 * (G[0, 1] * dw0 + G[1, 2] * dw2) + 2.0 * gw[1]
    c = (G[0, 0] * dw0**2 + 2.0 * G[0, 2] * dw0 * dw2 + G[2, 2] * dw2**2
         + 2.0 * (dw0 * gw[0] + dw2 * gw[2]))
    roots = quadratic_complex(a, b, c)
    C = poly.to_legendre(wb_poly)
    out = SolutionSet(starts_used=0, converged_fraction=1.0)
    sols = []
    for dw1 in roots:
        delta_W = np.array([dw0, dw1, dw2])
        spec = PerturbSpec(ENDPOINTS_TANGENTS_QUINTIC, {"r": float(r)}, bound)
        p = _from_bernstein(delta_W, spec, _end_flags(wb, delta_W))
        res = abs(endpoint_constraint_residual(C, p.delta_legendre))
        sols.append((p, res))
    sols.sort(key=lambda pr: (pr[0].norm, pr[0].delta_bernstein.coeffs[1].real))
    for p, res in sols:
        out.solutions.append(p)
        out.residuals.append(res)
    return out


def find_r_for_norm(w, d, lo=-2.0, hi=2.0, intervals=400):
    """All r in [lo, hi] whose smaller-root perturbation has norm d.

    Scans the minimum-norm branch of the quintic scheme with a
    sign-change bracket and refines by Brent's method.
    """
    if d <= 0:
        raise ValueError("target norm must be positive")

    def min_norm(r):
        sols = endpoints_and_tangents_quintic(w, r)
        return min(p.norm for p in sols.solutions)

    roots = bracket_roots(lambda r: min_norm(r) - d, lo, hi, intervals)
    out = SolutionSet(starts_used=intervals, converged_fraction=1.0)
    for r in roots:
        out.solutions.append(float(r))
        out.residuals.append(abs(min_norm(r) - d))
    return out


def apply(w, p, p0=0.0):
    """Perturbed pre-image and curve, with displacement diagnostics."""
    if p.norm > p.spec.bound + 1e-12:
        raise BoundViolationError(p.norm, p.spec.bound)
    w_new = poly.combine(w, p.delta_bernstein if w.basis == BERNSTEIN else p.delta_legendre)
    base = build_curve(w, p0=p0)
    pert = build_curve(w_new, p0=p0)
    dist = poly.distance(pert.curve_poly(), base.curve_poly())
    disp = pert.controls - base.controls
    return ApplyResult(preimage=w_new, curve=pert, curve_distance=dist,
                       control_displacements=disp, norm=p.norm)


def centroid_align(curve, reference):
    """Shift a curve so its control centroid matches the reference curve's."""
    from .curves import PHCurve

    shift = np.mean(reference.controls) - np.mean(curve.controls)
    return PHCurve(preimage=curve.preimage, hodograph=curve.hodograph,
                   controls=curve.controls + shift, p0=curve.p0 + shift)


def sample_family(w, scheme, params, grid, align=False, p0=0.0):
    """Curves for every admissible perturbation over a parameter grid.

    grid is a list of parameter overrides merged into params per point;
    schemes with multiple admissible solutions contribute all of them.
    With align=True each curve is shifted to share the original curve's
    control centroid.
    """
    if not grid:
        raise ValueError("parameter grid must be nonempty")
    base = build_curve(w, p0=p0)
    out = []
    for point in grid:
        merged = dict(params)
        merged.update(point)
        for p in perturbations_for(w, scheme, merged):
            curve = apply(w, p, p0=p0).curve
            out.append(centroid_align(curve, base) if align else curve)
    return out


def perturbations_for(w, scheme, params):
    """All Perturbations a scheme yields for one parameter assignment."""
    bound = params.get("bound", np.inf)
    if scheme == EQUAL_MAGNITUDE_LEGENDRE:
        return [equal_magnitude_legendre(params["rhos"], params["phis"], bound)]
    if scheme == EQUAL_MAGNITUDE_BERNSTEIN:
        return [equal_magnitude_bernstein(params["rs"], params["phis"], bound)]
    if scheme == TANGENT_PRESERVING_BERNSTEIN:
        return [tangent_preserving_bernstein(w, params["r"], params["interior_phis"], bound)]
    if scheme == TANGENT_PRESERVING_LEGENDRE:
        pairs = tangent_preserving_legendre(w, params["rho"], params["phi0"])
        return [materialize_legendre_angles(params["rho"], params["phi0"], pair, bound)
                for pair in pairs.solutions]
    if scheme == ENDPOINT_EQUAL_ANGLE:
        C = poly.to_legendre(w)
        return list(endpoint_preserving_equal_angle(C, params["d"], params["phi"], bound).solutions)
    if scheme == ENDPOINTS_TANGENTS_QUINTIC:
        return list(endpoints_and_tangents_quintic(w, params["r"], bound).solutions)
    raise ValueError(f"unknown scheme {scheme!r}")
