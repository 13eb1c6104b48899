"""Planar Pythagorean-hodograph curves from complex pre-image polynomials.

A pre-image polynomial w(t) generates the hodograph r'(t) = w^2(t); the
curve r(t) follows by integration and satisfies x'^2 + y'^2 = sigma^2
with polynomial parametric speed sigma = |w|^2.  Arc length is the
squared norm of the pre-image, S = ||w||^2, which is what ties curve
modification to coefficient-space geometry.

Curves whose hodograph is e^{i theta} sigma(t) for a real polynomial
sigma (straight lines traversed at polynomial speed) satisfy the same
speed identity without possessing a polynomial pre-image; they are
represented with preimage None and verified through the speed identity
directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .poly import BERNSTEIN, LEGENDRE, ComplexPoly


@dataclass(eq=False)
class PHCurve:
    """PH curve: pre-image, hodograph, and Bezier control points.

    Invariants for built curves: hodograph = preimage^2 coefficient-wise
    and p_{k+1} - p_k = h_k/(2m+1).  preimage may be None for curves
    defined directly by a speed-compatible hodograph (straight lines).
    """

    preimage: ComplexPoly | None
    hodograph: ComplexPoly
    controls: np.ndarray
    p0: complex

    @property
    def degree(self):
        return len(self.controls) - 1

    def curve_poly(self):
        return ComplexPoly(BERNSTEIN, self.controls)


@dataclass(frozen=True)
class CanonicalTransform:
    """r_new = scale_rotation * (r + translation); preimage_factor^2 = scale_rotation."""

    translation: complex
    scale_rotation: complex
    preimage_factor: complex


@dataclass(frozen=True)
class PHReport:
    """Outcome of the speed-identity check x'^2 + y'^2 = sigma^2."""

    residual: float
    is_ph: bool


def build_curve(w, p0=0.0):
    """Generate the PH curve of a pre-image polynomial.

    The hodograph is the unconjugated Bernstein square of w and the
    control points integrate it: p_{k+1} = p_k + h_k/(2m+1).
    """
    if poly.norm(w) == 0.0:
        raise ValueError("pre-image must be nonzero")
    wb = poly.to_bernstein(w)
    h = poly.bernstein_product(wb, wb, conjugate_second=False)
    n = h.degree + 1
    controls = np.empty(n + 1, dtype=complex)
    controls[0] = complex(p0)
    for k in range(n):
        controls[k + 1] = controls[k] + h.coeffs[k] / n
    return PHCurve(preimage=w, hodograph=h, controls=controls, p0=complex(p0))


def curve_from_hodograph(h, p0=0.0):
    """Curve integrated from an explicit hodograph; no pre-image attached."""
    hb = poly.to_bernstein(h)
    n = hb.degree + 1
    controls = np.empty(n + 1, dtype=complex)
    controls[0] = complex(p0)
    for k in range(n):
        controls[k + 1] = controls[k] + hb.coeffs[k] / n
    return PHCurve(preimage=None, hodograph=hb, controls=controls, p0=complex(p0))


def eval_curve(c, t):
    return poly.eval_poly(c.curve_poly(), t)


def sample(c, N=256):
    """N points at uniform parameter values in [0,1]."""
    if N < 2:
        raise ValueError("need at least 2 samples")
    return eval_curve(c, np.linspace(0.0, 1.0, N))


def arc_length(w):
    """Total arc length of the curve generated by pre-image w: ||w||^2."""
    return poly.inner_product(w, w).real


def _hodograph_from_controls(c):
    n = c.degree
    return ComplexPoly(BERNSTEIN, n * (c.controls[1:] - c.controls[:-1]))


def _speed_candidate(c, speed2):
    # sigma = |w|^2 when a pre-image exists; otherwise fit a half-degree
    # polynomial through pointwise square roots of x'^2 + y'^2
    if c.preimage is not None:
        wb = poly.to_bernstein(c.preimage)
        return poly.bernstein_product(wb, wb)
    n2 = speed2.degree // 2
    ts = np.linspace(0.0, 1.0, n2 + 1)
    vals = np.sqrt(np.maximum(poly.eval_poly(speed2, ts).real, 0.0))
    B = np.empty((n2 + 1, n2 + 1))
    for k in range(n2 + 1):
        e = np.zeros(n2 + 1)
        e[k] = 1.0
        B[:, k] = poly.eval_poly(ComplexPoly(BERNSTEIN, e), ts).real
    return ComplexPoly(BERNSTEIN, np.linalg.solve(B, vals))


def verify_ph(c, tol=1e-8):
    """Check x'^2 + y'^2 = sigma^2 coefficient-wise from the controls.

    The hodograph is re-derived from the control points so tampered
    curves are caught; the residual is the max coefficient difference
    scaled by the max coefficient magnitude.
    """
    h = _hodograph_from_controls(c)
    speed2 = poly.bernstein_product(h, h)  # |r'|^2, real up to roundoff
    sig = _speed_candidate(c, speed2)
    rhs = poly.bernstein_product(sig, sig, conjugate_second=False)
    lhs_c, rhs_c = poly._aligned(speed2, rhs)
    diff = np.max(np.abs(lhs_c.coeffs - rhs_c.coeffs))
    scale = max(np.max(np.abs(lhs_c.coeffs)), np.max(np.abs(rhs_c.coeffs)), 1e-300)
    residual = float(diff / scale)
    return PHReport(residual=residual, is_ph=residual < tol)


def is_canonical(w, tol=1e-10):
    """Test the unit-sphere condition on the pre-image coefficients.

    Legendre coefficients: sum c_k^2 = 1 (unconjugated squares).
    Bernstein coefficients: w^T G_m w = 1 with the Bernstein Gram matrix.
    Both express int w^2 dt = 1, equivalently r(1) - r(0) = 1.
    """
    if w.basis == LEGENDRE:
        value = complex(np.sum(w.coeffs**2))
    else:
        G = poly.gram_matrix(w.degree)
        value = complex(w.coeffs @ G @ w.coeffs)
    residual = abs(value - 1.0)
    return residual < tol, residual


def principal_sqrt(z):
    """Square root with nonnegative real part; positive imaginary on the cut."""
    s = complex(np.sqrt(complex(z)))
    if s.real < 0.0 or (s.real == 0.0 and s.imag < 0.0):
        s = -s
    return s


def to_canonical(c):
    """Map a curve to canonical form r(0)=0, r(1)=1.

    The scale-rotation is k = 1/(r(1)-r(0)); the pre-image picks up a
    factor sqrt(k) (principal branch; either branch generates the same
    curve since the hodograph squares it away).
    """
    r0 = complex(c.controls[0])
    r1 = complex(c.controls[-1])
    if abs(r1 - r0) < 1e-14:
        raise ValueError("canonical form undefined: curve end points coincide")
    k = 1.0 / (r1 - r0)
    f = principal_sqrt(k)
    if c.preimage is None:
        raise ValueError("canonical form requires a pre-image polynomial")
    w_new = ComplexPoly(c.preimage.basis, f * c.preimage.coeffs)
    return build_curve(w_new, p0=0.0), CanonicalTransform(
        translation=-r0, scale_rotation=k, preimage_factor=f
    )
