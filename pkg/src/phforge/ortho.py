"""Orthogonal curve systems via Householder reflection in coefficient space.

A polynomial with Legendre coefficients c_k flattens to the real vector
a = (Re c_0, Im c_0, Re c_1, ...).  The Householder reflection built
from a maps it onto the first coordinate axis, so columns 2..2d+2 of the
reflection matrix span the orthogonal complement: each column, read back
as a complex polynomial, is a unit-norm curve orthogonal to the source,
and the columns are pairwise orthogonal.  This is the engine behind both
shape perturbation (complement of the pre-image) and the speed-matched
orthogonal-curve construction (complement of the curve itself).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .curves import PHCurve, build_curve, curve_from_hodograph, principal_sqrt
from .poly import LEGENDRE, ComplexPoly
from .solvers import SolutionSet, multistart, sobol_starts

DEFAULT_SEED = 20240817


def flatten(w):
    """Interleave (re, im) of Legendre coefficients into a real vector."""
    if w.basis != LEGENDRE:
        raise ValueError("flatten requires Legendre coefficients; convert first")
    a = np.empty(2 * len(w.coeffs))
    a[0::2] = w.coeffs.real
    a[1::2] = w.coeffs.imag
    return a


def unflatten(a):
    a = np.asarray(a, dtype=float)
    if a.size % 2:
        raise ValueError("flat vector length must be even")
    return ComplexPoly(LEGENDRE, a[0::2] + 1j * a[1::2])


@dataclass(eq=False)
class OrthoBasis:
    """Householder reflection of a flattened coefficient vector.

    curves holds the 2d+1 unit-norm polynomials orthogonal to the
    source; complexQ collects their coefficients column-wise, so the
    polynomial with factors xi has Legendre coefficients complexQ @ xi.
    """

    Q: np.ndarray
    g: np.ndarray
    curves: list
    complexQ: np.ndarray


def householder(a):
    a = np.asarray(a, dtype=float)
    nrm = np.linalg.norm(a)
    if nrm < 1e-14:
        raise ValueError("degenerate input: cannot build a complement of the zero vector")
    sign = 1.0 if a[0] >= 0.0 else -1.0  # sign(0) := +1
    g = a.copy()
    g[0] += sign * nrm
    Q = np.eye(a.size) - 2.0 * np.outer(g, g) / (g @ g)
    complexQ = Q[0::2, 1:] + 1j * Q[1::2, 1:]
    curves = [ComplexPoly(LEGENDRE, complexQ[:, k]) for k in range(complexQ.shape[1])]
    return OrthoBasis(Q=Q, g=g, curves=curves, complexQ=complexQ)


def basis_for(p):
    """Orthogonal complement basis of a polynomial (any input basis)."""
    return householder(flatten(poly.to_legendre(p)))


def orthogonal_family(p, xi):
    """The orthogonal-complement member with factors xi_1..xi_{2d+1}."""
    ob = basis_for(p)
    xi = np.asarray(xi, dtype=float)
    if xi.size != ob.complexQ.shape[1]:
        raise ValueError(f"expected {ob.complexQ.shape[1]} factors, got {xi.size}")
    return ComplexPoly(LEGENDRE, ob.complexQ @ xi)


def dot_cross(r, s, t):
    """Pointwise dot product and cross-product component of two curves."""
    v = poly.eval_poly(r, t) * np.conj(poly.eval_poly(s, t))
    return v.real, v.imag


@dataclass(eq=False)
class OrthoPHSolution:
    """One speed-matched orthogonal PH curve.

    kind is "square" when the hodograph is a perfect square (pre-image
    attached) and "line" for straight segments traversed at the
    prescribed speed, which satisfy the PH speed identity without a
    polynomial pre-image.
    """

    xi: np.ndarray
    curve: PHCurve
    residual: float
    kind: str


def _legendre_at_zero(count):
    return np.array([np.sqrt(2 * k + 1) * (-1) ** k for k in range(count)])


def orthogonal_ph_with_speed(r, sigma, start=0.0, starts=512, seed=DEFAULT_SEED,
                             tol=1e-12, accept_tol=1e-9):
    """All PH curves orthogonal to r with prescribed speed and start point.

    Unknowns are the 2n+1 factors xi of the orthogonal family of the
    cubic r.  The residual imposes r_perp(start)=start (2 equations) and
    |r_perp'(t)|^2 = sigma^2(t) coefficient-wise (5 equations).  Roots
    whose hodograph is a perfect square are found by seeded multistart
    Newton; straight-line roots r_perp = start + e^{i theta} int(sigma)
    are taken in closed form (theta from orthogonality) because the
    system's Jacobian is singular there, then validated against the same
    residual.  The union is deduplicated and ordered lexicographically.
    """
    n = r.degree
    if n != 3:
        raise ValueError("speed-matched orthogonal construction expects a cubic curve")
    start = complex(start)
    sigb = poly.to_bernstein(sigma)
    if np.max(np.abs(sigb.coeffs.imag)) > 1e-12:
        raise ValueError("speed polynomial must have real coefficients")
    if sigb.degree < n - 1:
        sigb = poly.elevate(sigb, n - 1)
    if sigb.degree != n - 1:
        raise ValueError("speed polynomial degree must be at most curve degree - 1")
    grid = poly.eval_poly(sigb, np.linspace(0, 1, 101)).real
    if np.min(grid) <= 0.0:
        raise ValueError("speed polynomial must be positive on [0,1]")

    curve_b = r.curve_poly()
    curve_leg = poly.to_legendre(curve_b)
    ob = householder(flatten(curve_leg))
    CQ = ob.complexQ
    Mn = poly.legendre_to_bernstein_matrix(n)
    sig_coeffs = sigb.coeffs.real
    sig2 = poly.bernstein_product(sigb, sigb, conjugate_second=False).coeffs.real
    L0 = _legendre_at_zero(n + 1)

    def hodograph_of(xi):
        wb = Mn @ (CQ @ xi)
        return n * (wb[1:] - wb[:-1])

    def residual(xi):
        d = CQ @ xi
        v0 = d @ L0 - start
        hq = hodograph_of(xi)
        speed2 = poly._product_coeffs(hq, np.conj(hq)).real
        return np.concatenate(([v0.real, v0.imag], speed2 - sig2))

    def square_defect(xi):
        h0, h1, h2 = hodograph_of(xi)
        scale = max(abs(h1) ** 2, abs(h0 * h2), 1e-30)
        return abs(h1 * h1 - h0 * h2) / scale

    # closed-form straight-line candidates
    line_pairs = []
    s_int = poly.antiderivative(sigb)
    z = poly.inner_product(curve_b, s_int)
    cols = ob.Q[:, 1:]
    for theta in (np.angle(z) + np.pi / 2.0, np.angle(z) - np.pi / 2.0):
        coeffs = np.exp(1j * theta) * s_int.coeffs
        coeffs = coeffs + start
        line_leg = poly.to_legendre(ComplexPoly(poly.BERNSTEIN, coeffs))
        a_line = flatten(line_leg)
        xi = cols.T @ a_line
        if np.max(np.abs(CQ @ xi - line_leg.coeffs)) > 1e-8:
            continue  # line not representable in the complement
        rn = float(np.max(np.abs(residual(xi))))
        if rn < accept_tol:
            line_pairs.append((xi, rn))

    # multistart for perfect-square roots; |xi_k| <= arc length of sigma
    box = float(np.mean(sig_coeffs)) + abs(start)
    grid_starts = sobol_starts(2 * n + 1, starts, (-box, box), seed)
    ms = multistart(residual, grid_starts, tol=tol,
                    accept=lambda x: square_defect(x) < 1e-6)

    merged = list(line_pairs)
    for xi, rn in zip(ms.solutions, ms.residuals):
        dup = False
        for i, (xm, rm) in enumerate(merged):
            if np.max(np.abs(xi - xm)) < 1e-6:
                if rn < rm:
                    merged[i] = (xi, rn)
                dup = True
                break
        if not dup:
            merged.append((xi, rn))
    merged.sort(key=lambda pair: tuple(np.round(pair[0], 12)))

    out = SolutionSet(starts_used=ms.starts_used,
                      converged_fraction=ms.converged_fraction)
    for xi, rn in merged:
        hq = hodograph_of(xi)
        if square_defect(xi) < 1e-6:
            h0, h1, h2 = hq
            if abs(h0) >= abs(h2):
                w0 = principal_sqrt(h0)
                w1 = h1 / w0 if w0 != 0 else principal_sqrt(h2)
            else:
                w1 = principal_sqrt(h2)
                w0 = h1 / w1
            curve = build_curve(ComplexPoly(poly.BERNSTEIN, [w0, w1]), p0=start)
            kind = "square"
        else:
            curve = curve_from_hodograph(ComplexPoly(poly.BERNSTEIN, hq), p0=start)
            kind = "line"
        out.solutions.append(OrthoPHSolution(xi=xi, curve=curve, residual=rn, kind=kind))
        out.residuals.append(rn)
    return out
