"""Arc-length modification through pre-image perturbations.

Writing delta-w in the orthonormal complement basis of w with real
coefficients gamma_k kills the cross term in

    || w + delta w ||^2 = S + 2 Re<w, delta w> + || delta w ||^2,

so the new arc length is exactly S + sum gamma_k^2.  Prescribing an
increase deltaS and asking the curve end points to stay put leaves
three real equations; fixing all but three of the gamma's makes the
system square, and a seeded multistart Newton finds its real solutions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .curves import arc_length, build_curve, is_canonical
from .ortho import DEFAULT_SEED, OrthoBasis, basis_for
from .perturb import ARC_LENGTH, PerturbSpec, _from_legendre
from .solvers import SolutionSet, multistart, sobol_starts


@dataclass(eq=False)
class ArcSystem:
    """Square nonlinear system for an endpoint-preserving length change."""

    basis: OrthoBasis
    F: np.ndarray
    f: np.ndarray
    S: float
    delta_s: float
    fixed: dict
    free: tuple
    legendre_coeffs: np.ndarray

    @property
    def size(self):
        return self.f.size

    def assemble(self, gamma_free):
        gamma = np.zeros(self.size)
        for idx, value in self.fixed.items():
            gamma[idx - 1] = value
        gamma[[i - 1 for i in self.free]] = gamma_free
        return gamma

    def residual(self, gamma_free):
        gamma = self.assemble(gamma_free)
        z = gamma @ self.F @ gamma + gamma @ self.f
        return np.array([np.sum(gamma**2) - self.delta_s, z.real, z.imag])


def build_system(w, delta_s, fixed):
    """System for growing the arc length of a canonical curve by delta_s.

    fixed maps 1-based gamma indices to pinned real values and must
    leave exactly three free unknowns.
    """
    if delta_s <= 0:
        raise ValueError("delta_s must be positive: construction only lengthens")
    ok, res = is_canonical(w)
    if not ok:
        raise ValueError(f"pre-image not canonical (residual {res:.3g})")
    wl = poly.to_legendre(w)
    basis = basis_for(wl)
    Q = basis.complexQ
    n = Q.shape[1]
    fixed = {int(k): float(v) for k, v in fixed.items()}
    if any(k < 1 or k > n for k in fixed):
        raise ValueError(f"fixed indices must lie in 1..{n}")
    if n - len(fixed) != 3:
        raise ValueError(f"need exactly 3 free unknowns, got {n - len(fixed)}")
    F = Q.T @ Q
    f = 2.0 * Q.T @ wl.coeffs
    free = tuple(k for k in range(1, n + 1) if k not in fixed)
    return ArcSystem(basis=basis, F=F, f=f, S=arc_length(w), delta_s=delta_s,
                     fixed=fixed, free=free, legendre_coeffs=wl.coeffs.copy())


def solve_arc_system(system, starts=256, seed=DEFAULT_SEED, tol=1e-12):
    """All real solutions found from a deterministic quasi-random sweep.

    Starts fill the box [-1.5 sqrt(deltaS), 1.5 sqrt(deltaS)]^3; each
    converged root materializes as a Perturbation delta C = Q gamma.
    """
    half = 1.5 * np.sqrt(system.delta_s)
    grid = sobol_starts(3, starts, (-half, half), seed)
    found = multistart(system.residual, grid, tol=tol)
    out = SolutionSet(starts_used=found.starts_used,
                      converged_fraction=found.converged_fraction)
    for gfree, res in zip(found.solutions, found.residuals):
        gamma = system.assemble(gfree)
        delta_C = system.basis.complexQ @ gamma
        spec = PerturbSpec(ARC_LENGTH,
                           {"gamma": gamma.tolist(),
                            "gamma_free": list(map(float, gfree)),
                            "free_indices": list(system.free),
                            "fixed": dict(system.fixed),
                            "delta_s": system.delta_s})
        out.solutions.append(_from_legendre(delta_C, spec))
        out.residuals.append(res)
    return out


def arc_length_after(w, gamma):
    """New arc length S + ||gamma||^2 for a complement-basis perturbation."""
    gamma = np.asarray(gamma, dtype=float)
    return arc_length(w) + float(np.sum(gamma**2))


def perturbed_curve(w, p, p0=0.0):
    """Curve of w + delta w for an arc-length Perturbation."""
    return build_curve(poly.combine(w, p.delta_legendre), p0=p0)
