"""Dense nonlinear-system utilities shared by the geometry modules.

Newton iteration with a finite-difference Jacobian and backtracking
damping, deterministic multistart with deduplication, numerically stable
quadratic roots, and scalar root bracketing.  Systems here are tiny
(dimension <= 8) polynomial residuals, so simplicity wins over
large-scale machinery.
"""

from __future__ import annotations

import warnings

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.stats import qmc


@dataclass
class SolutionSet:
    """Ordered solutions of one solve, with per-solution residuals."""

    solutions: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    starts_used: int = 0
    converged_fraction: float = 0.0

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)


def fd_jacobian(F, x, step=1e-7):
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(F(x), dtype=float)
    J = np.empty((f0.size, x.size))
    for j in range(x.size):
        xp = x.copy()
        xp[j] += step
        J[:, j] = (np.asarray(F(xp), dtype=float) - f0) / step
    return J


def newton(F, x0, tol=1e-12, maxit=100, step=1e-7, jacobian=None):
    """Damped Newton iteration; returns (x, converged, residual_norm).

    Each step solves J dx = -F and backtracks the step length until the
    residual norm satisfies a sufficient-decrease test, which keeps wild
    starting points from diverging.  Failure (singular Jacobian, stall,
    or maxit) is reported through the flag, never raised.
    """
    x = np.asarray(x0, dtype=float).copy()
    jac = jacobian if jacobian is not None else (lambda v: fd_jacobian(F, v, step))
    r = np.asarray(F(x), dtype=float)
    rn = np.max(np.abs(r))
    for _ in range(maxit):
        if rn < tol:
            return x, True, float(rn)
        J = jac(x)
        if not np.all(np.isfinite(J)):
            return x, False, float(rn)
        try:
            dx = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            return x, False, float(rn)
        lam = 1.0
        r2 = np.linalg.norm(r)
        improved = False
        while lam > 1e-4:
            xn = x + lam * dx
            rnew = np.asarray(F(xn), dtype=float)
            if np.all(np.isfinite(rnew)) and np.linalg.norm(rnew) < (1.0 - 0.25 * lam) * r2:
                x, r = xn, rnew
                rn = np.max(np.abs(r))
                improved = True
                break
            lam *= 0.5
        if not improved:
            # full step as a last resort; near the root damping can stall
            xn = x + dx
            rnew = np.asarray(F(xn), dtype=float)
            if not np.all(np.isfinite(rnew)) or np.max(np.abs(rnew)) >= rn:
                return x, rn < tol, float(rn)
            x, r = xn, rnew
            rn = np.max(np.abs(r))
    return x, bool(rn < tol), float(rn)


def _lex_key(v):
    return tuple(np.round(np.asarray(v, dtype=float), 12))


def multistart(F, starts, tol=1e-12, maxit=100, step=1e-7, jacobian=None,
               dedup_radius=1e-6, accept=None, sort_key=None):
    """Run Newton from every start, deduplicate, and sort deterministically.

    `accept` optionally filters converged roots before deduplication.
    Duplicates within `dedup_radius` (max norm) collapse to the
    representative with the smaller residual.  Default ordering is
    lexicographic in the solution components.
    """
    starts = np.atleast_2d(np.asarray(starts, dtype=float))
    reps = []  # (x, residual_norm)
    n_conv = 0
    for x0 in starts:
        x, ok, rn = newton(F, x0, tol=tol, maxit=maxit, step=step, jacobian=jacobian)
        if not ok:
            continue
        n_conv += 1
        if accept is not None and not accept(x):
            continue
        placed = False
        for i, (xr, rr) in enumerate(reps):
            if np.max(np.abs(x - xr)) < dedup_radius:
                if rn < rr:
                    reps[i] = (x, rn)
                placed = True
                break
        if not placed:
            reps.append((x, rn))
    key = sort_key if sort_key is not None else (lambda pair: _lex_key(pair[0]))
    reps.sort(key=key)
    out = SolutionSet(starts_used=len(starts),
                      converged_fraction=n_conv / len(starts) if len(starts) else 0.0)
    for x, rn in reps:
        out.solutions.append(x)
        out.residuals.append(rn)
    return out


def sobol_starts(dim, count, box, seed):
    """Deterministic quasi-random starts in a box.

    box is either (lo, hi) applied to every coordinate or a list of
    per-coordinate (lo, hi) pairs.
    """
    sampler = qmc.Sobol(d=dim, scramble=True, seed=seed)
    m = int(count).bit_length() - 1
    if 2**m == count:
        u = sampler.random_base2(m=m)
    else:
        with warnings.catch_warnings():
            # balance is irrelevant here; any deterministic spread works
            warnings.simplefilter("ignore", UserWarning)
            u = sampler.random(count)
    box = np.asarray(box, dtype=float)
    if box.ndim == 1:
        lo = np.full(dim, box[0])
        hi = np.full(dim, box[1])
    else:
        lo, hi = box[:, 0], box[:, 1]
    return lo + u * (hi - lo)


def quadratic_complex(a, b, c):
    """Roots of a x^2 + b x + c with complex coefficients.

    Stable form: the root computed from the discriminant picks the sign
    that avoids cancellation and the companion root comes from the
    product c/a.  Degenerate leading coefficients fall back to the
    linear case; a = b = 0 with c != 0 has no solution.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if a == 0:
        if b == 0:
            if c == 0:
                return (0.0 + 0.0j,)
            raise ValueError("no solution: constant nonzero equation")
        return (-c / b,)
    s = np.sqrt(complex(b * b - 4.0 * a * c))
    if (b.conjugate() * s).real >= 0.0:
        q = -0.5 * (b + s)
    else:
        q = -0.5 * (b - s)
    if q == 0:
        return (0.0 + 0.0j, 0.0 + 0.0j) if c == 0 else (-b / a, 0.0 + 0.0j)
    return (q / a, c / q)


def quadratic_real(a, b, c):
    """Real roots of a x^2 + b x + c, ascending, plus the discriminant."""
    a, b, c = float(a), float(b), float(c)
    disc = b * b - 4.0 * a * c
    if a == 0.0:
        if b == 0.0:
            if c == 0.0:
                return [0.0], disc
            raise ValueError("no solution: constant nonzero equation")
        return [-c / b], disc
    if disc < 0.0:
        return [], disc
    if disc == 0.0:
        return [-b / (2.0 * a)], disc
    s = np.sqrt(disc)
    q = -0.5 * (b + np.copysign(s, b)) if b != 0.0 else 0.5 * s
    roots = sorted({q / a, c / q} if q != 0.0 else {0.0, -b / a})
    return list(roots), disc


def bracket_roots(f, lo, hi, intervals):
    """All simple roots of a scalar function found by sign-change scan.

    The interval [lo, hi] is split uniformly; each sign change is refined
    with Brent's method.  Exact zeros at grid nodes are kept as roots.
    """
    ts = np.linspace(lo, hi, intervals + 1)
    vals = np.array([f(t) for t in ts], dtype=float)
    roots = []
    for i in range(intervals):
        a, b = ts[i], ts[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(a)
            continue
        if fa * fb < 0.0:
            roots.append(brentq(f, a, b, xtol=1e-14, rtol=8.9e-16))
    if vals[-1] == 0.0:
        roots.append(ts[-1])
    roots.sort()
    out = []
    for r in roots:
        if not out or abs(r - out[-1]) > 1e-10 * max(1.0, abs(r)):
            out.append(r)
    return out
