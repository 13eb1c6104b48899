"""Complex-valued polynomials on [0,1] in Bernstein and Legendre bases.

A planar point x + iy is identified with the complex value x + iy, so a
planar polynomial curve is a single polynomial with complex coefficients.
Two bases over t in [0,1] are supported:

* Bernstein: b_k^n(t) = C(n,k) (1-t)^(n-k) t^k
* shifted orthonormal Legendre: L_0(t) = 1, L_1(t) = sqrt(3)(2t-1), ...

together with the complex inner product

    <u, v> = int_0^1 u(t) conj(v(t)) dt

for which the Legendre basis is orthonormal.  Orthonormality turns norms
and distances into plain Euclidean norms of Legendre coefficient vectors,
while the Bernstein form supplies exact closed-form products and
integrals.  Everything downstream (orthogonal curve systems, bounded
shape modification, arc-length control) is built on these two views and
the conversion matrices between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, sqrt

import numpy as np

BERNSTEIN = "bernstein"
LEGENDRE = "legendre"
_BASES = (BERNSTEIN, LEGENDRE)


class ComplexPoly:
    """Polynomial with complex coefficients in a named basis.

    Coefficients are stored as a complex numpy vector of length degree+1.
    Instances are treated as immutable; operations return new objects.
    """

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis, coeffs):
        if basis not in _BASES:
            raise ValueError(f"unknown basis {basis!r}, expected one of {_BASES}")
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexPoly is immutable")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, t):
        return eval_poly(self, t)

    def __repr__(self):
        return f"ComplexPoly({self.basis!r}, {list(self.coeffs)!r})"


@dataclass(frozen=True)
class ConversionPack:
    """Basis conversion matrices for one degree.

    M maps Legendre coefficients to Bernstein coefficients, Minv is its
    inverse, and G = Minv.T @ Minv is the Gram matrix of the Bernstein
    basis under the L2 inner product on [0,1].
    """

    degree: int
    M: np.ndarray
    Minv: np.ndarray
    G: np.ndarray


def bernstein_poly(coeffs):
    return ComplexPoly(BERNSTEIN, coeffs)


def legendre_poly(coeffs):
    return ComplexPoly(LEGENDRE, coeffs)


@lru_cache(maxsize=None)
def _legendre_to_bernstein(n):
    # M[j, k] = sqrt(2k+1)/C(n,j) * sum_i (-1)^(k+i) C(k,i)^2 C(n-k, j-i)
    out = np.zeros((n + 1, n + 1))
    for j in range(n + 1):
        for k in range(n + 1):
            s = 0.0
            for i in range(max(0, j + k - n), min(j, k) + 1):
                s += (-1) ** (k + i) * comb(k, i) ** 2 * comb(n - k, j - i)
            out[j, k] = sqrt(2 * k + 1) / comb(n, j) * s
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _bernstein_to_legendre(n):
    # Minv[j, k] = sqrt(2j+1)/(n+j+1) * C(n,k) * sum_i (-1)^(i+j) C(j,i)^2 / C(n+j, k+i)
    out = np.zeros((n + 1, n + 1))
    for j in range(n + 1):
        for k in range(n + 1):
            s = 0.0
            for i in range(j + 1):
                s += (-1) ** (i + j) * comb(j, i) ** 2 / comb(n + j, k + i)
            out[j, k] = sqrt(2 * j + 1) / (n + j + 1) * comb(n, k) * s
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _gram(n):
    Minv = _bernstein_to_legendre(n)
    G = Minv.T @ Minv
    G.setflags(write=False)
    return G


def legendre_to_bernstein_matrix(n):
    """Matrix M_n with w = M_n c for Legendre coefficients c."""
    return _legendre_to_bernstein(n)


def bernstein_to_legendre_matrix(n):
    """Inverse conversion, c = M_n^-1 w."""
    return _bernstein_to_legendre(n)


def gram_matrix(n):
    """Bernstein Gram matrix G_n = (M_n^-1)^T M_n^-1, entries int b_j b_k."""
    return _gram(n)


def build_conversion(n):
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return ConversionPack(n, _legendre_to_bernstein(n), _bernstein_to_legendre(n), _gram(n))


def to_bernstein(p):
    if p.basis == BERNSTEIN:
        return p
    return ComplexPoly(BERNSTEIN, _legendre_to_bernstein(p.degree) @ p.coeffs)


def to_legendre(p):
    if p.basis == LEGENDRE:
        return p
    return ComplexPoly(LEGENDRE, _bernstein_to_legendre(p.degree) @ p.coeffs)


def convert(p, target):
    if target == BERNSTEIN:
        return to_bernstein(p)
    if target == LEGENDRE:
        return to_legendre(p)
    raise ValueError(f"unknown basis {target!r}")


def eval_poly(p, t):
    """Evaluate p at t (scalar or array), t in [0,1].

    Bernstein uses the de Casteljau convex-combination recurrence;
    Legendre uses the three-term recurrence in x = 2t-1 with the
    orthonormal scaling sqrt(2k+1) applied per term.
    """
    t = np.asarray(t, dtype=float)
    if p.basis == BERNSTEIN:
        # de Casteljau, vectorized over t
        n = p.degree
        work = np.broadcast_to(p.coeffs.reshape(-1, *([1] * t.ndim)), (n + 1,) + t.shape).copy()
        for r in range(n):
            work = (1.0 - t) * work[: n - r] + t * work[1 : n - r + 1]
        return work[0] if t.ndim else complex(work[0])
    # orthonormal shifted Legendre via (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
    x = 2.0 * t - 1.0
    pk_minus = np.ones_like(x)
    total = p.coeffs[0] * pk_minus
    if p.degree >= 1:
        pk = x.copy()
        total = total + p.coeffs[1] * sqrt(3.0) * pk
        for k in range(1, p.degree):
            pk_plus = ((2 * k + 1) * x * pk - k * pk_minus) / (k + 1)
            total = total + p.coeffs[k + 1] * sqrt(2 * (k + 1) + 1) * pk_plus
            pk_minus, pk = pk, pk_plus
    return total if t.ndim else complex(total)


def _product_coeffs(pc, qc):
    # z_k = sum_j C(m,j) C(n,k-j) / C(m+n,k) p_j q_{k-j}
    m = len(pc) - 1
    n = len(qc) - 1
    z = np.zeros(m + n + 1, dtype=complex)
    for k in range(m + n + 1):
        s = 0.0 + 0.0j
        for j in range(max(0, k - n), min(m, k) + 1):
            s += comb(m, j) * comb(n, k - j) * pc[j] * qc[k - j]
        z[k] = s / comb(m + n, k)
    return z


def bernstein_product(u, v, conjugate_second=True):
    """Coefficient-level product of two Bernstein polynomials.

    Returns the degree m+n Bernstein form of u(t) * conj(v(t)) or, with
    conjugate_second False, of u(t) * v(t).  The unconjugated variant is
    what squares a hodograph pre-image.
    """
    if u.basis != BERNSTEIN or v.basis != BERNSTEIN:
        raise ValueError("bernstein_product requires Bernstein operands; convert first")
    qc = np.conj(v.coeffs) if conjugate_second else v.coeffs
    return ComplexPoly(BERNSTEIN, _product_coeffs(u.coeffs, qc))


def elevate(p, target_degree):
    """Rewrite a Bernstein polynomial at a higher degree, same function."""
    if p.basis != BERNSTEIN:
        raise ValueError("elevate applies to Bernstein polynomials")
    r = target_degree - p.degree
    if r < 0:
        raise ValueError("target degree below current degree")
    if r == 0:
        return p
    ones = np.ones(r + 1, dtype=complex)
    return ComplexPoly(BERNSTEIN, _product_coeffs(p.coeffs, ones))


def _aligned(u, v):
    # common basis (Legendre pads trivially, Bernstein elevates)
    if u.basis != v.basis:
        v = convert(v, u.basis)
    n = max(u.degree, v.degree)
    if u.basis == BERNSTEIN:
        return elevate(u, n), elevate(v, n)
    uc = np.zeros(n + 1, dtype=complex)
    vc = np.zeros(n + 1, dtype=complex)
    uc[: u.degree + 1] = u.coeffs
    vc[: v.degree + 1] = v.coeffs
    return ComplexPoly(LEGENDRE, uc), ComplexPoly(LEGENDRE, vc)


def combine(u, v, cu=1.0, cv=1.0):
    """cu*u + cv*v after basis and degree alignment (u's basis wins)."""
    ua, va = _aligned(u, v)
    return ComplexPoly(ua.basis, cu * ua.coeffs + cv * va.coeffs)


def inner_product(u, v):
    """Exact <u, v> = int_0^1 u conj(v) dt via the Bernstein product.

    The integral of a degree-N Bernstein polynomial is the mean of its
    coefficients, so the closed form is one product plus one mean.
    """
    z = bernstein_product(to_bernstein(u), to_bernstein(v))
    return complex(np.mean(z.coeffs))


def quadrature_inner_product(u, v, nodes=None):
    """Gauss-Legendre quadrature of int u conj(v), the independent oracle.

    Exact when nodes >= ceil((deg u + deg v + 1)/2); that count is the
    default.
    """
    needed = (u.degree + v.degree) // 2 + 1
    if nodes is None:
        nodes = needed
    x, wts = np.polynomial.legendre.leggauss(int(nodes))
    t = 0.5 * (x + 1.0)
    return complex(0.5 * np.sum(wts * eval_poly(u, t) * np.conj(eval_poly(v, t))))


def norm(u):
    """sqrt(<u, u>); the imaginary part of <u,u> is zero up to roundoff."""
    ip = inner_product(u, u)
    return sqrt(max(ip.real, 0.0))


def distance(u, v):
    """Metric ||u - v|| induced by the inner product."""
    return norm(combine(u, v, 1.0, -1.0))


def angle(u, v):
    """Angle in [0, pi] from the cosine rule cos = Re<u,v> / (||u|| ||v||)."""
    nu = norm(u)
    nv = norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("angle undefined for zero-norm polynomial")
    c = inner_product(u, v).real / (nu * nv)
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def derivative(p):
    """Derivative; Bernstein in, Bernstein out (degree n-1)."""
    b = to_bernstein(p)
    n = b.degree
    if n == 0:
        return ComplexPoly(BERNSTEIN, [0.0])
    return ComplexPoly(BERNSTEIN, n * (b.coeffs[1:] - b.coeffs[:-1]))


def antiderivative(p, constant=0.0):
    """Antiderivative with value `constant` at t=0; Bernstein degree n+1."""
    b = to_bernstein(p)
    n = b.degree
    out = np.empty(n + 2, dtype=complex)
    out[0] = constant
    for k in range(n + 1):
        out[k + 1] = out[k] + b.coeffs[k] / (n + 1)
    return ComplexPoly(BERNSTEIN, out)


def power_to_bernstein(coeffs):
    """Power-basis coefficients (a_0 + a_1 t + ...) to a Bernstein poly."""
    a = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    n = len(a) - 1
    out = np.zeros(n + 1, dtype=complex)
    for j in range(n + 1):
        for i in range(j + 1):
            out[j] += comb(j, i) / comb(n, i) * a[i]
    return ComplexPoly(BERNSTEIN, out)
