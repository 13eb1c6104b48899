"""Householder complements, orthogonal families, speed-matched orthogonal curves."""

from math import sqrt

import numpy as np
import pytest

from phforge import curves, ortho, poly
from phforge.poly import bernstein_poly, legendre_poly


def test_flatten_reference_and_round_trip(rng):
    a = ortho.flatten(legendre_poly([2 - 1j, 1 + 2j, -1.0]))
    assert np.allclose(a, [2, -1, 1, 2, -1, 0], atol=1e-15)
    assert np.allclose(ortho.flatten(legendre_poly([0.0, 0.0])), 0.0)
    c = rng.normal(size=5) + 1j * rng.normal(size=5)
    back = ortho.unflatten(ortho.flatten(legendre_poly(c)))
    assert np.allclose(back.coeffs, c, atol=1e-15)
    with pytest.raises(ValueError):
        ortho.flatten(bernstein_poly([1.0, 2.0]))


def test_householder_axis_vector():
    ob = ortho.householder([1.0, 0.0, 0.0, 0.0])
    assert np.allclose(ob.Q, np.diag([-1.0, 1.0, 1.0, 1.0]), atol=1e-15)
    with pytest.raises(ValueError):
        ortho.householder(np.zeros(6))


def test_householder_matches_sparse_cubic_closed_form():
    # a = (a0, 0, 0, a1, a2, 0, 0, a3) reflects to an explicit matrix with
    # alpha = ||a||; identity rows/columns at the zero slots
    a0, a1, a2, a3 = 1.0, -2 * sqrt(3.0), sqrt(5.0), sqrt(7.0)
    a = np.array([a0, 0, 0, a1, a2, 0, 0, a3])
    alpha = np.linalg.norm(a)
    assert alpha == pytest.approx(5.0)
    den = alpha**2 + a0 * alpha
    exp = np.eye(8)
    idx = [0, 3, 4, 7]
    vals = [a0, a1, a2, a3]
    for i, vi in zip(idx, vals):
        exp[0, i] = -vi / alpha
        exp[i, 0] = -vi / alpha
    for i, vi in zip(idx[1:], vals[1:]):
        for j, vj in zip(idx[1:], vals[1:]):
            exp[i, j] = (1.0 if i == j else 0.0) - vi * vj / den
    ob = ortho.householder(a)
    assert np.allclose(ob.Q, exp, atol=1e-12)


def test_householder_invariants(rng):
    for _ in range(10):
        a = rng.normal(size=8)
        ob = ortho.householder(a)
        assert np.allclose(ob.Q.T @ ob.Q, np.eye(8), atol=1e-12)
        sign = 1.0 if a[0] >= 0 else -1.0
        assert np.allclose(ob.Q[:, 0], -sign * a / np.linalg.norm(a), atol=1e-12)
        src = ortho.unflatten(a)
        for k, bk in enumerate(ob.curves):
            assert poly.norm(bk) == pytest.approx(1.0, abs=1e-10)
            assert abs(poly.inner_product(src, bk).real) < 1e-10
            for j in range(k + 1, len(ob.curves)):
                assert abs(poly.inner_product(ob.curves[j], bk).real) < 1e-10


def test_orthogonal_family_shape_for_sparse_cubic(rng):
    # combinations of complement columns 2,3,6,7 keep the mirrored
    # sparsity pattern: real L1, L3 and imaginary L0, L2 components only
    a = np.array([1.0, 0, 0, -2 * sqrt(3.0), sqrt(5.0), 0, 0, sqrt(7.0)])
    src = ortho.unflatten(a)
    xi = np.zeros(7)
    beta = rng.normal(size=4)
    xi[[0, 1, 4, 5]] = beta
    fam = ortho.orthogonal_family(src, xi)
    c = fam.coeffs
    assert abs(c[0].real) < 1e-14 and abs(c[2].real) < 1e-14
    assert abs(c[1].imag) < 1e-14 and abs(c[3].imag) < 1e-14
    assert abs(poly.inner_product(src, fam).real) < 1e-12
    assert poly.norm(fam) == pytest.approx(np.linalg.norm(xi), abs=1e-12)
    assert poly.norm(ortho.orthogonal_family(src, np.zeros(7))) == 0.0


def test_flattened_cubic_curve_vector(cubic_w):
    c = curves.build_curve(cubic_w)
    a = ortho.flatten(poly.to_legendre(c.curve_poly()))
    expect = [
        37.0 / 12.0,
        7.0 / 3.0,
        -sqrt(3.0) / 12.0,
        13.0 * sqrt(3.0) / 30.0,
        -37.0 * sqrt(5.0) / 60.0,
        sqrt(5.0) / 6.0,
        sqrt(7.0) / 28.0,
        4.0 * sqrt(7.0) / 15.0,
    ]
    assert np.allclose(a, expect, atol=1e-12)


def test_complex_basis_matrix_for_symmetric_quintic(quintic_canonical_b_w):
    ob = ortho.basis_for(quintic_canonical_b_w)
    expect = np.array(
        [
            [0.048391 + 0.998792j, 0, 0, -0.148557 + 0.003707j, -0.305920 + 0.007634j],
            [0, 1, 1j, 0, 0],
            [0.003707 + 0.007634j, 0, 0, 0.988619 - 0.023436j, -0.023436 + 0.951738j],
        ]
    )
    assert ob.complexQ.shape == (3, 5)
    assert np.allclose(ob.complexQ, expect, atol=1e-6)


def test_dot_cross(cubic_w, rng):
    one = bernstein_poly([1.0])
    ii = bernstein_poly([1j])
    d, c = ortho.dot_cross(one, ii, 0.3)
    assert d == pytest.approx(0.0)
    assert c == pytest.approx(-1.0)
    r = bernstein_poly(rng.normal(size=3) + 1j * rng.normal(size=3))
    d, c = ortho.dot_cross(r, r, 0.7)
    assert d == pytest.approx(abs(poly.eval_poly(r, 0.7)) ** 2)
    assert c == pytest.approx(0.0, abs=1e-12)
    # integral of the dot product is Re<r, s>
    s = bernstein_poly(rng.normal(size=3) + 1j * rng.normal(size=3))
    x, w = np.polynomial.legendre.leggauss(8)
    t = 0.5 * (x + 1.0)
    dvals = ortho.dot_cross(r, s, t)[0]
    assert 0.5 * np.sum(w * dvals) == pytest.approx(
        poly.inner_product(r, s).real, abs=1e-12
    )


@pytest.fixture(scope="module")
def solved():
    w = bernstein_poly([5 + 2j, -3 - 5j])
    r = curves.build_curve(w)
    sig = poly.power_to_bernstein([20.0, -40.0, 38.0])
    return r, ortho.orthogonal_ph_with_speed(r, sig)


class TestSpeedMatchedOrthogonal:
    def test_six_solutions_with_kinds(self, solved):
        _, sols = solved
        assert len(sols) == 6
        kinds = [s.kind for s in sols.solutions]
        assert kinds.count("square") == 4
        assert kinds.count("line") == 2

    def test_residuals_and_invariants(self, solved):
        r, sols = solved
        rpoly = r.curve_poly()
        for s in sols.solutions:
            assert s.residual < 1e-8
            assert curves.eval_curve(s.curve, 0.0) == pytest.approx(0.0, abs=1e-9)
            assert abs(poly.inner_product(rpoly, s.curve.curve_poly()).real) < 1e-8
            rep = curves.verify_ph(s.curve)
            assert rep.is_ph, (s.kind, rep.residual)
            if s.kind == "square":
                assert curves.arc_length(s.curve.preimage) == pytest.approx(
                    38.0 / 3.0, abs=1e-8
                )
            else:
                assert s.curve.preimage is None

    def test_negation_symmetry(self, solved):
        _, sols = solved
        xs = [s.xi for s in sols.solutions]
        for xi in xs:
            assert any(np.max(np.abs(xi + other)) < 1e-7 for other in xs)

    def test_regression_pins(self, solved):
        _, sols = solved
        sq1 = [4.718658, 0.258252, 2.453873, 0.87023, -0.172542, -0.029702, 0.031223]
        ln1 = [6.210175, -2.290958, 2.88837, -0.768805, 0.165959, -0.104303, 0.596605]
        xs = [s.xi for s in sols.solutions]
        for pin in (sq1, ln1):
            hit = min(np.max(np.abs(np.asarray(pin) - xi)) for xi in xs)
            assert hit < 1e-3
            hit_neg = min(np.max(np.abs(np.asarray(pin) + xi)) for xi in xs)
            assert hit_neg < 1e-3

    def test_stable_under_more_starts(self, solved):
        r, sols = solved
        sig = poly.power_to_bernstein([20.0, -40.0, 38.0])
        again = ortho.orthogonal_ph_with_speed(r, sig, starts=256)
        assert len(again) == len(sols)
        for a, b in zip(again.solutions, sols.solutions):
            assert np.max(np.abs(a.xi - b.xi)) < 1e-8


def test_speed_input_validation(cubic_w, speed_quadratic):
    r = curves.build_curve(cubic_w)
    with pytest.raises(ValueError):
        ortho.orthogonal_ph_with_speed(r, poly.power_to_bernstein([1.0, -2.0]))
    with pytest.raises(ValueError):
        quintic = curves.build_curve(bernstein_poly([1.0, 1j, 1.0]))
        ortho.orthogonal_ph_with_speed(quintic, speed_quadratic)
    with pytest.raises(ValueError):
        ortho.orthogonal_ph_with_speed(r, bernstein_poly([1.0, 1.0 + 0.5j, 1.0]))
