"""Shared reference curves built from exact expressions.

These mirror the shipped fixture documents but are constructed
independently here so the JSON fixtures can be checked against them.
"""

from math import sqrt

import numpy as np
import pytest

from phforge.poly import bernstein_poly, legendre_poly, power_to_bernstein


@pytest.fixture(scope="session")
def cubic_w():
    # quadratic hodograph (21+20i, -5-31i, -16+30i); arc length 38/3
    return bernstein_poly([5 + 2j, -3 - 5j])


@pytest.fixture(scope="session")
def quintic_free_w():
    # non-canonical quintic used for free-form perturbation studies
    return bernstein_poly([5 + 2j, -3 - 4j, 5 + 1j])


@pytest.fixture(scope="session")
def quintic_canonical_a_w():
    # canonical: (2-i)^2 + (1+2i)^2 + (-1)^2 = 1; arc length 11
    return legendre_poly([2 - 1j, 1 + 2j, -1.0])


@pytest.fixture(scope="session")
def quintic_canonical_b_w():
    # canonical quintic with a symmetric pre-image, arc length 1.23740482
    w0 = sqrt(2.0) + (sqrt(2.0) / 2.0) * 1j
    s97 = sqrt(97.0)
    re1 = (sqrt(5.0 * (9.0 + s97)) - 6.0 * sqrt(2.0)) / 4.0
    im1 = sqrt(-27.0 + 5.0 * s97 + 6.0 * sqrt(10.0 * (s97 - 9.0))) / 4.0
    return bernstein_poly([w0, re1 - im1 * 1j, w0])


@pytest.fixture(scope="session")
def line_w():
    return bernstein_poly([1.0])


@pytest.fixture(scope="session")
def speed_quadratic():
    # positive on [0,1]: 20 - 40t + 38t^2, Bernstein (20, 0, 18)
    return power_to_bernstein([20.0, -40.0, 38.0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
