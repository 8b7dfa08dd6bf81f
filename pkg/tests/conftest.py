import numpy as np
import pytest

from anisoperim import AnisotropicNorm, WulffShape


@pytest.fixture(scope="session")
def euclid():
    return AnisotropicNorm.euclidean()


@pytest.fixture(scope="session")
def elliptic21():
    return AnisotropicNorm.elliptic(2.0, 1.0)


@pytest.fixture(scope="session")
def p4():
    return AnisotropicNorm.p_norm(4.0)


@pytest.fixture(scope="session")
def pq43():
    return AnisotropicNorm.piecewise_pq(4.0, 3.0)


@pytest.fixture(scope="session")
def maxnorm():
    return AnisotropicNorm.max_approx([8, 16, 32, 64])


@pytest.fixture(scope="session")
def wulff_euclid(euclid):
    return WulffShape(euclid)


@pytest.fixture(scope="session")
def wulff_elliptic(elliptic21):
    return WulffShape(elliptic21)


@pytest.fixture(scope="session")
def wulff_p4(p4):
    return WulffShape(p4)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)


def fd_gradient(fn, xi, h=1e-6):
    """Central finite-difference gradient oracle for scalar fields on R^2."""
    xi = np.asarray(xi, dtype=float)
    ex = np.array([h, 0.0])
    ey = np.array([0.0, h])
    return np.array([
        (fn(xi + ex) - fn(xi - ex)) / (2 * h),
        (fn(xi + ey) - fn(xi - ey)) / (2 * h),
    ])


def region_area_by_slices(contains_y_bounds, x_lo, x_hi, n=400):
    """2-D area oracle: iterated quadrature with per-slice y-extent.

    `contains_y_bounds(x)` returns (y_min, y_max) of the region's slice at
    abscissa x, or None outside. Gauss-Legendre in x over [x_lo, x_hi].
    """
    from numpy.polynomial.legendre import leggauss

    nodes, weights = leggauss(n)
    mid, half = 0.5 * (x_hi + x_lo), 0.5 * (x_hi - x_lo)
    total = 0.0
    for t, w in zip(nodes, weights):
        x = mid + half * t
        bounds = contains_y_bounds(x)
        if bounds is not None:
            total += w * (bounds[1] - bounds[0])
    return total * half
