import numpy as np
import pytest

from rumin.group import dilate_array, gauge_array
from rumin.numerics import sublaplacian_fundamental_residual
from rumin.numerics.sublaplacian import (PowerExpr, fundamental_solution, gauge_fourth_poly,
                                         sublaplacian_fd, sublaplacian_of_fundamental)


def sample(nrng, n, count=10):
    pts = nrng.standard_normal((200, 2 * n + 1))
    rho = gauge_array(pts)
    return pts[(rho > 0.4) & (rho < 2.0)][:count]


@pytest.mark.parametrize("n", [1, 2])
def test_symbolic_zero(n):
    assert sublaplacian_of_fundamental(n).is_zero()


@pytest.mark.parametrize("n", [1, 2])
def test_fd_cross_check(n, nrng):
    rep = sublaplacian_fundamental_residual(sample(nrng, n), n, h=5e-3)
    assert rep["symbolic_zero"] and rep["fd_max"] < 1e-6


def test_other_powers_not_harmonic(nrng):
    """The oracle can fail: ``ρ^{−1}`` is not annihilated."""
    f = PowerExpr.power(1, -0.25)
    acc = PowerExpr(1, {})
    for j in range(2):
        acc = acc + f.W(j).W(j)
    assert not acc.is_zero()


def test_homogeneity(nrng):
    pts = sample(nrng, 1)
    for lam in (0.5, 3.0):
        assert np.allclose(fundamental_solution(dilate_array(lam, pts), 1),
                           lam ** (2 - 4) * fundamental_solution(pts, 1), rtol=1e-13)


def test_gauge_polynomial(nrng):
    pts = nrng.standard_normal((5, 3))
    assert np.allclose(gauge_fourth_poly(1).evaluate(pts), gauge_array(pts) ** 4)


def test_rejects_points_near_identity():
    with pytest.raises(ValueError):
        sublaplacian_fundamental_residual(np.array([[1e-3, 0, 0]]), 1)
