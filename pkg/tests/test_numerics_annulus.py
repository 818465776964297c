import pytest

from rumin.numerics import annulus_admissibility, annulus_constants, construct_pair
from rumin.numerics.annulus import grid_directions, nesting_chain, random_directions
import numpy as np


def test_constants_n1():
    c = annulus_constants(1, "grid")
    assert c.sigma1 == pytest.approx(1 / 8, rel=1e-9)
    assert c.sigma2 == pytest.approx(4, rel=1e-9)
    assert c.tau1 == pytest.approx(1 / 32, rel=1e-9)
    assert c.tau2 == pytest.approx(16, rel=1e-9)
    assert c.tau2_factor == 2


def test_samplers_agree():
    a, b = annulus_constants(1, "grid"), annulus_constants(1, "random")
    for f in ("tau1", "tau2", "sigma1", "sigma2"):
        assert abs(getattr(a, f) - getattr(b, f)) <= 1e-4 * getattr(a, f)


def test_directions_are_unit():
    for d in (grid_directions(3, 8), random_directions(5, 100, 0)):
        assert np.allclose(np.linalg.norm(d, axis=1), 1)


def test_nesting_chain():
    assert all(nesting_chain(annulus_constants(1)).values())


def test_window_and_pair():
    s1, s2 = construct_pair(1.0, 1.01)
    rep = annulus_admissibility(1.0, 1.01, s1, s2)
    assert rep.window_nonempty and rep.admissible
    lo, hi = rep.window
    assert lo == pytest.approx(1.01 / 16) and hi == pytest.approx(32)
    assert rep.inclusions["dilated_U_in_V"] and rep.inclusions["dilated_U_prime_in_V_prime"]
    assert not rep.inclusions["V_prime_in_dilated_U_prime"]


def test_scale_invariance_of_nonempty_window():
    for c in (0.1, 3.0, 50.0):
        a = annulus_admissibility(1.0, 1.5, 0.5, 0.7)
        b = annulus_admissibility(c * 1.0, c * 1.5, c * 0.5, c * 0.7)
        assert a.window_nonempty == b.window_nonempty


def test_inadmissible_pair():
    rep = annulus_admissibility(1.0, 1.01, 100.0, 200.0)
    assert not rep.admissible


def test_bad_radii():
    with pytest.raises(ValueError):
        annulus_admissibility(2.0, 1.0, 0.5, 0.7)
    with pytest.raises(ValueError):
        construct_pair(1.0, 600.0)
