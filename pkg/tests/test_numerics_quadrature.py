import math

import numpy as np
import pytest
from scipy import integrate

from rumin.numerics.quadrature import (Domain, QuadratureSpec, bump_rule, gauss_unit, indicator_rule,
                                       interior_samples, koranyi_ball_rule, koranyi_ball_volume, lp_norm,
                                       volume_rule)


def test_domain_validation():
    with pytest.raises(ValueError):
        Domain("cube", 1, (1.0,))
    with pytest.raises(ValueError):
        Domain.koranyi_annulus(1, 2.0, 1.0)
    with pytest.raises(ValueError):
        Domain.koranyi_ball(1, -1.0)
    with pytest.raises(ValueError):
        Domain.koranyi_annulus(1, 1.0, 2.0).inradius()


def test_inradius():
    assert Domain.koranyi_ball(1, 1.0).inradius() == 0.25
    assert Domain.koranyi_ball(1, 2.0).inradius() == 1.0
    assert Domain.koranyi_ball(1, 8.0).inradius() == 8.0
    assert Domain.euclidean_ball(2, 1.5).inradius() == 1.5


def test_inradius_is_sharp(nrng):
    """The Euclidean ball of the inradius sits inside the Korányi ball, and no bigger one does."""
    for R in (0.5, 1.0, 2.0, 3.0):
        D = Domain.koranyi_ball(1, R)
        r = D.inradius()
        v = nrng.standard_normal((4000, 3))
        v /= np.linalg.norm(v, axis=1)[:, None]
        assert D.contains(v * r * (1 - 1e-9)).all()
        assert not D.contains(v * r * 1.05).all()


def test_spec_refinement():
    assert QuadratureSpec(33, 16).refined() == QuadratureSpec(65, 32)
    with pytest.raises(ValueError):
        QuadratureSpec(2, 16)


def test_gauss_unit_exact():
    x, w = gauss_unit(8)
    assert math.isclose(np.sum(w * x ** 15), 1 / 16, rel_tol=1e-14)


def test_bump_rule_normalised():
    rule = bump_rule(Domain.koranyi_ball(1, 1.0), 33)
    assert math.isclose(rule.weights.sum(), 1.0, rel_tol=1e-14)
    assert rule.radius == 0.125
    assert np.all(np.linalg.norm(rule.nodes, axis=1) < rule.radius)
    # symmetric profile: odd moments vanish
    assert abs(rule.moment((1, 0, 0))) < 1e-15
    assert rule.moment((2, 0, 0)) > 0


def _koranyi_volume_oracle(R):
    c = R * R / 4
    return integrate.quad(lambda t: math.pi * math.sqrt(max(R ** 4 - 16 * t * t, 0.0)), -c, c)[0]


def _koranyi_x2_oracle(R):
    c = R * R / 4
    return integrate.quad(lambda t: math.pi / 4 * (R ** 4 - 16 * t * t), -c, c)[0]


@pytest.mark.parametrize("R", [0.5, 1.0, 2.0])
def test_koranyi_volume(R):
    assert math.isclose(koranyi_ball_volume(1, R), math.pi ** 2 * R ** 4 / 8, rel_tol=1e-14)
    assert math.isclose(koranyi_ball_volume(1, R), _koranyi_volume_oracle(R), rel_tol=1e-10)
    rule = koranyi_ball_rule(R, 24)
    assert math.isclose(rule.weights.sum(), koranyi_ball_volume(1, R), rel_tol=1e-12)
    x = rule.nodes[:, 0]
    assert math.isclose(rule.integrate(x * x), _koranyi_x2_oracle(R), rel_tol=1e-10)


def test_indicator_rule_converges():
    D = Domain.koranyi_ball(2, 1.0)
    exact = koranyi_ball_volume(2, 1.0)
    errs = [abs(indicator_rule(D, g).weights.sum() - exact) / exact for g in (9, 17)]
    assert errs[1] < errs[0] and errs[1] < 0.05
    assert volume_rule(Domain.koranyi_ball(1, 1.0), 9).kind == "mapped"
    assert volume_rule(D, 9).kind == "indicator"


def test_interior_samples(nrng):
    D = Domain.koranyi_ball(1, 2.0)
    pts = interior_samples(D, 100, nrng)
    assert pts.shape == (100, 3)
    assert Domain.koranyi_ball(1, 1.0).contains(pts).all()


def test_lp_norm():
    rule = koranyi_ball_rule(1.0, 16)
    vol = koranyi_ball_volume(1, 1.0)
    ones = np.ones(len(rule.nodes))
    assert math.isclose(lp_norm(ones * 3, rule, 4), 3 * vol ** 0.25, rel_tol=1e-12)
    assert lp_norm(-ones * 3, rule, math.inf) == 3
