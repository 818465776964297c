import math
import random

import pytest

from rumin.exterior import Form
from rumin.forms import rumin_form
from rumin.numerics import QuadratureSpec, admissible_exponents, poincare_ratio_estimate
from rumin.numerics.poincare import exact_family
from rumin.numerics.quadrature import koranyi_ball_volume
from rumin.poly import PolyScalar

SPEC = QuadratureSpec(17, 8)


def test_admissible_exponents():
    assert admissible_exponents(1, 2) == (2.0, 4.0, math.inf)
    assert admissible_exponents(1, 1) == (4.0, math.inf)
    assert admissible_exponents(2, 2) == (6.0, math.inf)


def test_zero_family():
    rep = poincare_ratio_estimate([Form(1, 2)], 1, 2, 4.0, spec=SPEC)
    assert rep.rows[0].ratio == 0.0 and rep.max_ratio == 0.0


def test_rejects_bad_inputs():
    fam = exact_family(1, 2, 1, random.Random(0))
    with pytest.raises(ValueError):
        poincare_ratio_estimate(fam, 1, 2, 3.0, spec=SPEC)
    with pytest.raises(ValueError):
        poincare_ratio_estimate(fam, 1, 2, 4.0, lam=1.0, spec=SPEC)
    not_closed = rumin_form(1, 2, [PolyScalar.variable(3, 1), PolyScalar(3)])  # y θ∧dx₁
    with pytest.raises(ValueError):
        poincare_ratio_estimate([not_closed], 1, 2, 4.0, spec=SPEC)


def test_constant_form_norm():
    """``‖c ξ‖_{L⁴(B_2)} = |c| |ξ| vol(B_2)^{1/4}``."""
    c = PolyScalar.constant(3, 3)
    om = rumin_form(1, 2, [c, PolyScalar(3)])
    rep = poincare_ratio_estimate([om], 1, 2, 4.0, spec=QuadratureSpec(24, 8))
    assert rep.rows[0].norm_p == pytest.approx(3 * koranyi_ball_volume(1, 2.0) ** 0.25, rel=1e-10)


def test_scaling_invariance():
    fam = exact_family(1, 2, 3, random.Random(4))
    a = poincare_ratio_estimate(fam, 1, 2, 4.0, spec=SPEC)
    b = poincare_ratio_estimate([om * 2 for om in fam], 1, 2, 4.0, spec=SPEC)
    for r, s in zip(a.rows, b.rows):
        assert s.ratio == pytest.approx(r.ratio, rel=1e-12)
        assert s.norm_p == pytest.approx(2 * r.norm_p, rel=1e-12)


def test_finite_ratios_and_prefix():
    fam = exact_family(1, 2, 6, random.Random(5))
    rep = poincare_ratio_estimate(fam, 1, 2, 4.0, spec=SPEC)
    assert rep.all_finite()
    pm = rep.prefix_max()
    assert pm == sorted(pm) and pm[-1] == rep.max_ratio
    assert all(r.residual < 1e-8 for r in rep.rows)


def test_degree_three_infinity_norm():
    fam = exact_family(1, 3, 2, random.Random(6))
    rep = poincare_ratio_estimate(fam, 1, 3, math.inf, spec=SPEC)
    assert rep.all_finite() and rep.max_ratio > 0
