import random
from fractions import Fraction as F

import numpy as np
import pytest

from rumin.exterior import Form, basis
from rumin.forms import exterior_d, random_poly_form
from rumin.numerics.euclid import bracket, euclidean_d, interior, lie_derivative, to_euclidean, to_heisenberg
from rumin.numerics.fd import fd_operator, fd_partial, fd_word
from rumin.operators import Operator
from rumin.poly import PolyScalar, coordinates


def euclid_form(n, h, rng, deg=3):
    return Form(n, h, {m: PolyScalar.random(2 * n + 1, deg, rng, 0.4) for m in basis(n, h)})


def const_field(nvars, rng):
    return [F(rng.randint(-3, 3)) for _ in range(nvars)]


def linear_field(nvars, rng):
    return [PolyScalar.random(nvars, 1, rng, 0.7) for _ in range(nvars)]


@pytest.mark.parametrize("make_fields", [const_field, linear_field])
def test_lie_interior_commutator_identity(make_fields, rng):
    """``[L_X, ι_Y] = ι_{[X,Y]}`` (for constant fields both sides vanish)."""
    for n in (1, 2):
        N = 2 * n + 1
        for h in range(1, N + 1):
            a = euclid_form(n, h, rng)
            X, Y = make_fields(N, rng), make_fields(N, rng)
            lhs = lie_derivative(X, interior(Y, a)) - interior(Y, lie_derivative(X, a))
            assert lhs == interior(bracket(X, Y, N), a)


def test_cartan_on_coordinate_field():
    """``L_{∂_x} f dy = (∂_x f) dy``."""
    x, y, t = coordinates(1)
    a = Form(1, 1, {(1,): x * x * t})
    e = [F(1), F(0), F(0)]
    assert lie_derivative(e, a) == Form(1, 1, {(1,): x * t * 2})


def test_interior_examples():
    x, y, t = coordinates(1)
    one = PolyScalar.constant(3, 1)
    a = Form(1, 2, {(0, 1): one})
    assert interior([F(1), F(0), F(0)], a) == Form(1, 1, {(1,): one})
    assert interior([F(0), F(1), F(0)], a) == Form(1, 1, {(0,): -one})


def test_coframe_change_roundtrip(rng):
    for n in (1, 2):
        for h in range(2 * n + 2):
            a = random_poly_form(n, h, 2, rng)
            assert to_heisenberg(to_euclidean(a)) == a
            assert to_euclidean(to_heisenberg(a)) == a


def test_euclidean_d_squared(rng):
    for h in range(3):
        a = euclid_form(1, h, rng)
        assert not euclidean_d(euclidean_d(a))


def test_fd_stencils_fourth_order(rng, nrng):
    f = PolyScalar.random(3, 6, rng, 0.6)
    pts = nrng.uniform(-0.5, 0.5, (8, 3))
    for word in ([0], [1, 0], [2]):
        exact = Operator.word(3, word).apply(f).evaluate(pts)
        errs = [np.max(np.abs(fd_word(f.evaluate, pts, word, h) - exact)) for h in (2e-2, 1e-2)]
        assert errs[1] < 1e-6
        assert errs[0] / errs[1] > 10  # fourth order: nominal ratio 16
    exact = f.diff(2).evaluate(pts)
    assert np.allclose(fd_partial(f.evaluate, pts, [2], 1e-3), exact, atol=1e-9)
    op = Operator.word(3, [0, 1]) + Operator.letter(3, 2)
    assert np.allclose(fd_operator(op, f.evaluate, pts, 1e-2), op.apply(f).evaluate(pts), atol=1e-6)
