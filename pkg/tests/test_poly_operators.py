import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rumin.group import mul_array
from rumin.operators import Operator, homogeneous_degree, is_horizontal_combination, order, word_to_pbw
from rumin.poly import PolyScalar, coordinates, monomials_up_to


def fd_left(f, pts, j, h=1e-4):
    """Oracle: derivative of ``s ↦ f(p·(s e_j))`` at 0, from the group law alone."""
    e = np.zeros(pts.shape[1])
    e[j] = h
    return (f(mul_array(pts, e)) - f(mul_array(pts, -e))) / (2 * h)


def test_field_examples():
    x1, y1, t = coordinates(1)
    assert x1.W(0) == PolyScalar.constant(3, 1)
    assert t.W(0) == y1 * F(-1, 2)
    assert t.W(1) == x1 * F(1, 2)
    assert t.W(2) == PolyScalar.constant(3, 1)


@pytest.mark.parametrize("n", [1, 2])
def test_fields_match_group_law(n, rng, nrng):
    N = 2 * n + 1
    f = PolyScalar.random(N, 4, rng)
    pts = nrng.standard_normal((10, N))
    for j in range(N):
        assert np.allclose(f.W(j).evaluate(pts), fd_left(f.evaluate, pts, j), atol=1e-6)


def test_commutator_is_T(rng):
    for n in (1, 2):
        N = 2 * n + 1
        for _ in range(50):
            f = PolyScalar.random(N, 4, rng)
            for i in range(n):
                comm = f.W(n + i).W(i) - f.W(i).W(n + i)
                assert comm == f.W(2 * n)
                # other pairs commute
                if n > 1:
                    k = (i + 1) % n
                    assert f.W(n + k).W(i) == f.W(i).W(n + k)


def test_poly_arithmetic(rng):
    p, q = PolyScalar.random(3, 3, rng), PolyScalar.random(3, 3, rng)
    pts = np.random.default_rng(1).standard_normal((7, 3))
    assert np.allclose((p * q).evaluate(pts), p.evaluate(pts) * q.evaluate(pts))
    assert np.allclose((p - q).evaluate(pts), p.evaluate(pts) - q.evaluate(pts))
    assert (p ** 3) == p * p * p
    assert p(tuple(F(k) for k in (1, 2, 3))) == sum(
        c * 1 ** e[0] * 2 ** e[1] * 3 ** e[2] for e, c in p.terms.items())
    with pytest.raises(ValueError):
        p + PolyScalar.constant(5, 1)


def test_dense_evaluation_agrees(rng):
    p = PolyScalar.random(5, 6, rng, density=0.6)
    assert len(p.terms) > 64
    pts = np.random.default_rng(2).uniform(-1, 1, (5000, 5))
    slow = sum(float(c) * np.prod(pts ** np.array(e), axis=1) for e, c in p.terms.items())
    assert np.allclose(p.evaluate(pts), slow, rtol=1e-12, atol=1e-12)


def test_compose_and_scale(rng):
    p = PolyScalar.random(3, 3, rng)
    x, y, t = coordinates(1)
    assert p.compose([x, y, t]) == p
    assert p.scale_variables([F(2), F(2), F(4)]) == p.compose([x * 2, y * 2, t * 4])


@given(st.lists(st.integers(0, 2), max_size=5))
def test_word_normal_form_acts_like_word(word):
    rng = random.Random(len(word))
    f = PolyScalar.random(3, 5, rng)
    g = f
    for j in reversed(word):
        g = g.W(j)
    assert Operator.word(3, word).apply(f) == g


@given(st.lists(st.integers(0, 4), max_size=4), st.lists(st.integers(0, 4), max_size=3))
def test_composition(a, b):
    A, B = Operator.word(5, a), Operator.word(5, b)
    assert A * B == Operator.word(5, a + b)


def test_adjoint_of_words():
    X, Y, T = (Operator.letter(3, j) for j in range(3))
    assert X.adjoint() == -X
    assert (X * Y).adjoint() == Y * X
    assert T.adjoint() == -T
    L = X * X + Y * Y
    assert L.adjoint() == L


def test_grading_helpers():
    assert order((1, 1, 1)) == 3
    assert homogeneous_degree((1, 1, 1)) == 4
    assert word_to_pbw([1, 0], 3) == {(1, 1, 0): 1, (0, 0, 1): -1}


def test_horizontal_combination():
    X, Y, T = (Operator.letter(3, j) for j in range(3))
    assert T.horizontal_length() == 2  # T = XY − YX
    assert (Y * X).uses_T() and (Y * X).horizontal_length() == 2
    assert (X + T).horizontal_length() is None
    assert (T * T).horizontal_length() == 4
    assert not is_horizontal_combination(T, 1)


def test_monomials_up_to():
    assert len(list(monomials_up_to(3, 2))) == 10
