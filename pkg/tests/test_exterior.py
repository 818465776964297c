from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rumin.exterior import (Form, basis, dimension, dtheta, hodge_star, inner, lefschetz, pure_weight, volume,
                            wedge, weight, weight_split)


def dx(n, i):
    return Form.monomial(n, (i - 1,))


def dy(n, i):
    return Form.monomial(n, (n + i - 1,))


def theta(n):
    return Form.monomial(n, (2 * n,))


def random_form(n, h, rng):
    return Form(n, h, {m: F(rng.randint(-5, 5), rng.randint(1, 3)) for m in basis(n, h)})


def test_wedge_examples():
    a, b, c = dx(2, 1), dy(2, 2), theta(2)
    assert not wedge(a, a)
    assert wedge(b, a) == -wedge(a, b)
    assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)


def test_wedge_associative(rng):
    for n in (1, 2):
        for h1 in range(3):
            for h2 in range(3 - h1 if n == 1 else 3):
                a, b = random_form(n, h1, rng), random_form(n, h2, rng)
                c = random_form(n, 1, rng)
                assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
                if h1 + h2 <= 2 * n + 1:
                    assert wedge(b, a) == wedge(a, b) * (-1) ** (h1 * h2)


def test_star_examples():
    n = 1
    one = Form.scalar(n, F(1))
    assert hodge_star(one) == volume(n)
    assert hodge_star(volume(n)) == one
    # ⟨dx₁, dx₁⟩ dV = dx₁ ∧ ⋆dx₁ forces ⋆dx₁ = dy₁∧θ
    assert hodge_star(dx(1, 1)) == wedge(dy(1, 1), theta(1))
    assert wedge(dx(1, 1), hodge_star(dx(1, 1))) == volume(1)


def _perm_sign(seq):
    m = np.zeros((len(seq), len(seq)))
    for i, j in enumerate(seq):
        m[i, j] = 1
    return int(round(np.linalg.det(m)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_star_matches_permutation_oracle(n):
    N = 2 * n + 1
    for h in range(N + 1):
        for m in combinations(range(N), h):
            comp = tuple(i for i in range(N) if i not in m)
            want = Form.monomial(n, comp, F(_perm_sign(m + comp)))
            assert hodge_star(Form.monomial(n, m)) == want


@pytest.mark.parametrize("n", [1, 2])
def test_star_defining_relation_and_square(n, rng):
    N = 2 * n + 1
    for h in range(N + 1):
        a, b = random_form(n, h, rng), random_form(n, h, rng)
        assert wedge(b, hodge_star(a)) == volume(n) * inner(b, a)
        assert hodge_star(hodge_star(a)) == a * (-1) ** (h * (N - h))


def test_weights():
    assert weight(1, (0,)) == 1
    assert weight(1, (2,)) == 2
    assert weight(2, (0, 4)) == 3
    assert pure_weight(dx(1, 1) + theta(1)) is None
    assert pure_weight(theta(1)) == 2


def test_weight_split_examples():
    z = Form.zero(1, 1)
    assert weight_split(dx(1, 1)) == (dx(1, 1), z)
    assert weight_split(theta(1)) == (z, theta(1))
    assert weight_split(dx(1, 1) + theta(1)) == (dx(1, 1), theta(1))


@given(st.integers(1, 3), st.data())
def test_weight_split_recombines(n, data):
    h = data.draw(st.integers(0, 2 * n + 1))
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(basis(n, h)), max_size=len(basis(n, h))))
    a = Form.from_vector(n, h, [F(c) for c in coeffs])
    lo, hi = weight_split(a)
    assert lo + hi == a
    assert pure_weight(lo) in (None, h) and pure_weight(hi) in (None, h + 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lefschetz_of_one(n):
    want = Form.zero(n, 2)
    for j in range(n):
        want = want - Form.monomial(n, (j, j + n))
    assert lefschetz(Form.scalar(n, F(1))) == want == dtheta(n)


def test_lefschetz_examples(rng):
    assert not lefschetz(dx(1, 1))
    for n in (1, 2):
        a = random_form(n, 1, rng)
        # dθ is even, so it commutes with θ
        assert lefschetz(wedge(theta(n), a)) == wedge(theta(n), lefschetz(a))


def test_dimension():
    assert dimension(2, 2) == 10
    assert len(basis(1, 4)) == 0
