import json
import random
from fractions import Fraction as F

import pytest

from rumin.exterior import Form, basis, wedge
from rumin.forms import (NotRuminFormError, OperatorMatrix, codifferential_matrix, d_c_apply, d_c_matrix,
                         dilation_pullback, exterior_d, exterior_d_parts, laplacian_matrix, leibniz_commutator,
                         leibniz_structure, pi_E, pi_E0_form, pi_E_general, random_poly_form, random_rumin_form,
                         rumin_coordinates, rumin_form, translation_pullback)
from rumin.numerics.euclid import euclidean_d, to_euclidean, to_heisenberg
from rumin.operators import Operator
from rumin.poly import PolyScalar, coordinates
from rumin.projections import d0_pinv, e0_basis


def const(n, c):
    return PolyScalar.constant(2 * n + 1, c)


@pytest.mark.parametrize("n", [1, 2])
def test_d_matches_euclidean_oracle(n, rng):
    """``d`` in the left-invariant coframe agrees with coordinate ``d`` after a change of coframe."""
    for h in range(2 * n + 1):
        a = random_poly_form(n, h, 3, rng)
        assert to_heisenberg(euclidean_d(to_euclidean(a))) == exterior_d(a)


def test_d_examples():
    n = 1
    x1, y1, t = coordinates(n)
    assert exterior_d(Form.scalar(n, x1)) == Form(n, 1, {(0,): const(n, 1)})
    theta = Form(n, 1, {(2,): const(n, 1)})
    assert exterior_d(theta) == Form(n, 2, {(0, 1): const(n, -1)})
    # d₀ carries the whole differential of a constant form
    d0, d1, d2 = exterior_d_parts(theta)
    assert not d1 and not d2 and d0 == exterior_d(theta)
    theta2 = Form(2, 1, {(4,): const(2, 1)})
    assert exterior_d(theta2) == Form(2, 2, {(0, 2): const(2, -1), (1, 3): const(2, -1)})


@pytest.mark.parametrize("n", [1, 2])
def test_d_squared(n, rng):
    for _ in range(5):
        f = PolyScalar.random(2 * n + 1, 4, rng)
        assert not exterior_d(exterior_d(Form.scalar(n, f)))
        for h in range(2 * n):
            a = random_poly_form(n, h, 3, rng)
            assert not exterior_d(exterior_d(a))


def test_pi_E_examples(rng):
    n = 1
    x1, _, _ = coordinates(n)
    alpha = Form(n, 1, {(0,): x1 * x1})
    diff = pi_E(alpha) - alpha
    assert all(2 * n in m for m in diff.terms)  # weight-1 part untouched
    c = rumin_form(n, 1, [const(n, 2), const(n, -3)])
    assert pi_E(c) == c
    high = random_rumin_form(n, 2, 3, rng)
    assert pi_E(high) == high
    with pytest.raises(NotRuminFormError):
        pi_E(Form(n, 1, {(2,): x1}))


@pytest.mark.parametrize("n", [1, 2])
def test_pi_E_characterised_by_kernel(n, rng):
    """``Π_E α`` is the unique ``α + (range of d₀⁻¹)`` with ``d₀⁻¹ d Π_E α = 0``."""
    for h in range(n + 1):
        a = random_rumin_form(n, h, 3, rng)
        p = pi_E(a)
        assert pi_E0_form(p) == a
        if h <= 2 * n:
            assert not d0_pinv(n, h)(exterior_d(p))
        assert p == pi_E_general(a)


@pytest.mark.parametrize("n", [1, 2])
def test_pi_E_projector_identities(n, rng):
    for h in range(2 * n + 2):
        a = random_poly_form(n, h, 3, rng)
        p = pi_E_general(a)
        assert pi_E_general(p) == p
        if h <= 2 * n:
            assert exterior_d(p) == pi_E_general(exterior_d(a))


def test_d_c_scalar_example(rng):
    n = 1
    f = PolyScalar.random(3, 4, rng)
    assert d_c_apply(Form.scalar(n, f)) == Form(n, 1, {(0,): f.W(0), (1,): f.W(1)})


@pytest.mark.parametrize("n", [1, 2])
def test_d_c_squared_on_scalars(n, rng):
    for _ in range(50):
        f = Form.scalar(n, PolyScalar.random(2 * n + 1, 4, rng))
        assert not d_c_apply(d_c_apply(f))


@pytest.mark.parametrize("n", [1, 2])
def test_d_c_is_d_above_n(n, rng):
    for h in range(n + 1, 2 * n + 1):
        a = random_rumin_form(n, h, 3, rng)
        assert d_c_apply(a) == exterior_d(a)


def test_d_c_matrix_examples():
    X, Y, T = (Operator.letter(3, j) for j in range(3))
    m0 = d_c_matrix(1, 0)
    assert m0.shape == (2, 1)
    assert m0.entries[0][0] == X and m0.entries[1][0] == Y
    m1 = d_c_matrix(1, 1)
    assert m1.entry_degrees() == {2} and m1.horizontal()
    # matrix of d restricted to E₀² → E₀³
    m2 = d_c_matrix(1, 2)
    assert m2.entry_degrees() == {1}
    b2, b3 = e0_basis(1, 2), e0_basis(1, 3)
    for k in range(b2.dim):
        coords = [const(1, 0)] * b2.dim
        coords = [c if i != k else coordinates(1)[0] * coordinates(1)[1] for i, c in enumerate(coords)]
        want = b3.coordinates(exterior_d(b2.form(coords)))
        assert m2.apply(coords) == want


@pytest.mark.parametrize("n", [1, 2])
def test_d_c_matrix_reproduces_d_c(n, rng):
    for h in range(2 * n + 1):
        b = e0_basis(n, h)
        coords = [PolyScalar.random(2 * n + 1, 3, rng) for _ in range(b.dim)]
        assert d_c_matrix(n, h).apply(coords) == rumin_coordinates(d_c_apply(b.form(coords)))


def test_laplacian_examples():
    X, Y = Operator.letter(3, 0), Operator.letter(3, 1)
    assert laplacian_matrix(1, 0).entries[0][0] == -(X * X + Y * Y)
    assert laplacian_matrix(1, 1).entry_degrees() == {4}
    for n in (1, 2):
        N = 2 * n + 1
        want = Operator(N)
        for j in range(2 * n):
            want = want - Operator.word(N, [j, j])
        assert laplacian_matrix(n, 0).entries[0][0] == want


def test_codifferential_is_adjoint_matrix():
    for n in (1, 2):
        for h in range(1, 2 * n + 2):
            cd = codifferential_matrix(n, h)
            assert cd.adjoint() == d_c_matrix(n, h - 1)


def test_dilation_examples():
    n, s = 1, F(3)
    dx1 = Form(n, 1, {(0,): const(n, 1)})
    assert dilation_pullback(s, dx1) == dx1 * s
    x1, y1, t = coordinates(n)
    a = Form(n, 2, {(0, 2): x1 * t})
    assert dilation_pullback(s, a) == Form(n, 2, {(0, 2): (x1 * t) * (s * s * s) * s ** 3})


@pytest.mark.parametrize("s", [F(2), F(1, 3)])
def test_dilation_commutes_with_d_c(s, rng):
    for n in (1, 2):
        for h in range(2 * n + 1):
            a = random_rumin_form(n, h, 3, rng)
            assert dilation_pullback(s, d_c_apply(a)) == d_c_apply(dilation_pullback(s, a))


def test_translation_invariance(rng):
    for n in (1, 2):
        q = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2 * n + 1)]
        for h in range(2 * n + 1):
            a = random_rumin_form(n, h, 2, rng)
            assert translation_pullback(q, d_c_apply(a)) == d_c_apply(translation_pullback(q, a))


def test_coleibniz_above_n(rng):
    """Above the middle degree ``d_c`` is ``d``, so the ordinary Leibniz rule holds."""
    for n in (1, 2):
        for h in range(n + 1, 2 * n + 1):
            a = random_rumin_form(n, h, 2, rng)
            psi = PolyScalar.random(2 * n + 1, 2, rng)
            lhs = d_c_apply(a * psi)
            assert lhs == wedge(exterior_d(Form.scalar(n, psi)), a) + d_c_apply(a) * psi


def test_leibniz_examples(rng):
    n = 1
    a = random_rumin_form(n, 1, 2, rng)
    assert not leibniz_commutator(const(n, 5), a)
    for h in range(3):
        rep = leibniz_structure(n, h)
        assert rep.structure_ok()
        assert rep.pairs() == ({(1, 1), (2, 0)} if h == n else {(1, 0)})
    x1 = coordinates(n)[0]
    zero = leibniz_structure(n, 1).zero_order_part(x1 * x1)
    entries = [c for row in zero for c in row if c]
    assert entries and all(c.is_constant() for c in entries)


@pytest.mark.parametrize("n", [1, 2])
def test_leibniz_report_matches_direct(n, rng):
    for h in range(2 * n + 1):
        rep = leibniz_structure(n, h)
        zeta = PolyScalar.random(2 * n + 1, 3, rng)
        a = random_rumin_form(n, h, 2, rng)
        direct = rumin_coordinates(leibniz_commutator(zeta, a))
        assert rep.apply(zeta, rumin_coordinates(a)) == direct


def test_json_roundtrip_and_schema():
    m = d_c_matrix(1, 0)
    data = json.loads(m.dumps())
    assert data["entries"] == [[[{"I": [1, 0, 0], "c": "1/1"}]], [[{"I": [0, 1, 0], "c": "1/1"}]]]
    assert data["basis"][0]["vectors"] == [[{"monomial": [], "c": "1/1"}]]
    for n in (1, 2):
        for h in range(2 * n + 1):
            for mat in (d_c_matrix(n, h), laplacian_matrix(n, h)):
                assert OperatorMatrix.from_json(json.loads(mat.dumps())) == mat
    lap = json.loads(laplacian_matrix(1, 1).dumps())
    assert all(F(t["c"]).denominator == int(t["c"].split("/")[1])
               for row in lap["entries"] for c in row for t in c)


def test_d_c_rejects_top_degree():
    with pytest.raises(ValueError):
        d_c_apply(Form(1, 3, {(0, 1, 2): const(1, 1)}))
    with pytest.raises(ValueError):
        d_c_matrix(1, 3)
