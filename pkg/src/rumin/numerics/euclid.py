"""Euclidean calculus on polynomial forms over ℝ^{2n+1}.

Euclidean forms reuse :class:`~rumin.exterior.Form` with index ``2n`` read as
``dt`` instead of θ.  Coefficients are :class:`~rumin.poly.PolyScalar`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..exterior import Form, wedge, wedge_monomials
from ..poly import PolyScalar


def euclidean_d(alpha: Form) -> Form:
    """``d(Σ f_I dz_I) = Σ ∂_k f_I dz_k ∧ dz_I``."""
    n = alpha.n
    out = {}
    for m, c in alpha.terms.items():
        for k in range(2 * n + 1):
            if k in m:
                continue
            dc = c.diff(k)
            if not dc:
                continue
            sign, mm = wedge_monomials((k,), m)
            v = dc if sign > 0 else -dc
            out[mm] = out[mm] + v if mm in out else v
    return Form(n, alpha.degree + 1, out)


def interior(v: Sequence, alpha: Form) -> Form:
    """``ι_v α`` for a vector field with polynomial (or constant) components."""
    n = alpha.n
    out = {}
    for m, c in alpha.terms.items():
        for pos, k in enumerate(m):
            comp = v[k]
            if not comp:
                continue
            mm = m[:pos] + m[pos + 1:]
            term = c * comp
            if pos % 2:
                term = -term
            out[mm] = out[mm] + term if mm in out else term
    return Form(n, alpha.degree - 1, out)


def lie_derivative(v: Sequence, alpha: Form) -> Form:
    """Cartan: ``L_v = d ι_v + ι_v d``."""
    parts = []
    if alpha.degree >= 1:
        parts.append(euclidean_d(interior(v, alpha)))
    if alpha.degree < 2 * alpha.n + 1:
        parts.append(interior(v, euclidean_d(alpha)))
    out = parts[0]
    for p in parts[1:]:
        out = out + p
    return out


def _as_poly(c, nvars: int) -> PolyScalar:
    return c if isinstance(c, PolyScalar) else PolyScalar.constant(nvars, c)


def bracket(u: Sequence, v: Sequence, nvars: int) -> list:
    """``[u, v]^k = Σ_j u^j ∂_j v^k − v^j ∂_j u^k``."""
    u = [_as_poly(c, nvars) for c in u]
    v = [_as_poly(c, nvars) for c in v]
    out = []
    for k in range(nvars):
        acc = PolyScalar(nvars)
        for j in range(nvars):
            acc = acc + u[j] * v[k].diff(j) - v[j] * u[k].diff(j)
        out.append(acc)
    return out


def _theta_euclidean(n: int) -> Form:
    """θ = dt − ½Σ(x_j dy_j − y_j dx_j) in the Euclidean coframe."""
    N = 2 * n + 1
    half = Fraction(1, 2)
    terms = {(2 * n,): PolyScalar.constant(N, 1)}
    for j in range(n):
        terms[(j,)] = PolyScalar.variable(N, n + j) * half
        terms[(n + j,)] = PolyScalar.variable(N, j) * (-half)
    return Form(n, 1, terms)


def _dt_heisenberg(n: int) -> Form:
    """dt = θ + ½Σ(x_j dy_j − y_j dx_j) in the left-invariant coframe."""
    N = 2 * n + 1
    half = Fraction(1, 2)
    terms = {(2 * n,): PolyScalar.constant(N, 1)}
    for j in range(n):
        terms[(j,)] = PolyScalar.variable(N, n + j) * (-half)
        terms[(n + j,)] = PolyScalar.variable(N, j) * half
    return Form(n, 1, terms)


def _swap_last(alpha: Form, replacement: Form) -> Form:
    n = alpha.n
    last = 2 * n
    out = Form(n, alpha.degree)
    keep = {}
    for m, c in alpha.terms.items():
        if last in m:
            head = Form(n, alpha.degree - 1, {m[:-1]: c})
            out = out + wedge(head, replacement)
        else:
            keep[m] = c
    return out + Form(n, alpha.degree, keep)


def to_euclidean(alpha: Form) -> Form:
    """Rewrite a form given in ``(dx, dy, θ)`` in the coordinate coframe ``(dx, dy, dt)``."""
    if alpha.degree == 0:
        return alpha
    return _swap_last(alpha, _theta_euclidean(alpha.n))


def to_heisenberg(alpha: Form) -> Form:
    """Inverse of :func:`to_euclidean`."""
    if alpha.degree == 0:
        return alpha
    return _swap_last(alpha, _dt_heisenberg(alpha.n))


def float_form(alpha: Form) -> Form:
    return alpha.map_coefficients(lambda c: c.to_float())
