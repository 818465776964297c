"""Averaged cone homotopy on convex domains and Rumin's homotopy built from it.

``K_Euc ω(x) = ∫_D ψ(y) ∫₀¹ t^{h−1} ι_{x−y} ω(y + t(x−y)) dt dy``.  The ``y``
integral is a bump-weighted tensor grid and the ``t`` integral a Gauss rule.
For polynomial ω the same finite sum is reorganised into ψ-moments and
``t``-sums, giving ``K_Euc ω`` as a polynomial in ``x`` with float coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..exterior import Form, basis
from ..forms import (d_c_apply, pi_E, pi_E0_form, pi_E_general, rumin_coordinates)
from ..operators import OpCoeff
from ..poly import PolyScalar
from ..projections import e0_basis
from .euclid import to_euclidean, to_heisenberg
from .fd import evaluate_symbols, fd_partial
from .forms import CallableForm, pointwise_norm
from .quadrature import BumpRule, Domain, QuadratureSpec, bump_rule, gauss_unit


def _check_inside(domain: Domain, points: np.ndarray):
    if not np.all(domain.contains(points)):
        raise ValueError("evaluation point outside the domain")


# Euclidean homotopy --------------------------------------------------------

def keuc_direct(form: CallableForm, points: np.ndarray, rule: BumpRule, gauss: int) -> np.ndarray:
    """Direct summation over bump nodes and Gauss nodes; rows follow Θ^{h−1}."""
    h = form.degree
    n = form.n
    t, wt = gauss_unit(gauss)
    Y = rule.nodes
    M = len(Y)
    tgt = {m: i for i, m in enumerate(basis(n, h - 1))}
    out = np.zeros((len(points), len(tgt)))
    tw = wt * t ** (h - 1)
    for i, x in enumerate(np.atleast_2d(points)):
        v = x[None, :] - Y
        Z = (Y[None, :, :] + t[:, None, None] * v[None, :, :]).reshape(-1, Y.shape[1])
        for m, f in form.coefficients.items():
            vals = f(Z).reshape(len(t), M)
            avg = tw @ vals  # shape (M,)
            for pos, k in enumerate(m):
                mm = m[:pos] + m[pos + 1:]
                s = -1.0 if pos % 2 else 1.0
                out[i, tgt[mm]] += s * float(np.dot(rule.weights, avg * v[:, k]))
    return out


def _t_sums(h: int, gauss: int, max_deg: int) -> np.ndarray:
    """``T[s, r] = Σ_g w_g t_g^{h−1+s}(1−t_g)^r``."""
    t, w = gauss_unit(gauss)
    T = np.zeros((max_deg + 1, max_deg + 1))
    for s in range(max_deg + 1):
        for r in range(max_deg + 1 - s):
            T[s, r] = float(np.sum(w * t ** (h - 1 + s) * (1 - t) ** r))
    return T


def keuc_poly(form: Form, rule: BumpRule, gauss: int) -> Form:
    """``K_Euc`` of a polynomial Euclidean form, as a float-coefficient polynomial form.

    Expands ``f(y + t(x−y)) = Σ_a c_a Π_k Σ_i C(a_k,i_k) t^{i_k}(1−t)^{a_k−i_k} x^{i} y^{a−i}``.
    """
    n, h = form.n, form.degree
    if h == 0:
        raise ValueError("K_Euc acts on forms of degree ≥ 1")
    N = 2 * n + 1
    maxdeg = max((c.degree() for c in form.terms.values()), default=0)
    T = _t_sums(h, gauss, max(maxdeg, 0))
    out: Dict[Tuple, Dict[Tuple[int, ...], float]] = {}
    for m, c in form.terms.items():
        for a, ca in c.terms.items():
            ca = float(ca)
            for i in product(*[range(ak + 1) for ak in a]):
                binom = 1
                for ak, ik in zip(a, i):
                    binom *= math.comb(ak, ik)
                si = sum(i)
                tr = T[si, sum(a) - si]
                rest = tuple(ak - ik for ak, ik in zip(a, i))
                base = ca * binom * tr
                for pos, k in enumerate(m):
                    mm = m[:pos] + m[pos + 1:]
                    sign = -1.0 if pos % 2 else 1.0
                    acc = out.setdefault(mm, {})
                    xi = list(i)
                    xi[k] += 1
                    xi = tuple(xi)
                    acc[xi] = acc.get(xi, 0.0) + sign * base * rule.moment(rest)
                    yr = list(rest)
                    yr[k] += 1
                    acc[i] = acc.get(i, 0.0) - sign * base * rule.moment(tuple(yr))
    return Form(n, h - 1, {mm: PolyScalar(N, {e: v for e, v in d.items() if v}) for mm, d in out.items()})


def keuc_apply(form, points: np.ndarray, spec: QuadratureSpec, domain: Domain) -> np.ndarray:
    """``K_Euc ω`` at ``points`` (rows follow Θ^{h−1}).

    ``form`` is a :class:`CallableForm` in the Euclidean coframe or a polynomial
    :class:`Form`; polynomial backing goes through the moment path.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    _check_inside(domain, pts)
    if isinstance(form, Form):
        form = CallableForm.from_poly(form, "euclidean")
    if form.coframe != "euclidean":
        raise ValueError("K_Euc acts on forms in the Euclidean coframe")
    if form.degree == 0:
        raise ValueError("K_Euc acts on forms of degree ≥ 1")
    width = len(basis(form.n, form.degree - 1))
    if form.is_zero():
        return np.zeros((len(pts), width))
    rule = bump_rule(domain, spec.grid)
    if form.poly is not None:
        k = keuc_poly(form.poly, rule, spec.gauss)
        return _evaluate_form(k, pts)
    return keuc_direct(form, pts, rule, spec.gauss)


def _evaluate_form(form: Form, points: np.ndarray) -> np.ndarray:
    mons = basis(form.n, form.degree)
    out = np.zeros((len(points), len(mons)))
    for i, m in enumerate(mons):
        c = form.terms.get(m)
        if c is not None:
            out[:, i] = c.evaluate(points)
    return out


def euclidean_d_fd(form: Form, points: np.ndarray, step: float) -> np.ndarray:
    """Finite-difference ``d`` of a form with polynomial coefficients; rows follow Θ^{h+1}."""
    n, h = form.n, form.degree
    tgt = {m: i for i, m in enumerate(basis(n, h + 1))}
    out = np.zeros((len(points), len(tgt)))
    from ..exterior import wedge_monomials

    for m, c in form.terms.items():
        for k in range(2 * n + 1):
            if k in m:
                continue
            sign, mm = wedge_monomials((k,), m)
            out[:, tgt[mm]] += sign * fd_partial(c.evaluate, points, [k], step)
    return out


def euclidean_homotopy_residual(omega: Form, domain: Domain, spec: QuadratureSpec,
                                points: np.ndarray) -> float:
    """``max |d K_Euc ω − ω|`` over ``points`` for a closed polynomial form."""
    if not omega:
        return 0.0
    _check_inside(domain, points)
    k = keuc_poly(omega, bump_rule(domain, spec.grid), spec.gauss)
    dk = euclidean_d_fd(k, points, domain.grid_spacing(spec.grid))
    return float(np.max(pointwise_norm(dk - _evaluate_form(omega, points))))


def chapeau_ratios(family: Sequence[Form], domain: Domain, specs: Sequence[QuadratureSpec],
                   points: np.ndarray) -> List[List[float]]:
    """``max |K_Euc ω| / max |ω|`` over ``points`` for each spec (rows) and form (columns)."""
    table = []
    for spec in specs:
        rule = bump_rule(domain, spec.grid)
        row = []
        for om in family:
            den = float(np.max(pointwise_norm(_evaluate_form(om, points))))
            if den == 0:
                row.append(0.0)
                continue
            k = keuc_poly(om, rule, spec.gauss)
            row.append(float(np.max(pointwise_norm(_evaluate_form(k, points)))) / den)
        table.append(row)
    return table


# Rumin homotopy -----------------------------------------------------------

@lru_cache(maxsize=None)
def _outer_symbols(n: int, h: int) -> Tuple[Tuple[OpCoeff, ...], Tuple[OpCoeff, ...]]:
    """Symbols of ``Π_{E₀}Π_E γ`` (E₀^{h−1} coordinates) and of ``d_c Π_{E₀}Π_E γ``
    (E₀ʰ coordinates) for a generic ``(h−1)``-form ``γ`` with coefficient slots
    indexed by Θ^{h−1}."""
    N = 2 * n + 1
    mons = basis(n, h - 1)
    gamma = Form(n, h - 1, {m: OpCoeff.base(N, i) for i, m in enumerate(mons)})
    proj = pi_E0_form(pi_E_general(gamma))
    k_coords = tuple(rumin_coordinates(proj))
    dc_coords: Tuple[OpCoeff, ...] = ()
    if h - 1 <= 2 * n:
        dc = d_c_apply(e0_basis(n, h - 1).form(list(k_coords)))
        dc_coords = tuple(rumin_coordinates(dc))
    return k_coords, dc_coords


class RuminHomotopy:
    """``K = Π_{E₀} Π_E K_Euc Π_E`` on ``E₀ʰ``-valued polynomial forms over ``domain``.

    The inner ``Π_E`` is exact; ``K_Euc`` uses the moment path; the outer
    ``Π_{E₀}Π_E`` (and the ``d_c`` of the residual) are finite differences with
    step tied to the grid spacing of the domain.
    """

    def __init__(self, n: int, h: int, domain: Domain, spec: QuadratureSpec):
        if not 1 <= h <= 2 * n + 1:
            raise ValueError(f"degree {h} out of range")
        self.n, self.h, self.domain, self.spec = n, h, domain, spec
        self.rule = bump_rule(domain, spec.grid)
        self.step = domain.grid_spacing(spec.grid)

    def primitive_form(self, omega: Form) -> Form:
        """``γ = K_Euc Π_E ω`` in the left-invariant coframe (float polynomials)."""
        if omega.degree != self.h or omega.n != self.n:
            raise ValueError("form of the wrong degree")
        beta = to_euclidean(pi_E(omega))
        if not beta:
            return Form(self.n, self.h - 1)
        return to_heisenberg(keuc_poly(beta, self.rule, self.spec.gauss))

    def _fields(self, gamma: Form):
        zero = lambda p: np.zeros(len(p))  # noqa: E731
        return [gamma.terms[m].evaluate if m in gamma.terms else zero for m in basis(self.n, self.h - 1)]

    def apply(self, omega: Form, points: np.ndarray) -> np.ndarray:
        """``Kω`` at ``points`` as ``E₀^{h−1}`` coordinates ``(m, N_{h−1})``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        _check_inside(self.domain, pts)
        dim = e0_basis(self.n, self.h - 1).dim
        if not omega:
            return np.zeros((len(pts), dim))
        gamma = self.primitive_form(omega)
        k_sym, _ = _outer_symbols(self.n, self.h)
        vals = evaluate_symbols(k_sym, self._fields(gamma), pts, self.step)
        return np.stack(vals, axis=1)

    def residual(self, phi: Form, points: np.ndarray) -> float:
        """``max |d_c K ω − ω|`` with ``ω = d_c φ``; norms use the E₀ Gram matrix."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        _check_inside(self.domain, pts)
        if phi.degree != self.h - 1:
            raise ValueError("φ must have degree h−1")
        return self.closed_residual(d_c_apply(phi), pts)

    def closed_residual(self, omega: Form, points: np.ndarray) -> float:
        """``max |d_c K ω − ω|`` for a ``d_c``-closed ``ω``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if not omega:
            return 0.0
        gamma = self.primitive_form(omega)
        _, dc_sym = _outer_symbols(self.n, self.h)
        got = np.stack(evaluate_symbols(dc_sym, self._fields(gamma), pts, self.step), axis=1)
        want = np.stack([c.evaluate(pts) if isinstance(c, PolyScalar) else np.zeros(len(pts))
                         for c in rumin_coordinates(omega)], axis=1)
        return float(np.max(pointwise_norm(got - want, e0_basis(self.n, self.h).gram)))


def rumin_homotopy_apply(omega: Form, points: np.ndarray, spec: QuadratureSpec,
                         domain: Domain | None = None) -> np.ndarray:
    domain = domain or Domain.koranyi_ball(omega.n, 1.0)
    return RuminHomotopy(omega.n, omega.degree, domain, spec).apply(omega, points)


def homotopy_residual(phi: Form, domain: Domain, spec: QuadratureSpec, points: np.ndarray) -> float:
    """Residual of ``ω = d_c K ω`` for the exact form ``ω = d_c φ``."""
    return RuminHomotopy(phi.n, phi.degree + 1, domain, spec).residual(phi, points)
