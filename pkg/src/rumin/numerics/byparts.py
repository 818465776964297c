"""Quadrature checks of integration by parts and of the formal adjoint of ``d_c``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..exterior import Form, wedge
from ..forms import codifferential_matrix, d_c_apply, rumin_coordinates
from ..poly import PolyScalar
from ..projections import e0_basis
from .quadrature import Domain, QuadratureSpec, volume_rule


def koranyi_bump(n: int, radius, order: int) -> PolyScalar:
    """``(1 − ρ⁴/R⁴)^k`` as a polynomial; vanishes to order ``k`` on ``ρ = R``."""
    N = 2 * n + 1
    z2 = PolyScalar(N)
    for j in range(2 * n):
        v = PolyScalar.variable(N, j)
        z2 = z2 + v * v
    t = PolyScalar.variable(N, 2 * n)
    u = z2 * z2 + t * t * 16
    R4 = Fraction(radius) ** 4
    return (PolyScalar.constant(N, 1) - u * (1 / R4)) ** order


@dataclass(frozen=True)
class CutoffForm:
    """``form · 1_{ρ<radius}`` where ``form`` carries a polynomial bump factor of ``order``."""

    form: Form
    radius: Fraction
    order: int

    @classmethod
    def build(cls, base: Form, radius, order: int = 8) -> "CutoffForm":
        if order < 3:
            raise ValueError("the bump must vanish to order ≥ 3 so d_c of it is continuous")
        b = koranyi_bump(base.n, radius, order)
        return cls(base * b, Fraction(radius), order)

    @property
    def n(self) -> int:
        return self.form.n

    @property
    def degree(self) -> int:
        return self.form.degree


def _top_coefficient(form: Form) -> PolyScalar:
    N = 2 * form.n + 1
    return form.terms.get(tuple(range(N)), PolyScalar(N))


def _check_support(alpha: CutoffForm, U: Domain):
    if U.kind != "koranyi-ball":
        raise ValueError("U must be a Korányi ball")
    if not float(alpha.radius) < U.outer:
        raise ValueError("cutoff support is not compactly inside U")


def byparts_terms(phi: Form, alpha: CutoffForm, U: Domain, spec: QuadratureSpec):
    """``(∫ d_cφ ∧ α, (−1)^{h+1} ∫ φ ∧ d_cα)``."""
    _check_support(alpha, U)
    n, h = phi.n, phi.degree
    if alpha.degree != 2 * n - h:
        raise ValueError("α must have degree 2n − h")
    rule = volume_rule(Domain.koranyi_ball(n, float(alpha.radius)), spec.grid)
    lhs = _top_coefficient(wedge(d_c_apply(phi), alpha.form))
    rhs = _top_coefficient(wedge(phi, d_c_apply(alpha.form)))
    sign = -1 if h % 2 == 0 else 1  # (−1)^{h+1}
    return rule.integrate(lhs.evaluate(rule.nodes)), sign * rule.integrate(rhs.evaluate(rule.nodes))


def byparts_residual(phi: Form, alpha: CutoffForm, U: Domain, spec: QuadratureSpec) -> float:
    """``|∫ d_cφ ∧ α − (−1)^{h+1} ∫ φ ∧ d_cα|``."""
    if not phi or not alpha.form:
        _check_support(alpha, U)
        return 0.0
    a, b = byparts_terms(phi, alpha, U, spec)
    return abs(a - b)


def _l2_pairing(a: Form, b: Form, rule) -> float:
    gram = e0_basis(a.n, a.degree).gram
    total = np.zeros(len(rule.nodes))
    for ca, cb, g in zip(rumin_coordinates(a), rumin_coordinates(b), gram):
        if isinstance(ca, PolyScalar) and isinstance(cb, PolyScalar):
            total += float(g) * ca.evaluate(rule.nodes) * cb.evaluate(rule.nodes)
    return rule.integrate(total)


def adjoint_residual(alpha: Form, beta: CutoffForm, spec: QuadratureSpec) -> tuple:
    """``(⟨d_cα, β⟩, ⟨α, d_c*β⟩)`` by quadrature over the support of ``β``."""
    n, h = alpha.n, alpha.degree
    if beta.degree != h + 1:
        raise ValueError("β must have degree h+1")
    rule = volume_rule(Domain.koranyi_ball(n, float(beta.radius)), spec.grid)
    star = codifferential_matrix(n, h + 1).apply(rumin_coordinates(beta.form))
    star_form = e0_basis(n, h).form(star)
    return _l2_pairing(d_c_apply(alpha), beta.form, rule), _l2_pairing(alpha, star_form, rule)
