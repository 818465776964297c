"""Empirical interior Poincaré ratios ``‖Kω‖_{L^∞(B)} / ‖ω‖_{L^p(B_λ)}``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from ..exterior import Form
from ..forms import d_c_apply, rumin_coordinates
from ..poly import PolyScalar
from ..projections import e0_basis
from .forms import pointwise_norm
from .homotopy import RuminHomotopy
from .quadrature import Domain, QuadratureSpec, interior_samples, lp_norm, volume_rule


def admissible_exponents(n: int, h: int) -> tuple:
    """``p`` values accepted for ``h``-forms: ``Q`` and ``∞``, plus ``Q/2`` in degree ``n+1``."""
    Q = 2 * n + 2
    if h == n + 1:
        return (Q / 2, float(Q), math.inf)
    return (float(Q), math.inf)


def rumin_values(form: Form, points: np.ndarray) -> np.ndarray:
    """E₀ coordinates of a polynomial Rumin form at ``points``."""
    cols = [c.evaluate(points) if isinstance(c, PolyScalar) else np.zeros(len(points))
            for c in rumin_coordinates(form)]
    return np.stack(cols, axis=1)


@dataclass
class PoincareRow:
    form_id: int
    h: int
    n: int
    norm_p: float
    norm_inf_primitive: float
    ratio: float
    residual: float


@dataclass
class PoincareReport:
    n: int
    h: int
    p: float
    lam: float
    spec: QuadratureSpec
    rows: List[PoincareRow] = field(default_factory=list)

    @property
    def max_ratio(self) -> float:
        return max((r.ratio for r in self.rows), default=0.0)

    def prefix_max(self) -> List[float]:
        """Running maximum as the family is extended one form at a time."""
        out, m = [], 0.0
        for r in self.rows:
            m = max(m, r.ratio)
            out.append(m)
        return out

    def all_finite(self) -> bool:
        return all(math.isfinite(r.ratio) for r in self.rows)


def poincare_ratio_estimate(family: Sequence[Form], n: int, h: int, p: float, lam: float = 2.0,
                            spec: QuadratureSpec = QuadratureSpec(), samples: int = 200,
                            seed: int = 0) -> PoincareReport:
    """Ratios for ``d_c``-exact polynomial ``h``-forms; ``K`` is built on ``B_λ``.

    ``‖Kω‖_∞`` is a maximum over ``samples`` points of ``B = B(e,1)``;
    ``‖ω‖_{L^p(B_λ)}`` uses :func:`~rumin.numerics.quadrature.volume_rule`.
    """
    if p not in admissible_exponents(n, h):
        raise ValueError(f"p={p} is not admissible for degree {h} (allowed {admissible_exponents(n, h)})")
    if lam <= 1:
        raise ValueError("λ must exceed 1")
    B = Domain.koranyi_ball(n, 1.0)
    Bl = Domain.koranyi_ball(n, lam)
    pts = interior_samples(B, samples, np.random.default_rng(seed), shrink=1.0)
    rule = volume_rule(Bl, spec.grid)
    hom = RuminHomotopy(n, h, Bl, spec)
    gram_h = e0_basis(n, h).gram
    gram_k = e0_basis(n, h - 1).gram
    report = PoincareReport(n, h, p, lam, spec)
    for i, om in enumerate(family):
        if om.degree != h:
            raise ValueError("all forms must have degree h")
        if h <= 2 * n and d_c_apply(om):
            raise ValueError(f"form {i} is not d_c-closed")
        if not om:
            report.rows.append(PoincareRow(i, h, n, 0.0, 0.0, 0.0, 0.0))
            continue
        norm_p = lp_norm(pointwise_norm(rumin_values(om, rule.nodes), gram_h), rule, p)
        k = hom.apply(om, pts)
        norm_k = float(np.max(pointwise_norm(k, gram_k)))
        res = hom.closed_residual(om, pts[:20])
        report.rows.append(PoincareRow(i, h, n, norm_p, norm_k, norm_k / norm_p, res))
    return report


def exact_family(n: int, h: int, size: int, rng, max_degree: int = 3) -> List[Form]:
    """``d_c φ`` for random polynomial ``(h−1)``-forms ``φ``, skipping zeros."""
    from ..forms import random_rumin_form

    out = []
    while len(out) < size:
        om = d_c_apply(random_rumin_form(n, h - 1, max_degree, rng))
        if om:
            out.append(om)
    return out
