"""Exact check that ``ρ^{2−Q}`` is annihilated by the sub-Laplacian ``ΣW_j²``.

Works in the algebra of sums ``Σ P_α · u^α`` with ``u = |z|⁴ + 16t²``,
polynomial ``P_α`` and half-integer ``α``; ``ρ^{2−Q} = u^{−n/2}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

import numpy as np

from ..group import gauge_array, mul_array
from ..poly import PolyScalar
from .fd import fd_word


def gauge_fourth_poly(n: int) -> PolyScalar:
    N = 2 * n + 1
    z2 = PolyScalar(N)
    for j in range(2 * n):
        v = PolyScalar.variable(N, j)
        z2 = z2 + v * v
    t = PolyScalar.variable(N, 2 * n)
    return z2 * z2 + t * t * 16


class PowerExpr:
    """``Σ_α P_α u^α`` kept in a canonical form with a single exponent class."""

    def __init__(self, n: int, terms: Dict[Fraction, PolyScalar]):
        self.n = n
        self.u = gauge_fourth_poly(n)
        self.terms = {Fraction(a): p for a, p in terms.items() if p}

    @classmethod
    def power(cls, n: int, alpha) -> "PowerExpr":
        return cls(n, {Fraction(alpha): PolyScalar.constant(2 * n + 1, 1)})

    def __add__(self, other: "PowerExpr") -> "PowerExpr":
        out = dict(self.terms)
        for a, p in other.terms.items():
            out[a] = out[a] + p if a in out else p
        return PowerExpr(self.n, out)

    def W(self, j: int) -> "PowerExpr":
        """``W(P u^α) = (WP) u^α + α P (Wu) u^{α−1}``."""
        wu = self.u.W(j)
        out = PowerExpr(self.n, {})
        for a, p in self.terms.items():
            out = out + PowerExpr(self.n, {a: p.W(j), a - 1: p * wu * a})
        return out

    def canonical(self) -> "PowerExpr":
        """Collect exponents differing by integers onto the smallest one."""
        classes: Dict[Fraction, Dict[Fraction, PolyScalar]] = {}
        for a, p in self.terms.items():
            classes.setdefault(a - (a.numerator // a.denominator), {})[a] = p
        out = {}
        for frac, group in classes.items():
            low = min(group)
            acc = PolyScalar(2 * self.n + 1)
            for a, p in group.items():
                acc = acc + p * self.u ** int(a - low)
            if acc:
                out[low] = acc
        return PowerExpr(self.n, out)

    def is_zero(self) -> bool:
        return not self.canonical().terms


def sublaplacian_of_fundamental(n: int) -> PowerExpr:
    """``Σ_j W_j² u^{−n/2}`` in canonical form."""
    f = PowerExpr.power(n, Fraction(-n, 2))
    acc = PowerExpr(n, {})
    for j in range(2 * n):
        acc = acc + f.W(j).W(j)
    return acc.canonical()


def fundamental_solution(points: np.ndarray, n: int) -> np.ndarray:
    Q = 2 * n + 2
    return gauge_array(points) ** (2 - Q)


# eighth-order centred second derivative
_D2_OFFSETS = np.arange(-4, 5)
_D2_WEIGHTS = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])


def sublaplacian_fd(points: np.ndarray, n: int, h: float = 1e-2) -> np.ndarray:
    """``Σ W_j² ρ^{2−Q}`` by an eighth-order stencil along ``s ↦ p·(s e_j)``.

    ``s ↦ s e_j`` is a one-parameter subgroup, so ``W_j² f(p)`` is the second
    derivative of ``f(p·(s e_j))`` at ``s = 0``.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.zeros(len(pts))
    for j in range(2 * n):
        for k, w in zip(_D2_OFFSETS, _D2_WEIGHTS):
            step = np.zeros(pts.shape[1])
            step[j] = k * h
            out += w * fundamental_solution(mul_array(pts, step), n)
    return out / (h * h)


def sublaplacian_fd_composed(points: np.ndarray, n: int, h: float = 1e-2) -> np.ndarray:
    """Same quantity from composed fourth-order first-derivative stencils."""
    f = lambda p: fundamental_solution(p, n)  # noqa: E731
    return sum(fd_word(f, points, [j, j], h) for j in range(2 * n))


def sublaplacian_fundamental_residual(points: np.ndarray, n: int, min_gauge: float = 0.1,
                                      h: float = 1e-2) -> dict:
    """Exact symbolic residual plus the finite-difference cross-check at ``points``."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if np.any(gauge_array(pts) < min_gauge):
        raise ValueError("sample point too close to the identity")
    sym = sublaplacian_of_fundamental(n)
    fd = sublaplacian_fd(pts, n, h)
    return {"symbolic_zero": not sym.terms, "fd_max": float(np.max(np.abs(fd)))}
