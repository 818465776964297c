"""Domains, bump profiles and quadrature rules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..group import gauge_array

DOMAIN_KINDS = ("euclidean-ball", "koranyi-ball", "koranyi-annulus")


@dataclass(frozen=True)
class Domain:
    """Ball or annulus centred at the identity of ℍⁿ."""

    kind: str
    n: int
    radii: Tuple[float, ...]

    def __post_init__(self):
        if self.kind not in DOMAIN_KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")
        if self.kind == "koranyi-annulus":
            if len(self.radii) != 2 or self.radii[0] >= self.radii[1]:
                raise ValueError("annulus needs r1 < r2")
        elif len(self.radii) != 1:
            raise ValueError("a ball has one radius")

    @classmethod
    def euclidean_ball(cls, n: int, r: float = 1.0) -> "Domain":
        return cls("euclidean-ball", n, (float(r),))

    @classmethod
    def koranyi_ball(cls, n: int, r: float = 1.0) -> "Domain":
        return cls("koranyi-ball", n, (float(r),))

    @classmethod
    def koranyi_annulus(cls, n: int, r1: float, r2: float) -> "Domain":
        return cls("koranyi-annulus", n, (float(r1), float(r2)))

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def outer(self) -> float:
        return self.radii[-1]

    def contains(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(points)
        if self.kind == "euclidean-ball":
            return np.linalg.norm(pts, axis=1) < self.outer
        rho = gauge_array(pts)
        if self.kind == "koranyi-ball":
            return rho < self.outer
        return (rho > self.radii[0]) & (rho < self.radii[1])

    def half_widths(self) -> np.ndarray:
        """Half side lengths of the bounding box."""
        r = self.outer
        if self.kind == "euclidean-ball":
            return np.full(self.dim, r)
        return np.array([r] * (2 * self.n) + [r * r / 4])

    def inradius(self) -> float:
        """Largest Euclidean ball about ``e`` inside a ball domain.

        On ``ρ = r`` with ``u = |z|²`` the squared Euclidean norm is
        ``u + (r⁴ − u²)/16``, concave in ``u``, so the minimum is at an end.
        """
        r = self.outer
        if self.kind == "euclidean-ball":
            return r
        if self.kind == "koranyi-annulus":
            raise ValueError("an annulus is not star-shaped about e")
        return min(r * r / 4, r)

    def grid_spacing(self, grid: int) -> float:
        """Spacing of a ``grid``-point tensor grid across the horizontal extent."""
        return 2 * self.outer / (grid - 1)


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution of the spatial grids and of the Gauss rule on ``[0, 1]``."""

    grid: int = 33
    gauss: int = 16

    def __post_init__(self):
        if self.grid < 3 or self.gauss < 1:
            raise ValueError("grid must be ≥ 3 and gauss ≥ 1")

    def refined(self, factor: int = 2) -> "QuadratureSpec":
        return QuadratureSpec((self.grid - 1) * factor + 1, self.gauss * factor)


@lru_cache(maxsize=None)
def gauss_unit(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss–Legendre nodes and weights on ``[0, 1]``."""
    x, w = leggauss(order)
    return (x + 1) / 2, w / 2


def bump(r2: np.ndarray) -> np.ndarray:
    """``exp(−1/(1−s))`` at ``s = r²``, zero for ``s ≥ 1``."""
    out = np.zeros_like(r2)
    inside = r2 < 1
    out[inside] = np.exp(-1.0 / (1.0 - r2[inside]))
    return out


@dataclass(frozen=True)
class BumpRule:
    """Discrete probability measure approximating ``ψ(y) dy``."""

    nodes: np.ndarray
    weights: np.ndarray
    radius: float
    _moments: dict = field(default_factory=dict, compare=False, repr=False)

    def moment(self, exponent: Tuple[int, ...]) -> float:
        """``Σ_w ψ_w y^a``."""
        if exponent not in self._moments:
            v = self.weights.copy()
            for k, m in enumerate(exponent):
                if m:
                    v = v * self.nodes[:, k] ** m
            self._moments[exponent] = float(np.sum(v))
        return self._moments[exponent]


def bump_rule(domain: Domain, grid: int) -> BumpRule:
    """``ψ`` supported in the Euclidean ball of half the inradius, sampled on a
    ``grid``-per-axis tensor grid over its bounding cube, normalized to unit mass."""
    return _bump_rule(domain.dim, domain.inradius() / 2, grid)


@lru_cache(maxsize=16)
def _bump_rule(dim: int, radius: float, grid: int) -> BumpRule:
    axis = np.linspace(-radius, radius, grid)
    mesh = np.stack(np.meshgrid(*([axis] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    vals = bump(np.sum(mesh * mesh, axis=1) / radius ** 2)
    keep = vals > 0
    nodes, vals = mesh[keep], vals[keep]
    return BumpRule(nodes, vals / math.fsum(vals), radius)


@dataclass(frozen=True)
class VolumeRule:
    """Nodes and weights for ``∫_D f dV``."""

    nodes: np.ndarray
    weights: np.ndarray
    kind: str

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


def koranyi_ball_rule(radius: float, grid: int) -> VolumeRule:
    """Mapped tensor rule on the Korányi ball of ℍ¹.

    ``t = (R²/4) sin ϑ`` turns the disc radius ``(R⁴ − 16t²)^{1/4}`` into
    ``R√cos ϑ``; Gauss in ``ϑ`` and in the disc radius, trapezoid in angle.
    Polynomial integrands are integrated to near machine precision.
    """
    R = float(radius)
    th, wth = leggauss(grid)
    th = th * math.pi / 2
    wth = wth * math.pi / 2
    s, ws = gauss_unit(grid)
    phi = 2 * math.pi * np.arange(grid) / grid
    c = R * R / 4
    t = c * np.sin(th)
    a = R * np.sqrt(np.cos(th))
    # broadcast over (ϑ, r, φ)
    r = a[:, None] * s[None, :]
    wr = (a[:, None] * ws[None, :]) * r
    w = (wth * c * np.cos(th))[:, None, None] * wr[:, :, None] * (2 * math.pi / grid)
    x = r[:, :, None] * np.cos(phi)[None, None, :]
    y = r[:, :, None] * np.sin(phi)[None, None, :]
    tt = np.broadcast_to(t[:, None, None], x.shape)
    nodes = np.stack([x, y, tt], axis=-1).reshape(-1, 3)
    return VolumeRule(nodes, np.broadcast_to(w, x.shape).reshape(-1).copy(), "mapped")


def indicator_rule(domain: Domain, grid: int) -> VolumeRule:
    """Midpoint rule on the bounding box times the indicator of ``domain``."""
    hw = domain.half_widths()
    axes = [(np.arange(grid) + 0.5) / grid * 2 * h - h for h in hw]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, domain.dim)
    cell = float(np.prod(2 * hw / grid))
    keep = domain.contains(mesh)
    return VolumeRule(mesh[keep], np.full(int(keep.sum()), cell), "indicator")


def volume_rule(domain: Domain, grid: int) -> VolumeRule:
    if domain.kind == "koranyi-ball" and domain.n == 1:
        return koranyi_ball_rule(domain.outer, grid)
    return indicator_rule(domain, grid)


def koranyi_ball_volume(n: int, r: float) -> float:
    """Exact Lebesgue measure of ``B(e, r)`` in ℍⁿ.

    ``∫ |{|z|⁴ < r⁴ − 16t²}| dt`` with the ``2n``-ball volume; the ``t`` integral
    is a Beta function.
    """
    ball = math.pi ** n / math.factorial(n)  # unit 2n-ball
    c = r * r / 4
    # ∫_{-c}^{c} (r⁴ − 16t²)^{n/2} dt = c r^{2n} ∫_{-1}^{1} (1 − s²)^{n/2} ds
    beta = math.sqrt(math.pi) * math.gamma(n / 2 + 1) / math.gamma(n / 2 + 1.5)
    return ball * c * r ** (2 * n) * beta


def interior_samples(domain: Domain, count: int, rng: np.random.Generator,
                     shrink: float = 0.5) -> np.ndarray:
    """``count`` points of ``domain`` shrunk by ``shrink`` (rejection sampling)."""
    hw = domain.half_widths()
    inner = Domain(domain.kind, domain.n, tuple(r * shrink for r in domain.radii))
    out = []
    while sum(len(o) for o in out) < count:
        pts = (rng.random((4 * count, domain.dim)) * 2 - 1) * hw
        out.append(pts[inner.contains(pts)])
    return np.concatenate(out)[:count]


def lp_norm(values: np.ndarray, rule: VolumeRule, p: float) -> float:
    """``‖f‖_{L^p}`` of pointwise magnitudes sampled at the rule's nodes."""
    v = np.abs(values)
    if math.isinf(p):
        return float(np.max(v)) if v.size else 0.0
    return float(rule.integrate(v ** p)) ** (1.0 / p)
