"""The Heisenberg group ℍⁿ in exponential coordinates.

Points carry either exact rationals or floats; the two are never mixed. The
exact mode is used for algebraic identities, the float mode for numerics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class GroupParams:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def Q(self) -> int:
        """Homogeneous dimension."""
        return 2 * self.n + 2

    @property
    def dim(self) -> int:
        return 2 * self.n + 1


@dataclass(frozen=True)
class GroupPoint:
    """``p = (x, y, t)`` with ``x, y ∈ ℝⁿ``."""

    x: Tuple
    y: Tuple
    t: object

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have the same length")
        if not self.x:
            raise ValueError("n must be positive")
        vals = list(self.x) + list(self.y) + [self.t]
        has_float = any(isinstance(v, (float, np.floating)) for v in vals)
        has_frac = any(isinstance(v, Fraction) for v in vals)
        if has_float and has_frac:
            raise TypeError("mixed exact/float coordinates")
        conv = float if has_float else Fraction
        object.__setattr__(self, "x", tuple(conv(v) for v in self.x))
        object.__setattr__(self, "y", tuple(conv(v) for v in self.y))
        object.__setattr__(self, "t", conv(self.t))

    @classmethod
    def from_coords(cls, coords: Sequence) -> "GroupPoint":
        if len(coords) % 2 == 0:
            raise ValueError("coordinate vector must have odd length 2n+1")
        n = (len(coords) - 1) // 2
        return cls(tuple(coords[:n]), tuple(coords[n:2 * n]), coords[2 * n])

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "GroupPoint":
        z = Fraction(0) if exact else 0.0
        return cls((z,) * n, (z,) * n, z)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def exact(self) -> bool:
        return isinstance(self.t, Fraction)

    def coords(self) -> tuple:
        return self.x + self.y + (self.t,)

    def inverse(self) -> "GroupPoint":
        return GroupPoint(tuple(-v for v in self.x), tuple(-v for v in self.y), -self.t)

    def __mul__(self, other: "GroupPoint") -> "GroupPoint":
        return group_mul(self, other)

    def __neg__(self) -> "GroupPoint":
        return self.inverse()


def group_mul(p: GroupPoint, q: GroupPoint) -> GroupPoint:
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: ℍ^{p.n} vs ℍ^{q.n}")
    if p.exact != q.exact:
        raise TypeError("cannot multiply an exact point with a float point")
    half = Fraction(1, 2) if p.exact else 0.5
    s = sum(a * d - b * c for a, b, c, d in zip(p.x, p.y, q.x, q.y))
    return GroupPoint(
        tuple(a + c for a, c in zip(p.x, q.x)),
        tuple(b + d for b, d in zip(p.y, q.y)),
        p.t + q.t + half * s,
    )


def dilate(lam, p: GroupPoint) -> GroupPoint:
    """Anisotropic dilation ``(λx, λy, λ²t)``."""
    if lam <= 0:
        raise ValueError("dilation factor must be positive")
    if p.exact and isinstance(lam, float):
        raise TypeError("float dilation of an exact point")
    return GroupPoint(tuple(lam * v for v in p.x), tuple(lam * v for v in p.y), lam * lam * p.t)


def gauge_fourth(p: GroupPoint):
    """``ρ(p)⁴ = |(x, y)|⁴ + 16 t²``, exact when ``p`` is exact."""
    r2 = sum(v * v for v in p.x) + sum(v * v for v in p.y)
    return r2 * r2 + 16 * p.t * p.t


def gauge(p: GroupPoint) -> float:
    """Cygan–Korányi norm. Returns a float in both modes."""
    if p.exact:
        return float(gauge_fourth(p)) ** 0.25
    z = np.array(p.x + p.y, dtype=float)
    return float(gauge_array(np.concatenate([z, [p.t]])[None, :])[0])


def gauge_distance(p: GroupPoint, q: GroupPoint) -> float:
    return gauge(group_mul(p.inverse(), q))


# vectorized helpers -------------------------------------------------------

def gauge_array(points: np.ndarray) -> np.ndarray:
    """ρ for each row of ``points`` (shape ``(m, 2n+1)``), overflow-safe.

    Rows are rescaled by a dilation so the largest entry is O(1) before the
    fourth powers are formed; ρ is homogeneous so the scale is divided out.
    """
    pts = np.asarray(points, dtype=float)
    z = pts[:, :-1]
    t = pts[:, -1]
    scale = np.maximum(np.max(np.abs(z), axis=1), np.sqrt(np.abs(t)))
    safe = np.where(scale > 0, scale, 1.0)
    zs = z / safe[:, None]
    ts = (t / safe) / safe
    r2 = np.sum(zs * zs, axis=1)
    return safe * (r2 * r2 + 16.0 * ts * ts) ** 0.25 * (scale > 0)


def mul_array(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Row-wise group product of float coordinate arrays (broadcasting)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    n = (p.shape[-1] - 1) // 2
    px, py, pt = p[..., :n], p[..., n:2 * n], p[..., 2 * n]
    qx, qy, qt = q[..., :n], q[..., n:2 * n], q[..., 2 * n]
    t = pt + qt + 0.5 * np.sum(px * qy - py * qx, axis=-1)
    return np.concatenate([px + qx, py + qy, t[..., None]], axis=-1)


def dilate_array(lam: float, points: np.ndarray) -> np.ndarray:
    pts = np.array(points, dtype=float)
    pts[..., :-1] *= lam
    pts[..., -1] *= lam * lam
    return pts


def empirical_c0(n: int, radius: float, samples: int, rng: np.random.Generator) -> dict:
    """Sample the Korányi ball ``B(e, radius)`` and report the smallest ``c₀``
    with ``c₀⁻² |p| ≤ ρ(p)`` on the sample, plus the fraction of points that
    satisfy ``ρ(p) ≤ |p|^{1/2}``."""
    dirs = rng.standard_normal((samples, 2 * n + 1))
    pts = dirs / gauge_array(dirs)[:, None] ** np.array([1.0] * (2 * n) + [2.0])
    radii = radius * rng.random(samples) ** (1.0 / (2 * n + 2))
    pts = np.stack([dilate_array(r, p) for r, p in zip(radii, pts)])
    rho = gauge_array(pts)
    euc = np.linalg.norm(pts, axis=1)
    mask = rho > 0
    ratio = euc[mask] / rho[mask]
    c0 = max(1.0, math.sqrt(float(np.max(ratio))))
    upper = float(np.mean(rho[mask] <= np.sqrt(euc[mask]) * (1 + 1e-12)))
    return {"c0": c0, "max_euclid_over_gauge": float(np.max(ratio)), "upper_bound_fraction": upper,
            "max_euclid_norm": float(np.max(euc))}
