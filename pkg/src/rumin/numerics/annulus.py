"""Constants and admissibility windows for nested Korányi / Euclidean annuli.

With ``V = A_{1,2}`` (Korányi):

* ``σ₁ = ½ min_{ρ=1} |x|``, ``σ₂ = 2 max_{ρ=2} |x|``, ``Ṽ′ = A^Euc_{σ₁/2, 2σ₂}``;
* ``τ₁ = ½ min_{|x|=σ₁/2} ρ``, ``τ₂ = 2 max_{|x|=2σ₂} ρ`` (the factor 2 is a
  fixed choice; any ``τ₂`` above the maximum is allowed);
* ``V′ = A_{τ₁/2, 2τ₂}``.

Each extremum is found by sampling directions on the relevant sphere and then
refining the best sample with a local optimizer.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Tuple

import numpy as np
from scipy.optimize import minimize

from ..group import dilate_array, gauge_array

TAU2_FACTOR = 2.0
SAMPLERS = ("grid", "random")


def _to_koranyi_sphere(v: np.ndarray, r: float) -> np.ndarray:
    v = np.atleast_2d(v)
    rho = gauge_array(v)
    return np.stack([dilate_array(r / g, p) for g, p in zip(rho, v)])


def _to_euclidean_sphere(v: np.ndarray, r: float) -> np.ndarray:
    v = np.atleast_2d(v)
    return r * v / np.linalg.norm(v, axis=1)[:, None]


def grid_directions(dim: int, per_angle: int) -> np.ndarray:
    """Hyperspherical (latitude–longitude) grid on ``S^{dim−1}``."""
    polar = [np.linspace(0, math.pi, per_angle) for _ in range(dim - 2)]
    azim = np.linspace(0, 2 * math.pi, 2 * per_angle, endpoint=False)
    out = []
    for angles in itertools.product(*polar, azim):
        v = np.ones(dim)
        s = 1.0
        for k, a in enumerate(angles[:-1]):
            v[k] = s * math.cos(a)
            s *= math.sin(a)
        v[dim - 2] = s * math.cos(angles[-1])
        v[dim - 1] = s * math.sin(angles[-1])
        out.append(v)
    return np.array(out)


def random_directions(dim: int, count: int, seed: int) -> np.ndarray:
    v = np.random.default_rng(seed).standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1)[:, None]


def default_resolution(n: int) -> int:
    """Keeps the direction grid near 10⁵ points whatever the dimension."""
    return {1: 48, 2: 14}.get(n, 7)


def _directions(dim: int, sampler: str, resolution: int, seed: int) -> np.ndarray:
    if sampler == "grid":
        return grid_directions(dim, resolution)
    if sampler == "random":
        return random_directions(dim, resolution ** (dim - 1) * 2, seed)
    raise ValueError(f"unknown sampler {sampler!r}")


def sphere_extremum(surface: Callable[[np.ndarray], np.ndarray], value: Callable[[np.ndarray], np.ndarray],
                    dim: int, mode: str, sampler: str, resolution: int, seed: int = 0) -> float:
    """Extremum of ``value`` over ``surface(direction)``: dense sampling then local refinement."""
    sign = 1.0 if mode == "min" else -1.0
    dirs = _directions(dim, sampler, resolution, seed)
    vals = sign * value(surface(dirs))
    best = dirs[int(np.argmin(vals))]

    def objective(v):
        if not np.any(v):
            return math.inf
        return float(sign * value(surface(v[None, :]))[0])

    res = minimize(objective, best, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 20000, "maxfev": 40000})
    return sign * min(float(res.fun), float(vals.min()))


@dataclass(frozen=True)
class AnnulusConstants:
    n: int
    sigma1: float
    sigma2: float
    tau1: float
    tau2: float
    sampler: str
    tau2_factor: float = TAU2_FACTOR


@lru_cache(maxsize=None)
def annulus_constants(n: int, sampler: str = "grid", resolution: int | None = None,
                      seed: int = 0) -> AnnulusConstants:
    dim = 2 * n + 1
    resolution = resolution or default_resolution(n)
    euclid = lambda p: np.linalg.norm(p, axis=1)  # noqa: E731
    sigma1 = 0.5 * sphere_extremum(lambda v: _to_koranyi_sphere(v, 1.0), euclid, dim, "min",
                                   sampler, resolution, seed)
    sigma2 = 2.0 * sphere_extremum(lambda v: _to_koranyi_sphere(v, 2.0), euclid, dim, "max",
                                   sampler, resolution, seed + 1)
    tau1 = 0.5 * sphere_extremum(lambda v: _to_euclidean_sphere(v, sigma1 / 2), gauge_array, dim, "min",
                                 sampler, resolution, seed + 2)
    tau2 = TAU2_FACTOR * sphere_extremum(lambda v: _to_euclidean_sphere(v, 2 * sigma2), gauge_array, dim,
                                         "max", sampler, resolution, seed + 3)
    return AnnulusConstants(n, sigma1, sigma2, tau1, tau2, sampler)


def _sample_korányi_annulus(n: int, a: float, b: float, count: int, rng) -> np.ndarray:
    dirs = rng.standard_normal((count, 2 * n + 1))
    radii = a + (b - a) * rng.random(count)
    return np.concatenate([_to_koranyi_sphere(d[None, :], r) for d, r in zip(dirs, radii)])


def _sample_euclidean_annulus(n: int, a: float, b: float, count: int, rng) -> np.ndarray:
    dirs = rng.standard_normal((count, 2 * n + 1))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    return dirs * (a + (b - a) * rng.random(count))[:, None]


def _in_koranyi(points, a, b):
    rho = gauge_array(points)
    return bool(np.all((rho > a) & (rho < b)))


def _in_euclidean(points, a, b):
    r = np.linalg.norm(points, axis=1)
    return bool(np.all((r > a) & (r < b)))


def nesting_chain(c: AnnulusConstants, samples: int = 4000, seed: int = 0) -> Dict[str, bool]:
    """Sampled check of ``V ⋐ Ṽ ⋐ Ṽ′ ⋐ V′``."""
    rng = np.random.default_rng(seed)
    v = _sample_korányi_annulus(c.n, 1.0, 2.0, samples, rng)
    vt = _sample_euclidean_annulus(c.n, c.sigma1, c.sigma2, samples, rng)
    vtp = _sample_euclidean_annulus(c.n, c.sigma1 / 2, 2 * c.sigma2, samples, rng)
    return {
        "V_in_Vtilde": _in_euclidean(v, c.sigma1, c.sigma2),
        "Vtilde_in_Vtilde_prime": _in_euclidean(vt, c.sigma1 / 2, 2 * c.sigma2),
        "Vtilde_prime_in_V_prime": _in_koranyi(vtp, c.tau1 / 2, 2 * c.tau2),
    }


@dataclass
class AdmissibilityReport:
    r1: float
    r2: float
    s1: float
    s2: float
    constants: AnnulusConstants
    window_s1: Tuple[float, float]
    window_s2: Tuple[float, float]
    window_nonempty: bool
    admissible: bool
    t: float
    inclusions: Dict[str, bool] = field(default_factory=dict)

    @property
    def tau1(self) -> float:
        return self.constants.tau1

    @property
    def tau2(self) -> float:
        return self.constants.tau2

    @property
    def sigma1(self) -> float:
        return self.constants.sigma1

    @property
    def sigma2(self) -> float:
        return self.constants.sigma2

    @property
    def window(self) -> Tuple[float, float]:
        return self.window_s1


def _dilated_inclusions(c: AnnulusConstants, r1, r2, s1, s2, t) -> Dict[str, bool]:
    """Radius comparisons; Korányi annuli dilate as ``δ_t A_{a,b} = A_{ta,tb}``."""
    v1, v2 = 1.0, 2.0
    w1, w2 = c.tau1 / 2, 2 * c.tau2
    return {
        # nesting implied by the window bounds
        "dilated_U_prime_in_V_prime": w1 <= t * r1 and t * r2 <= w2,
        "dilated_U_in_V": v1 <= t * s1 and t * s2 <= v2,
        # literal inclusion V′ ⊂ δ_t U′
        "V_prime_in_dilated_U_prime": t * r1 <= w1 and w2 <= t * r2,
    }


def annulus_admissibility(r1: float, r2: float, s1: float, s2: float, n: int = 1,
                          sampler: str = "grid", resolution: int | None = None) -> AdmissibilityReport:
    if not 0 < r1 < r2:
        raise ValueError("need 0 < r1 < r2")
    if not 0 < s1 < s2:
        raise ValueError("need 0 < s1 < s2")
    c = annulus_constants(n, sampler, resolution)
    w1 = (r2 / c.tau2, r1 / c.tau1)
    w2 = (2 * r2 / c.tau2, 2 * r1 / c.tau1)
    nonempty = r2 < (c.tau2 / c.tau1) * r1
    ok = (w1[0] < s1 < w1[1]) or (w2[0] < s2 < w2[1])
    t = 1.0 / s1 if w1[0] < s1 < w1[1] else 2.0 / s2
    return AdmissibilityReport(r1, r2, s1, s2, c, w1, w2, nonempty, ok, t,
                               _dilated_inclusions(c, r1, r2, s1, s2, t))


def construct_pair(r1: float, r2: float, n: int = 1, sampler: str = "grid",
                   resolution: int | None = None) -> Tuple[float, float]:
    """``(s₁, s₂)`` with ``s₁`` the geometric midpoint of its window and ``s₂ = 3s₁/2``."""
    c = annulus_constants(n, sampler, resolution)
    lo, hi = r2 / c.tau2, r1 / c.tau1
    if not lo < hi:
        raise ValueError("empty admissibility window")
    s1 = math.sqrt(lo * hi)
    return s1, 1.5 * s1
