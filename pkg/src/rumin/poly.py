"""Sparse multivariate polynomials in the coordinates ``x₁…xₙ, y₁…yₙ, t``.

Coefficients are normally :class:`~fractions.Fraction`; the numeric layer also
builds polynomials with float coefficients (quadrature outputs), which go
through the same code paths.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

import numpy as np

Exponent = Tuple[int, ...]

_HALF = Fraction(1, 2)


class PolyScalar:
    """Polynomial in ``nvars = 2n+1`` variables, ordered ``(x, y, t)``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        self.terms: Dict[Exponent, object] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ValueError("exponent length does not match nvars")
                    self.terms[tuple(e)] = c

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c) -> "PolyScalar":
        return cls(nvars, {(0,) * nvars: Fraction(c) if isinstance(c, int) else c})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "PolyScalar":
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def zero(cls, nvars: int) -> "PolyScalar":
        return cls(nvars)

    @classmethod
    def random(cls, nvars: int, max_degree: int, rng: random.Random, density: float = 0.5,
               max_num: int = 5, max_den: int = 3) -> "PolyScalar":
        """Random polynomial with small rational coefficients."""
        terms = {}
        for e in monomials_up_to(nvars, max_degree):
            if rng.random() < density:
                terms[e] = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        return cls(nvars, terms)

    # basic protocol -----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyScalar):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = variable_names(self.nvars)
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), e)):
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def _coerce(self, other) -> "PolyScalar":
        if isinstance(other, PolyScalar):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return PolyScalar.constant(self.nvars, other)

    def __add__(self, other) -> "PolyScalar":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "PolyScalar":
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "PolyScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PolyScalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PolyScalar":
        if not isinstance(other, PolyScalar):
            if not other:
                return PolyScalar(self.nvars)
            return _raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return _raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyScalar":
        if k < 0:
            raise ValueError("negative power")
        out = PolyScalar.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # calculus -----------------------------------------------------------
    def diff(self, k: int) -> "PolyScalar":
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = c * e[k]
        return _raw(self.nvars, out)

    def W(self, j: int) -> "PolyScalar":
        """Left-invariant field ``W_j`` (0-based): ``X``'s, then ``Y``'s, then ``T``."""
        n = (self.nvars - 1) // 2
        t = 2 * n
        if j == t:
            return self.diff(t)
        dt = self.diff(t)
        if j < n:
            return self.diff(j) - PolyScalar.variable(self.nvars, n + j) * dt * _HALF
        return self.diff(j) + PolyScalar.variable(self.nvars, j - n) * dt * _HALF

    # inspection ---------------------------------------------------------
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degree(self) -> int:
        """Largest weighted degree with ``t`` counting twice."""
        return max((sum(e[:-1]) + 2 * e[-1] for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def __iter__(self) -> Iterator[Tuple[Exponent, object]]:
        return iter(self.terms.items())

    # substitution / evaluation -----------------------------------------
    def scale_variables(self, factors: Sequence) -> "PolyScalar":
        """``p(a₁z₁, …, a_N z_N)``."""
        out = {}
        for e, c in self.terms.items():
            f = c
            for a, k in zip(factors, e):
                if k:
                    f = f * a ** k
            out[e] = f
        return PolyScalar(self.nvars, out)

    def compose(self, subs: Sequence["PolyScalar"]) -> "PolyScalar":
        """Substitute polynomial ``subs[k]`` for variable ``k``."""
        out = PolyScalar(self.nvars)
        cache: Dict[Tuple[int, int], PolyScalar] = {}

        def power(k: int, m: int) -> PolyScalar:
            if (k, m) not in cache:
                cache[(k, m)] = subs[k] ** m
            return cache[(k, m)]

        for e, c in self.terms.items():
            term = PolyScalar.constant(self.nvars, 1) * c
            for k, m in enumerate(e):
                if m:
                    term = term * power(k, m)
            out = out + term
        return out

    def to_float(self) -> "PolyScalar":
        return PolyScalar(self.nvars, {e: float(c) for e, c in self.terms.items()})

    def __call__(self, point: Sequence):
        """Evaluate exactly at one point (works with Fractions or floats)."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for z, k in zip(point, e):
                if k:
                    v = v * z ** k
            total = total + v
        return total

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Vectorized float evaluation at ``points`` of shape ``(m, nvars)``."""
        pts = np.asarray(points, dtype=float)
        out = np.zeros(pts.shape[0])
        if not self.terms:
            return out
        maxdeg = [max(e[k] for e in self.terms) for k in range(self.nvars)]
        if len(self.terms) > 64 and np.prod([d + 1 for d in maxdeg]) <= 200_000:
            return self._evaluate_dense(pts, maxdeg)
        powers = [np.ones((maxdeg[k] + 1, pts.shape[0])) for k in range(self.nvars)]
        for k in range(self.nvars):
            for m in range(1, maxdeg[k] + 1):
                powers[k][m] = powers[k][m - 1] * pts[:, k]
        for e, c in self.terms.items():
            v = np.full(pts.shape[0], float(c))
            for k, m in enumerate(e):
                if m:
                    v = v * powers[k][m]
            out += v
        return out

    def _evaluate_dense(self, pts: np.ndarray, maxdeg: list, chunk: int = 4096) -> np.ndarray:
        # nested contraction of the dense coefficient tensor, one variable at a time
        coef = np.zeros([d + 1 for d in maxdeg])
        for e, c in self.terms.items():
            coef[e] = float(c)
        out = np.empty(pts.shape[0])
        for start in range(0, pts.shape[0], chunk):
            p = pts[start:start + chunk]
            res = None
            for k in reversed(range(self.nvars)):
                powers = np.vander(p[:, k], maxdeg[k] + 1, increasing=True)  # (m, d+1)
                if res is None:
                    res = coef @ powers.T  # (..., m)
                else:
                    res = np.einsum("...km,mk->...m", res, powers)
            out[start:start + chunk] = res
        return out


def _raw(nvars: int, terms: Dict[Exponent, object]) -> PolyScalar:
    p = PolyScalar.__new__(PolyScalar)
    p.nvars = nvars
    p.terms = terms
    return p


def variable_names(nvars: int) -> list:
    n = (nvars - 1) // 2
    return [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["t"]


def monomials_up_to(nvars: int, max_degree: int) -> Iterable[Exponent]:
    for e in product(range(max_degree + 1), repeat=nvars):
        if sum(e) <= max_degree:
            yield e


def coordinates(n: int) -> list:
    """The coordinate functions ``[x₁, …, xₙ, y₁, …, yₙ, t]``."""
    return [PolyScalar.variable(2 * n + 1, k) for k in range(2 * n + 1)]
