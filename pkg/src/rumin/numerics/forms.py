"""Forms whose coefficients are evaluable functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from ..exterior import Form, Monomial, basis
from ..operators import Operator
from ..poly import PolyScalar
from .fd import STENCIL_ORDER, fd_word

COFRAMES = ("euclidean", "heisenberg")


@dataclass(frozen=True)
class CallableForm:
    """Degree-``h`` form with vectorized coefficient functions.

    ``coframe`` says whether index ``2n`` stands for ``dt`` or θ.  A polynomial
    backing (``poly``) gives exact derivatives; otherwise derivatives are
    finite differences of order :data:`STENCIL_ORDER`.
    """

    n: int
    degree: int
    coframe: str
    coefficients: Mapping[Monomial, Callable[[np.ndarray], np.ndarray]]
    poly: Optional[Form] = None
    fd_step: float = 1e-3

    def __post_init__(self):
        if self.coframe not in COFRAMES:
            raise ValueError(f"unknown coframe {self.coframe!r}")
        mons = set(basis(self.n, self.degree))
        if any(m not in mons for m in self.coefficients):
            raise ValueError("coefficient keys must be monomials of the stated degree")

    @classmethod
    def from_poly(cls, form: Form, coframe: str = "heisenberg") -> "CallableForm":
        coeffs = {m: c.evaluate for m, c in form.terms.items()}
        return cls(form.n, form.degree, coframe, coeffs, form)

    @classmethod
    def from_samples(cls, n: int, degree: int, coframe: str, axes: Sequence[np.ndarray],
                     values: Mapping[Monomial, np.ndarray]) -> "CallableForm":
        """Cubic interpolation of coefficients sampled on a tensor grid."""
        coeffs = {}
        for m, v in values.items():
            interp = RegularGridInterpolator(tuple(axes), v, method="cubic")
            coeffs[m] = interp
        step = min(float(a[1] - a[0]) for a in axes)
        return cls(n, degree, coframe, coeffs, None, step)

    @property
    def stencil_order(self) -> Optional[int]:
        return None if self.poly is not None else STENCIL_ORDER

    def is_zero(self) -> bool:
        return not self.coefficients if self.poly is None else not self.poly

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Coefficients at ``points`` as an array ``(m, dim Λʰ)`` in the monomial order."""
        pts = np.atleast_2d(points)
        mons = basis(self.n, self.degree)
        out = np.zeros((len(pts), len(mons)))
        for i, m in enumerate(mons):
            f = self.coefficients.get(m)
            if f is not None:
                out[:, i] = f(pts)
        return out

    def derivative(self, m: Monomial, word: Sequence[int], points: np.ndarray) -> np.ndarray:
        """``W_{j₁}⋯W_{j_k}`` of the ``m`` coefficient."""
        pts = np.atleast_2d(points)
        if self.poly is not None:
            c = self.poly.terms.get(tuple(m))
            if c is None:
                return np.zeros(len(pts))
            return Operator.word(2 * self.n + 1, word).apply(c).evaluate(pts)
        f = self.coefficients.get(tuple(m))
        if f is None:
            return np.zeros(len(pts))
        return fd_word(f, pts, word, self.fd_step)

    def __mul__(self, c: float) -> "CallableForm":
        coeffs = {m: (lambda p, f=f: c * f(p)) for m, f in self.coefficients.items()}
        poly = self.poly * c if self.poly is not None else None
        return CallableForm(self.n, self.degree, self.coframe, coeffs, poly, self.fd_step)

    __rmul__ = __mul__


def pointwise_norm(values: np.ndarray, gram: Sequence = None) -> np.ndarray:
    """Euclidean norm of coefficient rows, weighted by a diagonal Gram matrix."""
    v = np.asarray(values, dtype=float)
    if gram is None:
        return np.sqrt(np.sum(v * v, axis=1))
    g = np.array([float(x) for x in gram])
    return np.sqrt(np.sum(v * v * g[None, :], axis=1))
