"""Weighted exterior algebra over the left-invariant coframe of ℍⁿ.

The coframe is ``ω₀ … ω_{2n-1}, ω_{2n}`` (0-based) standing for
``dx₁ … dxₙ, dy₁ … dyₙ, θ``.  A monomial is a strictly increasing tuple of
indices; θ, having the largest index, always sits last.  Horizontal covectors
have weight 1, θ has weight 2.

:class:`Form` is a finite linear combination of monomials with coefficients in
any ring-like type (rationals here, polynomials and operator symbols in
:mod:`rumin.forms`).  A :data:`Covector` is a Form with rational coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

Monomial = Tuple[int, ...]


# monomial combinatorics ---------------------------------------------------

@lru_cache(maxsize=None)
def basis(n: int, h: int) -> Tuple[Monomial, ...]:
    """Θʰ in graded-lexicographic order."""
    if not 0 <= h <= 2 * n + 1:
        return ()
    return tuple(combinations(range(2 * n + 1), h))


@lru_cache(maxsize=None)
def basis_index(n: int, h: int) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(basis(n, h))}


def theta_index(n: int) -> int:
    return 2 * n


def weight(n: int, m: Monomial) -> int:
    return len(m) + (1 if 2 * n in m else 0)


@lru_cache(maxsize=None)
def wedge_monomials(a: Monomial, b: Monomial) -> Tuple[int, Monomial]:
    """``ω_a ∧ ω_b = sign · ω_c``; sign 0 when an index repeats."""
    if set(a) & set(b):
        return 0, ()
    seq = a + b
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


def monomial_name(n: int, m: Monomial) -> str:
    if not m:
        return "1"
    names = [f"dx{i + 1}" for i in range(n)] + [f"dy{i + 1}" for i in range(n)] + ["θ"]
    return "∧".join(names[i] for i in m)


# forms ---------------------------------------------------------------------

class Form:
    """Homogeneous-degree form ``Σ c_m ω_m`` over the coframe of ℍⁿ."""

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: Optional[Mapping[Monomial, object]] = None):
        self.n = n
        self.degree = degree
        self.terms: Dict[Monomial, object] = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != degree:
                    raise ValueError(f"monomial {m} has degree {len(m)}, expected {degree}")
                if list(m) != sorted(set(m)) or (m and not 0 <= m[0] <= m[-1] <= 2 * n):
                    raise ValueError(f"monomial {m} is not strictly increasing in range")
                if c:
                    self.terms[m] = c

    @classmethod
    def monomial(cls, n: int, m: Iterable[int], c=Fraction(1)) -> "Form":
        m = tuple(m)
        if len(set(m)) != len(m):
            return cls(n, len(m))
        sign, mono = _sort_sign(m)
        return cls(n, len(m), {mono: c * sign})

    @classmethod
    def scalar(cls, n: int, c) -> "Form":
        return cls(n, 0, {(): c})

    @classmethod
    def zero(cls, n: int, degree: int) -> "Form":
        return cls(n, degree)

    def _new(self, degree: int, terms: Dict[Monomial, object]) -> "Form":
        f = Form.__new__(Form)
        f.n = self.n
        f.degree = degree
        f.terms = {m: c for m, c in terms.items() if c}
        return f

    # vector space -------------------------------------------------------
    def _check(self, other: "Form"):
        if not isinstance(other, Form) or other.n != self.n or other.degree != self.degree:
            raise ValueError("forms must share n and degree")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return self._new(self.degree, out)

    def __neg__(self) -> "Form":
        return self._new(self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, scalar) -> "Form":
        """Multiply every coefficient by ``scalar`` (a number or a coefficient)."""
        return self._new(self.degree, {m: c * scalar for m, c in self.terms.items()})

    def __rmul__(self, scalar) -> "Form":
        return self._new(self.degree, {m: scalar * c for m, c in self.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Form):
            return self.n == other.n and self.degree == other.degree and not (self - other).terms
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return f"0 (degree {self.degree})"
        return " + ".join(f"({c})·{monomial_name(self.n, m)}" for m, c in sorted(self.terms.items()))

    def map_coefficients(self, fn: Callable) -> "Form":
        return self._new(self.degree, {m: fn(c) for m, c in self.terms.items()})

    def coefficient(self, m: Monomial, default=0):
        return self.terms.get(tuple(m), default)

    def vector(self) -> List:
        """Coefficients in the Θʰ ordering (missing entries are ``0``)."""
        return [self.terms.get(m, 0) for m in basis(self.n, self.degree)]

    @classmethod
    def from_vector(cls, n: int, degree: int, values: Iterable) -> "Form":
        return cls(n, degree, dict(zip(basis(n, degree), values)))


Covector = Form


def _sort_sign(m: Tuple[int, ...]) -> Tuple[int, Monomial]:
    m = list(m)
    sign = 1
    for i in range(len(m)):
        for j in range(len(m) - 1 - i):
            if m[j] > m[j + 1]:
                m[j], m[j + 1] = m[j + 1], m[j]
                sign = -sign
    return sign, tuple(m)


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; coefficients multiply as ``c_a * c_b``."""
    if a.n != b.n:
        raise ValueError("forms over different groups")
    deg = a.degree + b.degree
    out: Dict[Monomial, object] = {}
    if deg > 2 * a.n + 1:
        return _empty(a.n, deg)
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, mc = wedge_monomials(ma, mb)
            if sign:
                v = ca * cb if sign > 0 else -(ca * cb)
                out[mc] = out[mc] + v if mc in out else v
    f = Form(a.n, deg)
    f.terms = {m: c for m, c in out.items() if c}
    return f


def _empty(n: int, degree: int) -> Form:
    f = Form.__new__(Form)
    f.n, f.degree, f.terms = n, degree, {}
    return f


def inner(a: Form, b: Form):
    """Pointwise inner product making Θʰ orthonormal."""
    a._check(b)
    total = 0
    for m, c in a.terms.items():
        if m in b.terms:
            total = total + c * b.terms[m]
    return total


def volume(n: int) -> Form:
    """``dV = ω₁ ∧ … ∧ ω_{2n+1}``."""
    return Form(n, 2 * n + 1, {tuple(range(2 * n + 1)): Fraction(1)})


def hodge_star(a: Form) -> Form:
    """Hodge star fixed by ``⟨b, a⟩ dV = b ∧ ⋆a``."""
    n = a.n
    full = tuple(range(2 * n + 1))
    out = {}
    for m, c in a.terms.items():
        comp = tuple(i for i in full if i not in m)
        sign, _ = wedge_monomials(m, comp)
        out[comp] = c if sign > 0 else -c
    return Form(n, 2 * n + 1 - a.degree, out)


def weight_split(a: Form) -> Tuple[Form, Form]:
    """Split ``a`` into its weight-``h`` and weight-``h+1`` components."""
    low = {m: c for m, c in a.terms.items() if weight(a.n, m) == a.degree}
    high = {m: c for m, c in a.terms.items() if weight(a.n, m) != a.degree}
    return Form(a.n, a.degree, low), Form(a.n, a.degree, high)


def pure_weight(a: Form) -> Optional[int]:
    """The common weight of all monomials of ``a``; ``None`` if mixed or zero."""
    ws = {weight(a.n, m) for m in a.terms}
    return ws.pop() if len(ws) == 1 else None


# contact form --------------------------------------------------------------

def contact_form_linear_coefficients(n: int) -> Dict[int, Dict[int, Fraction]]:
    """θ = dt − ½ Σ (x_j dy_j − y_j dx_j) in Euclidean coordinates.

    Returned as ``{covector index: {coordinate index: coefficient}}`` describing
    the linear parts of θ's coefficients (the ``dt`` term is constant).
    """
    half = Fraction(1, 2)
    lin: Dict[int, Dict[int, Fraction]] = {}
    for j in range(n):
        lin.setdefault(n + j, {})[j] = -half  # −½ x_j dy_j
        lin.setdefault(j, {})[n + j] = half  # +½ y_j dx_j
    return lin


@lru_cache(maxsize=None)
def _dtheta_terms(n: int) -> Tuple[Tuple[Monomial, Fraction], ...]:
    # d(Σ c_k(z) dz_k) = Σ ∂_v c_k dz_v ∧ dz_k; the dt term has constant coefficient.
    out: Dict[Monomial, Fraction] = {}
    for k, lin in contact_form_linear_coefficients(n).items():
        for v, c in lin.items():
            sign, m = wedge_monomials((v,), (k,))
            if sign:
                out[m] = out.get(m, Fraction(0)) + sign * c
    return tuple(sorted((m, c) for m, c in out.items() if c))


def dtheta(n: int) -> Form:
    """Exterior derivative of θ, computed from its coordinate expression.

    Horizontal coordinate differentials coincide with the horizontal coframe, so
    the result is already expressed in the left-invariant coframe.
    """
    return Form(n, 2, dict(_dtheta_terms(n)))


def lefschetz(a: Form) -> Form:
    """``L a = dθ ∧ a``."""
    return wedge(dtheta(a.n), a)


def dimension(n: int, h: int) -> int:
    return comb(2 * n + 1, h)
