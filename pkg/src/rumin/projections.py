"""Pointwise layer of Rumin's construction.

``d₀`` (the weight-preserving, algebraic part of ``d``), its Moore–Penrose
pseudo-inverse, the spaces ``E₀ʰ = ker d₀ ∩ (im d₀)^⊥`` and the orthogonal
projection onto them, all as exact rational matrices in the monomial bases Θʰ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Sequence, Tuple

from . import linalg
from .exterior import Form, basis, basis_index, dtheta, hodge_star, inner, wedge, weight


@dataclass(frozen=True)
class LinearMap:
    """Rational matrix ``Λ^source → Λ^target`` (rows index the target basis)."""

    n: int
    source: int
    target: int
    matrix: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, n: int, source: int, target: int, rows: Sequence[Sequence]) -> "LinearMap":
        m = tuple(tuple(Fraction(v) for v in r) for r in rows)
        if len(m) != len(basis(n, target)) or any(len(r) != len(basis(n, source)) for r in m):
            raise ValueError("matrix dimensions do not match dim Λ")
        return cls(n, source, target, m)

    def rows(self) -> linalg.Matrix:
        return [list(r) for r in self.matrix]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(basis(self.n, self.target)), len(basis(self.n, self.source))

    def __call__(self, form: Form) -> Form:
        if form.degree != self.source or form.n != self.n:
            raise ValueError(f"expected a degree-{self.source} form, got degree {form.degree}")
        src = basis_index(self.n, self.source)
        tgt = basis(self.n, self.target)
        cols = [(src[m], c) for m, c in form.terms.items()]
        out = {}
        for i, m in enumerate(tgt):
            row = self.matrix[i]
            acc = None
            for j, c in cols:
                a = row[j]
                if a:
                    term = c * a
                    acc = term if acc is None else acc + term
            if acc is not None and acc:
                out[m] = acc
        return Form(self.n, self.target, out)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if other.target != self.source or other.n != self.n:
            raise ValueError("incompatible maps")
        rows, _ = self.shape
        _, cols = other.shape
        prod = linalg.matmul(self.rows(), other.rows(), inner=self.shape[1], ncols=cols)
        if rows == 0:
            prod = []
        return LinearMap(self.n, other.source, self.target, tuple(tuple(r) for r in prod))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.n, self.source, self.target,
                         tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.n, self.source, self.target,
                         tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def transpose(self) -> "LinearMap":
        rows, cols = self.shape
        return LinearMap(self.n, self.target, self.source,
                         tuple(tuple(self.matrix[i][j] for i in range(rows)) for j in range(cols)))

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.matrix for v in r)


def identity_map(n: int, h: int) -> LinearMap:
    k = len(basis(n, h))
    return LinearMap(n, h, h, tuple(tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)))


def _zero_map(n: int, source: int, target: int) -> LinearMap:
    return LinearMap(n, source, target,
                     tuple(tuple(Fraction(0) for _ in basis(n, source)) for _ in basis(n, target)))


@lru_cache(maxsize=None)
def d0_map(n: int, h: int) -> LinearMap:
    """``d₀ : Λʰ → Λʰ⁺¹``: zero on weight ``h``, ``θ∧ω_J ↦ dθ∧ω_J`` on weight ``h+1``."""
    if not 0 <= h <= 2 * n + 1:
        raise ValueError(f"degree {h} out of range for n={n}")
    src = basis(n, h)
    tgt_index = basis_index(n, h + 1)
    cols: List[List[Fraction]] = []
    dth = dtheta(n)
    theta = 2 * n
    for m in src:
        col = [Fraction(0)] * len(tgt_index)
        if theta in m:
            # m = ω_J ∧ θ with J horizontal; θ∧ω_J = (−1)^{|J|} ω_J∧θ
            j = tuple(i for i in m if i != theta)
            sign = -1 if len(j) % 2 else 1
            img = wedge(dth, Form(n, len(j), {j: Fraction(sign)}))
            for mm, c in img.terms.items():
                col[tgt_index[mm]] += c
        cols.append(col)
    rows = [[cols[j][i] for j in range(len(src))] for i in range(len(tgt_index))]
    return LinearMap(n, h, h + 1, tuple(tuple(r) for r in rows))


@lru_cache(maxsize=None)
def d0_pinv(n: int, h: int) -> LinearMap:
    """Moore–Penrose inverse ``d₀⁻¹ : Λʰ⁺¹ → Λʰ`` of :func:`d0_map`."""
    a = d0_map(n, h)
    rows, cols = a.shape
    if rows == 0:
        return _zero_map(n, h + 1, h)
    p = linalg.pinv(a.rows(), ncols=cols)
    return LinearMap(n, h + 1, h, tuple(tuple(r) for r in p))


@lru_cache(maxsize=None)
def pi_E0(n: int, h: int) -> LinearMap:
    """Orthogonal projection onto ``E₀ʰ``: ``Id − d₀⁻¹d₀ − d₀d₀⁻¹``."""
    out = identity_map(n, h)
    if h <= 2 * n:
        out = out - (d0_pinv(n, h) @ d0_map(n, h))
    if h >= 1:
        out = out - (d0_map(n, h - 1) @ d0_pinv(n, h - 1))
    return out


@dataclass(frozen=True)
class SubspaceBasis:
    """Rational orthogonal basis of ``E₀ʰ`` with its (diagonal) Gram matrix.

    Vectors are stored in monomial coordinates; they are orthogonal but not
    normalized, so every inner product stays rational.
    """

    n: int
    degree: int
    vectors: Tuple[Tuple[Fraction, ...], ...]
    gram: Tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def forms(self) -> List[Form]:
        return [Form.from_vector(self.n, self.degree, v) for v in self.vectors]

    def form(self, coords: Sequence) -> Form:
        """``Σ coords_j ξ_j`` (coefficients may be any ring elements)."""
        mons = basis(self.n, self.degree)
        out = {}
        for c, v in zip(coords, self.vectors):
            if not c:
                continue
            for m, a in zip(mons, v):
                if a:
                    term = c * a
                    out[m] = out[m] + term if m in out else term
        return Form(self.n, self.degree, out)

    def coordinates(self, form: Form) -> List:
        """Coordinates of ``Π_{E₀} form`` in this basis: ``⟨form, ξ_j⟩ / ⟨ξ_j, ξ_j⟩``."""
        mons = basis(self.n, self.degree)
        out = []
        for v, g in zip(self.vectors, self.gram):
            acc = 0
            for m, a in zip(mons, v):
                if a and m in form.terms:
                    acc = acc + form.terms[m] * (a / g)
            out.append(acc)
        return out

    def weights(self) -> List[int]:
        return [max(weight(self.n, m) for m, a in zip(basis(self.n, self.degree), v) if a)
                for v in self.vectors]

    def is_orthonormal(self) -> bool:
        return all(g == 1 for g in self.gram)


@lru_cache(maxsize=None)
def e0_basis(n: int, h: int) -> SubspaceBasis:
    """Basis of ``ker d₀ ∩ (im d₀)^⊥`` by exact kernel computation.

    Stacks ``d₀`` (degree ``h``) with ``d₀ᵀ`` (from degree ``h-1``); the common
    kernel is exactly ``E₀ʰ``.
    """
    if not 0 <= h <= 2 * n + 1:
        raise ValueError(f"degree {h} out of range for n={n}")
    size = len(basis(n, h))
    rows: linalg.Matrix = []
    if h <= 2 * n:
        rows += d0_map(n, h).rows()
    if h >= 1:
        rows += d0_map(n, h - 1).transpose().rows()
    kernel = linalg.nullspace(rows, ncols=size)
    ortho = linalg.orthogonalize(kernel)
    # clear denominators for readable bases
    cleaned = [_primitive(v) for v in ortho]
    gram = tuple(linalg.dot(v, v) for v in cleaned)
    return SubspaceBasis(n, h, tuple(tuple(v) for v in cleaned), gram)


def _primitive(v: Sequence[Fraction]) -> List[Fraction]:
    from math import gcd, lcm

    nz = [x for x in v if x]
    den = 1
    for x in nz:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    g = g or 1
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return [Fraction(x, g) for x in ints]


def expected_dimension(n: int, h: int) -> int:
    """``dim E₀ʰ``: 1, 2n, C(2n,h)−C(2n,h−2) for h ≤ n, Hodge dual above n."""
    if h > n:
        h = 2 * n + 1 - h
    if h == 0:
        return 1
    if h == 1:
        return 2 * n
    return comb(2 * n, h) - comb(2 * n, h - 2)


def projector_from_basis(b: SubspaceBasis) -> LinearMap:
    """Orthogonal projector ``Σ ξ_j ξ_jᵀ / g_j`` assembled from the basis."""
    k = len(basis(b.n, b.degree))
    rows = [[Fraction(0)] * k for _ in range(k)]
    for v, g in zip(b.vectors, b.gram):
        for i in range(k):
            if v[i]:
                for j in range(k):
                    if v[j]:
                        rows[i][j] += v[i] * v[j] / g
    return LinearMap(b.n, b.degree, b.degree, tuple(tuple(r) for r in rows))


def span_contains(b: SubspaceBasis, form: Form) -> bool:
    return b.form(b.coordinates(form)) == form


def star_basis_spans(n: int, h: int) -> bool:
    """``⋆E₀ʰ = E₀^{2n+1-h}`` as subspaces."""
    src = e0_basis(n, h)
    dst = e0_basis(n, 2 * n + 1 - h)
    return src.dim == dst.dim and all(span_contains(dst, hodge_star(f)) for f in src.forms())


def is_primitive_horizontal(form: Form) -> bool:
    """Horizontal and orthogonal to ``Λ^{h-2}_hor ∧ dθ``."""
    n, h = form.n, form.degree
    if any(2 * n in m for m in form.terms):
        return False
    if h < 2:
        return True
    dth = dtheta(n)
    for m in basis(n, h - 2):
        if 2 * n in m:
            continue
        if inner(wedge(Form(n, h - 2, {m: Fraction(1)}), dth), form) != 0:
            return False
    return True
