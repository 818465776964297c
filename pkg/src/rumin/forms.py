"""Differential forms with symbolic coefficients and Rumin's differential.

Forms are :class:`~rumin.exterior.Form` objects whose coefficients (in the
left-invariant coframe) are polynomials (:class:`~rumin.poly.PolyScalar`) or
operator symbols (:class:`~rumin.operators.OpCoeff`,
:class:`~rumin.operators.BiCoeff`).  Everything here only needs a coefficient
to support ``+``, scaling by rationals and the left-invariant fields ``W(j)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .exterior import Form, basis, dtheta, wedge_monomials, weight
from .operators import (BiCoeff, MultiIndex, OpCoeff, Operator, homogeneous_degree)
from .poly import PolyScalar
from .projections import SubspaceBasis, d0_map, d0_pinv, e0_basis, pi_E0


class NotRuminFormError(ValueError):
    """Raised when a form is not pointwise in ``E₀ʰ``."""


def _W(c, j: int):
    w = getattr(c, "W", None)
    return w(j) if w is not None else 0


def _accumulate(out: Dict, m, v):
    if m in out:
        out[m] = out[m] + v
    else:
        out[m] = v


# exterior differential ------------------------------------------------------

def exterior_d_parts(alpha: Form) -> Tuple[Form, Form, Form]:
    """``dα`` split as ``(d₀α, d₁α, d₂α)`` by the weight increase 0, 1, 2.

    ``d(Σ f_I ω_I) = Σ_I Σ_j (W_j f_I) ω_j ∧ ω_I + f_I dω_I``; only θ has a
    nonzero differential.  ``d₁`` collects horizontal derivatives, ``d₂`` the
    ``T`` derivative, ``d₀`` the algebraic ``dθ`` contribution.
    """
    n, h = alpha.n, alpha.degree
    if h >= 2 * n + 1:
        z = Form(n, h + 1)
        return z, z, z
    theta = 2 * n
    d1: Dict = {}
    d2: Dict = {}
    for m, c in alpha.terms.items():
        for j in range(2 * n + 1):
            if j in m:
                continue
            wc = _W(c, j)
            if not wc:
                continue
            sign, mm = wedge_monomials((j,), m)
            _accumulate(d2 if j == theta else d1, mm, wc if sign > 0 else -wc)
    d0 = d0_map(n, h)(alpha)
    return d0, Form(n, h + 1, d1), Form(n, h + 1, d2)


def exterior_d(alpha: Form) -> Form:
    d0, d1, d2 = exterior_d_parts(alpha)
    return d0 + d1 + d2


def _d_raise(alpha: Form) -> Form:
    """``(d − d₀)α = d₁α + d₂α``."""
    _, d1, d2 = exterior_d_parts(alpha)
    return d1 + d2


# projections ---------------------------------------------------------------

def pi_E0_form(alpha: Form) -> Form:
    return pi_E0(alpha.n, alpha.degree)(alpha)


def is_rumin(alpha: Form) -> bool:
    return pi_E0_form(alpha) == alpha


def _Q(beta: Form) -> Form:
    """Homotopy ``Q = (d₀⁻¹d)|⁻¹ d₀⁻¹ = d₀⁻¹ − d₀⁻¹(d − d₀)d₀⁻¹``.

    ``d₀⁻¹d`` is the identity plus a weight-raising (hence square-zero) term on
    the range of ``d₀⁻¹``, so the Neumann series stops after one step.
    """
    n, k = beta.n, beta.degree
    if k == 0:
        return _zero(n, -1)
    first = d0_pinv(n, k - 1)(beta)
    if not first:
        return first
    return first - d0_pinv(n, k - 1)(_d_raise(first))


def _zero(n: int, degree: int) -> Form:
    f = Form.__new__(Form)
    f.n, f.degree, f.terms = n, degree, {}
    return f


def pi_E_general(alpha: Form) -> Form:
    """Projection onto ``E`` along ``F`` for an arbitrary form: ``1 − Qd − dQ``."""
    out = alpha
    if alpha.degree <= 2 * alpha.n:
        out = out - _Q(exterior_d(alpha))
    if alpha.degree >= 1:
        q = _Q(alpha)
        if q:
            out = out - exterior_d(q)
    return out


def pi_E(alpha: Form) -> Form:
    """``Π_E`` on a Rumin form: ``α − d₀⁻¹d₁α`` for ``h ≤ n``, ``α`` above ``n``."""
    if not is_rumin(alpha):
        raise NotRuminFormError(f"form of degree {alpha.degree} is not pointwise in E₀")
    if alpha.degree > alpha.n:
        return alpha
    _, d1, _ = exterior_d_parts(alpha)
    return alpha - d0_pinv(alpha.n, alpha.degree)(d1)


def d_c_apply(alpha: Form) -> Form:
    """Rumin differential ``d_c = Π_{E₀} d Π_E`` on an ``E₀``-valued form."""
    if alpha.degree > 2 * alpha.n:
        raise ValueError("d_c is defined up to degree 2n")
    return pi_E0_form(exterior_d(pi_E(alpha)))


# polynomial forms ------------------------------------------------------------

def poly_form(n: int, degree: int, coeffs: Dict) -> Form:
    return Form(n, degree, coeffs)


def rumin_form(n: int, h: int, coords: Sequence) -> Form:
    """``Σ coords_j ξ_j`` in the fixed basis of ``E₀ʰ``."""
    return e0_basis(n, h).form(coords)


def random_rumin_form(n: int, h: int, max_degree: int, rng: random.Random, density: float = 0.4) -> Form:
    b = e0_basis(n, h)
    return b.form([PolyScalar.random(2 * n + 1, max_degree, rng, density) for _ in range(b.dim)])


def random_poly_form(n: int, h: int, max_degree: int, rng: random.Random, density: float = 0.3) -> Form:
    return Form(n, h, {m: PolyScalar.random(2 * n + 1, max_degree, rng, density) for m in basis(n, h)})


def rumin_coordinates(alpha: Form) -> List:
    return e0_basis(alpha.n, alpha.degree).coordinates(alpha)


def dilation_pullback(s, alpha: Form) -> Form:
    """``δ_s^#α``: coefficients composed with ``δ_s``, ``ω_m`` scaled by ``s^{w(m)}``."""
    if s <= 0:
        raise ValueError("dilation factor must be positive")
    n = alpha.n
    factors = [s] * (2 * n) + [s * s]
    out = {}
    for m, c in alpha.terms.items():
        out[m] = c.scale_variables(factors) * (s ** weight(n, m))
    return Form(n, alpha.degree, out)


def translation_pullback(q: Sequence, alpha: Form) -> Form:
    """``τ_q^#α``: coefficients composed with ``p ↦ q·p`` (left-invariant coframe is fixed)."""
    n = alpha.n
    N = 2 * n + 1
    z = [PolyScalar.variable(N, k) for k in range(N)]
    half = Fraction(1, 2)
    subs = [z[k] + q[k] for k in range(2 * n)]
    tt = z[2 * n] + q[2 * n]
    for j in range(n):
        tt = tt + (z[n + j] * q[j] - z[j] * q[n + j]) * half
    subs.append(tt)
    return Form(n, alpha.degree, {m: c.compose(subs) for m, c in alpha.terms.items()})


# operator matrices -----------------------------------------------------------

@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of left-invariant operators between ``E₀`` coordinate spaces.

    ``entries[i][j]`` maps source coordinate ``j`` to target coordinate ``i``.
    """

    n: int
    source: int
    target: int
    entries: Tuple[Tuple[Operator, ...], ...]

    @property
    def nvars(self) -> int:
        return 2 * self.n + 1

    @property
    def shape(self) -> Tuple[int, int]:
        return e0_basis(self.n, self.target).dim, e0_basis(self.n, self.source).dim

    def apply(self, coords: Sequence[PolyScalar]) -> List[PolyScalar]:
        out = []
        for row in self.entries:
            acc = PolyScalar(self.nvars)
            for op, f in zip(row, coords):
                if op:
                    acc = acc + op.apply(f)
            out.append(acc)
        return out

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if other.target != self.source:
            raise ValueError("incompatible operator matrices")
        rows, mid = self.shape
        _, cols = other.shape
        out = []
        for i in range(rows):
            row = []
            for j in range(cols):
                acc = Operator(self.nvars)
                for k in range(mid):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return OperatorMatrix(self.n, other.source, self.target, tuple(out))

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if (other.source, other.target) != (self.source, self.target):
            raise ValueError("incompatible operator matrices")
        return OperatorMatrix(self.n, self.source, self.target,
                              tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def adjoint(self) -> "OperatorMatrix":
        """Formal L² adjoint w.r.t. the (diagonal) Gram matrices of the bases."""
        gs = e0_basis(self.n, self.source).gram
        gt = e0_basis(self.n, self.target).gram
        rows, cols = self.shape
        out = tuple(
            tuple(self.entries[i][j].adjoint().scale(gt[i] / gs[j]) for i in range(rows))
            for j in range(cols))
        return OperatorMatrix(self.n, self.target, self.source, out)

    def entry_degrees(self) -> set:
        return {homogeneous_degree(i) for row in self.entries for op in row for i in op.terms}

    def entry_orders(self) -> set:
        return {sum(i) for row in self.entries for op in row for i in op.terms}

    def uses_T(self) -> bool:
        return any(op.uses_T() for row in self.entries for op in row)

    def horizontal(self) -> bool:
        """Every nonzero entry is a combination of horizontal words of one length."""
        return all(op.horizontal_length() is not None for row in self.entries for op in row if op)

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        def vec(v):
            return [{"monomial": [i + 1 for i in m], "c": frac_str(a)}
                    for m, a in zip(basis(self.n, b.degree), v) if a]

        bases = []
        for deg in (self.source, self.target):
            b = e0_basis(self.n, deg)
            bases.append({"degree": deg, "vectors": [vec(v) for v in b.vectors]})
        return {
            "n": self.n,
            "source_degree": self.source,
            "target_degree": self.target,
            "basis": bases,
            "entries": [[[{"I": list(idx), "c": frac_str(c)} for idx, c in sorted(op.terms.items())]
                         for op in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "OperatorMatrix":
        n = int(data["n"])
        nvars = 2 * n + 1
        entries = tuple(
            tuple(Operator(nvars, {tuple(t["I"]): Fraction(t["c"]) for t in cell}) for cell in row)
            for row in data["entries"])
        return cls(n, int(data["source_degree"]), int(data["target_degree"]), entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True, ensure_ascii=False)

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return (self.n, self.source, self.target) == (other.n, other.source, other.target) and all(
            a == b for r, s in zip(self.entries, other.entries) for a, b in zip(r, s))

    __hash__ = None


def frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _symbolic_rumin_form(n: int, h: int) -> Form:
    b = e0_basis(n, h)
    return b.form([OpCoeff.base(2 * n + 1, k) for k in range(b.dim)])


def _to_operator_matrix(n: int, source: int, target: int, image: Form) -> OperatorMatrix:
    src, tgt = e0_basis(n, source), e0_basis(n, target)
    coords = tgt.coordinates(image)
    entries = []
    for c in coords:
        if isinstance(c, OpCoeff):
            entries.append(tuple(c.operator_for(k) for k in range(src.dim)))
        else:
            entries.append(tuple(Operator(2 * n + 1) for _ in range(src.dim)))
    return OperatorMatrix(n, source, target, tuple(entries))


@lru_cache(maxsize=None)
def d_c_matrix(n: int, h: int) -> OperatorMatrix:
    """Constant-coefficient matrix of ``d_c : E₀ʰ → E₀ʰ⁺¹`` in the fixed bases."""
    if not 0 <= h <= 2 * n:
        raise ValueError(f"d_c is defined for 0 ≤ h ≤ 2n, got h={h}")
    return _to_operator_matrix(n, h, h + 1, d_c_apply(_symbolic_rumin_form(n, h)))


@lru_cache(maxsize=None)
def codifferential_matrix(n: int, h: int) -> OperatorMatrix:
    """``d_c* : E₀ʰ → E₀ʰ⁻¹`` as the formal adjoint of ``d_c`` on degree ``h-1``."""
    if not 1 <= h <= 2 * n + 1:
        raise ValueError(f"d_c* is defined for 1 ≤ h ≤ 2n+1, got h={h}")
    return d_c_matrix(n, h - 1).adjoint()


@lru_cache(maxsize=None)
def laplacian_matrix(n: int, h: int) -> OperatorMatrix:
    """Rumin Laplacian; fourth order in degrees ``n`` and ``n+1``."""
    if not 0 <= h <= 2 * n + 1:
        raise ValueError(f"degree {h} out of range")
    down_up = None  # d_c* d_c
    up_down = None  # d_c d_c*
    if h <= 2 * n:
        down_up = codifferential_matrix(n, h + 1) @ d_c_matrix(n, h)
    if h >= 1:
        up_down = d_c_matrix(n, h - 1) @ codifferential_matrix(n, h)
    if h == n and up_down is not None:
        up_down = up_down @ up_down
    if h == n + 1 and down_up is not None:
        down_up = down_up @ down_up
    parts = [p for p in (up_down, down_up) if p is not None]
    out = parts[0]
    for p in parts[1:]:
        out = out + p
    return out


def laplacian_homogeneity(n: int, h: int) -> int:
    return 4 if h in (n, n + 1) else 2


# Leibniz commutators -----------------------------------------------------------

@dataclass
class LeibnizReport:
    n: int
    degree: int
    # (target coord, source coord, ζ multi-index A, form multi-index B, coefficient)
    terms: List[Tuple[int, int, MultiIndex, MultiIndex, Fraction]]

    @property
    def form_degrees(self) -> set:
        """Homogeneous degrees of the derivatives falling on the form argument."""
        return {homogeneous_degree(b) for _, _, _, b, _ in self.terms}

    @property
    def zeta_degrees(self) -> set:
        return {homogeneous_degree(a) for _, _, a, _, _ in self.terms}

    def pairs(self) -> set:
        return {(homogeneous_degree(a), homogeneous_degree(b)) for _, _, a, b, _ in self.terms}

    def zeta_uses_T(self) -> bool:
        return any(a[-1] for _, _, a, _, _ in self.terms)

    def structure_ok(self) -> bool:
        """Order 0 with first derivatives of ζ off the middle degree; in degree
        ``n`` an order-1 part with ``Wζ`` plus an order-0 part with ``W²ζ``."""
        if not self.terms:
            return True
        if any(sum(a) == 0 for _, _, a, _, _ in self.terms):
            return False
        if self.degree != self.n:
            return self.pairs() <= {(1, 0)}
        return self.pairs() <= {(1, 1), (2, 0)}

    def zero_order_part(self, zeta: PolyScalar) -> List[List[PolyScalar]]:
        """Matrix (target × source) of the order-0 part with ζ substituted."""
        tgt = e0_basis(self.n, self.degree + 1).dim
        src = e0_basis(self.n, self.degree).dim
        mat = [[PolyScalar(zeta.nvars) for _ in range(src)] for _ in range(tgt)]
        for i, k, a, b, c in self.terms:
            if sum(b) == 0:
                mat[i][k] = mat[i][k] + Operator(zeta.nvars, {a: 1}).apply(zeta) * c
        return mat

    def apply(self, zeta: PolyScalar, coords: Sequence[PolyScalar]) -> List[PolyScalar]:
        """Evaluate ``[d_c, ζ]`` on coordinates using the symbolic expansion."""
        nv = zeta.nvars
        tgt = e0_basis(self.n, self.degree + 1).dim
        out = [PolyScalar(nv) for _ in range(tgt)]
        for i, k, a, b, c in self.terms:
            out[i] = out[i] + Operator(nv, {a: 1}).apply(zeta) * Operator(nv, {b: 1}).apply(coords[k]) * c
        return out


@lru_cache(maxsize=None)
def leibniz_structure(n: int, h: int) -> LeibnizReport:
    """Expand ``[d_c, ζ] = d_c ∘ ζ − ζ ∘ d_c`` on ``E₀ʰ`` for a generic ζ."""
    nv = 2 * n + 1
    b = e0_basis(n, h)
    plain = b.form([BiCoeff.base(nv, k) for k in range(b.dim)])
    with_zeta = b.form([BiCoeff.base(nv, k, with_zeta=True) for k in range(b.dim)])
    lhs = d_c_apply(with_zeta)
    rhs = d_c_apply(plain).map_coefficients(lambda c: c.times_zeta())
    comm = lhs - rhs
    coords = e0_basis(n, h + 1).coordinates(comm)
    terms = []
    for i, c in enumerate(coords):
        if isinstance(c, BiCoeff):
            for (a, k, bb), v in sorted(c.terms.items(), key=lambda kv: (kv[0][1], kv[0][0] or (), kv[0][2])):
                if v:
                    if a is None:
                        raise AssertionError("ζ-free term survived in the commutator")
                    terms.append((i, k, a, bb, Fraction(v)))
    return LeibnizReport(n, h, terms)


def leibniz_commutator(zeta: PolyScalar, alpha: Form) -> Form:
    """``[d_c, ζ]α = d_c(ζα) − ζ d_cα`` for a polynomial Rumin form."""
    return d_c_apply(alpha * zeta) - d_c_apply(alpha) * zeta
