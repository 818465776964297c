"""Verification suites run by ``rumin verify``.

Each check returns ``(measured, tolerance, passed)``; exact checks report the
number of failures with tolerance 0.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

import numpy as np

from . import exterior as ext
from .exterior import Form, basis, hodge_star, inner, volume, wedge
from .forms import (OperatorMatrix, d_c_apply, d_c_matrix, dilation_pullback, exterior_d, laplacian_matrix,
                    laplacian_homogeneity, leibniz_structure, pi_E, pi_E0_form, pi_E_general,
                    random_poly_form, random_rumin_form)
from .group import GroupPoint, dilate, gauge, gauge_distance, group_mul
from .operators import Operator
from .parallel import ordered_map
from .poly import PolyScalar
from .projections import (e0_basis, expected_dimension, is_primitive_horizontal, pi_E0,
                          projector_from_basis, star_basis_spans)

SUITES = ("algebra", "rumin", "symbolic", "numeric-fast", "numeric-full")


class Skip(Exception):
    pass


@dataclass
class CheckResult:
    check_id: str
    status: str
    measured: object
    tolerance: object
    anchor: str

    def row(self) -> dict:
        d = asdict(self)
        d["check-id"] = d.pop("check_id")
        return d


@dataclass
class SuiteReport:
    suite: str
    n: int
    seed: int
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    def to_json(self) -> dict:
        counts = {s: sum(c.status == s for c in self.checks) for s in ("pass", "fail", "skip")}
        return {"suite": self.suite, "n": self.n, "seed": self.seed,
                "checks": [c.row() for c in self.checks], "summary": counts}


@dataclass
class Context:
    n: int
    seed: int
    grid: int
    gauss: int
    lam: float

    def rng(self, salt: int) -> random.Random:
        return random.Random(self.seed * 1000003 + salt)

    def nrng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


CheckFn = Callable[[Context], Tuple[object, object, bool]]


def _count(fails: int) -> Tuple[int, int, bool]:
    return fails, 0, fails == 0


def _rand_point(rng: random.Random, n: int) -> GroupPoint:
    f = lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 5))  # noqa: E731
    return GroupPoint(tuple(f() for _ in range(n)), tuple(f() for _ in range(n)), f())


# algebra --------------------------------------------------------------------

def _assoc(ctx):
    rng = ctx.rng(1)
    fails = 0
    for _ in range(100):
        p, q, r = (_rand_point(rng, ctx.n) for _ in range(3))
        fails += (p * q) * r != p * (q * r)
    return _count(fails)


def _dilation_auto(ctx):
    rng = ctx.rng(2)
    fails = 0
    for _ in range(100):
        p, q = _rand_point(rng, ctx.n), _rand_point(rng, ctx.n)
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        fails += dilate(lam, p * q) != dilate(lam, p) * dilate(lam, q)
    return _count(fails)


def _inverse(ctx):
    rng = ctx.rng(3)
    fails = 0
    e = GroupPoint.identity(ctx.n)
    for _ in range(100):
        p = _rand_point(rng, ctx.n)
        fails += (p * p.inverse() != e) + (e * p != p)
    return _count(fails)


def _gauge_props(ctx):
    rng = ctx.nrng(4)
    worst = 0.0
    for _ in range(200):
        v = rng.standard_normal((3, 2 * ctx.n + 1))
        p, q, g = (GroupPoint.from_coords(list(map(float, r))) for r in v)
        lam = float(rng.uniform(0.1, 5))
        worst = max(worst, abs(gauge_distance(g * p, g * q) - gauge_distance(p, q)),
                    abs(gauge(dilate(lam, p)) - lam * gauge(p)) / max(1.0, lam * gauge(p)))
    return worst, 1e-12, worst < 1e-12


def _gauge_t(ctx):
    v = gauge(GroupPoint((0,) * ctx.n, (0,) * ctx.n, 1))
    return v, 0, v == 2.0


def _star(ctx):
    n = ctx.n
    fails = 0
    for h in range(2 * n + 2):
        for a in basis(n, h):
            fa = Form(n, h, {a: Fraction(1)})
            sa = hodge_star(fa)
            for b in basis(n, h):
                fb = Form(n, h, {b: Fraction(1)})
                fails += wedge(fb, sa) != volume(n) * inner(fb, fa)
            sign = (-1) ** (h * (2 * n + 1 - h))
            fails += hodge_star(sa) != fa * sign
    return _count(fails)


def _dims(ctx):
    fails = 0
    for n in (1, 2, 3):
        for h in range(2 * n + 2):
            fails += e0_basis(n, h).dim != expected_dimension(n, h)
    return _count(fails)


def _projector(ctx):
    fails = 0
    for h in range(2 * ctx.n + 2):
        p = pi_E0(ctx.n, h)
        fails += p != projector_from_basis(e0_basis(ctx.n, h))
        fails += (p @ p) != p
        fails += p.transpose() != p
    return _count(fails)


def _star_dual(ctx):
    return _count(sum(not star_basis_spans(ctx.n, h) for h in range(2 * ctx.n + 2)))


def _primitive(ctx):
    fails = 0
    for h in range(2, ctx.n + 1):
        fails += sum(not is_primitive_horizontal(f) for f in e0_basis(ctx.n, h).forms())
    return _count(fails)


# rumin ----------------------------------------------------------------------

def _forms_for(ctx, salt, count, degree=3):
    rng = ctx.rng(salt)
    n = ctx.n
    return [(h, random_poly_form(n, h, degree, rng)) for _ in range(count) for h in range(2 * n + 2)]


def _rumin_forms(ctx, salt, count, degree=3):
    rng = ctx.rng(salt)
    n = ctx.n
    return [(h, random_rumin_form(n, h, degree, rng)) for _ in range(count) for h in range(2 * n + 2)]


def _count_in_parallel(items, fn) -> Tuple[int, int, bool]:
    return _count(sum(ordered_map(fn, items)))


def _count_forms(ctx, salt, pred, rumin=False, count=None):
    count = count or (3 if ctx.n >= 3 else 6)
    items = (_rumin_forms if rumin else _forms_for)(ctx, salt, count, 2 if ctx.n >= 3 else 3)
    return _count_in_parallel(items, lambda hf: int(not pred(*hf)))


def _d2(ctx):
    return _count_forms(ctx, 10, lambda h, a: h >= 2 * ctx.n or not exterior_d(exterior_d(a)))


def _dc2(ctx):
    return _count_forms(ctx, 11, lambda h, a: h >= 2 * ctx.n or not d_c_apply(d_c_apply(a)), rumin=True)


def _dpiE(ctx):
    return _count_forms(ctx, 12, lambda h, a: h > 2 * ctx.n
                        or exterior_d(pi_E_general(a)) == pi_E_general(exterior_d(a)))


def _pi_sandwich(ctx):
    def ok(h, a):
        p0 = pi_E0_form(a)
        pe = pi_E_general(a)
        return (pi_E0_form(pi_E_general(pi_E0_form(a))) == p0
                and pi_E_general(pi_E0_form(pe)) == pe)

    return _count_forms(ctx, 13, ok)


def _dc_is_d(ctx):
    return _count_forms(ctx, 14, lambda h, a: h <= ctx.n or h > 2 * ctx.n
                        or d_c_apply(a) == exterior_d(a), rumin=True)


def _pi_e_strict(ctx):
    return _count_forms(ctx, 15, lambda h, a: pi_E(a) == pi_E_general(a), rumin=True)


def _dilation(ctx):
    def ok(h, a):
        if h > 2 * ctx.n:
            return True
        return all(dilation_pullback(s, d_c_apply(a)) == d_c_apply(dilation_pullback(s, a))
                   for s in (Fraction(2), Fraction(1, 3)))

    return _count_forms(ctx, 16, ok, rumin=True)


def _coleibniz(ctx):
    rng = ctx.rng(17)
    n = ctx.n
    N = 2 * n + 1

    def ok(h, a):
        if h <= n or h > 2 * n:
            return True
        psi = PolyScalar.random(N, 2, rng)
        dpsi = exterior_d(Form.scalar(n, psi))
        return d_c_apply(a * psi) == wedge(dpsi, a) + d_c_apply(a) * psi

    return _count_forms(ctx, 18, ok, rumin=True)


# symbolic -------------------------------------------------------------------

def _grading(ctx):
    fails = 0
    n = ctx.n
    for h in range(2 * n + 1):
        m = d_c_matrix(n, h)
        fails += m.entry_degrees() != ({2} if h == n else {1})
        fails += not m.horizontal()
    for h in range(2 * n + 2):
        fails += laplacian_matrix(n, h).entry_degrees() != {laplacian_homogeneity(n, h)}
    return _count(fails)


def _lap0(ctx):
    n = ctx.n
    N = 2 * n + 1
    want = Operator(N)
    for j in range(2 * n):
        want = want - Operator.word(N, [j, j])
    return _count(int(laplacian_matrix(n, 0).entries[0][0] != want))


def _leibniz(ctx):
    fails = 0
    for h in range(2 * ctx.n + 1):
        r = leibniz_structure(ctx.n, h)
        fails += not r.structure_ok()
    return _count(fails)


def _roundtrip(ctx):
    fails = 0
    for h in range(2 * ctx.n + 1):
        for m in (d_c_matrix(ctx.n, h), laplacian_matrix(ctx.n, h)):
            fails += OperatorMatrix.from_json(__import__("json").loads(m.dumps())) != m
    return _count(fails)


def _dc_matrix_consistent(ctx):
    rng = ctx.rng(19)
    fails = 0
    n = ctx.n
    for h in range(2 * n + 1):
        b = e0_basis(n, h)
        coords = [PolyScalar.random(2 * n + 1, 3, rng) for _ in range(b.dim)]
        got = d_c_matrix(n, h).apply(coords)
        want = e0_basis(n, h + 1).coordinates(d_c_apply(b.form(coords)))
        fails += any(g != w for g, w in zip(got, want))
    return _count(fails)


# numerics -------------------------------------------------------------------

def _numeric_checks(full: bool):
    from .numerics import (CutoffForm, Domain, QuadratureSpec, annulus_admissibility, annulus_constants,
                           byparts_residual, construct_pair, euclidean_homotopy_residual, homotopy_residual,
                           sublaplacian_fundamental_residual)
    from .numerics.euclid import euclidean_d
    from .numerics.quadrature import interior_samples

    def spec(ctx):
        return QuadratureSpec(ctx.grid, ctx.gauss)

    def euclid(ctx):
        if ctx.n != 1:
            raise Skip
        rng = ctx.rng(30)
        D = Domain.euclidean_ball(1, 1.0)
        pts = interior_samples(D, 20, ctx.nrng(30))
        worst = 0.0
        for h in (1, 2, 3):
            eta = Form(1, h - 1, {m: PolyScalar.random(3, 5, rng, 0.3) for m in basis(1, h - 1)})
            worst = max(worst, euclidean_homotopy_residual(euclidean_d(eta), D, spec(ctx), pts))
        tol = 1e-4 if ctx.grid >= 49 else 1e-3 if ctx.grid >= 33 else 1e-2
        return worst, tol, worst < tol

    def rumin_hom(ctx):
        if ctx.n != 1:
            raise Skip
        rng = ctx.rng(31)
        D = Domain.koranyi_ball(1, 1.0)
        pts = interior_samples(D, 20, ctx.nrng(31))
        worst = max(homotopy_residual(random_rumin_form(1, h - 1, 5, rng), D, spec(ctx), pts)
                    for h in (1, 2, 3))
        tol = 1e-3 if ctx.grid >= 33 else 1e-2
        return worst, tol, worst < tol

    def sublap(ctx):
        pts = ctx.nrng(32).standard_normal((40, 2 * ctx.n + 1))
        pts = pts[(lambda r: (r > 0.4) & (r < 2))(np.array([gauge(GroupPoint.from_coords(list(p))) for p in pts]))][:10]
        r = sublaplacian_fundamental_residual(pts, ctx.n, h=5e-3)
        return r["fd_max"], 1e-6, r["symbolic_zero"] and r["fd_max"] < 1e-6

    def annulus(ctx):
        a = annulus_constants(ctx.n, "grid")
        b = annulus_constants(ctx.n, "random")
        rel = max(abs(a.tau1 - b.tau1) / a.tau1, abs(a.tau2 - b.tau2) / a.tau2)
        s1, s2 = construct_pair(1.0, 1.01, ctx.n)
        rep = annulus_admissibility(1.0, 1.01, s1, s2, ctx.n)
        ok = rel < 1e-4 and rep.window_nonempty and rep.admissible and rep.inclusions["dilated_U_in_V"] \
            and rep.inclusions["dilated_U_prime_in_V_prime"]
        return rel, 1e-4, ok

    def byparts(ctx):
        if ctx.n != 1:
            raise Skip
        rng = ctx.rng(33)
        U = Domain.koranyi_ball(1, 1.0)
        count = 10 if full else 2
        worst = 0.0
        for _ in range(count):
            phi = random_rumin_form(1, 1, 2, rng)
            alpha = CutoffForm.build(random_rumin_form(1, 1, 2, rng), Fraction(9, 10), 8)
            worst = max(worst, byparts_residual(phi, alpha, U, QuadratureSpec(max(ctx.grid, 33), ctx.gauss)))
        return worst, 1e-5, worst < 1e-5

    return [
        ("num.euclidean-homotopy", "ω = dK_Euc ω for closed ω", euclid),
        ("num.rumin-homotopy", "ω = d_c K ω for d_c-closed ω", rumin_hom),
        ("num.sublaplacian-fundamental", "Σ W_j² ρ^{2−Q} = 0 away from e", sublap),
        ("num.annulus-window", "r₂/τ₂ < s₁ < r₁/τ₁", annulus),
        ("num.byparts", "∫ d_cφ∧α = (−1)^{h+1} ∫ φ∧d_cα", byparts),
    ]


REGISTRY: Dict[str, List[Tuple[str, str, CheckFn]]] = {
    "algebra": [
        ("group.associativity", "(pq)r = p(qr)", _assoc),
        ("group.inverse", "p·(−p) = e, e·p = p", _inverse),
        ("group.dilation-automorphism", "δ_λ(pq) = δ_λp δ_λq", _dilation_auto),
        ("group.gauge-invariance", "d(gp,gq) = d(p,q), ρ(δ_λp) = λρ(p)", _gauge_props),
        ("group.gauge-t-axis", "ρ(0,0,1) = 2", _gauge_t),
        ("exterior.hodge", "b∧⋆a = ⟨b,a⟩dV, ⋆⋆ = (−1)^{h(2n+1−h)}", _star),
        ("projections.dimensions", "dim E₀ʰ = C(2n,h) − C(2n,h−2)", _dims),
        ("projections.pi-E0", "Id − d₀⁻¹d₀ − d₀d₀⁻¹ is the orthogonal projector on E₀", _projector),
        ("projections.star-duality", "⋆E₀ʰ = E₀^{2n+1−h}", _star_dual),
        ("projections.primitive", "E₀ʰ = primitive horizontal covectors, h ≤ n", _primitive),
    ],
    "rumin": [
        ("rumin.d-squared", "d² = 0", _d2),
        ("rumin.dc-squared", "d_c² = 0", _dc2),
        ("rumin.d-pi-E", "dΠ_E = Π_E d", _dpiE),
        ("rumin.projector-sandwich", "Π_{E₀}Π_EΠ_{E₀} = Π_{E₀}, Π_EΠ_{E₀}Π_E = Π_E", _pi_sandwich),
        ("rumin.dc-equals-d", "d_c = d above degree n", _dc_is_d),
        ("rumin.pi-E-formula", "Π_E = 1 − d₀⁻¹d₁ on E₀ (h ≤ n)", _pi_e_strict),
        ("rumin.dilation", "δ_s^# d_c = d_c δ_s^#", _dilation),
        ("rumin.coleibniz", "d_c(ψα) = dψ∧α + ψ d_cα above degree n", _coleibniz),
    ],
    "symbolic": [
        ("symbolic.dc-grading", "d(I) = 2 in degree n, else 1; no T", _grading),
        ("symbolic.laplacian-0", "Δ₀ = −Σ W_j²", _lap0),
        ("symbolic.leibniz", "[d_c, ζ] = P₀(Wζ); degree n: P₁(Wζ) + P₀(W²ζ)", _leibniz),
        ("symbolic.dc-matrix", "matrix of d_c reproduces d_c", _dc_matrix_consistent),
        ("symbolic.json-roundtrip", "import(export(M)) = M", _roundtrip),
    ],
}


def _jsonable(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    return v


def run_suite(name: str, n: int = 1, seed: int = 0, grid: int | None = None, gauss: int | None = None,
              lam: float = 2.0) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    full = name == "numeric-full"
    ctx = Context(n, seed, grid or (49 if full else 17), gauss or 16, lam)
    checks = _numeric_checks(full) if name.startswith("numeric") else REGISTRY[name]
    report = SuiteReport(name, n, seed)
    for cid, anchor, fn in checks:
        try:
            measured, tol, ok = fn(ctx)
            status = "pass" if ok else "fail"
        except Skip:
            measured, tol, status = None, None, "skip"
        report.checks.append(CheckResult(cid, status, _jsonable(measured), _jsonable(tol), anchor))
    return report
