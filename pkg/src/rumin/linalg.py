"""Exact linear algebra over the rationals.

Matrices are plain lists of rows of :class:`fractions.Fraction`. Everything
here is small (at most a few dozen rows) so clarity wins over speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List[Fraction]]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def shape(a: Matrix, ncols: int | None = None) -> Tuple[int, int]:
    if not a:
        return 0, (ncols or 0)
    return len(a), len(a[0])


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    m, n = shape(a, ncols)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None, ncols: int | None = None) -> Matrix:
    """Product ``a @ b``; ``inner``/``ncols`` disambiguate empty operands."""
    m = len(a)
    k = len(a[0]) if a else (inner or 0)
    n = len(b[0]) if b else (ncols or 0)
    out = zeros(m, n)
    for i in range(m):
        row = a[i]
        oi = out[i]
        for p in range(k):
            c = row[p]
            if c:
                bp = b[p]
                for j in range(n):
                    if bp[j]:
                        oi[j] += c * bp[j]
    return out


def matvec(a: Matrix, v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((r[j] * v[j] for j in range(len(v)) if r[j] and v[j]), Fraction(0)) for r in a]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def rref(a: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1]) if a else 0


def nullspace(a: Matrix, ncols: int | None = None) -> List[List[Fraction]]:
    """Basis of ``{v : a v = 0}``, one vector per free column, in column order."""
    n = len(a[0]) if a else (ncols or 0)
    if not a:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, piv = rref(a)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(a[i]) + identity(n)[i] for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def pinv(a: Matrix, ncols: int | None = None) -> Matrix:
    """Moore–Penrose pseudo-inverse via an exact rank factorization.

    ``a = C F`` with ``C`` the pivot columns of ``a`` and ``F`` the nonzero
    rows of its RREF; then ``a⁺ = Fᵀ (F Fᵀ)⁻¹ (Cᵀ C)⁻¹ Cᵀ``.
    """
    m = len(a)
    n = len(a[0]) if a else (ncols or 0)
    if m == 0 or n == 0:
        return zeros(n, m)
    red, piv = rref(a)
    r = len(piv)
    if r == 0:
        return zeros(n, m)
    f = red[:r]
    c = [[a[i][p] for p in piv] for i in range(m)]
    ct = transpose(c)
    ft = transpose(f)
    left = matmul(ft, inverse(matmul(f, ft)))
    right = matmul(inverse(matmul(ct, c)), ct)
    return matmul(left, right)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v) if x and y), Fraction(0))


def orthogonalize(vectors: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Gram–Schmidt without normalization; stays in ℚ."""
    out: List[List[Fraction]] = []
    for v in vectors:
        w = list(v)
        for u in out:
            c = dot(w, u) / dot(u, u)
            if c:
                w = [wi - c * ui for wi, ui in zip(w, u)]
        if any(w):
            out.append(w)
    return out


def is_zero(a: Matrix) -> bool:
    return all(v == 0 for row in a for v in row)
