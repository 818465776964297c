"""Left-invariant differential operators on ℍⁿ and symbolic coefficients.

An :class:`Operator` is a finite combination ``Σ c_I W^I`` in the ordered
(Poincaré–Birkhoff–Witt) basis ``W^I = X₁^{i₁}⋯Xₙ^{iₙ} Y₁^{…}⋯Yₙ^{…} T^{k}``.
Products are normal-ordered with ``[X_i, Y_i] = T``.

Two coefficient types let the form machinery run on *unknown* functions:

* :class:`OpCoeff`: ``Σ c · W^I f_k``, linear in base functions ``f_k``; used to
  extract constant-coefficient operator matrices and to drive finite
  differences on sampled data.
* :class:`BiCoeff`: ``Σ c · (W^A ζ)(W^B f_k)``, bilinear in a multiplier ``ζ``
  and the ``f_k``; used to analyse Leibniz commutators.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Tuple

from .linalg import rank
from .poly import PolyScalar

MultiIndex = Tuple[int, ...]


def order(idx: MultiIndex) -> int:
    """``|I|``."""
    return sum(idx)


def homogeneous_degree(idx: MultiIndex) -> int:
    """``d(I)``: horizontal letters count once, ``T`` twice."""
    return sum(idx[:-1]) + 2 * idx[-1]


def unit(nvars: int, j: int) -> MultiIndex:
    e = [0] * nvars
    e[j] = 1
    return tuple(e)


@lru_cache(maxsize=None)
def letter_times(j: int, idx: MultiIndex) -> Tuple[Tuple[MultiIndex, int], ...]:
    """Normal-ordered expansion of ``W_j · W^I``.

    ``X_i`` commutes past everything before it.  ``Y_i`` must cross ``X_i^{a}``
    which produces ``Y_i X_i^a = X_i^a Y_i − a X_i^{a−1} T``.
    """
    nvars = len(idx)
    n = (nvars - 1) // 2
    up = list(idx)
    up[j] += 1
    out = [(tuple(up), 1)]
    if n <= j < 2 * n:
        i = j - n
        a = idx[i]
        if a:
            low = list(idx)
            low[i] -= 1
            low[-1] += 1
            out.append((tuple(low), -a))
    return tuple(out)


def word_to_pbw(word: Iterable[int], nvars: int) -> Dict[MultiIndex, int]:
    """Normal-order an arbitrary word ``W_{j₁} W_{j₂} ⋯``."""
    terms: Dict[MultiIndex, int] = {(0,) * nvars: 1}
    for j in reversed(list(word)):
        new: Dict[MultiIndex, int] = {}
        for idx, c in terms.items():
            for idx2, c2 in letter_times(j, idx):
                new[idx2] = new.get(idx2, 0) + c * c2
        terms = {k: v for k, v in new.items() if v}
    return terms


def pbw_word(idx: MultiIndex) -> List[int]:
    """Letters of ``W^I`` left to right."""
    return [j for j, k in enumerate(idx) for _ in range(k)]


class Operator:
    """Element of the algebra of left-invariant differential operators."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[MultiIndex, object] | None = None):
        self.nvars = nvars
        self.terms: Dict[MultiIndex, Fraction] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[tuple(k)] = Fraction(v)

    @classmethod
    def identity(cls, nvars: int) -> "Operator":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def letter(cls, nvars: int, j: int) -> "Operator":
        return cls(nvars, {unit(nvars, j): 1})

    @classmethod
    def word(cls, nvars: int, letters: Iterable[int]) -> "Operator":
        return cls(nvars, word_to_pbw(letters, nvars))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Operator):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return operator_repr(self)

    def __add__(self, other: "Operator") -> "Operator":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Operator(self.nvars, out)

    def __neg__(self):
        return Operator(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Operator":
        return Operator(self.nvars, {k: v * c for k, v in self.terms.items()})

    def left_letter(self, j: int) -> "Operator":
        out: Dict[MultiIndex, Fraction] = {}
        for idx, c in self.terms.items():
            for idx2, c2 in letter_times(j, idx):
                out[idx2] = out.get(idx2, 0) + c * c2
        return Operator(self.nvars, out)

    def __mul__(self, other):
        """Composition ``self ∘ other``; plain numbers scale."""
        if not isinstance(other, Operator):
            return self.scale(other)
        out = Operator(self.nvars)
        for idx, c in self.terms.items():
            term = other
            for j in reversed(pbw_word(idx)):
                term = term.left_letter(j)
            out = out + term.scale(c)
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> "Operator":
        """Formal L² adjoint: ``W_j* = −W_j`` and words reverse."""
        out = Operator(self.nvars)
        for idx, c in self.terms.items():
            letters = pbw_word(idx)
            sign = -1 if len(letters) % 2 else 1
            out = out + Operator.word(self.nvars, list(reversed(letters))).scale(c * sign)
        return out

    def apply(self, f: PolyScalar) -> PolyScalar:
        out = PolyScalar(f.nvars)
        for idx, c in self.terms.items():
            g = f
            for j in reversed(pbw_word(idx)):
                g = g.W(j)
                if not g:
                    break
            out = out + g * c
        return out

    def orders(self) -> set:
        return {order(i) for i in self.terms}

    def homogeneous_degrees(self) -> set:
        return {homogeneous_degree(i) for i in self.terms}

    def uses_T(self) -> bool:
        """``T`` appears in the PBW expansion (it may still be a horizontal commutator)."""
        return any(i[-1] for i in self.terms)

    def horizontal_length(self) -> int | None:
        """``k`` if the operator is a combination of horizontal words of length ``k``, else ``None``.

        Writing ``T = X_iY_i − Y_iX_i`` removes every ``T``, so this is the
        meaningful form of "contains no ``T``".
        """
        degs = self.homogeneous_degrees()
        if len(degs) != 1:
            return None
        k = degs.pop()
        return k if is_horizontal_combination(self, k) else None


@lru_cache(maxsize=None)
def _horizontal_span(nvars: int, k: int):
    n = (nvars - 1) // 2
    words = list(product(range(2 * n), repeat=k))
    expansions = [word_to_pbw(w, nvars) for w in words]
    keys = sorted({i for e in expansions for i in e})
    return keys, [[Fraction(e.get(i, 0)) for e in expansions] for i in keys]


def is_horizontal_combination(op: Operator, k: int) -> bool:
    """Whether ``op`` lies in the span of the words ``W_{j₁}⋯W_{j_k}`` with ``j < 2n``."""
    keys, cols = _horizontal_span(op.nvars, k)
    if any(i not in keys for i in op.terms):
        return False
    target = [op.terms.get(i, Fraction(0)) for i in keys]
    return rank(cols) == rank([r + [t] for r, t in zip(cols, target)])


def operator_repr(op: Operator) -> str:
    if not op.terms:
        return "0"
    n = (op.nvars - 1) // 2
    names = [f"X{i + 1}" for i in range(n)] + [f"Y{i + 1}" for i in range(n)] + ["T"]
    parts = []
    for idx, c in sorted(op.terms.items()):
        w = "".join(f"{names[j]}^{k}" if k > 1 else names[j] for j, k in enumerate(idx) if k) or "1"
        parts.append(f"{c}·{w}")
    return " + ".join(parts)


class OpCoeff:
    """``Σ c · W^I f_k`` with ``f_k`` unknown base functions."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Tuple[int, MultiIndex], object] | None = None):
        self.nvars = nvars
        self.terms: Dict[Tuple[int, MultiIndex], object] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = v

    @classmethod
    def base(cls, nvars: int, k: int) -> "OpCoeff":
        return cls(nvars, {(k, (0,) * nvars): Fraction(1)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, OpCoeff):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return " + ".join(f"{c}·W{list(i)}f{k}" for (k, i), c in sorted(self.terms.items())) or "0"

    def __add__(self, other):
        if not isinstance(other, OpCoeff):
            if other == 0:
                return self
            raise TypeError("cannot add a constant to an operator symbol")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return OpCoeff(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return OpCoeff(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (OpCoeff, PolyScalar)):
            raise TypeError("OpCoeff only scales by constants")
        return OpCoeff(self.nvars, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def W(self, j: int) -> "OpCoeff":
        out: Dict[Tuple[int, MultiIndex], object] = {}
        for (k, idx), c in self.terms.items():
            for idx2, c2 in letter_times(j, idx):
                key = (k, idx2)
                out[key] = out.get(key, 0) + c * c2
        return OpCoeff(self.nvars, out)

    def operator_for(self, k: int) -> Operator:
        """The operator acting on base function ``k``."""
        return Operator(self.nvars, {i: c for (kk, i), c in self.terms.items() if kk == k})

    def bases(self) -> set:
        return {k for k, _ in self.terms}


class BiCoeff:
    """``Σ c · (W^A ζ)(W^B f_k)`` for a multiplier ``ζ`` and base functions ``f_k``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Tuple[MultiIndex, int, MultiIndex], object] | None = None):
        self.nvars = nvars
        self.terms: Dict[Tuple[MultiIndex, int, MultiIndex], object] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = v

    @classmethod
    def base(cls, nvars: int, k: int, with_zeta: bool = False) -> "BiCoeff":
        z = (0,) * nvars
        return cls(nvars, {(z, k, z): Fraction(1)}) if with_zeta else cls(nvars, {(None, k, z): Fraction(1)})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, BiCoeff):
            if other == 0:
                return self
            raise TypeError("cannot add a constant to a bilinear symbol")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiCoeff(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return BiCoeff(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (BiCoeff, PolyScalar, OpCoeff)):
            raise TypeError("BiCoeff only scales by constants")
        return BiCoeff(self.nvars, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def times_zeta(self) -> "BiCoeff":
        """Multiply by ζ (only valid on ζ-free terms)."""
        z = (0,) * self.nvars
        out = {}
        for (a, k, b), c in self.terms.items():
            if a is not None:
                raise ValueError("term already carries ζ")
            out[(z, k, b)] = c
        return BiCoeff(self.nvars, out)

    def W(self, j: int) -> "BiCoeff":
        out: Dict = {}
        for (a, k, b), c in self.terms.items():
            if a is not None:
                for a2, c2 in letter_times(j, a):
                    key = (a2, k, b)
                    out[key] = out.get(key, 0) + c * c2
            for b2, c2 in letter_times(j, b):
                key = (a, k, b2)
                out[key] = out.get(key, 0) + c * c2
        return BiCoeff(self.nvars, out)
