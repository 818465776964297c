"""Finite differences along left translations and coordinate axes.

A first derivative uses the centred fourth-order stencil
``(−f(2h) + 8f(h) − 8f(−h) + f(−2h)) / 12h``; words of several letters
compose the stencil, one displacement per letter.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from ..group import mul_array
from ..operators import Operator, OpCoeff, pbw_word

Field = Callable[[np.ndarray], np.ndarray]

STENCIL_OFFSETS = np.array([-2.0, -1.0, 1.0, 2.0])
STENCIL_WEIGHTS = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
STENCIL_ORDER = 4


def _displace_left_invariant(points: np.ndarray, letter: int, s: float) -> np.ndarray:
    step = np.zeros(points.shape[-1])
    step[letter] = s
    return mul_array(points, step)


def _displace_euclidean(points: np.ndarray, axis: int, s: float) -> np.ndarray:
    out = points.copy()
    out[..., axis] += s
    return out


def _fd_word(f: Field, points: np.ndarray, word: Sequence[int], h: float, displace) -> np.ndarray:
    if not word:
        return f(points)
    combos = list(itertools.product(range(len(STENCIL_OFFSETS)), repeat=len(word)))
    stacked = []
    for combo in combos:
        q = points
        for letter, k in zip(word, combo):
            q = displace(q, letter, STENCIL_OFFSETS[k] * h)
        stacked.append(q)
    vals = f(np.concatenate(stacked)).reshape(len(combos), len(points))
    coeff = np.array([np.prod(STENCIL_WEIGHTS[list(c)]) for c in combos])
    return coeff @ vals / h ** len(word)


def fd_word(f: Field, points: np.ndarray, word: Sequence[int], h: float) -> np.ndarray:
    """``W_{j₁}⋯W_{j_k} f`` at ``points``; letters act through right translation ``p·(s e_j)``."""
    return _fd_word(f, np.atleast_2d(points), list(word), h, _displace_left_invariant)


def fd_partial(f: Field, points: np.ndarray, axes: Sequence[int], h: float) -> np.ndarray:
    """Coordinate partials ``∂_{a₁}⋯∂_{a_k} f``."""
    return _fd_word(f, np.atleast_2d(points), list(axes), h, _displace_euclidean)


def fd_operator(op: Operator, f: Field, points: np.ndarray, h: float,
                cache: Dict | None = None, key=None) -> np.ndarray:
    out = np.zeros(len(points))
    for idx, c in op.terms.items():
        ck = (key, idx)
        if cache is not None and ck in cache:
            v = cache[ck]
        else:
            v = fd_word(f, points, pbw_word(idx), h)
            if cache is not None:
                cache[ck] = v
        out += float(c) * v
    return out


def evaluate_symbols(symbols: Sequence[OpCoeff], fields: Sequence[Field], points: np.ndarray,
                     h: float) -> List[np.ndarray]:
    """Evaluate ``Σ c W^I f_k`` for each symbol with ``f_k = fields[k]`` by finite differences."""
    cache: Dict = {}
    out = []
    for s in symbols:
        acc = np.zeros(len(points))
        if isinstance(s, OpCoeff):
            for k in sorted(s.bases()):
                acc += fd_operator(s.operator_for(k), fields[k], points, h, cache, k)
        out.append(acc)
    return out
