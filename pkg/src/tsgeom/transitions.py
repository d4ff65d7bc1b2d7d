"""
13x13 transition frequencies between consecutive configurations.

Two neighbourhoods centred on ``n`` and ``n+1`` share the difference
``s[n+1] - s[n]``, so configuration ``j`` can follow ``i`` only when the
last sign of ``i`` equals the first sign of ``j``.  That leaves 59 of the
169 cells admissible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CorruptedInputError, EmptyInputError
from .signal import WindowSpec, _as_samples, window_starts
from .symbolize import (
    ABUNDANT_IDS,
    FIRST_SIGN,
    LAST_SIGN,
    N_CONFIGURATIONS,
    SymbolString,
    classify_array,
)

__all__ = [
    "TransitionMatrix",
    "BlockViews",
    "validity_mask",
    "count_transitions",
    "block_views",
    "windowed_transitions",
]

_N = N_CONFIGURATIONS
_NA = len(ABUNDANT_IDS)


def validity_mask():
    """Boolean 13x13 array; ``mask[i-1, j-1]`` is true iff ``i -> j`` is admissible."""
    return LAST_SIGN[1:, None] == FIRST_SIGN[None, 1:]


_MASK = validity_mask()
_MASK.flags.writeable = False


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Integer transition tallies and their frequency normalisation.

    ``counts[i-1, j-1]`` counts ``i`` immediately followed by ``j``.
    ``cells`` divides by the number of adjacent pairs, so all 169 entries
    together sum to one.
    """

    counts: np.ndarray

    def __post_init__(self):
        arr = np.array(self.counts, dtype=np.int64, copy=True).reshape(_N, _N)
        arr.flags.writeable = False
        object.__setattr__(self, "counts", arr)

    @property
    def count(self):
        return int(self.counts.sum())

    @property
    def cells(self):
        total = self.count
        if total == 0:
            return np.zeros((_N, _N))
        return self.counts / total

    def row_stochastic(self):
        """Each nonempty row normalised to one; empty rows stay zero."""
        rows = self.counts.sum(axis=1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(rows > 0, self.counts / np.maximum(rows, 1), 0.0)
        return out

    def __add__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return TransitionMatrix(self.counts + other.counts)

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        return np.array_equal(self.counts, other.counts)

    __hash__ = None


def _ids(symbols):
    if isinstance(symbols, SymbolString):
        return symbols.symbols
    return np.asarray(symbols, dtype=np.int64).reshape(-1)


def count_transitions(symbols):
    """Tally adjacent symbol pairs.

    Raises
    ------
    EmptyInputError
        Fewer than two symbols.
    CorruptedInputError
        A pair violates sign continuity; no real signal yields it.
    """
    s = _ids(symbols).astype(np.int64)
    if s.shape[0] < 2:
        raise EmptyInputError("need at least two symbols to count transitions")
    if s.min() < 1 or s.max() > _N:
        k = int(np.flatnonzero((s < 1) | (s > _N))[0])
        raise CorruptedInputError(k, (int(s[k]), int(s[k])))
    a, b = s[:-1] - 1, s[1:] - 1
    bad = np.flatnonzero(~_MASK[a, b])
    if bad.size:
        k = int(bad[0])
        raise CorruptedInputError(k, (int(s[k]), int(s[k + 1])))
    counts = np.bincount(a * _N + b, minlength=_N * _N).reshape(_N, _N)
    return TransitionMatrix(counts)


class BlockViews(NamedTuple):
    abundant_abundant: np.ndarray
    abundant_sparse: np.ndarray
    sparse_abundant: np.ndarray
    sparse_sparse: np.ndarray

    def sums(self):
        return {name: float(block.sum()) for name, block in self._asdict().items()}


def block_views(m):
    """Split frequencies by abundance class (ids 1-6 versus 7-13)."""
    c = m.cells if isinstance(m, TransitionMatrix) else np.asarray(m, dtype=float)
    return BlockViews(c[:_NA, :_NA], c[:_NA, _NA:], c[_NA:, :_NA], c[_NA:, _NA:])


def windowed_transitions(signal, spec, tau=0.0):
    """Transition matrix of every window of ``signal``.

    Returns ``(starts, matrices)`` where ``starts`` are sample indices.
    """
    x = _as_samples(signal)
    starts = window_starts(len(x), spec)
    if starts.size == 0:
        return starts, []
    ids = classify_array(x, tau)
    m = spec.width - 2
    return starts, [count_transitions(ids[s : s + m]) for s in starts]
