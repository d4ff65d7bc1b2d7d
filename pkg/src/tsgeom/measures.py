"""
Windowed semantic entropy, permutation entropy, information power,
spectral power and the entropy/power ratio.

All windowed measures are computed from per-sample arrays built once for
the whole signal; a window ``[a, a + w)`` owns the interior points
``a+1 .. a+w-2``, i.e. the slice ``[a, a + w - 2)`` of those arrays.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInputError, InvalidInputError, NoDefinedValueError
from .signal import Signal, WindowSpec, _as_samples, window_starts
from .symbolize import N_CONFIGURATIONS, SymbolString, _triples, classify_array

__all__ = [
    "MEASURES",
    "DEFAULT_EPS_POWER",
    "DEFAULT_WINDOW_S",
    "WindowedSeries",
    "ConfigurationHistogram",
    "RatioResult",
    "histogram",
    "semantic_entropy",
    "permutation_entropy3",
    "ordinal_patterns3",
    "information_power",
    "p_operator",
    "spectral_power",
    "default_window",
    "measure_series",
    "ratio_series",
    "locate_min",
]

MEASURES = (
    "semantic_entropy",
    "permutation_entropy",
    "information_power",
    "spectral_power",
    "ep_ratio",
)
DEFAULT_EPS_POWER = 1e-12
DEFAULT_WINDOW_S = 2.0
MAX_SEMANTIC_ENTROPY = math.log2(N_CONFIGURATIONS)
MAX_PERMUTATION_ENTROPY = math.log2(6)


@dataclass(frozen=True, eq=False)
class WindowedSeries:
    """One value per window; undefined windows hold NaN."""

    measure_tag: str
    window_starts: np.ndarray
    values: np.ndarray
    undefined_windows: tuple = field(default=())

    def __post_init__(self):
        starts = np.asarray(self.window_starts, dtype=float).reshape(-1)
        vals = np.asarray(self.values, dtype=float).reshape(-1)
        if starts.shape != vals.shape:
            raise InvalidInputError("one value per window start required")
        object.__setattr__(self, "window_starts", starts)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "undefined_windows", tuple(int(i) for i in self.undefined_windows))

    def __len__(self):
        return self.values.shape[0]

    @property
    def defined(self):
        mask = np.ones(len(self), dtype=bool)
        mask[list(self.undefined_windows)] = False
        return mask

    def __eq__(self, other):
        if not isinstance(other, WindowedSeries):
            return NotImplemented
        return (
            self.measure_tag == other.measure_tag
            and np.array_equal(self.window_starts, other.window_starts)
            and np.array_equal(self.values, other.values, equal_nan=True)
            and self.undefined_windows == other.undefined_windows
        )

    __hash__ = None


@dataclass(frozen=True)
class ConfigurationHistogram:
    counts: tuple

    @property
    def total(self):
        return sum(self.counts)

    @property
    def probabilities(self):
        c = np.asarray(self.counts, dtype=float)
        return c / c.sum()

    def as_dict(self):
        return {i + 1: n for i, n in enumerate(self.counts)}


def _ids(symbols):
    if isinstance(symbols, SymbolString):
        return symbols.symbols
    return np.asarray(symbols).reshape(-1)


def histogram(symbols):
    s = _ids(symbols).astype(np.int64)
    counts = np.bincount(s, minlength=N_CONFIGURATIONS + 1)[1:]
    return ConfigurationHistogram(tuple(int(c) for c in counts))


def _entropy_bits(counts):
    """Shannon entropy (bits) along the last axis of a count array."""
    # sorted so the result does not depend on how classes are labelled
    counts = np.sort(np.asarray(counts, dtype=float), axis=-1)
    total = counts.sum(axis=-1, keepdims=True)
    p = counts / total
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    h = -terms.sum(axis=-1)
    # -0.0 from a single certain outcome
    return h + 0.0


def semantic_entropy(symbols):
    """Shannon entropy in bits of the configuration frequencies."""
    s = _ids(symbols)
    if s.shape[0] == 0:
        raise EmptyInputError("semantic entropy of an empty symbol string")
    return float(_entropy_bits(histogram(s).counts))


TIE_POLICIES = ("stable", "exclude")


def _ordinal_table():
    # (a<=b, a<=c, b<=c) -> index of the stable argsort among the 6 permutations;
    # 2 of the 8 flag combinations are intransitive and never occur
    perms = sorted(itertools.permutations(range(3)))
    table = np.zeros(8, dtype=np.int8)
    for t in itertools.product(range(3), repeat=3):
        a, b, c = t
        key = (a <= b) * 4 + (a <= c) * 2 + (b <= c)
        table[key] = perms.index(tuple(sorted(range(3), key=t.__getitem__)))
    return table


_ORDINAL_TABLE = _ordinal_table()


def ordinal_patterns3(samples):
    """Order-3 ordinal pattern code (0..5) of every consecutive triple.

    Ties are ranked by temporal order: the earlier of two equal samples
    counts as the smaller.  Codes follow the lexicographic order of the
    rank permutations.  Returns ``(codes, tied)`` where ``tied`` flags
    triples containing equal values.
    """
    x = _as_samples(samples)
    if len(x) < 3:
        raise EmptyInputError(f"need at least 3 samples, got {len(x)}")
    a, b, c = x[:-2], x[1:-1], x[2:]
    ab = (a <= b).astype(np.int8)
    ac = (a <= c).astype(np.int8)
    bc = (b <= c).astype(np.int8)
    codes = _ORDINAL_TABLE[ab * 4 + ac * 2 + bc]
    tied = (a == b) | (a == c) | (b == c)
    return codes, tied


def permutation_entropy3(samples, tie_policy="stable"):
    """Order-3 permutation entropy in bits.

    ``tie_policy="exclude"`` drops triples containing equal samples instead
    of ranking them by position.
    """
    if tie_policy not in TIE_POLICIES:
        raise InvalidInputError(f"unknown tie policy {tie_policy!r}")
    codes, tied = ordinal_patterns3(samples)
    if tie_policy == "exclude":
        codes = codes[~tied]
        if codes.size == 0:
            raise EmptyInputError("every triple contains a tie")
    return float(_entropy_bits(np.bincount(codes, minlength=6)))


def p_operator(samples, product="left"):
    """Pointwise power operator at every interior sample.

    ``left`` multiplies the second difference by the backward first
    difference, ``right`` by the forward one.
    """
    x = _as_samples(samples)
    if len(x) < 3:
        raise EmptyInputError(f"need at least 3 samples, got {len(x)}")
    d_left, d2, d_right = _triples(x)
    if product == "left":
        return d2 * d_left
    if product == "right":
        return d2 * d_right
    raise InvalidInputError(f"product must be 'left' or 'right', got {product!r}")


def information_power(samples, product="left"):
    """Mean absolute power-operator value over the interior samples.

    Units are amplitude squared per sample cubed; multiply by
    ``sample_rate**3`` for a per-second figure comparable with the
    continuous ``|s'' s'|``.
    """
    return float(np.mean(np.abs(p_operator(samples, product))))


def spectral_power(samples):
    """Mean squared deviation from the window mean."""
    x = _as_samples(samples)
    if len(x) == 0:
        raise EmptyInputError("spectral power of an empty window")
    return float(np.mean((x - x.mean()) ** 2))


def default_window(sample_rate):
    """Two-second windows with a two-second hop."""
    return WindowSpec.from_seconds(DEFAULT_WINDOW_S, DEFAULT_WINDOW_S, sample_rate)


def _window_counts(codes, n_classes, starts, length):
    """Per-window class counts over ``codes[s : s + length]`` for each start."""
    onehot = np.zeros((codes.shape[0] + 1, n_classes), dtype=np.int32)
    onehot[np.arange(1, codes.shape[0] + 1), codes] = 1
    np.cumsum(onehot, axis=0, out=onehot)
    return onehot[starts + length] - onehot[starts]


def _window_means(values, starts, length, chunk_elems=1 << 22):
    """Mean of ``values[s : s + length]`` for each start, summed per window."""
    view = np.lib.stride_tricks.sliding_window_view(values, length)
    out = np.empty(starts.shape[0])
    step = max(1, chunk_elems // length)
    for i in range(0, starts.shape[0], step):
        out[i : i + step] = view[starts[i : i + step]].sum(axis=1)
    return out / length


def _prepare(signal, spec):
    if isinstance(signal, Signal):
        x, fs = signal.samples, signal.sample_rate
    else:
        x, fs = _as_samples(signal), 1.0
    if spec is None:
        spec = default_window(fs)
    starts = window_starts(len(x), spec)
    return x, fs, spec, starts


class _SeriesBuilder:
    """Lazily computes per-sample arrays shared by several measures."""

    def __init__(self, x, fs, spec, starts, tau, product):
        self.x, self.fs, self.spec, self.starts = x, fs, spec, starts
        self.tau, self.product = tau, product
        self.m = spec.width - 2
        self.times = starts / fs
        self._ids = None

    def _series(self, tag, values, undefined=()):
        return WindowedSeries(tag, self.times, values, undefined)

    def semantic_entropy(self):
        if self.starts.size == 0:
            return self._series("semantic_entropy", [])
        if self._ids is None:
            self._ids = classify_array(self.x, self.tau).astype(np.intp) - 1
        counts = _window_counts(self._ids, N_CONFIGURATIONS, self.starts, self.m)
        return self._series("semantic_entropy", _entropy_bits(counts))

    def permutation_entropy(self):
        if self.starts.size == 0:
            return self._series("permutation_entropy", [])
        codes, _ = ordinal_patterns3(self.x)
        counts = _window_counts(codes.astype(np.intp), 6, self.starts, self.m)
        return self._series("permutation_entropy", _entropy_bits(counts))

    def information_power(self):
        if self.starts.size == 0:
            return self._series("information_power", [])
        p = np.abs(p_operator(self.x, self.product))
        return self._series("information_power", _window_means(p, self.starts, self.m))

    def spectral_power(self):
        if self.starts.size == 0:
            return self._series("spectral_power", [])
        w = self.spec.width
        mean = _window_means(self.x, self.starts, w)
        # second pass around each window's own mean, avoiding cancellation
        view = np.lib.stride_tricks.sliding_window_view(self.x, w)
        out = np.empty(self.starts.shape[0])
        step = max(1, (1 << 22) // w)
        for i in range(0, self.starts.shape[0], step):
            blk = view[self.starts[i : i + step]]
            out[i : i + step] = ((blk - mean[i : i + step, None]) ** 2).sum(axis=1) / w
        return self._series("spectral_power", out)


@dataclass(frozen=True)
class RatioResult:
    """Entropy/power ratio with its two component series."""

    ratio: WindowedSeries
    entropy: WindowedSeries
    power: WindowedSeries


def measure_series(signal, measure, spec=None, tau=0.0, product="left", eps_power=DEFAULT_EPS_POWER):
    """Windowed series of one named measure.

    ``spec`` defaults to two-second windows at the signal's sample rate.
    A signal shorter than one window gives an empty series.
    """
    if measure == "ep_ratio":
        return ratio_series(signal, spec, tau, product, eps_power).ratio
    if measure not in MEASURES:
        raise InvalidInputError(f"unknown measure {measure!r}; choose from {MEASURES}")
    b = _SeriesBuilder(*_prepare(signal, spec), tau, product)
    return getattr(b, measure)()


def _ratio(entropy, power, eps_power, scale=1.0, tag="ep_ratio"):
    p = power.values
    undefined = np.flatnonzero(~(p >= eps_power))
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = entropy.values / (p * scale)
    vals[undefined] = np.nan
    return WindowedSeries(tag, entropy.window_starts, vals, undefined)


def ratio_series(signal, spec=None, tau=0.0, product="left", eps_power=DEFAULT_EPS_POWER):
    """Semantic entropy over information power, window by window.

    Windows whose power falls below ``eps_power`` get a NaN sentinel and
    are listed in ``undefined_windows``.
    """
    if not eps_power >= 0:
        raise InvalidInputError(f"eps_power must be >= 0, got {eps_power!r}")
    b = _SeriesBuilder(*_prepare(signal, spec), tau, product)
    e = b.semantic_entropy()
    p = b.information_power()
    return RatioResult(_ratio(e, p, eps_power), e, p)


def locate_min(series):
    """Index and start time of the smallest defined value (earliest on ties)."""
    vals = np.where(series.defined, series.values, np.inf)
    if vals.size == 0 or not np.any(series.defined):
        raise NoDefinedValueError(f"{series.measure_tag}: no defined window")
    i = int(np.argmin(vals))
    return i, float(series.window_starts[i])
