"""
Classification of 3-point neighbourhoods into the 13 geometric configurations.

Differences follow a mixed convention so that everything is attributed to
the middle sample ``n``::

    d_left  = s[n]   - s[n-1]      backward first difference
    d_right = s[n+1] - s[n]        the next backward difference
    d2      = d_right - d_left     forward difference of the first difference

The power-operator products at ``n`` are ``left = d2 * d_left`` and
``right = d2 * d_right``.  Of the 27 sign triples ``(d_left, d2, d_right)``
only 13 are realizable by real numbers, because ``d2`` is the difference of
the two outer terms.  Those 13 are numbered as follows::

     id  d_left  d2  d_right   shape
      1    -     +     -       decreasing, convex
      2    +     -     +       increasing, concave
      3    +     +     +       increasing, convex
      4    -     -     -       decreasing, concave
      5    -     +     +       trough
      6    +     -     -       peak
      7    +     0     +       increasing line
      8    -     0     -       decreasing line
      9    0     0     0       flat
     10    0     +     +       flat, then up
     11    0     -     -       flat, then down
     12    +     -     0       up, then flat
     13    -     +     0       down, then flat

Ids 1-6 need no exact equalities between samples and dominate on
continuous-valued data; ids 7-13 require an exact zero difference.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ClassificationError, EmptyInputError, InvalidInputError
from .signal import Sign, _as_samples, sign_of, signs

__all__ = [
    "N_CONFIGURATIONS",
    "ABUNDANT_IDS",
    "SPARSE_IDS",
    "PEAK",
    "TROUGH",
    "Configuration",
    "CONFIGURATIONS",
    "DifferenceTriple",
    "SymbolString",
    "difference_triple",
    "left_product",
    "right_product",
    "pattern_lookup",
    "classify",
    "symbolize",
    "classify_array",
    "enumerate_valid_patterns",
    "peaks_troughs",
]

N_CONFIGURATIONS = 13
ABUNDANT_IDS = (1, 2, 3, 4, 5, 6)
SPARSE_IDS = (7, 8, 9, 10, 11, 12, 13)
PEAK = 6
TROUGH = 5


@dataclass(frozen=True)
class Configuration:
    id: int
    first_sign: Sign
    curvature_sign: Sign
    last_sign: Sign

    @property
    def abundance(self):
        return "abundant" if self.id in ABUNDANT_IDS else "sparse"

    @property
    def pattern(self):
        return (self.first_sign, self.curvature_sign, self.last_sign)

    def __str__(self):
        return f"C{self.id}({''.join(s.symbol for s in self.pattern)})"


_TABLE = {
    1: "-+-",
    2: "+-+",
    3: "+++",
    4: "---",
    5: "-++",
    6: "+--",
    7: "+0+",
    8: "-0-",
    9: "000",
    10: "0++",
    11: "0--",
    12: "+-0",
    13: "-+0",
}

CONFIGURATIONS = tuple(
    Configuration(i, *(Sign.parse(c) for c in pat)) for i, pat in _TABLE.items()
)
_BY_PATTERN = {c.pattern: c for c in CONFIGURATIONS}


def _code(first, curvature, last):
    return (int(first) + 1) * 9 + (int(curvature) + 1) * 3 + (int(last) + 1)


# base-3 code of a sign triple -> configuration id, 0 for unrealizable
_LOOKUP = np.zeros(27, dtype=np.int8)
for _c in CONFIGURATIONS:
    _LOOKUP[_code(*_c.pattern)] = _c.id

FIRST_SIGN = np.array([0] + [int(c.first_sign) for c in CONFIGURATIONS], dtype=np.int8)
LAST_SIGN = np.array([0] + [int(c.last_sign) for c in CONFIGURATIONS], dtype=np.int8)


@dataclass(frozen=True)
class DifferenceTriple:
    d_left: float
    d2: float
    d_right: float
    index: int

    def as_tuple(self):
        return (self.d_left, self.d2, self.d_right)


def difference_triple(signal, n):
    """Differences around interior sample ``n`` (0-based, 1 <= n <= N-2)."""
    x = _as_samples(signal)
    n = int(n)
    if not 1 <= n <= len(x) - 2:
        raise InvalidInputError(f"index {n} is not interior to a signal of length {len(x)}")
    d_left = float(x[n] - x[n - 1])
    d_right = float(x[n + 1] - x[n])
    return DifferenceTriple(d_left, d_right - d_left, d_right, n)


def left_product(t):
    return t.d2 * t.d_left


def right_product(t):
    return t.d2 * t.d_right


def pattern_lookup(first, curvature, last):
    """Configuration whose sign row matches, or ``None`` if unrealizable."""
    return _BY_PATTERN.get((Sign(first), Sign(curvature), Sign(last)))


def classify(signal, n, tau=0.0):
    """Configuration of the neighbourhood ``(n-1, n, n+1)``.

    Raises
    ------
    ClassificationError
        If the tolerance-rounded signs form an unrealizable pattern
        (impossible for ``tau == 0``).
    """
    t = difference_triple(signal, n)
    conf = pattern_lookup(sign_of(t.d_left, tau), sign_of(t.d2, tau), sign_of(t.d_right, tau))
    if conf is None:
        raise ClassificationError(n, t.as_tuple())
    return conf


@dataclass(frozen=True, eq=False)
class SymbolString:
    """Configuration ids of a signal's interior points.

    ``symbols[k]`` describes source sample ``k + start_index``; the string
    is ``source_length - 2`` long.
    """

    symbols: np.ndarray
    source_length: int
    start_index: int = 1
    sample_rate: float = 1.0

    def __post_init__(self):
        arr = np.array(self.symbols, dtype=np.int8, copy=True).reshape(-1)
        arr.flags.writeable = False
        object.__setattr__(self, "symbols", arr)

    def __len__(self):
        return self.symbols.shape[0]

    def __iter__(self):
        return iter(self.symbols.tolist())

    def __eq__(self, other):
        if not isinstance(other, SymbolString):
            return NotImplemented
        return (
            self.source_length == other.source_length
            and self.start_index == other.start_index
            and np.array_equal(self.symbols, other.symbols)
        )

    __hash__ = None

    @property
    def indices(self):
        """Source-sample index of every symbol."""
        return np.arange(len(self)) + self.start_index

    @property
    def times(self):
        return self.indices / self.sample_rate

    def adjacency_ok(self):
        s = self.symbols
        return bool(np.all(LAST_SIGN[s[:-1]] == FIRST_SIGN[s[1:]]))


def _triples(x):
    d = np.diff(x)
    if not np.all(np.isfinite(d)):
        raise InvalidInputError("sample differences overflow to non-finite values")
    d_left = d[:-1]
    d_right = d[1:]
    return d_left, d_right - d_left, d_right


def classify_array(samples, tau=0.0):
    """Vectorised classification of every interior point.

    Returns an int8 array of configuration ids of length ``len(samples) - 2``.
    """
    x = _as_samples(samples)
    if len(x) < 3:
        raise EmptyInputError(f"need at least 3 samples, got {len(x)}")
    d_left, d2, d_right = _triples(x)
    code = (signs(d_left, tau) + 1) * 9
    code += (signs(d2, tau) + 1) * 3
    code += signs(d_right, tau) + 1
    ids = _LOOKUP[code]
    bad = np.flatnonzero(ids == 0)
    if bad.size:
        k = int(bad[0])
        raise ClassificationError(k + 1, (float(d_left[k]), float(d2[k]), float(d_right[k])))
    return ids


def symbolize(signal, tau=0.0):
    """Configuration string of ``signal``."""
    x = _as_samples(signal)
    rate = signal.sample_rate if hasattr(signal, "sample_rate") else 1.0
    return SymbolString(classify_array(x, tau), source_length=len(x), sample_rate=rate)


def enumerate_valid_patterns():
    """All sign triples ``(first, curvature, last)`` that real data can produce.

    Built from witnesses rather than from the configuration table: any
    realizable pattern is reached by differences drawn from {-2, -1, 0, 1, 2},
    since two same-signed values of magnitude 1 and 2 already give a
    negative, zero and positive curvature.
    """
    witnesses = (-2.0, -1.0, 0.0, 1.0, 2.0)
    return {
        (sign_of(a), sign_of(c - a), sign_of(c))
        for a, c in itertools.product(witnesses, repeat=2)
    }


def peaks_troughs(symbols):
    """Source indices of peaks (id 6) and troughs (id 5)."""
    s = symbols.symbols if isinstance(symbols, SymbolString) else np.asarray(symbols)
    start = symbols.start_index if isinstance(symbols, SymbolString) else 1
    return np.flatnonzero(s == PEAK) + start, np.flatnonzero(s == TROUGH) + start
