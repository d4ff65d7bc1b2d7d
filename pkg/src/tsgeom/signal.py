"""
Signal container, three-valued sign arithmetic, sliding windows and
deterministic synthetic generators.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.signal import lfilter

from .errors import InvalidInputError, SpecError

__all__ = [
    "Sign",
    "sign_of",
    "signs",
    "Signal",
    "WindowSpec",
    "windows",
    "window_starts",
    "GeneratorSpec",
    "GENERATOR_KINDS",
    "generate",
]


class Sign(enum.IntEnum):
    """Sign of a difference, ordered NEG < ZERO < POS."""

    NEG = -1
    ZERO = 0
    POS = 1

    def __neg__(self):
        return Sign(-int(self))

    @property
    def symbol(self):
        return {-1: "-", 0: "0", 1: "+"}[int(self)]

    @classmethod
    def parse(cls, text):
        try:
            return {"-": cls.NEG, "0": cls.ZERO, "+": cls.POS}[text]
        except KeyError:
            raise InvalidInputError(f"not a sign symbol: {text!r}") from None


def sign_of(x, tau=0.0):
    """Return the sign of ``x``, treating ``|x| <= tau`` as zero."""
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInputError(f"sign of non-finite value {x!r}")
    if tau < 0 or not math.isfinite(tau):
        raise InvalidInputError(f"tolerance must be finite and >= 0, got {tau!r}")
    if x > tau:
        return Sign.POS
    if x < -tau:
        return Sign.NEG
    return Sign.ZERO


def signs(x, tau=0.0):
    """Vectorised :func:`sign_of`; returns an int8 array of -1/0/+1."""
    x = np.asarray(x, dtype=float)
    if tau < 0 or not math.isfinite(tau):
        raise InvalidInputError(f"tolerance must be finite and >= 0, got {tau!r}")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("sign of non-finite value")
    out = (x > tau).astype(np.int8)
    out -= x < -tau
    return out


@dataclass(frozen=True, eq=False)
class Signal:
    """A uniformly sampled, finite, real-valued time series.

    Parameters
    ----------
    samples : array_like
        Amplitudes. Copied to a read-only float64 array.
    sample_rate : float
        Samples per second, strictly positive.
    label : str
        Free-form channel name.
    """

    samples: np.ndarray
    sample_rate: float = 1.0
    label: str = ""

    def __post_init__(self):
        arr = np.array(self.samples, dtype=np.float64, copy=True).reshape(-1)
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError(f"signal {self.label!r} contains non-finite samples")
        rate = float(self.sample_rate)
        if not (rate > 0 and math.isfinite(rate)):
            raise InvalidInputError(f"sample_rate must be > 0, got {self.sample_rate!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "sample_rate", rate)

    def __len__(self):
        return self.samples.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        return (
            self.sample_rate == other.sample_rate
            and self.label == other.label
            and np.array_equal(self.samples, other.samples)
        )

    __hash__ = None

    @property
    def duration(self):
        return len(self) / self.sample_rate

    @property
    def times(self):
        return np.arange(len(self)) / self.sample_rate

    def segment(self, start, stop):
        """Sub-signal ``samples[start:stop]`` keeping rate and label."""
        return Signal(self.samples[start:stop], self.sample_rate, self.label)


def _as_samples(signal):
    if isinstance(signal, Signal):
        return signal.samples
    arr = np.asarray(signal, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("signal contains non-finite samples")
    return arr


@dataclass(frozen=True)
class WindowSpec:
    """Sliding window measured in samples."""

    width: int
    hop: int

    def __post_init__(self):
        if int(self.width) != self.width or self.width < 3:
            raise InvalidInputError(f"window width must be an integer >= 3, got {self.width!r}")
        if int(self.hop) != self.hop or self.hop < 1:
            raise InvalidInputError(f"window hop must be an integer >= 1, got {self.hop!r}")
        object.__setattr__(self, "width", int(self.width))
        object.__setattr__(self, "hop", int(self.hop))

    @classmethod
    def from_seconds(cls, width_s, hop_s, sample_rate):
        """Window of ``width_s`` seconds advanced by ``hop_s`` seconds."""
        return cls(int(round(width_s * sample_rate)), int(round(hop_s * sample_rate)))


def window_starts(length, spec):
    """Start indices of every window lying fully inside ``length`` samples."""
    if length < spec.width:
        return np.zeros(0, dtype=np.int64)
    return np.arange(0, length - spec.width + 1, spec.hop, dtype=np.int64)


def windows(signal, spec):
    """Half-open index ranges ``[k*hop, k*hop + width)`` inside the signal.

    A signal shorter than the window yields an empty list rather than an
    error; callers report the empty result.
    """
    n = len(signal)
    return [range(int(s), int(s) + spec.width) for s in window_starts(n, spec)]


GENERATOR_KINDS = (
    "constant",
    "ramp",
    "sine",
    "triangle",
    "white_noise",
    "ar1",
    "seizure_surrogate",
)

_DEFAULTS = {
    "constant": {"value": 0.0},
    "ramp": {"start": 0.0, "slope": 1.0},
    "sine": {"amplitude": 1.0, "frequency": 1.0, "phase": 0.0},
    "triangle": {"low": 0.0, "step": 1.0},
    "white_noise": {"mean": 0.0, "sigma": 1.0},
    "ar1": {"coefficient": 0.9, "sigma": 1.0},
    "seizure_surrogate": {
        "onset": 8.0,
        "offset": 12.0,
        "noise_sigma": 1.0,
        "amplitude": 5.0,
        "frequency": 3.0,
    },
}


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a synthetic signal.

    ``params`` overrides the per-kind defaults:

    ========================= =============================================
    constant                  value
    ramp                      start, slope (amplitude per sample)
    sine                      amplitude, frequency (Hz), phase (rad)
    triangle                  low, step; samples alternate low, low+step
    white_noise               mean, sigma
    ar1                       coefficient, sigma (innovation deviation)
    seizure_surrogate         onset, offset (s), noise_sigma, amplitude,
                              frequency; noise outside [onset, offset),
                              a pure sine inside
    ========================= =============================================

    The seizure surrogate defaults to a 20 s record with the oscillation
    between 8 s and 12 s, sampled at 256 Hz.
    """

    kind: str
    duration: float = 20.0
    sample_rate: float = 256.0
    seed: int = 0
    params: Mapping[str, float] = field(default_factory=dict)

    def resolved_params(self):
        if self.kind not in _DEFAULTS:
            raise SpecError(f"unknown generator kind {self.kind!r}")
        unknown = set(self.params) - set(_DEFAULTS[self.kind])
        if unknown:
            raise SpecError(f"unknown parameters for {self.kind}: {sorted(unknown)}")
        out = dict(_DEFAULTS[self.kind])
        out.update({k: float(v) for k, v in self.params.items()})
        return out

    @property
    def n_samples(self):
        return int(round(self.duration * self.sample_rate))


def generate(spec):
    """Build the signal described by ``spec``; a pure function of the spec."""
    p = spec.resolved_params()
    fs = float(spec.sample_rate)
    if not (fs > 0 and math.isfinite(fs)):
        raise SpecError(f"sample_rate must be > 0, got {spec.sample_rate!r}")
    if not (spec.duration > 0 and math.isfinite(spec.duration)):
        raise SpecError(f"duration must be > 0, got {spec.duration!r}")
    if not 0 <= int(spec.seed) < 2**64:
        raise SpecError(f"seed must fit in 64 unsigned bits, got {spec.seed!r}")
    n = spec.n_samples
    if n < 1:
        raise SpecError("spec yields no samples")
    k = np.arange(n, dtype=np.float64)
    t = k / fs
    rng = np.random.default_rng(int(spec.seed))
    kind = spec.kind

    if kind == "constant":
        x = np.full(n, p["value"])
    elif kind == "ramp":
        x = p["start"] + p["slope"] * k
    elif kind == "sine":
        x = p["amplitude"] * np.sin(2 * np.pi * p["frequency"] * t + p["phase"])
    elif kind == "triangle":
        x = p["low"] + p["step"] * (np.arange(n) % 2)
    elif kind == "white_noise":
        if p["sigma"] < 0:
            raise SpecError("sigma must be >= 0")
        x = p["mean"] + p["sigma"] * rng.standard_normal(n)
    elif kind == "ar1":
        phi, sigma = p["coefficient"], p["sigma"]
        if not -1 < phi < 1:
            raise SpecError("AR coefficient must lie in (-1, 1)")
        if sigma < 0:
            raise SpecError("sigma must be >= 0")
        e = sigma * rng.standard_normal(n)
        x = np.empty(n)
        # start from the stationary distribution
        x[0] = e[0] / math.sqrt(1 - phi * phi)
        if n > 1:
            x[1:], _ = lfilter([1.0], [1.0, -phi], e[1:], zi=[phi * x[0]])
    else:  # seizure_surrogate
        onset, offset = p["onset"], p["offset"]
        if not 0 <= onset < offset <= spec.duration:
            raise SpecError("need 0 <= onset < offset <= duration")
        if p["noise_sigma"] < 0:
            raise SpecError("noise_sigma must be >= 0")
        x = p["noise_sigma"] * rng.standard_normal(n)
        i0, i1 = int(round(onset * fs)), int(round(offset * fs))
        tb = np.arange(i1 - i0) / fs
        x[i0:i1] = p["amplitude"] * np.sin(2 * np.pi * p["frequency"] * tb)
    return Signal(x, fs, label=kind)
