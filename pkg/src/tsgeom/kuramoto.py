"""
Coupled phase oscillators, their order parameter and per-oscillator
synchronizability (semantic entropy over information power times marginal
coupling).

The model integrated is::

    dtheta_i/dt = omega_i + (1/N) * sum_{j != i} K_ij * sin(theta_j - theta_i)

with ``K_ij = K`` for global coupling.  ``sign_convention="repulsive"`` uses
``sin(theta_i - theta_j)`` instead, which repels rather than attracts
phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, InvalidInputError, SpecError
from .measures import DEFAULT_EPS_POWER, _prepare, _ratio, _SeriesBuilder
from .signal import Signal

__all__ = [
    "SIGN_CONVENTIONS",
    "OscillatorNetwork",
    "Trajectory",
    "random_network",
    "integrate",
    "order_parameter",
    "marginal_coupling",
    "synchronizability",
]

SIGN_CONVENTIONS = ("standard", "repulsive")


@dataclass(frozen=True, eq=False)
class OscillatorNetwork:
    """Natural frequencies (rad/s), coupling and initial phases (rad).

    ``coupling`` is either a scalar ``K`` shared by every pair or an
    ``N x N`` nonnegative matrix with zero diagonal.
    """

    natural_frequencies: np.ndarray
    coupling: object
    initial_phases: np.ndarray
    sign_convention: str = "standard"

    def __post_init__(self):
        w = np.array(self.natural_frequencies, dtype=float).reshape(-1)
        th = np.array(self.initial_phases, dtype=float).reshape(-1)
        n = w.shape[0]
        if n < 1:
            raise SpecError("network needs at least one oscillator")
        if th.shape[0] != n:
            raise SpecError(f"{th.shape[0]} initial phases for {n} oscillators")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(th))):
            raise SpecError("frequencies and phases must be finite")
        if self.sign_convention not in SIGN_CONVENTIONS:
            raise SpecError(f"sign_convention must be one of {SIGN_CONVENTIONS}")
        k = self.coupling
        if np.ndim(k) == 0:
            k = float(k)
            if not (np.isfinite(k) and k >= 0):
                raise SpecError(f"global coupling must be finite and >= 0, got {k!r}")
        else:
            k = np.array(k, dtype=float)
            if k.shape != (n, n):
                raise SpecError(f"coupling matrix must be {n}x{n}, got {k.shape}")
            if not np.all(np.isfinite(k)) or np.any(k < 0):
                raise SpecError("coupling matrix must be finite and nonnegative")
            if np.any(np.diag(k) != 0):
                raise SpecError("coupling matrix must have a zero diagonal")
            k.flags.writeable = False
        for arr in (w, th):
            arr.flags.writeable = False
        object.__setattr__(self, "natural_frequencies", w)
        object.__setattr__(self, "initial_phases", th)
        object.__setattr__(self, "coupling", k)

    @property
    def n(self):
        return self.natural_frequencies.shape[0]

    @property
    def is_global(self):
        return isinstance(self.coupling, float)

    def coupling_matrix(self):
        if self.is_global:
            return self.coupling * (1.0 - np.eye(self.n))
        return self.coupling

    def to_dict(self):
        return {
            "natural_frequencies": self.natural_frequencies.tolist(),
            "coupling": self.coupling if self.is_global else self.coupling.tolist(),
            "initial_phases": self.initial_phases.tolist(),
            "sign_convention": self.sign_convention,
        }

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(
                d["natural_frequencies"],
                d["coupling"],
                d["initial_phases"],
                d.get("sign_convention", "standard"),
            )
        except KeyError as exc:
            raise SpecError(f"network spec is missing field {exc.args[0]!r}") from None


def random_network(n, coupling, seed, sign_convention="standard"):
    """Frequencies from a unit normal, phases uniform on [0, 2*pi)."""
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(n)
    th = rng.uniform(0.0, 2 * np.pi, n)
    return OscillatorNetwork(w, coupling, th, sign_convention)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Phases at ``steps + 1`` instants, row ``k`` at time ``k * dt``."""

    dt: float
    phases: np.ndarray

    @property
    def times(self):
        return np.arange(self.phases.shape[0]) * self.dt

    @property
    def observables(self):
        return np.sin(self.phases)

    def observable(self, i):
        return Signal(np.sin(self.phases[:, i]), 1.0 / self.dt, label=f"osc{i}")

    def order_parameter(self):
        return order_parameter(self.phases)


def _derivative(net):
    w = net.natural_frequencies
    n = net.n
    sgn = 1.0 if net.sign_convention == "standard" else -1.0
    if net.is_global:
        k = sgn * net.coupling / n

        def f(th):
            s, c = np.sin(th), np.cos(th)
            # sum_j sin(th_j - th_i) = cos(th_i) * sum sin - sin(th_i) * sum cos
            return w + k * (c * s.sum() - s * c.sum())

    else:
        km = sgn * net.coupling / n

        def f(th):
            s, c = np.sin(th), np.cos(th)
            return w + c * (km @ s) - s * (km @ c)

    return f


def integrate(net, dt=0.01, steps=1000):
    """Fixed-step classical Runge-Kutta integration.

    Raises
    ------
    DivergenceError
        If any phase becomes non-finite.
    """
    if not (dt > 0 and np.isfinite(dt)):
        raise InvalidInputError(f"dt must be > 0, got {dt!r}")
    steps = int(steps)
    if steps < 1:
        raise InvalidInputError(f"steps must be >= 1, got {steps!r}")
    f = _derivative(net)
    out = np.empty((steps + 1, net.n))
    th = net.initial_phases.copy()
    out[0] = th
    h2, h6 = dt / 2.0, dt / 6.0
    # overflow surfaces as a non-finite phase, reported below
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, steps + 1):
            k1 = f(th)
            k2 = f(th + h2 * k1)
            k3 = f(th + h2 * k2)
            k4 = f(th + dt * k3)
            th = th + h6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(th)):
                raise DivergenceError(step)
            out[step] = th
    return Trajectory(float(dt), out)


def order_parameter(phases):
    """Magnitude of the mean unit phasor along the last axis."""
    th = np.asarray(phases, dtype=float)
    if th.shape[-1] < 1:
        raise InvalidInputError("order parameter of zero oscillators")
    r = np.abs(np.exp(1j * th).mean(axis=-1))
    return float(r) if r.ndim == 0 else r


def marginal_coupling(net, i):
    """Total coupling of oscillator ``i``; equals ``K`` under global coupling."""
    if not 0 <= i < net.n:
        raise InvalidInputError(f"oscillator index {i} out of range for N={net.n}")
    if net.is_global:
        return net.coupling
    return float(np.delete(net.coupling[i], i).sum())


def synchronizability(observable, marginal, spec=None, tau=0.0, product="left", eps_power=DEFAULT_EPS_POWER):
    """Windowed entropy / (information power * marginal coupling).

    Windows with information power below ``eps_power`` are undefined.
    """
    if not (marginal > 0 and np.isfinite(marginal)):
        raise InvalidInputError(f"marginal coupling must be > 0, got {marginal!r}")
    b = _SeriesBuilder(*_prepare(observable, spec), tau, product)
    return _ratio(b.semantic_entropy(), b.information_power(), eps_power, marginal, "synchronizability")
