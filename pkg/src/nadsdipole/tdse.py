"""Two-level RWA Schrodinger equation, fixed-step RK4.

Rotating-frame amplitudes of the bare states obey

    i dc1/dt = (W(t)/2) c2
    i dc2/dt = (W(t)/2) c1 - dw c2

so that adiabatic following of the ground state gives c1* c2 > 0 and an
in-phase quadrature 2 mu Re(c1* c2) = mu W / sqrt(dw^2 + W^2).

The inner loop is compiled with numba; a picosecond pulse at dw = 1e16 s^-1
takes ~10^7 steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .pulse import Pulse, PulseShape, envelope
from .quantities import DomainError, MediumParams

__all__ = [
    "TwoLevelState",
    "TdseTrajectory",
    "StepTooLargeError",
    "max_step",
    "propagate_rwa",
    "propagate_constant",
    "extract_quadratures",
    "rabi_exact",
    "adiabatic_ground_state",
    "tail_start",
    "tdse_peak_ratio",
]

NORM_TOLERANCE = 1e-12
DEFAULT_MAX_SAMPLES = 200_001

_CONSTANT, _SECH, _GAUSS = 0, 1, 2


class StepTooLargeError(ValueError):
    def __init__(self, dt: float, bound: float):
        super().__init__(f"time step {dt:.6g} s exceeds the stability/accuracy bound {bound:.6g} s")
        self.dt = dt
        self.bound = bound


@dataclass(frozen=True)
class TwoLevelState:
    c1: complex
    c2: complex
    t: float = 0.0

    @property
    def norm(self) -> float:
        return abs(self.c1) ** 2 + abs(self.c2) ** 2


@dataclass(frozen=True)
class TdseTrajectory:
    """Samples every ``stride`` integrator steps of size ``dt``."""

    t: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    dt: float
    stride: int
    pulse: Pulse | None
    medium: MediumParams | None

    def __len__(self) -> int:
        return len(self.t)

    @property
    def sample_spacing(self) -> float:
        return self.dt * self.stride

    @property
    def norm_error(self) -> np.ndarray:
        return np.abs(self.c1) ** 2 + np.abs(self.c2) ** 2 - 1.0

    def state(self, i: int) -> TwoLevelState:
        return TwoLevelState(complex(self.c1[i]), complex(self.c2[i]), float(self.t[i]))

    @property
    def final(self) -> TwoLevelState:
        return self.state(-1)


@numba.njit(cache=True, nogil=True)
def _env(kind, tau, t):
    if kind == 0:
        return 1.0
    x = t / tau
    if kind == 1:
        return 1.0 / math.cosh(x) if abs(x) < 700.0 else 0.0
    return math.exp(-x * x)


@numba.njit(cache=True, nogil=True)
def _rk4_kernel(kind, half_rabi0, tau, dw, t0, h, nsteps, stride, c1, c2):
    nout = nsteps // stride + 1
    ts = np.empty(nout)
    o1 = np.empty(nout, dtype=np.complex128)
    o2 = np.empty(nout, dtype=np.complex128)
    ts[0] = t0
    o1[0] = c1
    o2[0] = c2
    j = 1
    for i in range(nsteps):
        t = t0 + i * h
        wa = half_rabi0 * _env(kind, tau, t)
        wb = half_rabi0 * _env(kind, tau, t + 0.5 * h)
        wc = half_rabi0 * _env(kind, tau, t + h)
        k1a = -1j * (wa * c2)
        k1b = -1j * (wa * c1 - dw * c2)
        y1 = c1 + 0.5 * h * k1a
        y2 = c2 + 0.5 * h * k1b
        k2a = -1j * (wb * y2)
        k2b = -1j * (wb * y1 - dw * y2)
        y1 = c1 + 0.5 * h * k2a
        y2 = c2 + 0.5 * h * k2b
        k3a = -1j * (wb * y2)
        k3b = -1j * (wb * y1 - dw * y2)
        y1 = c1 + h * k3a
        y2 = c2 + h * k3b
        k4a = -1j * (wc * y2)
        k4b = -1j * (wc * y1 - dw * y2)
        c1 = c1 + (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        c2 = c2 + (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        if (i + 1) % stride == 0:
            ts[j] = t0 + (i + 1) * h
            o1[j] = c1
            o2[j] = c2
            j += 1
    return ts, o1, o2


def max_step(pulse: Pulse, medium: MediumParams) -> float:
    """min(0.01 / sqrt(dw^2 + W_peak^2), tau / 1000)."""
    weff = math.hypot(medium.detuning, pulse.peak_rabi(medium))
    return min(0.01 / weff, pulse.tau / 1e3)


def _run(kind, rabi0, tau, detuning, t0, t1, dt, bound, initial, max_samples):
    if t1 == t0:
        raise DomainError("empty propagation interval")
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    if dt > bound * (1 + 1e-12):
        raise StepTooLargeError(dt, bound)
    if initial is None:
        initial = TwoLevelState(1.0 + 0j, 0j, t0)
    if abs(initial.norm - 1.0) > NORM_TOLERANCE:
        raise DomainError(f"initial state is not normalized (|c1|^2+|c2|^2 = {initial.norm!r})")
    if max_samples < 2:
        raise DomainError("max_samples must be at least 2")

    span = t1 - t0
    n = max(1, math.ceil(abs(span) / dt - 1e-9))
    stride = max(1, math.ceil(n / (max_samples - 1)))
    n = stride * math.ceil(n / stride)
    h = span / n
    ts, c1, c2 = _rk4_kernel(
        kind, 0.5 * rabi0, tau, detuning, float(t0), h, n, stride, complex(initial.c1), complex(initial.c2)
    )
    ts[-1] = t1
    return ts, c1, c2, abs(h), stride


def propagate_rwa(
    pulse: Pulse,
    medium: MediumParams,
    t0: float,
    t1: float,
    dt: float,
    initial: TwoLevelState | None = None,
    max_samples: int = DEFAULT_MAX_SAMPLES,
) -> TdseTrajectory:
    """Integrate from t0 to t1 (either direction) with steps of at most ``dt``.

    The step is shrunk so the interval is covered by a whole number of
    steps; at most ``max_samples`` evenly spaced samples are kept.  Starts
    in the bare ground state unless ``initial`` is given.
    """
    kind = _SECH if pulse.shape is PulseShape.SECH2 else _GAUSS
    ts, c1, c2, h, stride = _run(
        kind, pulse.peak_rabi(medium), pulse.tau, medium.detuning, t0, t1, dt,
        max_step(pulse, medium), initial, max_samples,
    )
    return TdseTrajectory(ts, c1, c2, h, stride, pulse, medium)


def propagate_constant(
    rabi: float,
    detuning: float,
    t0: float,
    t1: float,
    dt: float,
    initial: TwoLevelState | None = None,
    max_samples: int = DEFAULT_MAX_SAMPLES,
) -> TdseTrajectory:
    """Same integrator with a constant Rabi frequency."""
    if rabi < 0 or detuning <= 0:
        raise DomainError("need rabi >= 0 and detuning > 0")
    bound = 0.01 / math.hypot(detuning, rabi)
    ts, c1, c2, h, stride = _run(_CONSTANT, rabi, 1.0, detuning, t0, t1, dt, bound, initial, max_samples)
    return TdseTrajectory(ts, c1, c2, h, stride, None, None)


def rabi_exact(rabi: float, detuning: float, t):
    """Exact (c1, c2) for constant W starting from (1, 0) at t = 0."""
    t = np.asarray(t, dtype=float)
    wt = math.hypot(detuning, rabi)
    ph = np.exp(0.5j * detuning * t)
    s, c = np.sin(0.5 * wt * t), np.cos(0.5 * wt * t)
    return ph * (c - 1j * (detuning / wt) * s), ph * (-1j * (rabi / wt) * s)


def extract_quadratures(trajectory: TdseTrajectory, medium: MediumParams):
    """(mu_ip(t), mu_oop(t)) = 2 mu (Re, Im) of c1* c2, in C*m."""
    if len(trajectory) == 0:
        raise DomainError("empty trajectory")
    prod = np.conj(trajectory.c1) * trajectory.c2
    mu = medium.dipole_moment
    return 2.0 * mu * prod.real, 2.0 * mu * prod.imag


def adiabatic_ground_state(rabi: float, detuning: float, t: float = 0.0) -> TwoLevelState:
    """Instantaneous eigenvector that connects to |1> as W -> 0."""
    wt = math.hypot(detuning, rabi)
    # c2/c1 = (wt - dw)/W, written without cancellation
    r = rabi / (wt + detuning)
    n = math.sqrt(1.0 + r * r)
    return TwoLevelState(1.0 / n + 0j, r / n + 0j, t)


def tail_start(pulse: Pulse, level: float) -> float:
    """Negative time at which the field envelope has dropped to ``level``."""
    if not 0 < level < 1:
        raise DomainError("level must be in (0, 1)")
    if pulse.shape is PulseShape.SECH2:
        return -pulse.tau * math.acosh(1.0 / level)
    return -pulse.tau * math.sqrt(-math.log(level))


def tdse_peak_ratio(
    pulse: Pulse,
    medium: MediumParams,
    level: float = 1e-10,
    dt: float | None = None,
) -> tuple[float, float]:
    """In- and out-of-phase TDSE dipole at the pulse peak, relative to mu_ad.

    Starts in |1> where the envelope is ``level`` of its peak, so that the
    sudden-start residue is ~``level`` relative to the peak dipole.
    """
    t0 = tail_start(pulse, level)
    step = max_step(pulse, medium) if dt is None else dt
    traj = propagate_rwa(pulse, medium, t0, 0.0, step, max_samples=2)
    ip, oop = extract_quadratures(traj, medium)
    w0 = pulse.peak_rabi(medium) * float(envelope(pulse, 0.0))
    ad = medium.dipole_moment * w0 / math.hypot(medium.detuning, w0)
    return float(ip[-1] / ad), float(oop[-1] / ad)
