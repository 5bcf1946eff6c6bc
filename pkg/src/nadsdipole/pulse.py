"""Chirp-free pulse envelopes.

Field envelopes are normalized to one at t = 0:

    sech2     E(t) = E0 sech(t/tau)          (intensity ~ sech^2)
    gaussian  E(t) = E0 exp(-t^2/tau^2)      (intensity ~ exp(-2 t^2/tau^2))

The nonadiabatic factor a(t) = Omega^-1 dOmega/dt is the logarithmic
derivative of the envelope and does not depend on the peak intensity or on
the dipole moment.  All functions accept scalar or array ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quantities import (
    CONSTANTS,
    DomainError,
    MediumParams,
    PulseShape,
    fwhm_to_tau,
    intensity_to_field,
    tau_to_fwhm,
)

__all__ = [
    "Pulse",
    "PulseShape",
    "envelope",
    "field_at",
    "rabi_at",
    "log_envelope",
    "log_derivative_at",
    "log_derivative_fd",
    "log_derivative_nth",
    "DEFAULT_FD_STEP",
    "MAX_DERIVATIVE_ORDER",
]

# relative to tau; multiplied by 10**(n-1) for the n-th derivative of a(t)
DEFAULT_FD_STEP = 1e-4
MAX_DERIVATIVE_ORDER = 3


@dataclass(frozen=True)
class Pulse:
    """Envelope model: ``tau`` in s, ``peak_intensity`` in W/cm^2.

    ``carrier_frequency`` (angular, s^-1) and the constant ``phase`` are
    only needed to reconstruct carrier-resolved signals.
    """

    shape: PulseShape
    tau: float
    peak_intensity: float
    carrier_frequency: float | None = None
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "shape", PulseShape.parse(self.shape))
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise DomainError(f"tau must be positive, got {self.tau!r}")
        if not (self.peak_intensity > 0 and math.isfinite(self.peak_intensity)):
            raise DomainError(f"peak_intensity must be positive, got {self.peak_intensity!r}")
        if self.carrier_frequency is not None and not self.carrier_frequency > 0:
            raise DomainError(f"carrier_frequency must be positive, got {self.carrier_frequency!r}")
        if not math.isfinite(self.phase):
            raise DomainError("phase must be finite")

    @classmethod
    def from_fwhm(cls, shape, fwhm: float, peak_intensity: float, **kwargs) -> "Pulse":
        return cls(PulseShape.parse(shape), fwhm_to_tau(shape, fwhm), peak_intensity, **kwargs)

    @property
    def fwhm(self) -> float:
        return tau_to_fwhm(self.shape, self.tau)

    @property
    def peak_field(self) -> float:
        return intensity_to_field(self.peak_intensity)

    def peak_rabi(self, medium: MediumParams) -> float:
        return medium.dipole_moment * self.peak_field / CONSTANTS.hbar


def envelope(pulse: Pulse, t):
    x = np.asarray(t, dtype=float) / pulse.tau
    if pulse.shape is PulseShape.SECH2:
        # 2 e^-|x| / (1 + e^-2|x|): no cosh overflow in the wings
        e = np.exp(-np.abs(x))
        return 2.0 * e / (1.0 + e * e)
    return np.exp(-x * x)


def log_envelope(pulse: Pulse, t):
    """ln of the normalized envelope, without underflow in the far wings."""
    x = np.asarray(t, dtype=float) / pulse.tau
    if pulse.shape is PulseShape.SECH2:
        ax = np.abs(x)
        return math.log(2.0) - ax - np.log1p(np.exp(-2.0 * ax))
    return -x * x


def field_at(pulse: Pulse, t):
    return pulse.peak_field * envelope(pulse, t)


def rabi_at(pulse: Pulse, medium: MediumParams, t):
    return pulse.peak_rabi(medium) * envelope(pulse, t)


def log_derivative_at(pulse: Pulse, t):
    """a(t) = Omega^-1 dOmega/dt in s^-1 (closed form)."""
    return _closed_derivative(pulse, t, 0)


def log_derivative_fd(pulse: Pulse, t, step: float | None = None):
    """Central difference of ln Omega(t); independent check on a(t)."""
    h = pulse.tau * DEFAULT_FD_STEP if step is None else step
    t = np.asarray(t, dtype=float)
    return (log_envelope(pulse, t + h) - log_envelope(pulse, t - h)) / (2.0 * h)


def _closed_derivative(pulse: Pulse, t, n: int):
    tau = pulse.tau
    t = np.asarray(t, dtype=float)
    if pulse.shape is PulseShape.SECH2:
        x = t / tau
        th = np.tanh(x)
        s2 = 1.0 / np.cosh(x) ** 2
        if n == 0:
            return -th / tau
        if n == 1:
            return -s2 / tau**2
        if n == 2:
            return 2.0 * s2 * th / tau**3
        return 2.0 * s2 * (s2 - 2.0 * th * th) / tau**4
    if n == 0:
        return -2.0 * t / tau**2
    if n == 1:
        return np.full_like(t, -2.0 / tau**2)
    return np.zeros_like(t)


# 2nd-order central stencils for the k-th derivative: offsets, weights, power of h
_STENCILS = {
    1: ((-1, 1), (-0.5, 0.5), 1),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0), 2),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5), 3),
}


def _fd_derivative(pulse: Pulse, t, n: int, step: float | None):
    h = pulse.tau * DEFAULT_FD_STEP * 10.0 ** (n - 1) if step is None else step
    t = np.asarray(t, dtype=float)
    offsets, weights, power = _STENCILS[n]
    acc = np.zeros_like(t)
    for k, wk in zip(offsets, weights):
        acc = acc + wk * _closed_derivative(pulse, t + k * h, 0)
    return acc / h**power


def log_derivative_nth(pulse: Pulse, t, n: int, method: str = "closed", step: float | None = None):
    """n-th time derivative of a(t), 0 <= n <= 3, in s^-(n+1).

    ``method="fd"`` differentiates the closed-form a(t) with central
    differences; the default step is tau * 1e-4 * 10**(n-1).
    """
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= MAX_DERIVATIVE_ORDER:
        raise DomainError(f"derivative order must be an integer in [0, {MAX_DERIVATIVE_ORDER}], got {n!r}")
    if n == 0:
        return log_derivative_at(pulse, t)
    if method == "closed":
        return _closed_derivative(pulse, t, int(n))
    if method == "fd":
        return _fd_derivative(pulse, t, int(n), step)
    raise DomainError(f"unknown derivative method {method!r}")
