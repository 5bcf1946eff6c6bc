"""Nonadiabatic dressed-state (NADS) parameters and the validity check.

With only the leading nonadiabatic term a = Omega^-1 dOmega/dt kept:

    Omega~'  = sqrt(dw^2 + Omega^2 + 2i dw a)
    Lambda1  = (dw + i a + Omega~') / 2
    Lambda2  = (dw + i a - Omega~') / 2
    COS(th/2) = sqrt(Lambda1 / Omega~'),   SIN(th/2) = sqrt(-Lambda2 / Omega~')

Square roots are principal.  Lambda2 is evaluated through the exact product
Lambda1 Lambda2 = -(Omega^2 + a^2)/4, which avoids the cancellation in
dw - Omega~' when Omega, |a| << dw.  Inputs may be numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pulse import Pulse, log_derivative_nth, rabi_at
from .quantities import DomainError, MediumParams

__all__ = [
    "NadsInput",
    "NadsParams",
    "NadsStateVector",
    "GacReport",
    "nads_params",
    "nads_state",
    "gac_check",
    "critical_tau",
    "DEFAULT_GAC_THRESHOLD",
    "DEFAULT_WINDOW",
]

DEFAULT_GAC_THRESHOLD = 0.1
DEFAULT_WINDOW = 2.5  # half-width in units of tau
MAX_WINDOW = 5.0
GAC_ORDERS = (0, 1, 2)


@dataclass(frozen=True)
class NadsInput:
    """Detuning, Rabi frequency and nonadiabatic factor, all in s^-1."""

    detuning: float | np.ndarray
    rabi: float | np.ndarray
    log_derivative: float | np.ndarray

    def __post_init__(self):
        dw = np.asarray(self.detuning, dtype=float)
        w = np.asarray(self.rabi, dtype=float)
        a = np.asarray(self.log_derivative, dtype=float)
        if not np.all(dw > 0) or not np.all(np.isfinite(dw)):
            raise DomainError("detuning must be positive and finite")
        if not np.all(w >= 0) or not np.all(np.isfinite(w)):
            raise DomainError("rabi frequency must be non-negative and finite")
        if not np.all(np.isfinite(a)):
            raise DomainError("log_derivative must be finite")

    @classmethod
    def from_pulse(cls, pulse: Pulse, medium: MediumParams, t) -> "NadsInput":
        return cls(medium.detuning, rabi_at(pulse, medium, t), log_derivative_nth(pulse, t, 0))

    def scaled(self):
        """(Omega/dw, a/dw) as float arrays."""
        dw = np.asarray(self.detuning, dtype=float)
        return np.asarray(self.rabi, dtype=float) / dw, np.asarray(self.log_derivative, dtype=float) / dw


@dataclass(frozen=True)
class NadsParams:
    omega_tilde: complex | np.ndarray
    lambda1: complex | np.ndarray
    lambda2: complex | np.ndarray
    cos_half: complex | np.ndarray
    sin_half: complex | np.ndarray


def nads_params(inp: NadsInput) -> NadsParams:
    dw = np.asarray(inp.detuning, dtype=float)
    w = np.asarray(inp.rabi, dtype=float)
    a = np.asarray(inp.log_derivative, dtype=float)
    if np.any((w == 0) & (a != 0)):
        raise DomainError("log_derivative is undefined at zero Rabi frequency")

    omega_tilde = np.sqrt(dw * dw + w * w + 2j * dw * a)
    lam1 = 0.5 * (dw + 1j * a + omega_tilde)
    lam2 = -(w * w + a * a) / (4.0 * lam1)
    cos_half = np.sqrt(lam1 / omega_tilde)
    sin_half = np.sqrt(-lam2 / omega_tilde)
    # stay on the sheet where SIN*COS is continuous with its real,
    # non-negative value at a = 0
    sin_half = np.where((sin_half * cos_half).real < 0, -sin_half, sin_half)
    if sin_half.ndim == 0:
        return NadsParams(complex(omega_tilde), complex(lam1), complex(lam2), complex(cos_half), complex(sin_half))
    return NadsParams(omega_tilde, lam1, lam2, cos_half, sin_half)


@dataclass(frozen=True)
class NadsStateVector:
    """Ground/excited NADS in the bare basis at one instant.

    The four phases are the accumulated phase angles of |G>_r, |G>_v,
    |E>_r and |E>_v.  The dressed energies omega_G and omega~'_E enter only
    through their time integrals, which the caller supplies.
    """

    cos_half: complex
    sin_half: complex
    phase_g_real: float
    phase_g_virtual: float
    phase_e_real: float
    phase_e_virtual: float

    def ground_amplitudes(self) -> tuple[complex, complex]:
        """(c1, c2) of |G> = SIN |G>_v + COS |G>_r."""
        return (
            self.cos_half * np.exp(-1j * self.phase_g_real),
            self.sin_half * np.exp(-1j * self.phase_g_virtual),
        )

    def excited_amplitudes(self) -> tuple[complex, complex]:
        """(c1, c2) of |E> = COS |E>_r - SIN |E>_v."""
        return (
            -self.sin_half * np.exp(-1j * self.phase_e_virtual),
            self.cos_half * np.exp(-1j * self.phase_e_real),
        )

    def ground_dipole(self, dipole_moment: float):
        """<G|mu|G> = mu (c1* c2 + c2* c1) for the unnormalized ground NADS."""
        c1, c2 = self.ground_amplitudes()
        return 2.0 * dipole_moment * np.real(np.conj(c1) * c2)


def nads_state(
    params: NadsParams,
    t,
    carrier_frequency: float,
    phase: float = 0.0,
    ground_phase=0.0,
    excited_phase=0.0,
) -> NadsStateVector:
    """Attach phase bookkeeping to frozen weight factors.

    ``ground_phase`` and ``excited_phase`` are int_0^t omega_G dt' and
    int_0^t omega~'_E dt'.
    """
    wt = carrier_frequency * np.asarray(t, dtype=float)
    return NadsStateVector(
        cos_half=params.cos_half,
        sin_half=params.sin_half,
        phase_g_real=ground_phase,
        phase_g_virtual=ground_phase + wt + phase,
        phase_e_real=excited_phase + phase,
        phase_e_virtual=excited_phase - wt,
    )


@dataclass(frozen=True)
class GacReport:
    tau: float
    order_ratios: tuple[float, ...]  # r_n = max |d^n a| / (dw^n Omega(t)), n = 0, 1, 2
    worst_times: tuple[float, ...]
    critical_ratio: float  # 1 / (tau^3 Omega_peak^2 dw)
    threshold: float
    valid: bool


def gac_check(
    pulse: Pulse,
    medium: MediumParams,
    window: tuple[float, float] | None = None,
    threshold: float = DEFAULT_GAC_THRESHOLD,
    samples: int = 2001,
    method: str = "closed",
    step: float | None = None,
) -> GacReport:
    """Order ratios over ``window`` (absolute times, s) and the critical ratio.

    Validity is decided by the critical ratio alone; the order ratios are
    diagnostics.  Omega in the critical ratio is the peak Rabi frequency.
    """
    tau = pulse.tau
    lo, hi = (-DEFAULT_WINDOW * tau, DEFAULT_WINDOW * tau) if window is None else window
    if not lo < hi:
        raise DomainError(f"empty evaluation window ({lo!r}, {hi!r})")
    if max(abs(lo), abs(hi)) > MAX_WINDOW * tau * (1 + 1e-12):
        raise DomainError(f"window must lie within |t| <= {MAX_WINDOW} tau")
    if not 0 < threshold < 1:
        raise DomainError(f"threshold must be in (0, 1), got {threshold!r}")

    t = np.linspace(lo, hi, samples)
    rabi = rabi_at(pulse, medium, t)
    ratios, worst = [], []
    for n in GAC_ORDERS:
        deriv = log_derivative_nth(pulse, t, n, method=method, step=step)
        r = np.abs(deriv) / (medium.detuning**n * rabi)
        k = int(np.argmax(r))
        ratios.append(float(r[k]))
        worst.append(float(t[k]))
    rho = 1.0 / (tau**3 * pulse.peak_rabi(medium) ** 2 * medium.detuning)
    return GacReport(tau, tuple(ratios), tuple(worst), rho, threshold, bool(rho < threshold))


def critical_tau(medium: MediumParams, peak_rabi: float, threshold: float = DEFAULT_GAC_THRESHOLD) -> float:
    """Duration at which 1/(tau^3 Omega^2 dw) equals ``threshold``."""
    if not 0 < threshold < 1:
        raise DomainError(f"threshold must be in (0, 1), got {threshold!r}")
    return (1.0 / (threshold * peak_rabi**2 * medium.detuning)) ** (1.0 / 3.0)

