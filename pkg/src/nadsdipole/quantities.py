"""Physical constants and conversions between laboratory and SI units.

Everything past the parsing boundary is SI: seconds, angular s^-1, V/m, C*m.
Intensities are the one exception and are carried in W/cm^2, the unit in
which pulse peak intensities are always quoted.

Field convention: E0 = sqrt(2 I / (eps0 c)), the peak field of a linearly
polarized plane wave whose cycle-averaged intensity is I.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

from scipy import constants as _codata


class DomainError(ValueError):
    """Argument outside the domain of a physical conversion."""


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    vacuum_permittivity: float
    speed_of_light: float
    debye_in_si: float


CONSTANTS = PhysicalConstants(
    hbar=_codata.hbar,
    vacuum_permittivity=_codata.epsilon_0,
    speed_of_light=_codata.c,
    # 1 D = 1e-21 / c  C*m by definition
    debye_in_si=1e-21 / _codata.c,
)

FEMTOSECOND = 1e-15
PICOSECOND = 1e-12
W_PER_CM2 = 1e4  # W/m^2


class PulseShape(str, Enum):
    """Envelope family of a chirp-free pulse (intensity profile)."""

    SECH2 = "sech2"
    GAUSSIAN = "gaussian"

    @classmethod
    def parse(cls, value: "str | PulseShape") -> "PulseShape":
        if isinstance(value, PulseShape):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise DomainError(f"unknown pulse shape {value!r} (expected one of: {names})") from None


@dataclass(frozen=True)
class MediumParams:
    """Bare two-level system.

    dipole_moment is the transition matrix element <2|mu|1> in C*m and
    detuning the (positive) angular offset of the carrier from resonance.
    """

    dipole_moment: float
    detuning: float

    def __post_init__(self):
        if not (self.dipole_moment > 0 and math.isfinite(self.dipole_moment)):
            raise DomainError(f"dipole_moment must be positive, got {self.dipole_moment!r}")
        if not (self.detuning > 0 and math.isfinite(self.detuning)):
            raise DomainError(f"detuning must be positive, got {self.detuning!r}")

    @classmethod
    def from_debye(cls, dipole_debye: float, detuning: float) -> "MediumParams":
        return cls(debye_to_si(dipole_debye), detuning)

    @property
    def dipole_debye(self) -> float:
        return si_to_debye(self.dipole_moment)


def debye_to_si(value: float) -> float:
    return value * CONSTANTS.debye_in_si


def si_to_debye(value: float) -> float:
    return value / CONSTANTS.debye_in_si


def fs_to_s(value: float) -> float:
    return value * FEMTOSECOND


def s_to_fs(value: float) -> float:
    return value / FEMTOSECOND


def intensity_to_field(intensity: float) -> float:
    """Peak field amplitude in V/m for an intensity given in W/cm^2."""
    if intensity < 0 or not math.isfinite(intensity):
        raise DomainError(f"intensity must be non-negative, got {intensity!r}")
    i_si = intensity * W_PER_CM2
    return math.sqrt(2.0 * i_si / (CONSTANTS.vacuum_permittivity * CONSTANTS.speed_of_light))


def field_to_intensity(field: float) -> float:
    """Inverse of :func:`intensity_to_field`, in W/cm^2."""
    if field < 0:
        raise DomainError(f"field amplitude must be non-negative, got {field!r}")
    i_si = 0.5 * CONSTANTS.vacuum_permittivity * CONSTANTS.speed_of_light * field**2
    return i_si / W_PER_CM2


def rabi_frequency(medium: MediumParams, field: float) -> float:
    """Rabi frequency mu*E/hbar in s^-1."""
    if field < 0:
        raise DomainError(f"field amplitude must be non-negative, got {field!r}")
    return medium.dipole_moment * field / CONSTANTS.hbar


# FWHM of the intensity profile in units of tau
_SECH2_FWHM_OVER_TAU = 2.0 * math.acosh(math.sqrt(2.0))
_GAUSS_FWHM_OVER_TAU = math.sqrt(2.0 * math.log(2.0))


def _fwhm_factor(shape: PulseShape) -> float:
    shape = PulseShape.parse(shape)
    if shape is PulseShape.SECH2:
        return _SECH2_FWHM_OVER_TAU
    return _GAUSS_FWHM_OVER_TAU


def fwhm_to_tau(shape: PulseShape | str, fwhm: float) -> float:
    """Envelope time constant from the intensity FWHM.

    sech2: I ~ sech^2(t/tau); gaussian: I ~ exp(-2 t^2 / tau^2).
    """
    if not fwhm > 0:
        raise DomainError(f"fwhm must be positive, got {fwhm!r}")
    return fwhm / _fwhm_factor(shape)


def tau_to_fwhm(shape: PulseShape | str, tau: float) -> float:
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    return tau * _fwhm_factor(shape)


# --- boundary parsing -------------------------------------------------------

# unit string -> (dimension, factor to canonical)
_UNITS: dict[str, tuple[str, float]] = {
    "d": ("dipole", CONSTANTS.debye_in_si),
    "debye": ("dipole", CONSTANTS.debye_in_si),
    "c*m": ("dipole", 1.0),
    "cm": ("dipole", 1.0),
    "w/cm2": ("intensity", 1.0),
    "w/cm^2": ("intensity", 1.0),
    "w/m2": ("intensity", 1.0 / W_PER_CM2),
    "w/m^2": ("intensity", 1.0 / W_PER_CM2),
    "s": ("time", 1.0),
    "ps": ("time", PICOSECOND),
    "fs": ("time", FEMTOSECOND),
    "as": ("time", 1e-18),
    "1/s": ("rate", 1.0),
    "s^-1": ("rate", 1.0),
    "rad/s": ("rate", 1.0),
    "1/fs": ("rate", 1.0 / FEMTOSECOND),
    "1/ps": ("rate", 1.0 / PICOSECOND),
    "v/m": ("field", 1.0),
}

_QUANTITY_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(\S*)\s*$")


def parse_quantity(text: "str | float | int", dimension: str | None = None) -> float:
    """Parse ``"0.01 D"``, ``"5e13 W/cm2"``, ``"100 fs"`` or ``"1e16 1/s"``.

    Returns the value in canonical units (SI, except W/cm^2 for intensity).
    A bare number is taken to be canonical already.  When ``dimension`` is
    given the unit must belong to it.
    """
    if isinstance(text, bool):
        raise DomainError(f"expected a quantity, got {text!r}")
    if isinstance(text, (int, float)):
        return float(text)
    m = _QUANTITY_RE.match(str(text))
    if m is None:
        raise DomainError(f"cannot parse quantity {text!r}")
    value = float(m.group(1))
    unit = m.group(2).lower().replace("·", "*")
    if not unit:
        return value
    if unit not in _UNITS:
        raise DomainError(f"unknown unit {m.group(2)!r} in {text!r}")
    dim, factor = _UNITS[unit]
    if dimension is not None and dim != dimension:
        raise DomainError(f"{text!r} is a {dim}, expected a {dimension}")
    return value * factor


def quantity_dimension(text: str) -> str | None:
    m = _QUANTITY_RE.match(str(text))
    if m is None or not m.group(2):
        return None
    entry = _UNITS.get(m.group(2).lower().replace("·", "*"))
    return entry[0] if entry else None
