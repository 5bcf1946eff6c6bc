"""Nonadiabatic dressed states and induced dipole moment of a two-level
system driven by intense femtosecond pulses."""

from .dipole import (
    DipoleResult,
    DmnTriple,
    OutOfValidityError,
    dipole_result,
    dmn,
    mu_adiabatic,
    mu_from_weights,
    mu_ip_approx,
    mu_ip_full,
    mu_oop_full,
)
from .nads import GacReport, NadsInput, NadsParams, critical_tau, gac_check, nads_params, nads_state
from .pulse import Pulse, field_at, log_derivative_at, log_derivative_nth, rabi_at
from .quantities import (
    CONSTANTS,
    DomainError,
    MediumParams,
    PulseShape,
    fwhm_to_tau,
    intensity_to_field,
    rabi_frequency,
    tau_to_fwhm,
)

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS",
    "DipoleResult",
    "DmnTriple",
    "DomainError",
    "GacReport",
    "MediumParams",
    "NadsInput",
    "NadsParams",
    "OutOfValidityError",
    "Pulse",
    "PulseShape",
    "critical_tau",
    "dipole_result",
    "dmn",
    "field_at",
    "fwhm_to_tau",
    "gac_check",
    "intensity_to_field",
    "log_derivative_at",
    "log_derivative_nth",
    "mu_adiabatic",
    "mu_from_weights",
    "mu_ip_approx",
    "mu_ip_full",
    "mu_oop_full",
    "nads_params",
    "nads_state",
    "rabi_at",
    "rabi_frequency",
    "tau_to_fwhm",
]
