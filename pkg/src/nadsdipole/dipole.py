"""Induced dipole moment of the ground NADS.

Closed forms in terms of

    D = (dw^2 + W^2)^2 + 4 dw^2 a^2
    M = dw^2 (dw^2 + W^2) + a^2 (3 dw^2 - W^2)
    N = 2 dw a (W^2 + a^2)

    mu_ip  = mu sqrt{ [sqrt((D-M)^2 - N^2) + (D - sqrt(M^2+N^2))] / (2D) }
    mu_oop = mu sqrt{ [sqrt((D-M)^2 - N^2) - (D - sqrt(M^2+N^2))] / (2D) }

with W the Rabi frequency.  The out-of-phase radicand is negative over
most of the physical regime; its modulus is returned.

Numerics: everything is scaled by dw, and the exact factorizations

    D - M             = (W^2 + a^2)(dw^2 + W^2)
    (D-M)^2 - N^2     = (W^2 + a^2)^2 [(dw^2 + W^2)^2 - 4 dw^2 a^2]
    sqrt(M^2+N^2) - M = N^2 / (sqrt(M^2+N^2) + M)

replace the cancelling differences.  Without them the nested radicals lose
all significance once W, |a| << dw.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .nads import NadsInput, NadsParams, nads_params
from .quantities import MediumParams

__all__ = [
    "OutOfValidityError",
    "DmnTriple",
    "DipoleResult",
    "dmn",
    "mu_ip_full",
    "mu_oop_full",
    "mu_ip_approx",
    "mu_adiabatic",
    "mu_from_weights",
    "dipole_result",
]


class OutOfValidityError(ValueError):
    """Closed form evaluated where its radicands go negative.

    ``ratio`` is the largest N^2/(D-M)^2 among the offending inputs (> 1
    means the validity condition (D-M)^2 >= N^2 is violated).
    """

    def __init__(self, message: str, ratio: float):
        super().__init__(message)
        self.ratio = ratio


@dataclass(frozen=True)
class DmnTriple:
    D: float
    M: float
    N: float


@dataclass(frozen=True)
class DipoleResult:
    mu_ip: float
    mu_oop: float
    mu_ad: float
    ratio_ip: float
    ratio_oop: float
    dipole_moment: float

    @property
    def ip_over_mu(self) -> float:
        return self.mu_ip / self.dipole_moment

    @property
    def oop_over_mu(self) -> float:
        return self.mu_oop / self.dipole_moment

    @property
    def ad_over_mu(self) -> float:
        return self.mu_ad / self.dipole_moment


def dmn(inp: NadsInput) -> DmnTriple:
    """D, M, N in s^-4, straight from their definitions."""
    dw = np.asarray(inp.detuning, dtype=float)
    w2 = np.asarray(inp.rabi, dtype=float) ** 2
    a = np.asarray(inp.log_derivative, dtype=float)
    dw2, a2 = dw * dw, a * a
    D = (dw2 + w2) ** 2 + 4.0 * dw2 * a2
    M = dw2 * (dw2 + w2) + a2 * (3.0 * dw2 - w2)
    N = 2.0 * dw * a * (w2 + a2)
    if np.ndim(D) == 0:
        return DmnTriple(float(D), float(M), float(N))
    return DmnTriple(D, M, N)


def _brackets(inp: NadsInput):
    """Scaled D and the ip/oop brackets of the closed forms (units of dw^4)."""
    x, y = inp.scaled()
    s = 1.0 + x * x
    r = x * x + y * y
    D = s * s + 4.0 * y * y
    M = s + y * y * (3.0 - x * x)
    N = 2.0 * y * r
    disc = s * s - 4.0 * y * y
    if np.any(disc < 0):
        ratio = float(np.max(4.0 * y * y / (s * s)))
        raise OutOfValidityError(
            f"(D-M)^2 < N^2: nonadiabatic factor too large for the closed form (N^2/(D-M)^2 = {ratio:.6g})",
            ratio,
        )
    A = r * np.sqrt(disc)
    B = np.hypot(M, N)
    d_minus_m = r * s
    with np.errstate(divide="ignore", invalid="ignore"):
        b_minus_m = np.where(M > 0, N * N / (B + M), B - M)
        d_minus_b = d_minus_m - b_minus_m
        # A - (D - B) = 2 N^2 (D - B - M) / ((B + M)(A + D - B))
        denom = (B + M) * (A + d_minus_b)
        oop = np.where(
            (M > 0) & (denom != 0),
            2.0 * N * N * (d_minus_b - M) / denom,
            A - d_minus_b,
        )
    oop = np.where(N == 0, 0.0, oop)
    ip = A + d_minus_b
    if np.any(ip < 0):
        raise OutOfValidityError("in-phase radicand is negative", float(np.max(4.0 * y * y / (s * s))))
    return D, ip, oop


def mu_ip_full(medium: MediumParams, inp: NadsInput):
    """In-phase nonadiabatic dipole amplitude in C*m."""
    D, ip, _ = _brackets(inp)
    return _out(medium.dipole_moment * np.sqrt(ip / (2.0 * D)))


def mu_oop_full(medium: MediumParams, inp: NadsInput):
    """Out-of-phase nonadiabatic dipole amplitude in C*m (modulus)."""
    D, _, oop = _brackets(inp)
    return _out(medium.dipole_moment * np.sqrt(np.abs(oop) / (2.0 * D)))


def mu_ip_approx(medium: MediumParams, inp: NadsInput):
    """Large-detuning form mu sqrt{(dw^2+W^2)(W^2+a^2) / D}."""
    x, y = inp.scaled()
    s = 1.0 + x * x
    return _out(medium.dipole_moment * np.sqrt(s * (x * x + y * y) / (s * s + 4.0 * y * y)))


def mu_adiabatic(medium: MediumParams, rabi):
    """mu W / sqrt(dw^2 + W^2)."""
    rabi = np.asarray(rabi, dtype=float)
    return _out(medium.dipole_moment * rabi / np.hypot(medium.detuning, rabi))


def mu_from_weights(medium: MediumParams, params: NadsParams, product: str = "hermitian"):
    """Quadrature amplitudes 2 mu |Re w|, 2 mu |Im w| of the weight product.

    ``product="hermitian"``: w = SIN* COS, the cross term of <G|mu|G> with
    the usual inner product.  ``product="bilinear"``: w = SIN COS, the
    cross term when the bra is the transpose (no conjugation), the pairing
    under which COS^2 + SIN^2 = 1 is the normalization.
    """
    if product == "hermitian":
        w = np.conj(params.sin_half) * params.cos_half
    elif product == "bilinear":
        w = params.sin_half * params.cos_half
    else:
        raise ValueError(f"unknown product {product!r}")
    mu = medium.dipole_moment
    return _out(2.0 * mu * np.abs(np.real(w))), _out(2.0 * mu * np.abs(np.imag(w)))


def dipole_result(medium: MediumParams, inp: NadsInput, method: str = "closed_form") -> DipoleResult:
    """All dipole quantities at one (or an array of) instants.

    ``method`` selects the source of mu_ip/mu_oop: the closed forms, or the
    hermitian weight product (which never raises).
    """
    if method == "closed_form":
        ip, oop = mu_ip_full(medium, inp), mu_oop_full(medium, inp)
    elif method == "weights":
        ip, oop = mu_from_weights(medium, nads_params(inp))
    else:
        raise ValueError(f"unknown dipole method {method!r}")
    ad = mu_adiabatic(medium, inp.rabi)
    with np.errstate(divide="ignore", invalid="ignore"):
        return DipoleResult(ip, oop, ad, _out(ip / ad), _out(oop / ad), medium.dipole_moment)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x
