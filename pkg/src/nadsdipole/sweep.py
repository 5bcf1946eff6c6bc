"""Pulse-duration sweeps of the nonadiabatic dipole, with CSV and SVG output."""

from __future__ import annotations

import csv
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from enum import Enum
from pathlib import Path

import numpy as np

from .dipole import OutOfValidityError, dipole_result
from .nads import DEFAULT_GAC_THRESHOLD, DEFAULT_WINDOW, MAX_WINDOW, GacReport, NadsInput, gac_check
from .pulse import Pulse, PulseShape, log_derivative_at, rabi_at
from .quantities import DomainError, MediumParams, PICOSECOND, fwhm_to_tau, tau_to_fwhm
from .tdse import tdse_peak_ratio

__all__ = [
    "EvaluationPolicy",
    "SweepConfig",
    "SweepRow",
    "CSV_COLUMNS",
    "duration_sweep",
    "gac_table",
    "write_csv",
    "read_csv",
    "render_svg",
]

CSV_COLUMNS = (
    "tau_s",
    "fwhm_s",
    "a_eval_1ps",
    "mu_ip_Cm",
    "mu_oop_Cm",
    "mu_ad_Cm",
    "ratio_ip",
    "ratio_oop",
    "gac_rho",
    "gac_valid",
    "tdse_ratio_ip",
)


class EvaluationPolicy(str, Enum):
    """Where on the pulse a row's dipole values are taken."""

    MAX_OVER_WINDOW = "max_over_window"  # argmax of ratio_ip over |t| <= window*tau
    AT_PEAK_OF_A = "at_peak_of_a"  # argmax of |a(t)| over the window
    AT_FIXED_FRACTION = "at_fixed_fraction"  # t = fraction * tau


@dataclass(frozen=True)
class SweepConfig:
    medium: MediumParams
    shape: PulseShape
    peak_intensity: float  # W/cm^2
    durations: tuple[float, ...]  # seconds, interpreted per duration_axis
    duration_axis: str = "tau"  # "tau" | "fwhm"
    policy: EvaluationPolicy = EvaluationPolicy.MAX_OVER_WINDOW
    fraction: float = 1.0
    window: float = DEFAULT_WINDOW
    gac_threshold: float = DEFAULT_GAC_THRESHOLD
    include_tdse: bool = False
    dipole_method: str = "closed_form"
    samples: int = 2001
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "shape", PulseShape.parse(self.shape))
        object.__setattr__(self, "policy", EvaluationPolicy(self.policy))
        object.__setattr__(self, "durations", tuple(float(d) for d in self.durations))
        d = self.durations
        if not d:
            raise DomainError("duration grid is empty")
        if any(not x > 0 for x in d):
            raise DomainError("durations must be positive")
        if any(b <= a for a, b in zip(d, d[1:])):
            raise DomainError("durations must be strictly increasing")
        if self.duration_axis not in ("tau", "fwhm"):
            raise DomainError(f"duration_axis must be 'tau' or 'fwhm', got {self.duration_axis!r}")
        if not 0 < self.window <= MAX_WINDOW:
            raise DomainError(f"window must be in (0, {MAX_WINDOW}] tau")
        if self.policy is EvaluationPolicy.AT_FIXED_FRACTION and not 0 <= self.fraction <= self.window:
            raise DomainError("fraction must lie inside the evaluation window")
        if not 0 < self.gac_threshold < 1:
            raise DomainError("gac_threshold must be in (0, 1)")
        if self.dipole_method not in ("closed_form", "weights"):
            raise DomainError(f"unknown dipole_method {self.dipole_method!r}")
        if self.samples < 3 or self.workers < 1:
            raise DomainError("samples must be >= 3 and workers >= 1")
        if not self.peak_intensity > 0:
            raise DomainError("peak_intensity must be positive")

    @property
    def taus(self) -> tuple[float, ...]:
        if self.duration_axis == "tau":
            return self.durations
        return tuple(fwhm_to_tau(self.shape, f) for f in self.durations)

    def pulse(self, tau: float) -> Pulse:
        return Pulse(self.shape, tau, self.peak_intensity)


@dataclass(frozen=True)
class SweepRow:
    tau: float
    fwhm: float
    a_eval: float  # s^-1
    mu_ip: float | None
    mu_oop: float | None
    mu_ad: float | None
    ratio_ip: float | None
    ratio_oop: float | None
    gac_rho: float
    gac_valid: bool
    tdse_ratio_ip: float | None = None


def _eval_times(config: SweepConfig, pulse: Pulse) -> np.ndarray:
    if config.policy is EvaluationPolicy.AT_FIXED_FRACTION:
        return np.array([config.fraction * pulse.tau])
    n = config.samples | 1  # odd, so t = 0 is on the grid
    return np.linspace(-config.window * pulse.tau, config.window * pulse.tau, n)


def _row(config: SweepConfig, tau: float) -> SweepRow:
    pulse = config.pulse(tau)
    medium = config.medium
    gac = gac_check(
        pulse, medium, (-config.window * tau, config.window * tau), config.gac_threshold, samples=config.samples
    )
    t = _eval_times(config, pulse)
    a = log_derivative_at(pulse, t)
    inp = NadsInput(medium.detuning, rabi_at(pulse, medium, t), a)
    tdse = tdse_peak_ratio(pulse, medium)[0] if config.include_tdse else None
    fwhm = tau_to_fwhm(config.shape, tau)
    try:
        res = dipole_result(medium, inp, config.dipole_method)
    except OutOfValidityError:
        return SweepRow(tau, fwhm, float(np.max(np.abs(a))), None, None, None, None, None,
                        gac.critical_ratio, False, tdse)

    if config.policy is EvaluationPolicy.AT_PEAK_OF_A:
        # a is odd: take the positive-time extremum
        k = int(np.argmax(np.where(t >= 0, np.abs(a), -1.0)))
    elif config.policy is EvaluationPolicy.MAX_OVER_WINDOW:
        ratio = np.atleast_1d(res.ratio_ip)
        k = int(np.argmax(np.where(t >= 0, ratio, -np.inf)))
    else:
        k = 0

    def pick(x):
        return float(np.atleast_1d(x)[k])

    return SweepRow(
        tau=tau,
        fwhm=fwhm,
        a_eval=float(np.atleast_1d(a)[k]),
        mu_ip=pick(res.mu_ip),
        mu_oop=pick(res.mu_oop),
        mu_ad=pick(res.mu_ad),
        ratio_ip=pick(res.ratio_ip),
        ratio_oop=pick(res.ratio_oop),
        gac_rho=gac.critical_ratio,
        gac_valid=gac.valid,
        tdse_ratio_ip=tdse,
    )


def duration_sweep(config: SweepConfig) -> list[SweepRow]:
    """One row per duration, sorted by tau.

    Rows where the closed forms are out of validity keep their duration and
    critical ratio, carry no dipole values and are flagged invalid.
    """
    taus = config.taus
    if config.workers == 1:
        rows = [_row(config, tau) for tau in taus]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(lambda tau: _row(config, tau), taus))
    return sorted(rows, key=lambda r: r.tau)


def gac_table(config: SweepConfig) -> list[GacReport]:
    out = []
    for tau in config.taus:
        out.append(
            gac_check(config.pulse(tau), config.medium, (-config.window * tau, config.window * tau),
                      config.gac_threshold, samples=config.samples)
        )
    return out


# --- CSV ----------------------------------------------------------------------


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return repr(float(x))


def _row_values(row: SweepRow) -> list[str]:
    return [
        _fmt(row.tau),
        _fmt(row.fwhm),
        _fmt(row.a_eval * PICOSECOND),
        _fmt(row.mu_ip),
        _fmt(row.mu_oop),
        _fmt(row.mu_ad),
        _fmt(row.ratio_ip),
        _fmt(row.ratio_oop),
        _fmt(row.gac_rho),
        _fmt(row.gac_valid),
        _fmt(row.tdse_ratio_ip),
    ]


def atomic_write_text(destination, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(destination)
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror or e}") from e
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException as e:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        if isinstance(e, OSError):
            raise OSError(f"cannot write {path}: {e.strerror or e}") from e
        raise


def csv_text(rows: list[SweepRow]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(",".join(_row_values(r)) for r in rows)
    return "\n".join(lines) + "\n"


def write_csv(rows: list[SweepRow], destination) -> None:
    """Header plus one line per row; floats are written with repr (round-trip exact)."""
    if not rows:
        raise DomainError("no rows to write")
    atomic_write_text(destination, csv_text(rows))


def _parse(x: str):
    return None if x == "" else float(x)


def read_csv(source) -> list[SweepRow]:
    path = Path(source)
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            body = list(reader)
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror or e}") from e
    if tuple(header) != CSV_COLUMNS:
        raise DomainError(f"{path}: unexpected CSV header {header!r}")
    rows = []
    for rec in body:
        v = [_parse(x) if i != 9 else x for i, x in enumerate(rec)]
        rows.append(
            SweepRow(
                tau=v[0], fwhm=v[1], a_eval=v[2] / PICOSECOND, mu_ip=v[3], mu_oop=v[4], mu_ad=v[5],
                ratio_ip=v[6], ratio_oop=v[7], gac_rho=v[8], gac_valid=(v[9] == "true"), tdse_ratio_ip=v[10],
            )
        )
    return rows


# --- SVG ----------------------------------------------------------------------

_LABELS = {
    "ratio_ip": r"$\mu^{ip}_{nad} / \mu_{ad}$",
    "ratio_oop": r"$\mu^{oop}_{nad} / \mu_{ad}$",
    "tdse_ratio_ip": r"TDSE $\mu^{ip} / \mu_{ad}$ (peak)",
    "mu_ip": r"$\mu^{ip}_{nad}$ (C m)",
    "mu_oop": r"$\mu^{oop}_{nad}$ (C m)",
    "mu_ad": r"$\mu_{ad}$ (C m)",
}


def render_svg(rows: list[SweepRow], destination, y=("ratio_ip",), x: str = "tau", logy: bool = False,
               title: str | None = None) -> None:
    """Log-x line plot of the chosen columns against duration (fs)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if len(rows) < 2:
        raise DomainError("need at least two rows to plot")
    if x not in ("tau", "fwhm"):
        raise DomainError(f"x axis must be 'tau' or 'fwhm', got {x!r}")
    names = {f.name for f in fields(SweepRow)}
    for col in y:
        if col not in names:
            raise DomainError(f"unknown column {col!r}")

    xs_all = np.array([getattr(r, x) for r in rows]) / 1e-15
    if not np.all(np.isfinite(xs_all)) or np.min(xs_all) <= 0 or np.ptp(xs_all) == 0:
        raise DomainError("degenerate duration axis")

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    plotted = 0
    for col in y:
        pts = [(getattr(r, x) / 1e-15, getattr(r, col)) for r in rows if getattr(r, col) is not None]
        pts = [(px, py) for px, py in pts if math.isfinite(py) and (py > 0 or not logy)]
        if len(pts) < 2:
            continue
        px, py = zip(*pts)
        ax.plot(px, py, marker="o", ms=3, lw=1.2, label=_LABELS.get(col, col))
        plotted += 1
    if plotted == 0:
        plt.close(fig)
        raise DomainError("no plottable series")
    ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(r"$\tau$ (fs)" if x == "tau" else "intensity FWHM (fs)")
    ax.set_ylabel("relative dipole")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    ax.grid(True, which="both", lw=0.3, alpha=0.5)
    fig.tight_layout()
    try:
        # fixed salt: clip-path ids, and so the file bytes, are reproducible
        with matplotlib.rc_context({"svg.hashsalt": "nadsdipole"}):
            fig.savefig(destination, format="svg", metadata={"Date": None})
    except OSError as e:
        raise OSError(f"cannot write {destination}: {e.strerror or e}") from e
    finally:
        plt.close(fig)
