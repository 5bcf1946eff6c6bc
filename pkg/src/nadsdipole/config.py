"""Run configuration: TOML in, validated SI dataclasses out.

Grammar (every section optional; a preset fills in everything)::

    preset = "fig2a"                  # fig2a | fig2b | fig3

    [medium]
    dipole_moment = "0.01 D"          # D or C*m
    detuning = "1e16 1/s"

    [pulse]
    shape = "sech2"                   # sech2 | gaussian
    fwhm = "100 fs"                   # or tau = "...", not both
    peak_intensity = "5e13 W/cm2"
    carrier_frequency = "2.36e15 1/s" # optional

    [sweep]
    durations = ["20 fs", "50 fs"]    # or tau_min / tau_max / points (log-spaced)
    axis = "tau"                      # what the durations are: tau | fwhm
    policy = "max_over_window"        # | at_peak_of_a | at_fixed_fraction
    fraction = 1.0
    window = 2.5
    gac_threshold = 0.1
    include_tdse = false
    dipole_method = "closed_form"     # | weights
    workers = 1
    samples = 2001

    [tdse]
    t0 = "-500 fs"                    # default: where the envelope is `level`
    t1 = "0 fs"                       # default: -t0
    dt = "1e-18 s"                    # default: largest admissible step
    level = 1e-6
    max_samples = 20001

    [output]
    csv = "out.csv"
    svg = "out.svg"

Quantities are strings with a unit or bare numbers already in SI (W/cm^2
for intensities).  Unknown keys are rejected.  Explicit keys override the
preset; a duration given as ``tau`` or ``fwhm`` replaces the preset's
duration of either kind.
"""

from __future__ import annotations

import copy
import sys
from dataclasses import dataclass, field

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib
import tomli_w

from .pulse import Pulse
from .quantities import DomainError, MediumParams, PulseShape, fwhm_to_tau, parse_quantity
from .sweep import EvaluationPolicy, SweepConfig

__all__ = ["ConfigError", "RunConfig", "PulseSpec", "SweepSpec", "TdseSpec", "OutputSpec", "PRESETS",
           "parse_config", "load_config", "dump_config", "resolve"]


class ConfigError(ValueError):
    pass


_FIG_MEDIUM = {"dipole_moment": "0.01 D", "detuning": "1e16 1/s"}
_FIG_PULSE = {"shape": "sech2", "fwhm": "100 fs", "peak_intensity": "5e13 W/cm2"}
_FIG_SWEEP = {"tau_min": "20 fs", "tau_max": "1000 fs", "points": 25, "axis": "tau", "policy": "max_over_window"}

PRESETS: dict[str, dict] = {
    "fig2a": {"medium": dict(_FIG_MEDIUM), "pulse": dict(_FIG_PULSE), "sweep": dict(_FIG_SWEEP)},
    "fig2b": {"medium": {**_FIG_MEDIUM, "dipole_moment": "1 D"}, "pulse": dict(_FIG_PULSE),
              "sweep": dict(_FIG_SWEEP)},
    "fig3": {"medium": dict(_FIG_MEDIUM), "pulse": dict(_FIG_PULSE), "sweep": dict(_FIG_SWEEP)},
}

_KEYS = {
    "medium": {"dipole_moment", "detuning"},
    "pulse": {"shape", "tau", "fwhm", "peak_intensity", "carrier_frequency"},
    "sweep": {"durations", "tau_min", "tau_max", "points", "axis", "policy", "fraction", "window",
              "gac_threshold", "include_tdse", "dipole_method", "workers", "samples"},
    "tdse": {"t0", "t1", "dt", "level", "max_samples"},
    "output": {"csv", "svg"},
}


@dataclass(frozen=True)
class PulseSpec:
    shape: PulseShape
    tau: float
    peak_intensity: float
    carrier_frequency: float | None = None

    def build(self) -> Pulse:
        return Pulse(self.shape, self.tau, self.peak_intensity, self.carrier_frequency)


@dataclass(frozen=True)
class SweepSpec:
    durations: tuple[float, ...]
    axis: str = "tau"
    policy: EvaluationPolicy = EvaluationPolicy.MAX_OVER_WINDOW
    fraction: float = 1.0
    window: float = 2.5
    gac_threshold: float = 0.1
    include_tdse: bool = False
    dipole_method: str = "closed_form"
    workers: int = 1
    samples: int = 2001


@dataclass(frozen=True)
class TdseSpec:
    t0: float | None = None
    t1: float | None = None
    dt: float | None = None
    level: float = 1e-6
    max_samples: int = 20001


@dataclass(frozen=True)
class OutputSpec:
    csv: str | None = None
    svg: str | None = None


@dataclass(frozen=True)
class RunConfig:
    preset: str | None = None
    medium: MediumParams | None = None
    pulse: PulseSpec | None = None
    sweep: SweepSpec | None = None
    tdse: TdseSpec | None = None
    output: OutputSpec = field(default_factory=OutputSpec)

    def sweep_config(self, workers: int | None = None, include_tdse: bool | None = None) -> SweepConfig:
        if self.medium is None or self.pulse is None or self.sweep is None:
            raise ConfigError("sweep needs [medium], [pulse] and [sweep] (or a preset)")
        s = self.sweep
        return SweepConfig(
            medium=self.medium,
            shape=self.pulse.shape,
            peak_intensity=self.pulse.peak_intensity,
            durations=s.durations,
            duration_axis=s.axis,
            policy=s.policy,
            fraction=s.fraction,
            window=s.window,
            gac_threshold=s.gac_threshold,
            include_tdse=s.include_tdse if include_tdse is None else include_tdse,
            dipole_method=s.dipole_method,
            samples=s.samples,
            workers=s.workers if workers is None else workers,
        )


def _q(section: str, raw: dict, key: str, dim: str | None, default=None, required=False):
    if key not in raw:
        if required:
            raise ConfigError(f"missing required key {section}.{key}")
        return default
    try:
        return parse_quantity(raw[key], dim)
    except DomainError as e:
        raise ConfigError(f"{section}.{key}: {e}") from None


def _typed(section: str, raw: dict, key: str, kind, default):
    if key not in raw:
        return default
    v = raw[key]
    if kind is bool:
        if not isinstance(v, bool):
            raise ConfigError(f"{section}.{key}: expected true/false, got {v!r}")
        return v
    if kind is int:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{section}.{key}: expected an integer, got {v!r}")
        return v
    if kind is float:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{section}.{key}: expected a number, got {v!r}")
        return float(v)
    if not isinstance(v, str):
        raise ConfigError(f"{section}.{key}: expected a string, got {v!r}")
    return v


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for sec, vals in over.items():
        if sec == "preset":
            continue
        tgt = out.setdefault(sec, {})
        if sec == "pulse" and ("tau" in vals or "fwhm" in vals):
            tgt.pop("tau", None)
            tgt.pop("fwhm", None)
        if sec == "sweep" and "durations" in vals:
            for k in ("tau_min", "tau_max", "points"):
                tgt.pop(k, None)
        if sec == "sweep" and {"tau_min", "tau_max", "points"} & set(vals):
            tgt.pop("durations", None)
        tgt.update(vals)
    return out


def _check_keys(data: dict) -> None:
    for sec, vals in data.items():
        if sec == "preset":
            if not isinstance(vals, str):
                raise ConfigError("preset must be a string")
            continue
        if sec not in _KEYS:
            raise ConfigError(f"unknown section or key {sec!r}")
        if not isinstance(vals, dict):
            raise ConfigError(f"{sec} must be a table")
        unknown = set(vals) - _KEYS[sec]
        if unknown:
            raise ConfigError(f"unknown key(s) in [{sec}]: {', '.join(sorted(unknown))}")
    pulse = data.get("pulse", {})
    if "tau" in pulse and "fwhm" in pulse:
        raise ConfigError("pulse: give either tau or fwhm, not both")
    sweep = data.get("sweep", {})
    if "durations" in sweep and {"tau_min", "tau_max", "points"} & set(sweep):
        raise ConfigError("sweep: give either durations or tau_min/tau_max/points, not both")


def resolve(data: dict) -> RunConfig:
    """Validate a raw mapping (as loaded from TOML) into a RunConfig."""
    _check_keys(data)
    preset = data.get("preset")
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r} (expected one of: {', '.join(PRESETS)})")
        data = _merge(PRESETS[preset], data)

    medium = None
    if "medium" in data:
        raw = data["medium"]
        try:
            medium = MediumParams(
                _q("medium", raw, "dipole_moment", "dipole", required=True),
                _q("medium", raw, "detuning", "rate", required=True),
            )
        except DomainError as e:
            raise ConfigError(f"medium: {e}") from None

    pulse = None
    if "pulse" in data:
        raw = data["pulse"]
        try:
            shape = PulseShape.parse(_typed("pulse", raw, "shape", str, "sech2"))
        except DomainError as e:
            raise ConfigError(f"pulse.shape: {e}") from None
        intensity = _q("pulse", raw, "peak_intensity", "intensity", required=True)
        if "tau" in raw:
            tau = _q("pulse", raw, "tau", "time")
        elif "fwhm" in raw:
            try:
                tau = fwhm_to_tau(shape, _q("pulse", raw, "fwhm", "time"))
            except DomainError as e:
                raise ConfigError(f"pulse.fwhm: {e}") from None
        else:
            raise ConfigError("missing required key pulse.tau (or pulse.fwhm)")
        carrier = _q("pulse", raw, "carrier_frequency", "rate")
        spec = PulseSpec(shape, tau, intensity, carrier)
        try:
            spec.build()
        except DomainError as e:
            raise ConfigError(f"pulse: {e}") from None
        pulse = spec

    sweep = None
    if "sweep" in data:
        raw = data["sweep"]
        if "durations" in raw:
            if not isinstance(raw["durations"], list):
                raise ConfigError("sweep.durations must be a list")
            try:
                durations = tuple(parse_quantity(d, "time") for d in raw["durations"])
            except DomainError as e:
                raise ConfigError(f"sweep.durations: {e}") from None
        else:
            lo = _q("sweep", raw, "tau_min", "time", required=True)
            hi = _q("sweep", raw, "tau_max", "time", required=True)
            n = _typed("sweep", raw, "points", int, 25)
            if not (0 < lo < hi) or n < 2:
                raise ConfigError("sweep: need 0 < tau_min < tau_max and points >= 2")
            durations = tuple(float(x) for x in np.geomspace(lo, hi, n))
        try:
            policy = EvaluationPolicy(_typed("sweep", raw, "policy", str, "max_over_window"))
        except ValueError:
            raise ConfigError(f"sweep.policy: unknown policy {raw.get('policy')!r}") from None
        sweep = SweepSpec(
            durations=durations,
            axis=_typed("sweep", raw, "axis", str, "tau"),
            policy=policy,
            fraction=_typed("sweep", raw, "fraction", float, 1.0),
            window=_typed("sweep", raw, "window", float, 2.5),
            gac_threshold=_typed("sweep", raw, "gac_threshold", float, 0.1),
            include_tdse=_typed("sweep", raw, "include_tdse", bool, False),
            dipole_method=_typed("sweep", raw, "dipole_method", str, "closed_form"),
            workers=_typed("sweep", raw, "workers", int, 1),
            samples=_typed("sweep", raw, "samples", int, 2001),
        )

    tdse = None
    if "tdse" in data:
        raw = data["tdse"]
        tdse = TdseSpec(
            t0=_q("tdse", raw, "t0", "time"),
            t1=_q("tdse", raw, "t1", "time"),
            dt=_q("tdse", raw, "dt", "time"),
            level=_typed("tdse", raw, "level", float, 1e-6),
            max_samples=_typed("tdse", raw, "max_samples", int, 20001),
        )

    raw = data.get("output", {})
    output = OutputSpec(_typed("output", raw, "csv", str, None), _typed("output", raw, "svg", str, None))
    cfg = RunConfig(preset, medium, pulse, sweep, tdse, output)
    if sweep is not None and medium is not None and pulse is not None:
        try:
            cfg.sweep_config()
        except DomainError as e:
            raise ConfigError(f"sweep: {e}") from None
    return cfg


def parse_config(text: str) -> RunConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"malformed config: {e}") from None
    return resolve(data)


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror or e}") from None
    return parse_config(text)


def dump_config(cfg: RunConfig) -> str:
    """Serialize with every value explicit, in canonical units."""
    out: dict = {}
    if cfg.preset is not None:
        out["preset"] = cfg.preset
    if cfg.medium is not None:
        out["medium"] = {"dipole_moment": cfg.medium.dipole_moment, "detuning": cfg.medium.detuning}
    if cfg.pulse is not None:
        p = {"shape": cfg.pulse.shape.value, "tau": cfg.pulse.tau, "peak_intensity": cfg.pulse.peak_intensity}
        if cfg.pulse.carrier_frequency is not None:
            p["carrier_frequency"] = cfg.pulse.carrier_frequency
        out["pulse"] = p
    if cfg.sweep is not None:
        s = cfg.sweep
        out["sweep"] = {
            "durations": list(s.durations), "axis": s.axis, "policy": s.policy.value, "fraction": s.fraction,
            "window": s.window, "gac_threshold": s.gac_threshold, "include_tdse": s.include_tdse,
            "dipole_method": s.dipole_method, "workers": s.workers, "samples": s.samples,
        }
    if cfg.tdse is not None:
        t = {k: v for k, v in (("t0", cfg.tdse.t0), ("t1", cfg.tdse.t1), ("dt", cfg.tdse.dt)) if v is not None}
        t.update(level=cfg.tdse.level, max_samples=cfg.tdse.max_samples)
        out["tdse"] = t
    o = {k: v for k, v in (("csv", cfg.output.csv), ("svg", cfg.output.svg)) if v is not None}
    if o:
        out["output"] = o
    return tomli_w.dumps(out)
