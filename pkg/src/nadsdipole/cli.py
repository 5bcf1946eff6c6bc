"""Command-line front end.

    nadsdipole convert "1e14 W/cm2" --dipole "0.01 D"
    nadsdipole eval --preset fig2a --time "50 fs"
    nadsdipole gac --preset fig2a
    nadsdipole sweep --preset fig2a --out fig2a.csv --svg fig2a.svg
    nadsdipole tdse --preset fig2a --tau "200 fs" --out traj.csv
    nadsdipole plot --in fig2a.csv --out fig2a.svg

Numeric results go to files or stdout, diagnostics to stderr.  Exit status
is 0 on success, 1 on a reported error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import io
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .config import ConfigError, PRESETS, RunConfig, _check_keys, _merge, resolve, tomllib
from .dipole import OutOfValidityError, dipole_result, dmn, mu_from_weights
from .nads import NadsInput, critical_tau, gac_check, nads_params
from .pulse import Pulse, log_derivative_at, rabi_at
from .quantities import (
    DomainError,
    PulseShape,
    fwhm_to_tau,
    intensity_to_field,
    parse_quantity,
    quantity_dimension,
    rabi_frequency,
    si_to_debye,
    MediumParams,
    tau_to_fwhm,
)
from .sweep import atomic_write_text, csv_text, duration_sweep, gac_table, read_csv, render_svg
from .tdse import extract_quadratures, max_step, propagate_rwa, tail_start

COMMANDS = ("convert", "eval", "gac", "sweep", "tdse", "plot")


def _add_config_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="TOML run configuration")
    p.add_argument("--preset", choices=sorted(PRESETS), help="named scenario to start from")
    p.add_argument("--dipole", help='transition dipole, e.g. "0.01 D"')
    p.add_argument("--detuning", help='detuning, e.g. "1e16 1/s"')
    p.add_argument("--intensity", help='peak intensity, e.g. "5e13 W/cm2"')
    p.add_argument("--shape", choices=[s.value for s in PulseShape])
    dur = p.add_mutually_exclusive_group()
    dur.add_argument("--tau", help='envelope time constant, e.g. "56.7 fs"')
    dur.add_argument("--fwhm", help='intensity FWHM, e.g. "100 fs"')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nadsdipole", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")
    sub.required = True

    p = sub.add_parser("convert", help="unit conversions")
    p.add_argument("values", nargs="+", help='quantities such as "1e14 W/cm2", "0.01 D", "100 fs"')
    p.add_argument("--dipole", help="dipole for intensity -> Rabi frequency")
    p.add_argument("--shape", choices=[s.value for s in PulseShape], help="treat durations as FWHM of this shape")

    p = sub.add_parser("eval", help="NADS parameters and dipole at one instant")
    _add_config_options(p)
    p.add_argument("--time", default="0 fs", help="time relative to the pulse peak")
    p.add_argument("--csv", help="also write a one-row CSV here")

    p = sub.add_parser("gac", help="validity table over the duration grid")
    _add_config_options(p)
    p.add_argument("--threshold", type=float)
    p.add_argument("--out", help="CSV destination (default stdout)")

    p = sub.add_parser("sweep", help="dipole versus pulse duration")
    _add_config_options(p)
    p.add_argument("--out", help="CSV destination (default stdout)")
    p.add_argument("--svg", help="also render a plot")
    p.add_argument("--workers", type=int)
    p.add_argument("--tdse", action="store_true", help="add the TDSE peak ratio column")

    p = sub.add_parser("tdse", help="RWA propagation of one pulse")
    _add_config_options(p)
    p.add_argument("--out", help="time-series CSV destination (default stdout)")

    p = sub.add_parser("plot", help="render a sweep CSV as SVG")
    p.add_argument("--in", dest="source", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--y", default="ratio_ip", help="comma-separated columns")
    p.add_argument("--x", default="tau", choices=["tau", "fwhm"])
    p.add_argument("--logy", action="store_true")
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                data = tomllib.load(fh)
        except OSError as e:
            raise ConfigError(f"cannot read config {args.config}: {e.strerror or e}") from None
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"{args.config}: malformed config: {e}") from None
        _check_keys(data)
    over: dict = {}
    for flag, sec, key in (
        ("dipole", "medium", "dipole_moment"),
        ("detuning", "medium", "detuning"),
        ("intensity", "pulse", "peak_intensity"),
        ("shape", "pulse", "shape"),
        ("tau", "pulse", "tau"),
        ("fwhm", "pulse", "fwhm"),
    ):
        val = getattr(args, flag, None)
        if val is not None:
            over.setdefault(sec, {})[key] = val
    merged = _merge(data, over)
    preset = args.preset or data.get("preset")
    if preset is not None:
        merged["preset"] = preset
    return resolve(merged)


def _need(cfg: RunConfig, *sections: str) -> None:
    missing = [s for s in sections if getattr(cfg, s) is None]
    if missing:
        raise ConfigError(f"missing section(s): {', '.join(missing)} (use --config or --preset)")


def _emit(text: str, destination: str | None) -> None:
    if destination:
        atomic_write_text(destination, text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for r in rows:
        buf.write(",".join(_cell(x) for x in r) + "\n")
    return buf.getvalue()


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


# --- subcommands ----------------------------------------------------------------


def cmd_convert(args) -> int:
    medium = None
    if args.dipole:
        medium = MediumParams(parse_quantity(args.dipole, "dipole"), 1.0)
    for text in args.values:
        dim = quantity_dimension(text)
        value = parse_quantity(text)
        if dim == "intensity":
            field = intensity_to_field(value)
            print(f"intensity_W_per_cm2 = {value!r}")
            print(f"field_V_per_m = {field!r}")
            if medium is not None:
                print(f"rabi_1_per_s = {rabi_frequency(medium, field)!r}")
        elif dim == "dipole":
            print(f"dipole_Cm = {value!r}")
            print(f"dipole_D = {si_to_debye(value)!r}")
        elif dim == "time":
            print(f"time_s = {value!r}")
            shapes = [PulseShape(args.shape)] if args.shape else list(PulseShape)
            for s in shapes:
                print(f"tau_if_fwhm_{s.value}_s = {fwhm_to_tau(s, value)!r}")
                print(f"fwhm_if_tau_{s.value}_s = {tau_to_fwhm(s, value)!r}")
        elif dim in ("rate", "field"):
            print(f"{'rate_1_per_s' if dim == 'rate' else 'field_V_per_m'} = {value!r}")
        else:
            raise DomainError(f"{text!r} has no unit; nothing to convert")
    return 0


def cmd_eval(cfg: RunConfig, args) -> int:
    _need(cfg, "medium", "pulse")
    pulse = cfg.pulse.build()
    medium = cfg.medium
    t = parse_quantity(args.time, "time")
    rabi = float(rabi_at(pulse, medium, t))
    a = float(log_derivative_at(pulse, t))
    inp = NadsInput(medium.detuning, rabi, a)
    params = nads_params(inp)
    trip = dmn(inp)
    w_ip, w_oop = mu_from_weights(medium, params)
    gac = gac_check(pulse, medium)
    items = [
        ("tau_s", pulse.tau), ("fwhm_s", pulse.fwhm), ("t_s", t),
        ("detuning_1_per_s", medium.detuning), ("rabi_1_per_s", rabi), ("a_1_per_s", a),
    ]
    for name in ("omega_tilde", "lambda1", "lambda2", "cos_half", "sin_half"):
        z = getattr(params, name)
        items += [(f"{name}_re", z.real), (f"{name}_im", z.imag)]
    items += [("D", trip.D), ("M", trip.M), ("N", trip.N)]
    error = None
    try:
        res = dipole_result(medium, inp)
        items += [
            ("mu_ip_Cm", res.mu_ip), ("mu_oop_Cm", res.mu_oop), ("mu_ad_Cm", res.mu_ad),
            ("ratio_ip", res.ratio_ip), ("ratio_oop", res.ratio_oop),
            ("mu_ip_over_mu", res.ip_over_mu), ("mu_oop_over_mu", res.oop_over_mu),
        ]
    except OutOfValidityError as e:
        error = e
        items += [("mu_ip_Cm", None), ("mu_oop_Cm", None)]
    items += [
        ("weights_mu_ip_Cm", w_ip), ("weights_mu_oop_Cm", w_oop),
        ("gac_rho", gac.critical_ratio), ("gac_valid", gac.valid),
    ]
    for k, v in items:
        print(f"{k} = {_cell(v)}")
    if args.csv:
        atomic_write_text(args.csv, _csv([k for k, _ in items], [[v for _, v in items]]))
    if error is not None:
        print(f"error: {error}", file=sys.stderr)
        return 1
    return 0


def cmd_gac(cfg: RunConfig, args) -> int:
    _need(cfg, "medium", "pulse", "sweep")
    sc = cfg.sweep_config()
    if args.threshold is not None:
        sc = replace(sc, gac_threshold=args.threshold)
    reports = gac_table(sc)
    rows = [(r.tau, *r.order_ratios, r.critical_ratio, r.valid) for r in reports]
    _emit(_csv(("tau_s", "r0", "r1", "r2", "rho", "valid"), rows), args.out)
    peak = Pulse(sc.shape, 1.0, sc.peak_intensity).peak_rabi(sc.medium)
    tc = critical_tau(sc.medium, peak, sc.gac_threshold)
    print(f"critical tau (rho = {sc.gac_threshold:g}): {tc!r} s = {tc / 1e-15:.4g} fs", file=sys.stderr)
    return 0


def cmd_sweep(cfg: RunConfig, args) -> int:
    _need(cfg, "medium", "pulse", "sweep")
    sc = cfg.sweep_config(workers=args.workers, include_tdse=True if args.tdse else None)
    rows = duration_sweep(sc)
    if not rows:
        raise DomainError("sweep produced no rows")
    _emit(csv_text(rows), args.out or cfg.output.csv)
    svg = args.svg or cfg.output.svg
    if svg:
        cols = ("ratio_ip", "ratio_oop") if cfg.preset == "fig3" else ("ratio_ip",)
        if sc.include_tdse and cfg.preset != "fig3":
            cols += ("tdse_ratio_ip",)
        render_svg(rows, svg, y=cols, logy=cfg.preset == "fig3", title=cfg.preset)
    bad = sum(not r.gac_valid for r in rows)
    if bad:
        print(f"{bad} of {len(rows)} rows outside the validity range", file=sys.stderr)
    return 0


def cmd_tdse(cfg: RunConfig, args) -> int:
    _need(cfg, "medium", "pulse")
    pulse = cfg.pulse.build()
    medium = cfg.medium
    spec = cfg.tdse
    level = spec.level if spec else 1e-6
    t0 = spec.t0 if spec and spec.t0 is not None else tail_start(pulse, level)
    t1 = spec.t1 if spec and spec.t1 is not None else -t0
    dt = spec.dt if spec and spec.dt is not None else max_step(pulse, medium)
    nmax = spec.max_samples if spec else 20001
    traj = propagate_rwa(pulse, medium, t0, t1, dt, max_samples=nmax)
    ip, oop = extract_quadratures(traj, medium)
    norm_err = traj.norm_error
    series = _csv(("t_s", "mu_ip_Cm", "mu_oop_Cm", "norm_error"), zip(traj.t, ip, oop, norm_err))
    _emit(series, args.out or cfg.output.csv)

    k = int(np.argmin(np.abs(traj.t)))
    w = float(rabi_at(pulse, medium, traj.t[k]))
    inp = NadsInput(medium.detuning, w, float(log_derivative_at(pulse, traj.t[k])))
    res = dipole_result(medium, inp)
    summary = _csv(
        ("t_peak_s", "tdse_mu_ip_Cm", "tdse_mu_oop_Cm", "mu_ad_Cm", "tdse_ratio_ip", "mu_ip_full_Cm",
         "ratio_ip_full", "max_norm_error", "steps"),
        [(traj.t[k], ip[k], oop[k], res.mu_ad, ip[k] / res.mu_ad, res.mu_ip, res.ratio_ip,
          float(np.max(np.abs(norm_err))), round(abs(t1 - t0) / traj.dt))],
    )
    (sys.stdout if (args.out or cfg.output.csv) else sys.stderr).write(summary)
    return 0


def cmd_plot(args) -> int:
    rows = read_csv(args.source)
    render_svg(rows, args.out, y=tuple(c.strip() for c in args.y.split(",") if c.strip()), x=args.x,
               logy=args.logy)
    return 0


def dispatch(command: str, cfg: RunConfig | None, args: argparse.Namespace) -> int:
    if command == "convert":
        return cmd_convert(args)
    if command == "plot":
        return cmd_plot(args)
    handler = {"eval": cmd_eval, "gac": cmd_gac, "sweep": cmd_sweep, "tdse": cmd_tdse}.get(command)
    if handler is None:
        raise DomainError(f"unknown subcommand {command!r}")
    return handler(cfg, args)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args) if args.command in ("eval", "gac", "sweep", "tdse") else None
        return dispatch(args.command, cfg, args)
    except (ValueError, OSError) as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
