"""Induced in-phase dipole versus pulse duration for 0.01 D and 1 D.

Writes fig2a.csv, fig2b.csv and fig2.svg (both ratios on one log-log plot)
to --outdir.
"""

import argparse
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from nadsdipole.config import parse_config
from nadsdipole.sweep import duration_sweep, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--points", type=int, default=25)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    fig, ax = plt.subplots(figsize=(6, 4.2))
    for name, label in (("fig2a", r"$\mu$ = 0.01 D"), ("fig2b", r"$\mu$ = 1 D")):
        cfg = parse_config(f'preset = "{name}"\n[sweep]\npoints = {args.points}\n').sweep_config()
        rows = duration_sweep(cfg)
        write_csv(rows, out / f"{name}.csv")
        valid = [r for r in rows if r.gac_valid]
        ax.plot([r.tau / 1e-15 for r in valid], [r.ratio_ip - 1 for r in valid], "o-", ms=3, label=label)
        skipped = len(rows) - len(valid)
        print(f"{name}: ratio_ip {valid[0].ratio_ip:.4g} at {valid[0].tau / 1e-15:.1f} fs -> "
              f"{valid[-1].ratio_ip:.6g} at {valid[-1].tau / 1e-15:.0f} fs ({skipped} rows outside validity)")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(r"$\tau$ (fs)")
    ax.set_ylabel(r"$\mu^{ip}_{nad}/\mu_{ad} - 1$")
    ax.legend(frameon=False)
    fig.tight_layout()
    with matplotlib.rc_context({"svg.hashsalt": "fig2"}):
        fig.savefig(out / "fig2.svg", metadata={"Date": None})
    print(f"wrote {out}/fig2a.csv, fig2b.csv, fig2.svg")


if __name__ == "__main__":
    main()
