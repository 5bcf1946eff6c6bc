"""Peak in-phase dipole from the RWA integrator versus the closed forms.

For each duration: TDSE value at the pulse peak over mu_ad, and the
closed-form windowed maximum from the sweep.  Long pulses are slow
(~1e8 RK4 steps at 10 ps); use --max-tau to cap the grid.
"""

import argparse
import time

import numpy as np

from nadsdipole.pulse import Pulse
from nadsdipole.quantities import MediumParams
from nadsdipole.sweep import SweepConfig, duration_sweep
from nadsdipole.tdse import tdse_peak_ratio


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dipole", type=float, default=0.01, help="debye")
    ap.add_argument("--intensity", type=float, default=5e13, help="W/cm^2")
    ap.add_argument("--max-tau", type=float, default=1000.0, help="fs")
    ap.add_argument("--level", type=float, default=1e-8, help="envelope level at the start time")
    args = ap.parse_args()

    medium = MediumParams.from_debye(args.dipole, 1e16)
    taus = [t * 1e-15 for t in np.geomspace(20, args.max_tau, 7)]
    closed = duration_sweep(SweepConfig(medium, "sech2", args.intensity, tuple(taus)))
    print("tau_fs,tdse_ratio_ip_minus_1,tdse_ratio_oop,closed_ratio_ip,gac_valid,seconds")
    for tau, row in zip(taus, closed):
        t0 = time.perf_counter()
        ip, oop = tdse_peak_ratio(Pulse("sech2", tau, args.intensity), medium, level=args.level)
        print(f"{tau / 1e-15:.1f},{ip - 1:.4e},{oop:.4e},{row.ratio_ip:.6g},{row.gac_valid},"
              f"{time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main()
