"""Closed-form dipole quadratures against the weight-product oracle.

Samples log-uniform inputs, keeps those with (D-M)^2 >= N^2, and reports
the relative deviation in units of x^2 + y^2 (x = W/dw, y = a/dw).
"""

import argparse

import numpy as np

from nadsdipole.dipole import mu_from_weights, mu_ip_full, mu_oop_full
from nadsdipole.nads import NadsInput, nads_params
from nadsdipole.quantities import MediumParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    dw = 10.0 ** rng.uniform(14, 17, args.n)
    w = 10.0 ** rng.uniform(10, 15, args.n)
    a = rng.choice([-1.0, 1.0], args.n) * 10.0 ** rng.uniform(8, 14, args.n)
    x, y = w / dw, a / dw
    keep = 1 + x * x >= 2 * np.abs(y)
    dw, w, a, x, y = dw[keep], w[keep], a[keep], x[keep], y[keep]
    r2 = x * x + y * y

    m = MediumParams(1.0, 1.0)
    inp = NadsInput(dw, w, a)
    ip_w, oop_w = mu_from_weights(m, nads_params(inp))
    for name, cf, ref in (("ip", mu_ip_full(m, inp), ip_w), ("oop", mu_oop_full(m, inp), oop_w)):
        nz = ref > 0
        e = np.abs(cf[nz] / ref[nz] - 1)
        print(f"{name}: max rel err {e.max():.3e}, median {np.median(e):.2e}, "
              f"max err/(x^2+y^2) {np.max(e / r2[nz]):.3f}")
    small = (x < 1e-2) & (np.abs(y) < 1e-2)
    e = np.abs(mu_ip_full(m, inp)[small] / ip_w[small] - 1)
    print(f"x, |y| < 1e-2 ({small.sum()} inputs): ip max rel err {e.max():.2e}")


if __name__ == "__main__":
    main()
