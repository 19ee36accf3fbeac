"""Norms of the Gaussian family G_lam in L^p(.) across a lambda sweep, with fitted slopes."""

import argparse

import numpy as np

from vlmult.exponents import exponent_from_config
from vlmult.grid import GridSpec
from vlmult.harness.report import fit_slope
from vlmult.norms import variable_norm
from vlmult.operators import gaussian_G

EXPONENTS = {
    "p=2": 2.0,
    "p=4": 4.0,
    "piecewise 2|4": {"kind": "piecewise", "breakpoints": [0.0], "values": [2.0, 4.0]},
    "radial": {"kind": "radial", "p_inf": 2.0, "amplitude": 2.0, "radius": 4.0},
}

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=128)
    ap.add_argument("--count", type=int, default=11)
    args = ap.parse_args()
    lams = np.geomspace(2.0, 64.0, args.count)
    for name, desc in EXPONENTS.items():
        p = exponent_from_config(desc)
        norms = [variable_norm(gaussian_G(lam, GridSpec(1, max(8.0, 3 * lam), args.N)), p).value for lam in lams]
        fit = fit_slope(lams, norms)
        print(f"{name:>14}: slope {fit.slope:+.5f} (residual {fit.residual:.2e})")
