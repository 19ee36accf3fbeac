"""Grid A_p and multilinear A_P constants of power weights under refinement.

Bounded constants settle as N doubles; weights outside the classes keep growing.
"""

import argparse

from vlmult.grid import GridSpec
from vlmult.weights import PowerWeight, ap_constant, multilinear_ap_constant


def power(alpha):
    return PowerWeight((0.0,), 0.0, ((0.0,),), (alpha,))


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--L", type=float, default=1.0)
    args = ap.parse_args()
    print(f"{'N':>5} {'A2 |x|^0.5':>12} {'A2 |x|^-1.5':>12} {'AP |x|^.25':>12} {'AP |x|^3':>12}")
    for N in args.sizes:
        g = GridSpec(1, args.L, N)
        row = (
            ap_constant(power(0.5), 2.0, g),
            ap_constant(power(-1.5), 2.0, g),
            multilinear_ap_constant([power(0.25), power(0.25)], [4.0, 4.0], g),
            multilinear_ap_constant([power(3.0), 1.0], [4.0, 4.0], g),
        )
        print(f"{N:>5} " + " ".join(f"{v:12.5g}" for v in row))
