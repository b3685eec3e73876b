"""Sweep the vortex strength of the Hopkinson drop.

For each m: the apex height, the cusp positions found on the curve, the
expected positions +-gamma_m, and whether the surface crosses itself.
Ends with the bisection for the critical m.
"""

import argparse

import numpy as np

from cusplab import potential_flow
from cusplab.curves import find_tips


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=float, nargs="*", default=[0.0, 1 / 3, 0.6, 0.9, 0.94, 0.95, 0.98, 1.0])
    parser.add_argument("--samples", type=int, default=4096)
    args = parser.parse_args()
    print(f"{'m':>8s} {'apex y':>9s} {'gamma_m':>9s} {'tips (zeta)':>24s} {'crossing':>9s}")
    for m in args.m:
        drop = potential_flow.HopkinsonDrop(m)
        tips = find_tips(potential_flow.drop_shape(m, args.samples))
        zs = ", ".join(f"{potential_flow.zeta_of(t.sigma):+.5f}" for t in tips) or "-"
        cross = potential_flow.has_self_intersection(m)
        print(f"{m:8.4f} {drop.point(0.0)[0, 1]:9.5f} {drop.gamma_m:9.5f} {zs:>24s} {str(cross):>9s}")
    print(f"\ncritical m = {potential_flow.critical_m():.6f}")
    print(f"2*sqrt(2)/3 = {2 * np.sqrt(2) / 3:.6f}")


if __name__ == "__main__":
    main()
