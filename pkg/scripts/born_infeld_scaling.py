"""Approach of the Born-Infeld solution to its swallowtail.

Prints the tip curvature against t', the exact blow-up time, and the
scaling exponent fitted over several windows of t'.
"""

import argparse

import numpy as np

from cusplab import born_infeld
from cusplab.normal_forms import fit_scaling


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--zeta0", type=float, default=1.0)
    parser.add_argument("--a", type=float, default=0.5)
    parser.add_argument("--b", type=float, default=0.5)
    parser.add_argument("--lam", type=float, default=1.0)
    args = parser.parse_args()
    sing = born_infeld.bi_singularity(args.zeta0, args.a, args.b, args.lam)
    t0, phi0 = born_infeld.blowup_time(sing.data, 0.0, 10 * sing.t0, phi_range=(-0.4, 0.4))
    print(f"t0 = {t0:.12f} (expected {sing.t0}), phi0 = {phi0:.2e}")
    print(f"swallowtail coefficient a = {sing.swallowtail_a:.6f}")
    print(f"\n{'tprime':>8s} {'kappa':>12s} {'2 a tprime kappa':>17s}")
    for tp in (1e-1, 1e-2, 1e-3, 1e-4):
        k = born_infeld.hoppe_curvature(sing.data, sing.t0 - tp, 0.0)
        print(f"{tp:8.0e} {k:12.4e} {2 * args.a * tp * k:17.6f}")
    phis = np.linspace(-0.4, 0.4, 4001)
    print(f"\n{'window':>14s} {'gamma':>8s}")
    for window in ([1e-1, 1e-2, 1e-3], [1e-2, 1e-3, 1e-4], [1e-3, 1e-4, 1e-5]):
        sim = fit_scaling(sing.family([0.0, *window], phis), kind="swallowtail")
        print(f"{window[0]:6.0e}..{window[-1]:6.0e} {sim.gamma:8.4f}")


if __name__ == "__main__":
    main()
