"""Tip radius of the viscous free surface against the capillary number.

Prints eps = a + 1/3 and the exact tip radius, each rescaled by its
exponential law, so the asymptotic prefactors can be read off directly.
"""

import argparse
import math

import numpy as np

from cusplab import viscous_flow


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ca", type=float, nargs="*", default=[0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.5, 0.75, 1.0])
    args = parser.parse_args()
    print(f"{'Ca':>6s} {'eps':>12s} {'R':>12s} {'eps e^16piCa':>13s} {'R e^32piCa':>12s}")
    for ca in args.ca:
        sol = viscous_flow.a_from_Ca(ca)
        R = viscous_flow.tip_radius_exact(sol.epsilon)
        print(f"{ca:6.2f} {sol.epsilon:12.4e} {R:12.4e} {sol.epsilon * math.exp(16 * math.pi * ca):13.6f}"
              f" {R * math.exp(32 * math.pi * ca):12.6f}")
    print(f"\nlimits: 32/9 = {32 / 9:.6f}, 256/3 = {256 / 3:.6f}")
    cas = np.linspace(0.15, 0.35, 9)
    slope, pref = viscous_flow.epsilon_law(cas)
    law = viscous_flow.tip_radius([0.15, 0.2, 0.25, 0.3])
    print(f"fit over Ca in [0.15, 0.35]: log eps slope {slope / math.pi:.4f} pi, prefactor {pref:.4f}")
    print(f"fit over Ca in [0.15, 0.30]: log R slope {law.rate / math.pi:.4f} pi, prefactor {law.prefactor:.4f}")


if __name__ == "__main__":
    main()
