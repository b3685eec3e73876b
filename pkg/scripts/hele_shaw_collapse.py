"""Similarity collapse of the Hele-Shaw boundary near its cusp.

Prints, for a range of t', the largest distance between the frame-mapped
boundary and the cusp similarity profile for two candidate coefficients,
the coefficient recovered by a free fit, and the scaling exponent fitted
over sliding windows of t'.
"""

import argparse
import math

import numpy as np

from cusplab import hele_shaw
from cusplab.normal_forms import fit_normal_form, fit_scaling, similarity_profile


def collapse(a1, a2, tp, a, half=1.0):
    frame = hele_shaw.local_cusp(a1, a2, tp)
    t0 = hele_shaw.predict_cusp(a1, a2).t0
    th = frame.theta_c + frame.k * tp**0.25 * np.linspace(-half, half, 401)
    mapped = frame.to_frame(hele_shaw.boundary_curve(hele_shaw.evolve_map(a1, a2, t0 - tp), th))
    prof = similarity_profile("cusp", +1, a, mapped.params)
    return float(np.max(np.hypot(*(mapped.points - prof.points).T))), mapped


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a1", type=float, default=1.0)
    parser.add_argument("--a2", type=float, default=1 / 16)
    args = parser.parse_args()
    tps = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8]
    r3, r9 = 3 * math.sqrt(3), 9 * math.sqrt(3)
    print(f"{'tprime':>8s} {'dist a=3r3':>11s} {'dist a=9r3':>11s} {'fitted a':>9s}")
    for tp in tps:
        d3, _ = collapse(args.a1, args.a2, tp, r3)
        d9, _ = collapse(args.a1, args.a2, tp, r9)
        _, wide = collapse(args.a1, args.a2, tp, r3, half=3.0)
        a_fit = fit_normal_form(wide, kind="cusp").form.a
        print(f"{tp:8.0e} {d3:11.3e} {d9:11.3e} {a_fit:9.4f}")
    print()
    pred = hele_shaw.predict_cusp(args.a1, args.a2)
    theta_c = math.pi if pred.a2_crit > 0 else 0.0
    th = np.linspace(theta_c - 0.2, theta_c + 0.2, 4001)
    print(f"{'window':>14s} {'gamma':>8s}")
    for i in range(len(tps) - 2):
        window = tps[i:i + 3]
        fam = hele_shaw.boundary_family(args.a1, args.a2, [0.0, *window], th)
        print(f"{window[0]:6.0e}..{window[-1]:6.0e} {fit_scaling(fam).gamma:8.4f}")


if __name__ == "__main__":
    main()
