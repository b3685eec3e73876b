"""Classify generated families from all six problems and print the summary table."""

import argparse
import json
import math

import numpy as np

from cusplab import born_infeld, eikonal, hele_shaw, porous_medium, potential_flow, viscous_flow
from cusplab.curves import ParametricCurve
from cusplab.normal_forms import classify


def families():
    front = eikonal.InitialFront(1.0, 0.0)
    yield "wave fronts", eikonal.front_family(front, [0.0, 1e-4, 1e-3, 1e-2], np.linspace(-0.02, 0.02, 4001))
    th = np.linspace(math.pi - 0.2, math.pi + 0.2, 4001)
    yield "Hele-Shaw", hele_shaw.boundary_family(1.0, 1 / 16, [0.0, 1e-8, 1e-7, 1e-6], th)
    drop = potential_flow.HopkinsonDrop(1.0)
    vt = potential_flow.vartheta_of(np.linspace(-0.04, 0.04, 4001))
    yield "potential flow", ParametricCurve(vt, drop.point(vt))
    yield "porous medium", porous_medium.local_cusp_shape(1.0, np.linspace(-1, 0, 4001))
    th = np.linspace(math.pi / 2 - 0.3, math.pi / 2 + 0.3, 4001)
    yield "viscous flow", viscous_flow.surface_shape(-1 / 3, th)
    sing = born_infeld.bi_singularity(1.0, 0.5, 0.5)
    yield "Born-Infeld", sing.family([0.0, 1e-3, 1e-2, 1e-1], np.linspace(-0.4, 0.4, 4001))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = parser.parse_args()
    rows = []
    for name, data in families():
        rep = classify(data)
        rows.append({"problem": name, "kind": rep.kind, "gamma": rep.gamma, "tip_exponent": rep.tip_exponent})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'problem':16s} {'kind':12s} {'gamma':>8s} {'tip exp':>8s}")
    for r in rows:
        g = "-" if r["gamma"] is None else f"{r['gamma']:.4f}"
        e = "-" if r["tip_exponent"] is None else f"{r['tip_exponent']:.4f}"
        print(f"{r['problem']:16s} {r['kind']:12s} {g:>8s} {e:>8s}")


if __name__ == "__main__":
    main()
