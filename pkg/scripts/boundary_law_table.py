#!/usr/bin/env python3
"""Tabulate the extrapolated top-edge modulus of the strip solutions against
the boundary law exp(2x) + 1 for several heights."""

import argparse
import math

import numpy as np

from quiltlab.analysis import PoissonSolution, boundary_modulus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--heights", default="0.3926990817,0.7853981634,1.178097245")
    ap.add_argument("--x-range", type=float, default=3.0)
    ap.add_argument("--samples", type=int, default=13)
    args = ap.parse_args()

    heights = [float(v) for v in args.heights.split(",")]
    xs = np.linspace(-args.x_range, args.x_range, args.samples)
    print(f"{'h':>10} {'x':>7} {'|f|^2 extrapolated':>20} "
          f"{'exp(2x)+1':>16} {'rel err':>10}")
    worst = 0.0
    for h in heights:
        sol = PoissonSolution(h)
        for x in xs:
            value = boundary_modulus(sol, float(x))
            target = math.exp(2 * x) + 1.0
            rel = abs(value - target) / target
            worst = max(worst, rel)
            print(f"{h:10.6f} {x:7.3f} {value:20.12e} {target:16.8e} "
                  f"{rel:10.2e}")
    print(f"worst relative deviation: {worst:.3e}")


if __name__ == "__main__":
    main()
