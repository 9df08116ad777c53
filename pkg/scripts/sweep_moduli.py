#!/usr/bin/env python3
"""Run the fibered-family sweep over a height grid and store the reports."""

import argparse
import json
import time
from pathlib import Path

from quiltlab.verify import sweep_family


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--h-grid", default="0.15,0.5,1.0,1.4")
    ap.add_argument("--family", default="all",
                    choices=("const", "maslov1", "all"))
    ap.add_argument("--out", default="out/sweep")
    args = ap.parse_args()

    grid = [float(v) for v in args.h_grid.split(",")]
    t0 = time.perf_counter()
    result = sweep_family(args.family, grid)
    dt = time.perf_counter() - t0

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "sweep.json"
    path.write_text(json.dumps(result.to_dict(), indent=2, sort_keys=True)
                    + "\n")
    for h, reports in result.reports.items():
        ok = sum(r.passed for r in reports)
        print(f"h={h:g}: {ok}/{len(reports)} components pass")
    for fam, diag in result.diagnostics.items():
        for key, val in diag.items():
            print(f"{fam}.{key} = {val:.3e}")
    print(f"wrote {path} ({dt:.0f}s), overall pass = {result.passed}")


if __name__ == "__main__":
    main()
