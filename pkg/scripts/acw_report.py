#!/usr/bin/env python3
"""Verify both explicit quilted half-planes and emit the moment-triangle
figure into out/acw/."""

from pathlib import Path

from quiltlab.catalog import make_acw_quilt
from quiltlab.moment_figure import (emit_moment_figure, figure_svg,
                                    write_figure_csvs)
from quiltlab.verify import verify_quilt


def main():
    outdir = Path("out/acw")
    outdir.mkdir(parents=True, exist_ok=True)
    for sign in (+1, -1):
        quilt = make_acw_quilt(sign)
        report = verify_quilt(quilt)
        path = outdir / f"report_{quilt.label.replace('.', '_')}.json"
        path.write_text(report.to_json() + "\n")
        print(f"{quilt.label}: pass={report.passed} "
              f"total_area={report.total_area:.9f} -> {path}")
    fig = emit_moment_figure(grid=400)
    for p in write_figure_csvs(fig, outdir):
        print("wrote", p)
    svg = outdir / "figure.svg"
    svg.write_text(figure_svg(fig))
    print("wrote", svg)


if __name__ == "__main__":
    main()
